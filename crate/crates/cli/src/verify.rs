//! The `verify` suite: constants, catalogs, orbit fates and figure checks,
//! each compared against an independent oracle or a stated bound.

use std::f64::consts::PI;

use merosin::family::{aux, eval_f, f_real, f_real_prime, AuxFn};
use merosin::orbitlab::{
    bifurcation_scan, chaos_certificate, parse_scan_csv, period_doubling_probe, AttractorId, Axis, Classifier,
    OrbitStatus, ScanRequest,
};
use merosin::paramlab::constants::{flip_equation, fold_equation};
use merosin::paramlab::{
    find_critical_point, imag_fixed_points, imag_two_cycles, invariant_disk_radius, real_fixed_points, refine_pair,
    regime_id, singular_values, BifurcationConstants, RegimeId,
};
use merosin::render::{basin_fractions, render_grid, BasinLabel, RenderOptions, Window};
use merosin::{Complex64, ParamPoint, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub check_name: String,
    pub expected: Value,
    pub observed: Value,
    pub tolerance: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub fast: bool,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn failing(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Default)]
struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn close(&mut self, name: impl Into<String>, expected: f64, observed: f64, tol: f64) {
        let pass = (expected - observed).abs() <= tol;
        self.push(name, json!(expected), json!(observed), Some(tol), pass);
    }

    fn holds(&mut self, name: impl Into<String>, expected: Value, observed: Value, pass: bool) {
        self.push(name, expected, observed, None, pass);
    }

    fn push(&mut self, name: impl Into<String>, expected: Value, observed: Value, tolerance: Option<f64>, pass: bool) {
        self.checks.push(Check { check_name: name.into(), expected, observed, tolerance, pass });
    }

    fn error(&mut self, name: &str, e: merosin::Error) {
        self.holds(name, json!("no error"), json!(e.to_string()), false);
    }
}

fn oracle(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn lam(l: f64) -> Result<ParamPoint> {
    ParamPoint::new(l)
}

fn status_name(s: OrbitStatus) -> String {
    match s {
        OrbitStatus::ConvergedTo(a) => format!("converged_to:{}", serde_json::to_value(a).unwrap().as_str().unwrap()),
        OrbitStatus::Escaped => "escaped".into(),
        OrbitStatus::PoleHit => "pole_hit".into(),
        OrbitStatus::Undecided => "undecided".into(),
    }
}

fn neg_h_multiplier(y: f64) -> f64 {
    (y * y.cosh() - 2.0 * y.powi(3)) / y.sinh()
}

struct Sizes {
    seeds: usize,
    grid: (usize, usize),
}

fn constants_checks(s: &mut Suite, c: &BifurcationConstants) -> Result<()> {
    s.holds("lambda_star in [0.112, 0.122]", json!([0.112, 0.122]), json!(c.lambda_star), (0.112..=0.122).contains(&c.lambda_star));
    s.holds("lambda_2star in [0.0246, 0.0256]", json!([0.0246, 0.0256]), json!(c.lambda_2star), (0.0246..=0.0256).contains(&c.lambda_2star));
    let x = oracle(|x| x * x.cos() + x.sin() - 2.0 * x.powi(3), 0.5, 0.92);
    s.close("lambda_star matches oracle", aux(AuxFn::PsiCap, x)?, c.lambda_star, 1e-9);
    let p = oracle(|p| p.cos() - 2.0 * PI * p, 0.1, 0.2);
    s.close("lambda_2star matches oracle", aux(AuxFn::PsiLow, p)?, c.lambda_2star, 1e-9);
    let t = oracle(|t| t.cos() - 2.0 * t * t, 0.5, 0.8);
    s.close("lambda_hat matches oracle", aux(AuxFn::PsiCap, t)?, c.lambda_hat, 1e-9);

    s.holds("ladder ordered", json!("0 < l** <= l* < l^ < 1 < l1 < l2"), json!(c.ladder()), c.is_ordered());
    let flip = |y: f64| y * y - y.sinh() / y;
    let y1 = oracle(|y| y * y.cosh() + y.sinh() - 2.0 * y.powi(3), 3.5, 4.0);
    let y2 = oracle(|y| y * y.cosh() - y.sinh() - 2.0 * y.powi(3), 4.5, 5.0);
    s.close("lambda_1 matches oracle", flip(y1), c.lambda_1, 1e-9);
    s.close("lambda_2 matches oracle", flip(y2), c.lambda_2, 1e-9);
    match refine_pair(flip_equation, (3.9, 9.0)) {
        Ok((_, l)) => s.close("lambda_1 planar refinement", l, c.lambda_1, 1e-6),
        Err(e) => s.error("lambda_1 planar refinement", e.named("lambda_1")),
    }
    match refine_pair(fold_equation, (4.7, 10.0)) {
        Ok((_, l)) => s.close("lambda_2 planar refinement", l, c.lambda_2, 1e-6),
        Err(e) => s.error("lambda_2 planar refinement", e.named("lambda_2")),
    }

    s.close("f' at x* equals -1 at lambda*", -1.0, f_real_prime(c.witness_x_star, &lam(c.lambda_star)?), 1e-6);
    s.close("-h multiplier at the fold ordinate", 1.0, neg_h_multiplier(c.witness_y2), 1e-6);
    let cyc = imag_two_cycles(&lam(9.5)?)?;
    let a = oracle(|y| flip(y) - 9.5, 9.5f64.sqrt(), y2);
    s.close("a_(9.5,2) matches oracle", a, cyc[0].point().im, 1e-2);
    s.holds("cycle multiplier at 9.5 in (0, 1)", json!([0.0, 1.0]), json!(cyc[0].multiplier), cyc[0].multiplier > 0.0 && cyc[0].multiplier < 1.0);
    Ok(())
}

fn catalog_checks(s: &mut Suite) -> Result<()> {
    for (l, want) in [(0.01, RegimeId::UpToChaosThreshold), (0.5, RegimeId::RealFixedBasins), (9.5, RegimeId::OriginAndTwoCycle), (12.0, RegimeId::BeyondFold)] {
        let got = regime_id(l, merosin::paramlab::constants()?);
        s.holds(format!("regime at {l}"), json!(want), json!(got), got == want);
    }
    let xs = oracle(|x| x.sin() - x * (x * x + 0.5), 0.1, 0.92);
    s.close("x_lambda at 0.5", xs, real_fixed_points(&lam(0.5)?)?[1].point().re, 1e-12);
    let r = oracle(|y| y.sinh() - y * (2.0 - y * y), 1e-9, 2f64.sqrt());
    s.close("r_lambda at 2", r, imag_fixed_points(&lam(2.0)?)?[1].point().im, 1e-12);
    s.close("disk radius at sinh(1) + 1", 1.0, invariant_disk_radius(&lam(1f64.sinh() + 1.0)?)?, 1e-10);
    let mut worst: f64 = 0.0;
    for k in 0..40 {
        let l = 1.05 + k as f64 * 1.2;
        let p = lam(l)?;
        worst = worst.max((invariant_disk_radius(&p)? - imag_fixed_points(&p)?[1].point().im).abs());
    }
    s.close("disk radius equals imaginary fixed point", 0.0, worst, 1e-10);
    let cat = singular_values(&lam(1.0)?, 4)?;
    let c1 = oracle(|y| (1.0 - y * y) * y.cosh() + 2.0 * y * y.sinh(), 2.0, 2.5);
    s.close("c_lambda at 1", c1, cat.imag_critical_points[0], 1e-12);
    let p0 = oracle(|x| (x * x + 1.0) * x.cos() - 2.0 * x * x.sin(), 0.0, PI / 2.0);
    s.close("p_(1,0)", p0, cat.real_critical[4].point, 1e-12);
    s.holds("asymptotic values", json!([0.0]), json!(cat.asymptotic_values), cat.asymptotic_values == vec![0.0]);
    Ok(())
}

fn dynamics_checks(s: &mut Suite, n: &Sizes) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for l in [1.2, 2.0, 5.0] {
        let cls = Classifier::new(&lam(l)?)?;
        let bad = (0..n.seeds)
            .filter(|_| {
                let out = cls.classify(Complex64::new(rng.gen_range(-50.0..50.0), 0.0));
                !(out.status == OrbitStatus::ConvergedTo(AttractorId::Origin) && out.final_value.norm() < 1e-9)
            })
            .count();
        s.holds(format!("real seeds reach 0 at {l}"), json!(0), json!(bad), bad == 0);
    }
    for l in [0.3, 0.5, 0.8] {
        let p = lam(l)?;
        let cls = Classifier::new(&p)?;
        let xl = oracle(|x| x.sin() - x * (x * x + l), 1e-9, 0.92);
        let bad = (0..n.seeds)
            .filter(|_| {
                let x: f64 = rng.gen_range(-50.0..50.0);
                let sign = f_real(x, &p).signum();
                let out = cls.classify(Complex64::new(x, 0.0));
                (out.final_value.re - sign * xl).abs() >= 1e-8
            })
            .count();
        s.holds(format!("real seeds reach +-x_lambda at {l}"), json!(0), json!(bad), bad == 0);
    }

    for (l, want) in [(0.005, true), (0.015, true), (0.0251, true), (0.03, false), (0.117, false), (1.0, false)] {
        let cert = chaos_certificate(&lam(l)?)?;
        s.holds(format!("chaos certificate at {l}"), json!(want), json!(cert.covered), cert.covered == want);
    }
    let probe = period_doubling_probe(0.005)?;
    s.holds("2-cycle below lambda*", json!(true), json!(probe.below.cycle.is_some()), probe.below.cycle.is_some());
    s.holds("no 2-cycle above lambda*", json!(false), json!(probe.above.cycle.is_some()), probe.above.cycle.is_none());

    let a = imag_two_cycles(&lam(9.5)?)?[0].point().im;
    let fates: [(f64, f64, OrbitStatus); 9] = [
        (9.5, 4.0, OrbitStatus::ConvergedTo(AttractorId::ImagTwoCycle)),
        (9.5, 4.5, OrbitStatus::ConvergedTo(AttractorId::ImagTwoCycle)),
        (9.5, 5.0, OrbitStatus::ConvergedTo(AttractorId::ImagTwoCycle)),
        (9.5, 5.5, OrbitStatus::Escaped),
        // y = 2 lies inside the invariant disc at 12, hence its orbit tends to 0
        (12.0, 2.0, OrbitStatus::ConvergedTo(AttractorId::Origin)),
        (12.0, 4.0, OrbitStatus::Escaped),
        (12.0, 6.0, OrbitStatus::Escaped),
        (2.0, 0.5, OrbitStatus::ConvergedTo(AttractorId::Origin)),
        (3.0, 3f64.sqrt(), OrbitStatus::PoleHit),
    ];
    for (l, y, want) in fates {
        let out = Classifier::new(&lam(l)?)?.classify(Complex64::new(0.0, y));
        let mut pass = out.status == want;
        if want == OrbitStatus::ConvergedTo(AttractorId::ImagTwoCycle) {
            pass &= (out.final_value.im.abs() - a).abs() < 1e-8;
        }
        s.holds(format!("orbit of i*{y} at {l}"), json!(status_name(want)), json!(status_name(out.status)), pass);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for l in [1.5, 2.0, 5.0] {
        let p = lam(l)?;
        let r = invariant_disk_radius(&p)?;
        let mut worst: f64 = 0.0;
        for k in 0..10_000 {
            let w = eval_f(Complex64::from_polar(r, 2.0 * PI * k as f64 / 10_000.0), &p).value();
            worst = worst.max(w.map_or(f64::INFINITY, |w| w.norm() / r));
        }
        s.holds(format!("boundary modulus ratio at {l} <= 1 + 1e-12"), json!(1.0 + 1e-12), json!(worst), worst <= 1.0 + 1e-12);
        let top = eval_f(Complex64::new(0.0, r), &p).value().map_or(f64::NAN, |w| w.norm() / r);
        s.close(format!("boundary modulus ratio at {l}, theta = pi/2"), 1.0, top, 1e-10);
        let cls = Classifier::new(&p)?;
        let bad = (0..n.seeds)
            .filter(|_| {
                let z = Complex64::from_polar(r * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI));
                cls.classify(z).status != OrbitStatus::ConvergedTo(AttractorId::Origin)
            })
            .count();
        s.holds(format!("disc samples reach 0 at {l}"), json!(0), json!(bad), bad == 0);
        let zeros_bad = (-20..=20)
            .filter(|&k| {
                let out = cls.classify(Complex64::new(k as f64 * PI, 0.0));
                out.status != OrbitStatus::ConvergedTo(AttractorId::Origin) || out.iterations > 2
            })
            .count();
        s.holds(format!("multiples of pi reach 0 in two steps at {l}"), json!(0), json!(zeros_bad), zeros_bad == 0);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for l in [0.5, 2.0, 9.5, 12.0] {
        let cls = Classifier::new(&lam(l)?)?;
        let bad = (0..n.seeds)
            .filter(|_| {
                let z = Complex64::new(rng.gen_range(-2.0 * PI..2.0 * PI), rng.gen_range(-2.0 * PI..2.0 * PI));
                let a = cls.classify(z).status;
                cls.classify(-z).status != a.negate() || cls.classify(z.conj()).status != a.conj()
            })
            .count();
        s.holds(format!("classification symmetric at {l}"), json!(0), json!(bad), bad == 0);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let lambdas = [0.02, 0.5, 1.0, 2.0, 9.5, 12.0];
    let mut off = 0;
    for k in 0..n.seeds {
        let seed = Complex64::new(rng.gen_range(0.1..10.0), rng.gen_range(0.1..10.0));
        if let Some(z) = find_critical_point(&lam(lambdas[k % lambdas.len()])?, seed) {
            off += usize::from(z.re.abs() > 1e-8 && z.im.abs() > 1e-8);
        }
    }
    s.holds("critical points lie on the axes", json!(0), json!(off), off == 0);
    Ok(())
}

fn figure_checks(s: &mut Suite, n: &Sizes, threads: Option<usize>) -> Result<()> {
    let (w, h) = n.grid;
    let window = Window::figure(w, h);
    for l in [9.5, 12.0] {
        let p = lam(l)?;
        let g = render_grid(&p, &window, &RenderOptions { threads, max_iter: None })?;
        let g1 = render_grid(&p, &window, &RenderOptions { threads: Some(1), max_iter: None })?;
        s.holds(format!("grid at {l} independent of thread count"), json!(true), json!(g.labels == g1.labels), g.labels == g1.labels);
        let f = basin_fractions(&g);
        let two = f[&BasinLabel::ImagTwoCycle];
        if l == 9.5 {
            s.holds("2-cycle basin present at 9.5", json!("> 0"), json!(two), two > 0.0);
        } else {
            s.holds("2-cycle basin absent at 12", json!(0.0), json!(two), two == 0.0);
        }
        let o = f[&BasinLabel::Origin];
        s.holds(format!("origin fraction at {l} > 0.5"), json!("> 0.5"), json!(o), o > 0.5);
        let row = g.row(0);
        let top = row.iter().filter(|&&b| b == BasinLabel::Origin).count() as f64 / row.len() as f64;
        s.holds(format!("real-axis row at {l} >= 99% origin"), json!(">= 0.99"), json!(top), top >= 0.99);
    }
    Ok(())
}

/// Escaped set at 4x supersampling, tested for 3x3 fully escaped blocks.
fn coherence_check(s: &mut Suite) -> Result<()> {
    use rand::seq::SliceRandom;
    let p = lam(12.0)?;
    let base = Window::figure(300, 200);
    let dx = (base.x_max - base.x_min) / base.width as f64;
    let dy = (base.y_max - base.y_min) / base.height as f64;
    let mut tiles: Vec<(usize, usize)> = (0..base.height / 8).flat_map(|j| (0..base.width / 8).map(move |i| (i, j))).collect();
    tiles.shuffle(&mut ChaCha8Rng::seed_from_u64(12));
    tiles.truncate(200);
    let mut clean = 0;
    for &(ti, tj) in &tiles {
        let x0 = base.x_min + (ti * 8) as f64 * dx;
        let y1 = base.y_max - (tj * 8) as f64 * dy;
        let g = render_grid(&p, &Window::new(x0, x0 + 8.0 * dx, y1 - 8.0 * dy, y1, 32, 32)?, &RenderOptions::default())?;
        let esc = |i: usize, j: usize| g.label(i, j) == BasinLabel::Escaped;
        let interior = (1..31).any(|j| (1..31).any(|i| (j - 1..=j + 1).all(|v| (i - 1..=i + 1).all(|u| esc(u, v)))));
        clean += usize::from(!interior);
    }
    let frac = clean as f64 / tiles.len() as f64;
    s.holds("escaped set has empty interior in >= 95% of tiles at 12", json!(">= 0.95"), json!(frac), frac >= 0.95);
    Ok(())
}

fn round_trip_checks(s: &mut Suite, c: &BifurcationConstants) -> Result<()> {
    let text = crate::params_json(c);
    let back = crate::parse_params_json(&text);
    let pass = back.as_ref().map(|b| crate::format::round15(b.lambda_2) == crate::format::round15(c.lambda_2)).unwrap_or(false);
    s.holds("params JSON re-parses", json!(true), json!(pass), pass);
    let t = bifurcation_scan(&ScanRequest { axis: Axis::Real, lambda_lo: 0.1, lambda_hi: 0.13, n_lambda: 5, n_transient: 200, n_keep: 4 })?;
    let csv = t.to_csv(crate::format::fmt15);
    let rows = parse_scan_csv(&csv).map(|r| r.len()).unwrap_or(0);
    s.holds("bifurcation CSV re-parses", json!(20), json!(rows), rows == 20);
    Ok(())
}

/// Runs the suite against the given constants (normally read from the
/// cache). Library errors become failing checks.
pub fn run(c: &BifurcationConstants, fast: bool, threads: Option<usize>) -> Report {
    let n = if fast { Sizes { seeds: 200, grid: (150, 100) } } else { Sizes { seeds: 1000, grid: (300, 200) } };
    let mut s = Suite::default();
    type Section<'a> = Box<dyn Fn(&mut Suite) -> Result<()> + 'a>;
    let sections: [(&str, Section); 5] = [
        ("constants", Box::new(|s| constants_checks(s, c))),
        ("catalogs", Box::new(catalog_checks)),
        ("dynamics", Box::new(|s| dynamics_checks(s, &n))),
        ("figures", Box::new(|s| figure_checks(s, &n, threads))),
        ("round trip", Box::new(|s| round_trip_checks(s, c))),
    ];
    for (name, run) in sections.iter() {
        if let Err(e) = run(&mut s) {
            s.error(&format!("{name} section"), e);
        }
    }
    if !fast {
        if let Err(e) = coherence_check(&mut s) {
            s.error("coherence section", e);
        }
    }
    let failed = s.checks.iter().filter(|c| !c.pass).count();
    Report { fast, passed: s.checks.len() - failed, failed, checks: s.checks }
}
