//! Acceptance suite: one PASS/FAIL line per criterion, with runtime limits.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use merosin::family::{aux, eval_f, f_real, f_real_prime, AuxFn};
use merosin::orbitlab::{
    chaos_certificate, classify_imag_orbit, period_doubling_probe, AttractorId, Classifier, OrbitStatus,
};
use merosin::paramlab::{
    constants, find_critical_point, imag_two_cycles, invariant_disk_radius, refine_pair, BifurcationConstants,
};
use merosin::paramlab::constants::{flip_equation, fold_equation};
use merosin::render::{basin_fractions, render_grid, BasinLabel, RenderOptions, Window};
use merosin::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::{lam, neg_h_fixed, neg_h_multiplier, oracle, x_lambda};

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn consts() -> &'static BifurcationConstants {
    constants().expect("bifurcation constants")
}

fn c01_constants() -> Outcome {
    let c = consts();
    check((0.112..=0.122).contains(&c.lambda_star), format!("lambda* = {}", c.lambda_star))?;
    check((0.0246..=0.0256).contains(&c.lambda_2star), format!("lambda** = {}", c.lambda_2star))?;
    let x = oracle(|x| x * x.cos() + x.sin() - 2.0 * x.powi(3), 0.5, 0.92);
    let p = oracle(|p| p.cos() - 2.0 * PI * p, 0.1, 0.2);
    let ls = aux(AuxFn::PsiCap, x).unwrap();
    let l2s = aux(AuxFn::PsiLow, p).unwrap();
    check((ls - c.lambda_star).abs() <= 1e-9, format!("lambda* oracle {ls} vs {}", c.lambda_star))?;
    check((l2s - c.lambda_2star).abs() <= 1e-9, format!("lambda** oracle {l2s} vs {}", c.lambda_2star))?;
    Ok(format!("lambda*={:.6} lambda**={:.6}", c.lambda_star, c.lambda_2star))
}

fn c02_ladder() -> Outcome {
    let c = consts();
    check(c.is_ordered(), format!("ladder {:?}", c.ladder()))?;
    let (y2, l2) = refine_pair(fold_equation, (4.7, 10.0)).map_err(|e| e.to_string())?;
    let (y1, l1) = refine_pair(flip_equation, (3.9, 9.0)).map_err(|e| e.to_string())?;
    check((l1 - c.lambda_1).abs() <= 1e-6 && (y1 - c.witness_y1).abs() <= 1e-6, format!("lambda_1 {l1} vs {}", c.lambda_1))?;
    check((l2 - c.lambda_2).abs() <= 1e-6 && (y2 - c.witness_y2).abs() <= 1e-6, format!("lambda_2 {l2} vs {}", c.lambda_2))?;
    Ok(format!("lambda_1={:.6} lambda_2={:.6}", c.lambda_1, c.lambda_2))
}

fn c03_multipliers() -> Outcome {
    let c = consts();
    let m = f_real_prime(c.witness_x_star, &lam(c.lambda_star));
    check((m + 1.0).abs() <= 1e-6, format!("f'(x*) = {m}"))?;
    let mf = neg_h_multiplier(c.witness_y2);
    check((mf - 1.0).abs() <= 1e-6, format!("-h multiplier at fold = {mf}"))?;
    let cyc = imag_two_cycles(&lam(9.5)).map_err(|e| e.to_string())?;
    let (a, _) = neg_h_fixed(9.5);
    let rec = cyc.first().ok_or("no 2-cycle at 9.5")?;
    check(rec.multiplier > 0.0 && rec.multiplier < 1.0, format!("cycle multiplier {}", rec.multiplier))?;
    check((rec.point().im - a).abs() <= 1e-2 && (a - 4.119).abs() <= 1e-2, format!("a = {}", rec.point().im))?;
    Ok(format!("f'(x*)+1={:.1e} cycle multiplier={:.4}", m + 1.0, rec.multiplier))
}

fn c04_real_dynamics() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for l in [1.2, 2.0, 5.0] {
        let cls = Classifier::new(&lam(l)).map_err(|e| e.to_string())?;
        for _ in 0..1000 {
            let x = rng.gen_range(-50.0..50.0);
            let out = cls.classify(Complex64::new(x, 0.0));
            check(
                out.status == OrbitStatus::ConvergedTo(AttractorId::Origin) && out.final_value.norm() < 1e-9,
                format!("lambda {l}, seed {x}: {:?}", out.status),
            )?;
        }
    }
    for l in [0.3, 0.5, 0.8] {
        let p = lam(l);
        let cls = Classifier::new(&p).map_err(|e| e.to_string())?;
        let xl = x_lambda(l);
        for _ in 0..1000 {
            let x: f64 = rng.gen_range(-50.0..50.0);
            let sign = f_real(x, &p).signum();
            let out = cls.classify(Complex64::new(x, 0.0));
            let want = if sign > 0.0 { AttractorId::RealFixedPlus } else { AttractorId::RealFixedMinus };
            check(
                out.status == OrbitStatus::ConvergedTo(want) && (out.final_value.re - sign * xl).abs() < 1e-8,
                format!("lambda {l}, seed {x}: {:?} at {}", out.status, out.final_value),
            )?;
        }
    }
    Ok("6000 seeds".into())
}

fn c05_chaos() -> Outcome {
    for (l, want) in [(0.005, true), (0.015, true), (0.0251, true), (0.03, false), (0.117, false), (1.0, false)] {
        let cert = chaos_certificate(&lam(l)).map_err(|e| e.to_string())?;
        check(cert.covered == want, format!("lambda {l}: f(p) = {}", cert.f_at_p))?;
    }
    Ok("6 parameters".into())
}

fn c06_period_doubling() -> Outcome {
    let r = period_doubling_probe(0.005).map_err(|e| e.to_string())?;
    let cyc = r.below.cycle.ok_or("no 2-cycle below lambda*")?;
    check(r.above.cycle.is_none(), format!("2-cycle above lambda*: {:?}", r.above.cycle))?;
    Ok(format!("cycle {:.4}/{:.4} around {:.4}", cyc[0], cyc[1], r.below.fixed_point))
}

fn c07_imag_dynamics() -> Outcome {
    let (a, _) = neg_h_fixed(9.5);
    let p = lam(9.5);
    for y in [4.0, 4.5, 5.0] {
        let out = classify_imag_orbit(y, &p).map_err(|e| e.to_string())?;
        check(
            out.status == OrbitStatus::ConvergedTo(AttractorId::ImagTwoCycle) && (out.final_value.im.abs() - a).abs() < 1e-8,
            format!("lambda 9.5, y {y}: {:?}", out.status),
        )?;
    }
    let out = classify_imag_orbit(5.5, &p).map_err(|e| e.to_string())?;
    check(out.status == OrbitStatus::Escaped, format!("lambda 9.5, y 5.5: {:?}", out.status))?;
    for y in [2.0, 4.0, 6.0] {
        let out = classify_imag_orbit(y, &lam(12.0)).map_err(|e| e.to_string())?;
        check(
            out.status == OrbitStatus::Escaped,
            format!("lambda 12, y {y}: {:?} after {} steps at {}", out.status, out.iterations, out.final_value),
        )?;
    }
    let out = classify_imag_orbit(0.5, &lam(2.0)).map_err(|e| e.to_string())?;
    check(out.status == OrbitStatus::ConvergedTo(AttractorId::Origin), format!("lambda 2, y 0.5: {:?}", out.status))?;
    Ok("all fates as stated".into())
}

fn c08_invariant_disk() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst_all: f64 = 0.0;
    for l in [1.5, 2.0, 5.0] {
        let p = lam(l);
        let r = invariant_disk_radius(&p).map_err(|e| e.to_string())?;
        let mut worst: f64 = 0.0;
        for k in 0..10_000 {
            let th = 2.0 * PI * k as f64 / 10_000.0;
            let w = eval_f(Complex64::from_polar(r, th), &p).value().ok_or("pole on the circle")?;
            worst = worst.max(w.norm() / r);
        }
        check(worst <= 1.0 + 1e-12, format!("lambda {l}: max ratio {worst}"))?;
        let top = eval_f(Complex64::new(0.0, r), &p).value().unwrap().norm() / r;
        check((top - 1.0).abs() <= 1e-10, format!("lambda {l}: ratio at pi/2 {top}"))?;
        let cls = Classifier::new(&p).map_err(|e| e.to_string())?;
        for _ in 0..1000 {
            let z = Complex64::from_polar(r * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI));
            let out = cls.classify(z);
            check(out.status == OrbitStatus::ConvergedTo(AttractorId::Origin), format!("lambda {l}: {z} -> {:?}", out.status))?;
        }
        worst_all = worst_all.max(worst);
    }
    Ok(format!("max ratio - 1 = {:.1e}", worst_all - 1.0))
}

fn c09_figures() -> Outcome {
    let w = Window::figure(300, 200);
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(2).max(2);
    let mut notes = Vec::new();
    for l in [9.5, 12.0] {
        let p = lam(l);
        let g = render_grid(&p, &w, &RenderOptions { threads: Some(threads), max_iter: None }).map_err(|e| e.to_string())?;
        let g1 = render_grid(&p, &w, &RenderOptions { threads: Some(1), max_iter: None }).map_err(|e| e.to_string())?;
        check(g.labels == g1.labels && g.iterations == g1.iterations, format!("lambda {l}: grids differ across thread counts"))?;
        let f = basin_fractions(&g);
        let two = f[&BasinLabel::ImagTwoCycle];
        if l == 9.5 {
            check(two > 0.0, "no 2-cycle basin at 9.5")?;
        } else {
            check(two == 0.0, format!("2-cycle fraction {two} at 12"))?;
        }
        check(f[&BasinLabel::Origin] > 0.5, format!("lambda {l}: origin fraction {}", f[&BasinLabel::Origin]))?;
        let top = g.row(0);
        let origin = top.iter().filter(|&&b| b == BasinLabel::Origin).count() as f64 / top.len() as f64;
        check(origin >= 0.99, format!("lambda {l}: real-axis row origin fraction {origin}"))?;
        notes.push(format!("{l}: origin {:.3} cycle {:.4}", f[&BasinLabel::Origin], two));
    }
    Ok(notes.join(", "))
}

fn c10_symmetry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for l in [0.5, 2.0, 9.5, 12.0] {
        let cls = Classifier::new(&lam(l)).map_err(|e| e.to_string())?;
        for _ in 0..1000 {
            let z = Complex64::new(rng.gen_range(-2.0 * PI..2.0 * PI), rng.gen_range(-2.0 * PI..2.0 * PI));
            let a = cls.classify(z).status;
            let b = cls.classify(-z).status;
            let c = cls.classify(z.conj()).status;
            check(b == a.negate() && c == a.conj(), format!("lambda {l}, z {z}: {a:?} / {b:?} / {c:?}"))?;
        }
    }
    Ok("4000 seeds".into())
}

fn c11_axis_lemma() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let lambdas = [0.02, 0.5, 1.0, 2.0, 9.5, 12.0];
    let mut found = 0;
    for k in 0..1000 {
        let l = lambdas[k % lambdas.len()];
        let seed = Complex64::new(rng.gen_range(0.1..10.0), rng.gen_range(0.1..10.0));
        if let Some(z) = find_critical_point(&lam(l), seed) {
            found += 1;
            check(z.re.abs() <= 1e-8 || z.im.abs() <= 1e-8, format!("lambda {l}: off-axis critical point {z}"))?;
        }
    }
    Ok(format!("{found}/1000 searches converged, all on an axis"))
}

fn c12_oracles() -> Outcome {
    let checks = common::derived_checks();
    for c in &checks {
        check(c.pass(), format!("{}: oracle {} library {} tol {}", c.name, c.oracle, c.library, c.tol))?;
    }
    Ok(format!("{} derived values", checks.len()))
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("constants", 1, c01_constants),
        ("ladder", 1, c02_ladder),
        ("multipliers", 1, c03_multipliers),
        ("real dynamics", 10, c04_real_dynamics),
        ("chaos certificate", 1, c05_chaos),
        ("period doubling", 5, c06_period_doubling),
        ("imaginary dynamics", 1, c07_imag_dynamics),
        ("invariant disk", 10, c08_invariant_disk),
        ("figure reproduction", 60, c09_figures),
        ("symmetry", 30, c10_symmetry),
        ("critical points on axes", 10, c11_axis_lemma),
        ("oracle equivalence", 10, c12_oracles),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = run();
        let dt = t.elapsed();
        let result = match result {
            Ok(msg) if dt > Duration::from_secs(*limit) => Err(format!("{msg}; took {dt:.2?}, limit {limit}s")),
            r => r,
        };
        match result {
            Ok(msg) => println!("PASS  {:>2} {name:<24} {:>9.3?}  {msg}", k + 1, dt),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {:>2} {name:<24} {:>9.3?}  {msg}", k + 1, dt);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
