//! Oracle helpers shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use merosin::family::{aux, eval_f_prime, psi_zero, AuxFn};
use merosin::paramlab::{
    imag_fixed_points, imag_two_cycles, invariant_disk_radius, real_fixed_points, singular_values,
};
use merosin::{Complex64, ParamPoint};

/// Plain bisection, 200 halvings.
pub fn oracle(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = f(lo);
    assert!(f_lo * f(hi) < 0.0, "oracle bracket [{lo}, {hi}] has no sign change");
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

pub fn lam(l: f64) -> ParamPoint {
    ParamPoint::new(l).unwrap()
}

pub fn x0() -> f64 {
    oracle(|x| x.sin() - x.powi(3), 0.5, 1.0)
}
pub fn x_star() -> f64 {
    oracle(|x| x * x.cos() + x.sin() - 2.0 * x.powi(3), 0.8, 0.9)
}
pub fn p_2star() -> f64 {
    oracle(|p| p.cos() - 2.0 * PI * p, 0.1, 0.2)
}
pub fn y1() -> f64 {
    oracle(|y| y * y.cosh() + y.sinh() - 2.0 * y.powi(3), 3.5, 4.0)
}
pub fn y2() -> f64 {
    oracle(|y| y * y.cosh() - y.sinh() - 2.0 * y.powi(3), 4.5, 5.0)
}
/// Parameter at which `iy` is fixed by `−h`.
pub fn lambda_of(y: f64) -> f64 {
    y * y - y.sinh() / y
}
pub fn r_lambda(l: f64) -> f64 {
    oracle(|y| y.sinh() - y * (l - y * y), 1e-9, l.sqrt())
}
pub fn x_lambda(l: f64) -> f64 {
    oracle(|x| x.sin() - x * (x * x + l), 1e-9, x0())
}
pub fn neg_h_multiplier(y: f64) -> f64 {
    (y * y.cosh() - 2.0 * y.powi(3)) / y.sinh()
}
/// Lower and upper fixed points of `−h` at `l < λ₂`.
pub fn neg_h_fixed(l: f64) -> (f64, f64) {
    let g = |y: f64| lambda_of(y) - l;
    let yf = y2();
    (oracle(g, l.sqrt(), yf), oracle(g, yf, 20.0))
}

pub struct DerivedCheck {
    pub name: &'static str,
    pub oracle: f64,
    pub library: f64,
    pub tol: f64,
}

impl DerivedCheck {
    pub fn pass(&self) -> bool {
        (self.oracle - self.library).abs() <= self.tol
    }
}

/// Every derived example value: oracle value against the library value at
/// the example tolerance.
pub fn derived_checks() -> Vec<DerivedCheck> {
    let c = merosin::paramlab::constants().unwrap();
    let p1 = lam(1.0);
    let p_1_0 = oracle(|x| (x * x + 1.0) * x.cos() - 2.0 * x * x.sin(), 0.0, PI / 2.0);
    let cat1 = singular_values(&p1, 1).unwrap();
    let (a, r2) = neg_h_fixed(9.5);
    let cyc = imag_two_cycles(&lam(9.5)).unwrap();
    let fold = imag_two_cycles(&lam(c.lambda_2)).unwrap();
    let cert = merosin::orbitlab::chaos_certificate(&lam(0.02)).unwrap();
    let p002 = oracle(|x| (x * x + 0.02) * x.cos() - 2.0 * x * x.sin(), 0.0, PI / 2.0);
    let orbit = merosin::orbitlab::classify_real_orbit(1.0, &lam(0.5)).unwrap();
    let rows = [
        ("f'(p_{1,0}) at lambda=1", 0.0, eval_f_prime(Complex64::new(p_1_0, 0.0), &p1).value().unwrap().norm(), 1e-10),
        ("x0", x0(), psi_zero(), 1e-12),
        ("Psi(x0)", 0.0, aux(AuxFn::PsiCap, x0()).unwrap(), 1e-13),
        ("Phi(r_2)", 2.0, aux(AuxFn::PhiBig, r_lambda(2.0)).unwrap(), 5e-3),
        ("psi(p**)", aux(AuxFn::PsiLow, p_2star()).unwrap(), c.lambda_2star, 1e-4),
        ("bisect x0", x0(), bisect_lib(|x| x.sin() - x.powi(3), 0.5, 1.0), 1e-6),
        ("bisect p**", p_2star(), bisect_lib(|p| p.cos() - 2.0 * PI * p, 0.1, 0.2), 1e-6),
        ("newton x*", x_star(), c.witness_x_star, 1e-4),
        ("newton y1", y1(), c.witness_y1, 1e-3),
        ("solve2d fold y", y2(), c.witness_y2, 1e-2),
        ("solve2d fold lambda", lambda_of(y2()), c.lambda_2, 1e-2),
        ("solve2d flip y", y1(), c.witness_y1, 1e-2),
        ("solve2d flip lambda", lambda_of(y1()), c.lambda_1, 1e-2),
        ("lambda_1", lambda_of(y1()), c.lambda_1, 5e-2),
        ("lambda_2", lambda_of(y2()), c.lambda_2, 5e-2),
        ("x_lambda at 0.5", x_lambda(0.5), real_fixed_points(&lam(0.5)).unwrap()[1].point().re, 1e-12),
        ("r_lambda at 2", r_lambda(2.0), imag_fixed_points(&lam(2.0)).unwrap()[1].point().im, 1e-12),
        ("a_(9.5,2)", a, cyc[0].point().im, 1e-10),
        ("-h multiplier at a_(9.5,2)", neg_h_multiplier(a), cyc[0].reduced_multiplier.unwrap(), 1e-9),
        ("r_(9.5,2)", r2, cyc[1].point().im, 1e-10),
        ("-h multiplier at r_(9.5,2)", neg_h_multiplier(r2), cyc[1].reduced_multiplier.unwrap(), 1e-9),
        ("fold ordinate", y2(), fold[0].point().im, 1e-9),
        ("p_{1,0}", oracle(|p| 2.0 * p * p.tan() - p * p - 1.0, 0.1, 1.5), cat1.real_critical[1].point, 1e-12),
        ("c_1", oracle(|y| (1.0 - y * y) * y.cosh() + 2.0 * y * y.sinh(), 2.0, 2.5), cat1.imag_critical_points[0], 1e-12),
        ("disk radius at 2", r_lambda(2.0), invariant_disk_radius(&lam(2.0)).unwrap(), 1e-12),
        ("f(p) at 0.02", p002.sin() / (p002 * p002 + 0.02), cert.f_at_p, 1e-12),
        ("orbit of 1 at 0.5", x_lambda(0.5), orbit.final_value.re, 1e-8),
    ];
    rows.into_iter()
        .map(|(name, oracle, library, tol)| DerivedCheck { name, oracle, library, tol })
        .collect()
}

fn bisect_lib(f: impl Fn(f64) -> f64 + Copy, lo: f64, hi: f64) -> f64 {
    let b = merosin::rootkit::Bracket::new(f, lo, hi).unwrap();
    merosin::rootkit::bisect(f, &b, 1e-12).unwrap().root
}
