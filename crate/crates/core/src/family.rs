//! Evaluation of `f(z) = sin z / (z² + λ)` and its imaginary-axis
//! restriction `h(y) = sinh y / (λ − y²)`, with pole and overflow guards.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootkit::{self, Bracket};

/// Relative pole guard: a point counts as a pole when
/// `|z² + λ| < POLE_EPS · (1 + |z|²)`.
pub const POLE_EPS: f64 = 1e-12;

/// Largest `|Im z|` evaluated before reporting [`Eval::Overflow`]:
/// `asinh(f64::MAX) / 2`.
pub fn overflow_ordinate() -> f64 {
    static ORD: OnceLock<f64> = OnceLock::new();
    *ORD.get_or_init(|| f64::MAX.asinh() / 2.0)
}

/// A validated parameter `λ > 0` with the pole ordinate `√λ` cached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ParamPoint {
    lambda: f64,
    pole_ordinate: f64,
}

impl ParamPoint {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::invalid(format!("lambda must be a finite positive number, got {lambda}")));
        }
        Ok(ParamPoint { lambda, pole_ordinate: lambda.sqrt() })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `√λ`; the poles sit at `±i√λ`.
    pub fn pole_ordinate(&self) -> f64 {
        self.pole_ordinate
    }

    pub fn poles(&self) -> [Complex64; 2] {
        [Complex64::new(0.0, self.pole_ordinate), Complex64::new(0.0, -self.pole_ordinate)]
    }
}

impl TryFrom<f64> for ParamPoint {
    type Error = Error;

    fn try_from(lambda: f64) -> Result<Self> {
        ParamPoint::new(lambda)
    }
}

impl From<ParamPoint> for f64 {
    fn from(p: ParamPoint) -> f64 {
        p.lambda
    }
}

/// Outcome of a guarded evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Eval<T> {
    Value(T),
    PoleProximity,
    Overflow,
}

pub type EvalResult = Eval<Complex64>;

impl<T: Copy> Eval<T> {
    pub fn value(&self) -> Option<T> {
        match *self {
            Eval::Value(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_value(&self) -> bool {
        matches!(self, Eval::Value(_))
    }

    /// Same kind, with the payload (if any) mapped.
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Eval<U> {
        match self {
            Eval::Value(v) => Eval::Value(f(v)),
            Eval::PoleProximity => Eval::PoleProximity,
            Eval::Overflow => Eval::Overflow,
        }
    }
}

/// Smith's complex division; avoids the overflow of `|d|²` in the textbook
/// formula and is exactly odd/conjugate-symmetric in its arguments.
fn cdiv(n: Complex64, d: Complex64) -> Complex64 {
    if d.re.abs() >= d.im.abs() {
        let r = d.im / d.re;
        let den = d.re + d.im * r;
        Complex64::new((n.re + n.im * r) / den, (n.im - n.re * r) / den)
    } else {
        let r = d.re / d.im;
        let den = d.re * r + d.im;
        Complex64::new((n.re * r + n.im) / den, (n.im * r - n.re) / den)
    }
}

/// `z² + λ`, with `x² − y²` formed as `(x − y)(x + y)`.
fn shifted_square(z: Complex64, lambda: f64) -> Complex64 {
    Complex64::new((z.re - z.im) * (z.re + z.im) + lambda, 2.0 * z.re * z.im)
}

fn near_pole(den: f64, z_norm_sqr: f64) -> bool {
    den < POLE_EPS * (1.0 + z_norm_sqr)
}

fn finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

pub fn eval_f(z: Complex64, p: &ParamPoint) -> EvalResult {
    if z.im.abs() > overflow_ordinate() || !finite(z) {
        return Eval::Overflow;
    }
    let d = shifted_square(z, p.lambda);
    if near_pole(d.norm(), z.norm_sqr()) {
        return Eval::PoleProximity;
    }
    let w = cdiv(z.sin(), d);
    if finite(w) {
        Eval::Value(w)
    } else {
        Eval::Overflow
    }
}

/// `f'(z) = ((z² + λ) cos z − 2z sin z) / (z² + λ)²`.
pub fn eval_f_prime(z: Complex64, p: &ParamPoint) -> EvalResult {
    if z.im.abs() > overflow_ordinate() || !finite(z) {
        return Eval::Overflow;
    }
    let d = shifted_square(z, p.lambda);
    if near_pole(d.norm(), z.norm_sqr()) {
        return Eval::PoleProximity;
    }
    // (cos z − 2z sin z / d) / d keeps intermediates at the scale of f itself
    let w = cdiv(z.cos() - cdiv(2.0 * z * z.sin(), d), d);
    if finite(w) {
        Eval::Value(w)
    } else {
        Eval::Overflow
    }
}

/// `λ − y²`, factored as `(√λ − y)(√λ + y)` near the poles.
fn pole_gap(y: f64, p: &ParamPoint) -> f64 {
    if 2.0 * y * y < p.lambda {
        p.lambda - y * y
    } else {
        (p.pole_ordinate - y) * (p.pole_ordinate + y)
    }
}

/// `h(y) = −i f(iy) = sinh y / (λ − y²)`.
pub fn eval_h(y: f64, p: &ParamPoint) -> Eval<f64> {
    if y.abs() > overflow_ordinate() || !y.is_finite() {
        return Eval::Overflow;
    }
    let gap = pole_gap(y, p);
    if near_pole(gap.abs(), y * y) {
        return Eval::PoleProximity;
    }
    let v = y.sinh() / gap;
    if v.is_finite() {
        Eval::Value(v)
    } else {
        Eval::Overflow
    }
}

/// `h'(y) = ((λ − y²) cosh y + 2y sinh y) / (λ − y²)²`.
pub fn eval_h_prime(y: f64, p: &ParamPoint) -> Eval<f64> {
    if y.abs() > overflow_ordinate() || !y.is_finite() {
        return Eval::Overflow;
    }
    let gap = pole_gap(y, p);
    if near_pole(gap.abs(), y * y) {
        return Eval::PoleProximity;
    }
    let v = (y.cosh() + 2.0 * y * y.sinh() / gap) / gap;
    if v.is_finite() {
        Eval::Value(v)
    } else {
        Eval::Overflow
    }
}

/// Real restriction of `f`; never hits a pole.
pub fn f_real(x: f64, p: &ParamPoint) -> f64 {
    x.sin() / (x * x + p.lambda)
}

pub fn f_real_prime(x: f64, p: &ParamPoint) -> f64 {
    let d = x * x + p.lambda;
    (x.cos() - 2.0 * x * x.sin() / d) / d
}

/// The auxiliary scalar functions of the bifurcation analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AuxFn {
    /// `Ψ(x) = sin x / x − x²`, `x > 0`.
    PsiCap,
    /// `φ(x) = cos x / (Ψ + x²) − 2x sin x / (Ψ + x²)²`, `0 < x < x₀`.
    PhiSmall,
    /// `ψ(x) = 2x tan x − x²`, `0 < x < π/2`.
    PsiLow,
    /// `Φ(y) = sinh y / y + y²`, `y > 0`.
    PhiBig,
}

impl AuxFn {
    pub fn name(&self) -> &'static str {
        match self {
            AuxFn::PsiCap => "Psi",
            AuxFn::PhiSmall => "phi",
            AuxFn::PsiLow => "psi",
            AuxFn::PhiBig => "Phi",
        }
    }
}

/// Positive zero `x₀ ∈ (0, 1)` of `Ψ`, i.e. of `sin x − x³`.
pub fn psi_zero() -> f64 {
    static X0: OnceLock<f64> = OnceLock::new();
    *X0.get_or_init(|| {
        let g = |x: f64| x.sin() - x * x * x;
        let b = Bracket::new(g, 0.5, 1.0).expect("sin x - x^3 changes sign on [0.5, 1]");
        rootkit::newton_hybrid(g, |x| x.cos() - 3.0 * x * x, &b, 1e-15, 1e-15, 200)
            .expect("x0 solve")
            .root
    })
}

pub fn aux(which: AuxFn, t: f64) -> Result<f64> {
    let in_domain = match which {
        AuxFn::PsiCap | AuxFn::PhiBig => t > 0.0 && t.is_finite(),
        AuxFn::PhiSmall => t > 0.0 && t < psi_zero(),
        AuxFn::PsiLow => t > 0.0 && t < std::f64::consts::FRAC_PI_2,
    };
    if !in_domain {
        return Err(Error::invalid(format!("{} is not defined at t = {t}", which.name())));
    }
    Ok(match which {
        AuxFn::PsiCap => t.sin() / t - t * t,
        AuxFn::PhiSmall => {
            // Ψ(x) + x² is sin x / x; never formed as a difference
            let s = t.sin() / t;
            t.cos() / s - 2.0 * t * t.sin() / (s * s)
        }
        AuxFn::PsiLow => 2.0 * t * t.tan() - t * t,
        AuxFn::PhiBig => t.sinh() / t + t * t,
    })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn lam(l: f64) -> ParamPoint {
        ParamPoint::new(l).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn param_point_validation() {
        assert!(ParamPoint::new(0.0).is_err());
        assert!(ParamPoint::new(-1.0).is_err());
        assert!(ParamPoint::new(f64::NAN).is_err());
        assert!(ParamPoint::new(f64::INFINITY).is_err());
        for l in [1e-6, 0.117, 2.0, 9.5, 12.0, 1e6] {
            let p = lam(l);
            let sq = p.pole_ordinate() * p.pole_ordinate();
            assert!((sq - l).abs() <= 4.0 * f64::EPSILON * l);
        }
    }

    #[test]
    fn eval_f_examples() {
        let p = lam(2.0);
        let v = eval_f(c(std::f64::consts::PI, 0.0), &p).value().unwrap();
        assert!(v.norm() < 1e-16);

        let v = eval_f(c(0.0, 1.0), &p).value().unwrap();
        assert_eq!(v.re, 0.0);
        assert!((v.im - 1.175_201_193_643_801_4).abs() < 1e-15);

        assert_eq!(eval_f(c(0.0, 2f64.sqrt()), &p), Eval::PoleProximity);
        assert_eq!(eval_f(c(0.0, -(2f64.sqrt())), &p), Eval::PoleProximity);
        assert_eq!(eval_f(c(0.0, 400.0), &p), Eval::Overflow);
        assert!(eval_f(c(1.0, 300.0), &p).is_value());
    }

    #[test]
    fn eval_f_prime_examples() {
        let v = eval_f_prime(c(0.0, 0.0), &lam(2.0)).value().unwrap();
        assert_eq!(v, c(0.5, 0.0));
        let v = eval_f_prime(c(0.0, 0.0), &lam(1.0)).value().unwrap();
        assert_eq!(v, c(1.0, 0.0));
        // critical point p_{1,0} ~ 0.798 by bisection on (x^2 + 1) cos x = 2x sin x
        let n = |x: f64| (x * x + 1.0) * x.cos() - 2.0 * x * x.sin();
        let b = Bracket::new(n, 0.0, std::f64::consts::FRAC_PI_2).unwrap();
        let pc = rootkit::bisect(n, &b, 1e-14).unwrap().root;
        assert!((pc - 0.798).abs() < 1e-3);
        let d = eval_f_prime(c(pc, 0.0), &lam(1.0)).value().unwrap();
        assert!(d.norm() < 1e-10);
    }

    #[test]
    fn eval_h_examples() {
        assert_eq!(eval_h(0.0, &lam(3.0)), Eval::Value(0.0));
        let v = eval_h(1.0, &lam(2.0)).value().unwrap();
        assert!((v - 1.175_201_193_643_801_4).abs() < 1e-15);
        assert_eq!(eval_h_prime(0.0, &lam(2.0)), Eval::Value(0.5));
        assert_eq!(eval_h(3f64.sqrt(), &lam(3.0)), Eval::PoleProximity);
        assert_eq!(eval_h(-(3f64.sqrt()), &lam(3.0)), Eval::PoleProximity);
        assert_eq!(eval_h(800.0, &lam(3.0)), Eval::Overflow);
    }

    #[test]
    fn h_is_the_imaginary_restriction() {
        let p = lam(9.5);
        for y in [-7.0, -2.5, -0.3, 0.7, 2.0, 4.1, 5.5] {
            let h = eval_h(y, &p).value().unwrap();
            let f = eval_f(c(0.0, y), &p).value().unwrap();
            assert_eq!(f.re, 0.0);
            assert!((f.im - h).abs() <= 1e-14 * h.abs().max(1.0));
        }
    }

    #[test]
    fn aux_examples() {
        let x0 = psi_zero();
        assert!((x0 - 0.928_626_308_731_734).abs() < 1e-13);
        assert!(aux(AuxFn::PsiCap, x0).unwrap().abs() < 1e-15);
        // r_2 = 0.922958955550789 solves Phi(r) = 2; Phi(0.925) is close
        let v = aux(AuxFn::PhiBig, 0.925).unwrap();
        assert!((v - 2.0).abs() < 5e-3);
        let v = aux(AuxFn::PsiLow, 0.15718).unwrap();
        assert!((v - 0.02511).abs() < 1e-4);
    }

    #[test]
    fn aux_domains() {
        assert!(aux(AuxFn::PsiCap, 0.0).is_err());
        assert!(aux(AuxFn::PhiSmall, 0.95).is_err());
        assert!(aux(AuxFn::PsiLow, 1.6).is_err());
        assert!(aux(AuxFn::PhiBig, -1.0).is_err());
        assert!(aux(AuxFn::PhiSmall, 0.5).is_ok());
    }

    #[test]
    fn phi_small_identity() {
        let x0 = psi_zero();
        for k in 1..1000 {
            let x = x0 * k as f64 / 1000.0;
            let direct = (x * x.cos() - 2.0 * x.powi(3)) / x.sin();
            let v = aux(AuxFn::PhiSmall, x).unwrap();
            assert!((v - direct).abs() <= 1e-12 * direct.abs().max(1.0), "x = {x}");
        }
    }

    #[test]
    fn derivative_matches_central_differences() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 1000 {
            let p = lam(rng.gen_range(0.05..12.0));
            let z = c(rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0));
            // stay away from the poles
            if (z - p.poles()[0]).norm() < 0.3 || (z - p.poles()[1]).norm() < 0.3 {
                continue;
            }
            let d = eval_f_prime(z, &p).value().unwrap();
            let h = 1e-6 * z.norm().max(1.0);
            let fp = eval_f(z + h, &p).value().unwrap();
            let fm = eval_f(z - h, &p).value().unwrap();
            let fd = (fp - fm) / (2.0 * h);
            let scale = d.norm().max(eval_f(z, &p).value().unwrap().norm()).max(1e-3);
            assert!((fd - d).norm() <= 1e-6 * scale, "z = {z}, lambda = {}", p.lambda());
            checked += 1;
        }
    }

    proptest! {
        #[test]
        fn odd_and_conjugate_symmetric(re in -20.0f64..20.0, im in -12.0f64..12.0, l in 0.01f64..20.0) {
            let p = lam(l);
            let z = c(re, im);
            if let Eval::Value(w) = eval_f(z, &p) {
                let wn = eval_f(-z, &p).value().unwrap();
                let wc = eval_f(z.conj(), &p).value().unwrap();
                let ulps = |a: f64, b: f64| (a - b).abs() <= 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
                prop_assert!(ulps(wn.re, -w.re) && ulps(wn.im, -w.im));
                prop_assert!(ulps(wc.re, w.re) && ulps(wc.im, -w.im));
            }
        }

        #[test]
        fn axes_are_invariant(t in -30.0f64..30.0, l in 0.01f64..20.0) {
            let p = lam(l);
            let w = eval_f(c(t, 0.0), &p).value().unwrap();
            prop_assert_eq!(w.im, 0.0);
            if let Eval::Value(w) = eval_f(c(0.0, t), &p) {
                prop_assert_eq!(w.re, 0.0);
            }
        }

        #[test]
        fn matches_library_formula(re in -8.0f64..8.0, im in -8.0f64..8.0, l in 0.05f64..15.0) {
            let p = lam(l);
            let z = c(re, im);
            let d = z * z + l;
            if d.norm() > 1e-3 {
                let w = eval_f(z, &p).value().unwrap();
                let reference = z.sin() / d;
                prop_assert!((w - reference).norm() <= 1e-13 * reference.norm().max(1e-300) + 1e-300);
            }
        }
    }
}
