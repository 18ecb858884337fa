use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::ParamPoint;
use crate::rootkit::{self, Bracket};

pub const DEFAULT_N_MAX: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealCritical {
    pub n: i64,
    pub point: f64,
    pub value: f64,
}

/// Critical points and the singular values of `f⁻¹`.
///
/// Imaginary entries are ordinates: the critical points are `±i c` and
/// `imag_critical_values[k]` is the ordinate of `f(i · imag_critical_points[k])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularValueCatalog {
    pub lambda: f64,
    pub real_critical: Vec<RealCritical>,
    pub imag_critical_points: [f64; 2],
    pub imag_critical_values: [f64; 2],
    pub asymptotic_values: Vec<f64>,
}

impl SingularValueCatalog {
    pub fn real_critical_points(&self) -> impl Iterator<Item = f64> + '_ {
        self.real_critical.iter().map(|c| c.point)
    }

    pub fn real_critical_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.real_critical.iter().map(|c| c.value)
    }
}

/// `f'(x) (x² + λ) = cos x − 2x sin x / (x² + λ)`.
fn real_critical_equation(x: f64, lambda: f64) -> f64 {
    x.cos() - 2.0 * x * x.sin() / (x * x + lambda)
}

fn real_critical_derivative(x: f64, lambda: f64) -> f64 {
    let d = x * x + lambda;
    -x.sin() - 2.0 * (x.sin() + x * x.cos()) / d + 4.0 * x * x * x.sin() / (d * d)
}

/// The real critical point `p_{λ,n}`: for `n ≥ 0` the zero of `f'` in
/// `(nπ, (n+1)π)`; for `n < 0`, `−p_{λ,−n−1}`.
pub fn real_critical_point(p: &ParamPoint, n: i64) -> Result<f64> {
    if n < 0 {
        return real_critical_point(p, -n - 1).map(|x| -x);
    }
    let lambda = p.lambda();
    let g = |x: f64| real_critical_equation(x, lambda);
    let dg = |x: f64| real_critical_derivative(x, lambda);
    let lo = n as f64 * PI;
    let hi = lo + PI;
    // cos changes sign across the interval and sin vanishes at both ends
    let b = Bracket::from_values(lo, hi, if n % 2 == 0 { 1.0 } else { -1.0 }, if n % 2 == 0 { -1.0 } else { 1.0 })
        .map_err(|e| e.named(format!("p_(lambda,{n})")))?;
    let tol_x = 1e-15 * hi.max(1.0);
    rootkit::newton_hybrid(g, dg, &b, tol_x, 1e-14 * hi.max(1.0), rootkit::DEFAULT_MAX_ITER)
        .map(|r| r.root)
        .map_err(|e| e.named(format!("p_(lambda,{n})")))
}

/// `λ − y² + 2y tanh y`, whose positive zero beyond `√λ` is `c_λ`.
pub fn imag_critical_equation(y: f64, lambda: f64) -> f64 {
    lambda - y * y + 2.0 * y * y.tanh()
}

/// The ordinate `c_λ > √λ` of the imaginary critical points `±i c_λ`.
pub fn imag_critical_ordinate(p: &ParamPoint) -> Result<f64> {
    let lambda = p.lambda();
    let g = |y: f64| imag_critical_equation(y, lambda);
    let dg = |y: f64| -2.0 * y + 2.0 * y.tanh() + 2.0 * y / y.cosh().powi(2);
    let b = Bracket::new(g, p.pole_ordinate(), 2.0 + (1.0 + lambda).sqrt()).map_err(|e| e.named("c_lambda"))?;
    rootkit::newton_hybrid(g, dg, &b, 1e-15, 1e-13, rootkit::DEFAULT_MAX_ITER)
        .map(|r| r.root)
        .map_err(|e| e.named("c_lambda"))
}

/// Ordinate of `f(i c_λ)`: `−cosh c / (2c)`.
pub fn imag_critical_value(c: f64) -> f64 {
    -c.cosh() / (2.0 * c)
}

pub fn singular_values(p: &ParamPoint, n_max: usize) -> Result<SingularValueCatalog> {
    if n_max < 1 {
        return Err(Error::invalid("n_max must be at least 1"));
    }
    let n_max = n_max as i64;
    let positive = (0..n_max)
        .map(|n| real_critical_point(p, n))
        .collect::<Result<Vec<_>>>()?;
    let mut real_critical = Vec::with_capacity(2 * n_max as usize + 1);
    for n in -n_max..=n_max {
        let point = if n >= 0 {
            if n < n_max {
                positive[n as usize]
            } else {
                real_critical_point(p, n)?
            }
        } else {
            -positive[(-n - 1) as usize]
        };
        real_critical.push(RealCritical { n, point, value: point.cos() / (2.0 * point) });
    }
    let c = imag_critical_ordinate(p)?;
    let v = imag_critical_value(c);
    Ok(SingularValueCatalog {
        lambda: p.lambda(),
        real_critical,
        imag_critical_points: [c, -c],
        imag_critical_values: [v, -v],
        asymptotic_values: vec![0.0],
    })
}
