use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{aux, f_real_prime, psi_zero, AuxFn, ParamPoint};
use crate::paramlab::constants::{constants, fold_ordinate, neg_h_fixed_lambda};
use crate::paramlab::REGIME_TOL;
use crate::rootkit::{self, Bracket};

/// `|m|` within this distance of 1 classifies as rationally indifferent.
pub const INDIFFERENT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "axis", content = "at", rename_all = "snake_case")]
pub enum Location {
    RealAxis(f64),
    /// Ordinate `y` of the point `iy`.
    ImagAxis(f64),
    Complex { re: f64, im: f64 },
}

impl Location {
    pub fn point(&self) -> Complex64 {
        match *self {
            Location::RealAxis(x) => Complex64::new(x, 0.0),
            Location::ImagAxis(y) => Complex64::new(0.0, y),
            Location::Complex { re, im } => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    Superattracting,
    Attracting,
    RationallyIndifferent,
    Repelling,
}

impl Stability {
    pub fn classify(multiplier: f64) -> Self {
        let m = multiplier.abs();
        if (m - 1.0).abs() <= INDIFFERENT_TOL {
            Stability::RationallyIndifferent
        } else if m == 0.0 {
            Stability::Superattracting
        } else if m < 1.0 {
            Stability::Attracting
        } else {
            Stability::Repelling
        }
    }

    pub fn attracts(&self) -> bool {
        matches!(self, Stability::Superattracting | Stability::Attracting)
    }
}

/// A fixed point or a representative of a 2-cycle.
///
/// For 2-cycles of `h` the location is the positive ordinate `a` of the
/// cycle `{ia, −ia}`, `multiplier` is the multiplier of the cycle and
/// `reduced_multiplier` the multiplier of `−h` at `a` (its square is the
/// cycle multiplier).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedPointRecord {
    pub location: Location,
    pub multiplier: f64,
    pub stability: Stability,
    pub cycle_length: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced_multiplier: Option<f64>,
}

impl FixedPointRecord {
    fn fixed(location: Location, multiplier: f64) -> Self {
        FixedPointRecord {
            location,
            multiplier,
            stability: Stability::classify(multiplier),
            cycle_length: 1,
            reduced_multiplier: None,
        }
    }

    fn two_cycle(ordinate: f64, neg_h_multiplier: f64) -> Self {
        let multiplier = neg_h_multiplier * neg_h_multiplier;
        FixedPointRecord {
            location: Location::ImagAxis(ordinate),
            multiplier,
            stability: Stability::classify(neg_h_multiplier),
            cycle_length: 2,
            reduced_multiplier: Some(neg_h_multiplier),
        }
    }

    pub fn point(&self) -> Complex64 {
        self.location.point()
    }
}

/// The nonzero real fixed point `x_λ` (root of `Ψ(x) = λ`), for `λ < 1`.
pub fn real_fixed_ordinate(p: &ParamPoint) -> Result<Option<f64>> {
    let lambda = p.lambda();
    if lambda >= 1.0 {
        return Ok(None);
    }
    let g = |x: f64| x.sin() / x - x * x - lambda;
    let dg = |x: f64| (x * x.cos() - x.sin()) / (x * x) - 2.0 * x;
    // Ψ decreases from 1 at 0⁺ to 0 at x₀
    let b = Bracket::new(g, f64::MIN_POSITIVE.sqrt(), psi_zero()).map_err(|e| e.named("x_lambda"))?;
    let r = rootkit::newton_hybrid(g, dg, &b, 1e-15, 1e-15, rootkit::DEFAULT_MAX_ITER)
        .map_err(|e| e.named("x_lambda"))?;
    Ok(Some(r.root))
}

pub fn real_fixed_points(p: &ParamPoint) -> Result<Vec<FixedPointRecord>> {
    let mut out = vec![FixedPointRecord::fixed(Location::RealAxis(0.0), 1.0 / p.lambda())];
    if let Some(x) = real_fixed_ordinate(p)? {
        let m = f_real_prime(x, p);
        out.push(FixedPointRecord::fixed(Location::RealAxis(x), m));
        out.push(FixedPointRecord::fixed(Location::RealAxis(-x), m));
    }
    Ok(out)
}

/// Ordinate `r_λ ∈ (0, √λ)` of the repelling fixed point `i r_λ` of `h`,
/// by bisection on `sinh y − y(λ − y²)`. `None` for `λ ≤ 1`.
pub fn imag_fixed_ordinate(p: &ParamPoint) -> Result<Option<f64>> {
    let lambda = p.lambda();
    if lambda <= 1.0 {
        return Ok(None);
    }
    let g = |y: f64| y.sinh() - y * (lambda - y * y);
    let b = Bracket::new(g, f64::MIN_POSITIVE.sqrt(), p.pole_ordinate())
        .map_err(|e| e.named("r_lambda"))?;
    let r = rootkit::bisect(g, &b, 1e-15).map_err(|e| e.named("r_lambda"))?;
    Ok(Some(r.root))
}

pub fn imag_fixed_points(p: &ParamPoint) -> Result<Vec<FixedPointRecord>> {
    let mut out = vec![FixedPointRecord::fixed(Location::ImagAxis(0.0), 1.0 / p.lambda())];
    if let Some(r) = imag_fixed_ordinate(p)? {
        // h'(r) coincides with f'(ir)
        let m = match crate::family::eval_h_prime(r, p) {
            crate::family::Eval::Value(m) => m,
            _ => return Err(Error::invalid("r_lambda evaluated at a pole")),
        };
        out.push(FixedPointRecord::fixed(Location::ImagAxis(r), m));
        out.push(FixedPointRecord::fixed(Location::ImagAxis(-r), m));
    }
    Ok(out)
}

/// Multiplier of `−h` at a fixed point `y` of `−h`:
/// `(y cosh y − 2y³) / sinh y`.
pub fn neg_h_multiplier(y: f64) -> f64 {
    (y * y.cosh() - 2.0 * y.powi(3)) / y.sinh()
}

/// Positive fixed points of `−h` (equivalently the 2-cycles `{iy, −iy}` of
/// `f`), one record per cycle.
///
/// On `y > 0` the fixed-point condition reads `λ = y² − sinh y / y`, whose
/// right side increases up to the fold ordinate and decreases after it; the
/// two branches are bracketed separately. Within the regime tolerance of
/// `λ₂` the pair has merged into the single fold record.
pub fn imag_two_cycles(p: &ParamPoint) -> Result<Vec<FixedPointRecord>> {
    let lambda = p.lambda();
    let c = constants()?;
    if (lambda - c.lambda_2).abs() <= REGIME_TOL {
        let y = c.witness_y2;
        return Ok(vec![FixedPointRecord::two_cycle(y, neg_h_multiplier(y))]);
    }
    if lambda > c.lambda_2 {
        return Ok(Vec::new());
    }
    let y_fold = fold_ordinate()?;
    let g = |y: f64| neg_h_fixed_lambda(y) - lambda;
    let dg = |y: f64| 2.0 * y - (y * y.cosh() - y.sinh()) / (y * y);

    let solve = |lo: f64, hi: f64, what: &str| -> Result<f64> {
        let b = Bracket::new(g, lo, hi).map_err(|e| e.named(what))?;
        rootkit::newton_hybrid(g, dg, &b, 1e-14, 1e-11, rootkit::DEFAULT_MAX_ITER)
            .map(|r| r.root)
            .map_err(|e| e.named(what))
    };

    let lower = solve(p.pole_ordinate(), y_fold, "lower imaginary 2-cycle")?;
    let mut hi = y_fold + 1.0;
    while g(hi) >= 0.0 {
        hi += 1.0;
        if hi > 700.0 {
            return Err(Error::NonConvergence {
                what: "upper imaginary 2-cycle".into(),
                detail: "no bracket below the sinh overflow".into(),
            });
        }
    }
    let upper = solve(y_fold, hi, "upper imaginary 2-cycle")?;
    Ok(vec![
        FixedPointRecord::two_cycle(lower, neg_h_multiplier(lower)),
        FixedPointRecord::two_cycle(upper, neg_h_multiplier(upper)),
    ])
}

/// Radius of the disc around 0 inside the basin of 0, for `λ > 1`:
/// the root of `Φ(r) = sinh r / r + r² = λ`.
pub fn invariant_disk_radius(p: &ParamPoint) -> Result<f64> {
    let lambda = p.lambda();
    if lambda <= 1.0 {
        return Err(Error::invalid(format!("invariant disc needs lambda > 1, got {lambda}")));
    }
    let g = |y: f64| aux(AuxFn::PhiBig, y).unwrap_or(f64::NAN) - lambda;
    let dg = |y: f64| (y * y.cosh() - y.sinh()) / (y * y) + 2.0 * y;
    let b = Bracket::new(g, f64::MIN_POSITIVE.sqrt(), p.pole_ordinate())
        .map_err(|e| e.named("invariant disc radius"))?;
    rootkit::newton_hybrid(g, dg, &b, 1e-16, 4.0 * f64::EPSILON * lambda, rootkit::DEFAULT_MAX_ITER)
        .map(|r| r.root)
        .map_err(|e| e.named("invariant disc radius"))
}

/// Damped complex Newton search for a zero of `f'` from `seed`.
///
/// Works on the numerator `N(z) = (z² + λ) cos z − 2z sin z`, whose
/// derivative is `−(z² + λ + 2) sin z`; steps are capped at unit length.
/// Returns `None` when the iteration does not settle within 200 steps.
pub fn find_critical_point(p: &ParamPoint, seed: Complex64) -> Option<Complex64> {
    let lambda = p.lambda();
    let mut z = seed;
    for _ in 0..200 {
        let w = z * z + lambda;
        let n = w * z.cos() - 2.0 * z * z.sin();
        let dn = -(w + 2.0) * z.sin();
        if !(dn.re.is_finite() && dn.im.is_finite()) || dn.norm() == 0.0 {
            return None;
        }
        let mut step = n / dn;
        let len = step.norm();
        if !len.is_finite() {
            return None;
        }
        if len > 1.0 {
            step /= len;
        }
        z -= step;
        if z.im.abs() > 300.0 {
            return None;
        }
        if len <= 1e-14 * z.norm().max(1.0) {
            return Some(z);
        }
    }
    None
}
