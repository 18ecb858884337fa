use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{aux, psi_zero, AuxFn};
use crate::rootkit::{self, Bracket, RootError};

/// The bifurcation ladder `λ** ≤ λ* < λ̂ < 1 < λ₁ < λ₂` with the ordinates
/// that witness each constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BifurcationConstants {
    /// Chaos threshold: `f(p_λ) = π` at the real critical point.
    pub lambda_2star: f64,
    /// Period doubling of the real fixed points `±x_λ`.
    pub lambda_star: f64,
    /// Real fixed point and real critical point coincide.
    pub lambda_hat: f64,
    /// `−h` fixed point with multiplier `−1` (branch with `λ > 1`).
    pub lambda_1: f64,
    /// Fold of the imaginary 2-cycles.
    pub lambda_2: f64,
    pub witness_x_star: f64,
    pub witness_p_2star: f64,
    pub witness_t_hat: f64,
    pub witness_y1: f64,
    pub witness_y2: f64,
}

impl BifurcationConstants {
    /// The ladder in increasing order, including the fixed value `1`.
    pub fn ladder(&self) -> [f64; 6] {
        [self.lambda_2star, self.lambda_star, self.lambda_hat, 1.0, self.lambda_1, self.lambda_2]
    }

    pub fn is_ordered(&self) -> bool {
        let l = self.ladder();
        l[0] > 0.0 && l[0] <= l[1] && l[1] < l[2] && l[2] < l[3] && l[3] < l[4] && l[4] < l[5]
    }

    /// True when `λ` sits on one of the ladder values within `tol`.
    pub fn on_ladder(&self, lambda: f64, tol: f64) -> bool {
        self.ladder().iter().any(|&c| (lambda - c).abs() <= tol)
    }
}

const TIGHT_X: f64 = 1e-14;
/// Residual tolerance for equations whose terms are O(1).
const UNIT_F: f64 = 1e-14;
/// Residual tolerance for the hyperbolic equations, whose terms reach a few
/// hundred near the roots.
const HYPERBOLIC_F: f64 = 1e-11;

fn solve(
    what: &str,
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    tol_f: f64,
) -> Result<f64> {
    let b = Bracket::new(&f, lo, hi).map_err(|e| e.named(what))?;
    rootkit::newton_hybrid(&f, df, &b, TIGHT_X, tol_f, rootkit::DEFAULT_MAX_ITER)
        .map(|r| r.root)
        .map_err(|e| e.named(what))
}

/// `x cos x + sin x − 2x³`, zero at `x*` (where `φ = −1`).
pub fn x_star_equation(x: f64) -> f64 {
    x * x.cos() + x.sin() - 2.0 * x.powi(3)
}

/// `y cosh y + sinh y − 2y³`: `−h` multiplier equals `−1` at a fixed point.
pub fn flip_equation(y: f64) -> f64 {
    y * y.cosh() + y.sinh() - 2.0 * y.powi(3)
}

/// `y cosh y − sinh y − 2y³`: `−h` multiplier equals `+1` at a fixed point.
pub fn fold_equation(y: f64) -> f64 {
    y * y.cosh() - y.sinh() - 2.0 * y.powi(3)
}

/// Parameter at which `iy` is a fixed point of `−h`: `λ = y² − sinh y / y`.
pub fn neg_h_fixed_lambda(y: f64) -> f64 {
    y * y - y.sinh() / y
}

/// Ordinate of the fold of the imaginary 2-cycles.
pub fn fold_ordinate() -> Result<f64> {
    solve(
        "fold ordinate y2",
        fold_equation,
        |y| y * y.sinh() - 6.0 * y * y,
        4.0,
        5.5,
        HYPERBOLIC_F,
    )
}

pub fn compute_constants() -> Result<BifurcationConstants> {
    let x0 = psi_zero();
    let x_star = solve(
        "x*",
        x_star_equation,
        |x| 2.0 * x.cos() - x * x.sin() - 6.0 * x * x,
        0.5,
        x0,
        UNIT_F,
    )?;
    let lambda_star = aux(AuxFn::PsiCap, x_star)?;

    let p_2star = solve("p**", |p| p.cos() - 2.0 * PI * p, |p| -p.sin() - 2.0 * PI, 0.1, 0.2, UNIT_F)?;
    let lambda_2star = aux(AuxFn::PsiLow, p_2star)?;

    // x_λ = p_λ: Ψ(t) = ψ(t) reduces to cos t = 2t²
    let t_hat = solve("t^", |t| t.cos() - 2.0 * t * t, |t| -t.sin() - 4.0 * t, 0.5, 0.8, UNIT_F)?;
    let lambda_hat = aux(AuxFn::PsiCap, t_hat)?;

    // the flip equation has two positive roots; keep the one with λ > 1
    let mut y1 = None;
    for (lo, hi) in rootkit::sign_changes(flip_equation, 0.5, 10.0, 950) {
        let y = if lo == hi {
            lo
        } else {
            solve(
                "y1",
                flip_equation,
                |y| 2.0 * y.cosh() + y * y.sinh() - 6.0 * y * y,
                lo,
                hi,
                HYPERBOLIC_F,
            )?
        };
        if neg_h_fixed_lambda(y) > 1.0 {
            y1 = Some(y);
            break;
        }
    }
    let y1 = y1.ok_or_else(|| Error::NonConvergence {
        what: "lambda_1".into(),
        detail: "no flip root with lambda > 1 on [0.5, 10]".into(),
    })?;
    let y2 = fold_ordinate()?;

    Ok(BifurcationConstants {
        lambda_2star,
        lambda_star,
        lambda_hat,
        lambda_1: neg_h_fixed_lambda(y1),
        lambda_2: neg_h_fixed_lambda(y2),
        witness_x_star: x_star,
        witness_p_2star: p_2star,
        witness_t_hat: t_hat,
        witness_y1: y1,
        witness_y2: y2,
    })
}

/// Process-wide memoised [`compute_constants`].
pub fn constants() -> Result<&'static BifurcationConstants> {
    static CACHE: OnceLock<Result<BifurcationConstants>> = OnceLock::new();
    CACHE.get_or_init(compute_constants).as_ref().map_err(Clone::clone)
}

/// Refines `(y, λ)` of a `−h` fixed point with prescribed multiplier
/// condition by a joint planar solve, starting from `seed`.
pub fn refine_pair(
    condition: fn(f64) -> f64,
    seed: (f64, f64),
) -> std::result::Result<(f64, f64), RootError> {
    rootkit::solve2d(
        |y, l| (y.sinh() - y * (y * y - l), condition(y)),
        seed,
        1e-10,
    )
}
