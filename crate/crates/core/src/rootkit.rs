//! Scalar and planar root finding.
//!
//! Everything here works on caller-supplied brackets or seeds; there is no
//! global root enumeration. Failures are reported as [`RootError`] values so
//! callers can attach the name of the quantity they were solving for.

use std::fmt;

use crate::error::Error;

pub const DEFAULT_TOL_X: f64 = 1e-12;
pub const DEFAULT_TOL_F: f64 = 1e-11;
pub const DEFAULT_MAX_ITER: usize = 200;

/// Hard cap on bisection halvings; any finite f64 interval collapses to
/// adjacent floats well before this.
const BISECT_CAP: usize = 2200;

#[derive(Debug, Clone, PartialEq)]
pub enum RootError {
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    NotANumber { x: f64 },
    MaxIterations { last: f64, residual: f64, iterations: usize },
    SingularJacobian { at: (f64, f64) },
    Divergence { at: (f64, f64), norm: f64 },
}

impl fmt::Display for RootError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootError::InvalidBracket { lo, hi, f_lo, f_hi } => write!(
                f,
                "invalid bracket [{lo}, {hi}] with f(lo) = {f_lo}, f(hi) = {f_hi}"
            ),
            RootError::NotANumber { x } => write!(f, "function returned NaN at x = {x}"),
            RootError::MaxIterations { last, residual, iterations } => write!(
                f,
                "no convergence after {iterations} iterations (last x = {last}, residual = {residual:e})"
            ),
            RootError::SingularJacobian { at } => {
                write!(f, "singular Jacobian at ({}, {})", at.0, at.1)
            }
            RootError::Divergence { at, norm } => {
                write!(f, "diverged at ({}, {}) with |F| = {norm:e}", at.0, at.1)
            }
        }
    }
}

impl std::error::Error for RootError {}

impl RootError {
    /// Wrap into the crate error, naming what was being solved for.
    pub fn named(self, what: impl Into<String>) -> Error {
        Error::NonConvergence { what: what.into(), detail: self.to_string() }
    }
}

/// An interval with a verified sign change.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_hi: f64,
}

impl Bracket {
    /// Evaluates `f` at both ends and checks `lo < hi` and `f(lo)·f(hi) < 0`.
    pub fn new<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Self, RootError> {
        let (f_lo, f_hi) = (f(lo), f(hi));
        Self::from_values(lo, hi, f_lo, f_hi)
    }

    pub fn from_values(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self, RootError> {
        let ok = lo < hi && f_lo.is_finite() && f_hi.is_finite() && f_lo * f_hi < 0.0;
        if ok {
            Ok(Bracket { lo, hi, f_lo, f_hi })
        } else {
            Err(RootError::InvalidBracket { lo, hi, f_lo, f_hi })
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn f_lo(&self) -> f64 {
        self.f_lo
    }

    pub fn f_hi(&self) -> f64 {
        self.f_hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Bisection,
    NewtonBisectionHybrid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub root: f64,
    pub residual: f64,
    pub iterations: usize,
    pub method: Method,
}

/// Plain bisection down to a bracket of width `tol_x`.
///
/// Returns the midpoint of the final bracket, or the first midpoint at which
/// `f` vanishes exactly.
pub fn bisect<F: Fn(f64) -> f64>(f: F, b: &Bracket, tol_x: f64) -> Result<RootResult, RootError> {
    let (mut lo, mut hi, mut f_lo) = (b.lo, b.hi, b.f_lo);
    let mut iterations = 0;
    while hi - lo > tol_x && iterations < BISECT_CAP {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        iterations += 1;
        if fm.is_nan() {
            return Err(RootError::NotANumber { x: mid });
        }
        if fm == 0.0 {
            return Ok(RootResult { root: mid, residual: 0.0, iterations, method: Method::Bisection });
        }
        if (fm < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    let residual = f(root);
    if residual.is_nan() {
        return Err(RootError::NotANumber { x: root });
    }
    Ok(RootResult { root, residual, iterations, method: Method::Bisection })
}

/// Safeguarded Newton iteration.
///
/// A Newton step is taken only when it lands strictly inside the current
/// bracket; otherwise the bracket is bisected. The bracket is updated with the
/// sign of every new iterate, so all iterates stay inside the initial bracket.
/// Success requires `|f(root)| ≤ tol_f` together with a last step (or
/// bracket width) no larger than `tol_x`.
pub fn newton_hybrid<F, D>(
    f: F,
    df: D,
    b: &Bracket,
    tol_x: f64,
    tol_f: f64,
    max_iter: usize,
) -> Result<RootResult, RootError>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = (b.lo, b.hi);
    let lo_negative = b.f_lo < 0.0;
    let (mut x, mut fx) = if b.f_lo.abs() < b.f_hi.abs() { (b.lo, b.f_lo) } else { (b.hi, b.f_hi) };
    if fx == 0.0 {
        return Ok(RootResult { root: x, residual: 0.0, iterations: 0, method: Method::NewtonBisectionHybrid });
    }
    for iteration in 1..=max_iter {
        let d = df(x);
        let newton = x - fx / d;
        let next = if d.is_finite() && d != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let last_step = (next - x).abs();
        x = next;
        fx = f(x);
        if fx.is_nan() {
            return Err(RootError::NotANumber { x });
        }
        if fx == 0.0 {
            return Ok(RootResult { root: x, residual: 0.0, iterations: iteration, method: Method::NewtonBisectionHybrid });
        }
        if (fx < 0.0) == lo_negative {
            lo = x;
        } else {
            hi = x;
        }
        let small_step = last_step <= tol_x || hi - lo <= tol_x;
        if fx.abs() <= tol_f && small_step {
            return Ok(RootResult { root: x, residual: fx, iterations: iteration, method: Method::NewtonBisectionHybrid });
        }
    }
    Err(RootError::MaxIterations { last: x, residual: fx, iterations: max_iter })
}

/// [`newton_hybrid`] with the default tolerances.
pub fn newton_default<F, D>(f: F, df: D, b: &Bracket) -> Result<RootResult, RootError>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    newton_hybrid(f, df, b, DEFAULT_TOL_X, DEFAULT_TOL_F, DEFAULT_MAX_ITER)
}

/// Damped Newton iteration for a planar system with a finite-difference
/// Jacobian (central differences, step `1e-7·max(1, |coordinate|)`).
pub fn solve2d<F>(f: F, seed: (f64, f64), tol: f64) -> Result<(f64, f64), RootError>
where
    F: Fn(f64, f64) -> (f64, f64),
{
    let norm = |v: (f64, f64)| v.0.abs().max(v.1.abs());
    let (mut u, mut v) = seed;
    let mut fv = f(u, v);
    if fv.0.is_nan() || fv.1.is_nan() {
        return Err(RootError::NotANumber { x: u });
    }

    for _ in 0..DEFAULT_MAX_ITER {
        let n0 = norm(fv);
        if n0 <= tol {
            return Ok((u, v));
        }
        let hu = 1e-7 * u.abs().max(1.0);
        let hv = 1e-7 * v.abs().max(1.0);
        let (fup, fum) = (f(u + hu, v), f(u - hu, v));
        let (fvp, fvm) = (f(u, v + hv), f(u, v - hv));
        let j11 = (fup.0 - fum.0) / (2.0 * hu);
        let j21 = (fup.1 - fum.1) / (2.0 * hu);
        let j12 = (fvp.0 - fvm.0) / (2.0 * hv);
        let j22 = (fvp.1 - fvm.1) / (2.0 * hv);
        let det = j11 * j22 - j12 * j21;
        let scale = (j11.abs() + j12.abs()) * (j21.abs() + j22.abs());
        if !det.is_finite() || det.abs() <= 1e-14 * scale || scale == 0.0 {
            return Err(RootError::SingularJacobian { at: (u, v) });
        }
        let du = -(j22 * fv.0 - j12 * fv.1) / det;
        let dv = -(-j21 * fv.0 + j11 * fv.1) / det;

        // backtrack until the residual norm decreases
        let mut t = 1.0;
        loop {
            let (nu, nv) = (u + t * du, v + t * dv);
            let nf = f(nu, nv);
            let n1 = norm(nf);
            if n1.is_finite() && n1 < n0 {
                u = nu;
                v = nv;
                fv = nf;
                break;
            }
            t *= 0.5;
            if t < 1e-10 {
                if n0 <= tol * 1e3 {
                    // stalled at rounding level just above tol: accept a plain step
                    let nf = f(u + du, v + dv);
                    if norm(nf) <= tol {
                        return Ok((u + du, v + dv));
                    }
                }
                return Err(RootError::Divergence { at: (u, v), norm: n0 });
            }
        }
    }
    if norm(fv) <= tol {
        Ok((u, v))
    } else {
        Err(RootError::MaxIterations { last: u, residual: norm(fv), iterations: DEFAULT_MAX_ITER })
    }
}

/// Scans `[lo, hi]` at `n` uniform sub-intervals and returns a bracket for
/// every sign change found. An exact zero at a sample point is returned as a
/// degenerate `(x, x)` pair.
pub fn sign_changes<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let step = (hi - lo) / n as f64;
    let mut x_prev = lo;
    let mut f_prev = f(lo);
    if f_prev == 0.0 {
        out.push((lo, lo));
    }
    for k in 1..=n {
        let x = if k == n { hi } else { lo + step * k as f64 };
        let fx = f(x);
        if fx == 0.0 {
            out.push((x, x));
        } else if f_prev != 0.0 && f_prev.is_finite() && fx.is_finite() && (f_prev < 0.0) != (fx < 0.0) {
            out.push((x_prev, x));
        }
        x_prev = x;
        f_prev = fx;
    }
    out
}
