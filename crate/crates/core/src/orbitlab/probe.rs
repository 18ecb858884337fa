use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{f_real, f_real_prime, ParamPoint};
use crate::paramlab::constants;
use crate::paramlab::fixed_points::real_fixed_ordinate;
use crate::rootkit::{self, Bracket};

const SCAN_POINTS: usize = 10_000;
/// Roots of `f² − x` this close to `x_λ` are taken to be the fixed point.
const SAME_ROOT: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeSide {
    pub lambda: f64,
    pub fixed_point: f64,
    pub fixed_point_multiplier: f64,
    /// All roots of `f²(x) = x` found on `(0, π)`.
    pub roots: Vec<f64>,
    pub cycle: Option<[f64; 2]>,
    pub cycle_multiplier: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodDoublingReport {
    pub lambda_star: f64,
    pub epsilon: f64,
    pub below: ProbeSide,
    pub above: ProbeSide,
}

fn probe_side(lambda: f64) -> Result<ProbeSide> {
    let p = ParamPoint::new(lambda)?;
    let x_l = real_fixed_ordinate(&p)?
        .ok_or_else(|| Error::invalid(format!("no real fixed point at lambda = {lambda}")))?;
    let g = |x: f64| f_real(f_real(x, &p), &p) - x;
    let mut roots = Vec::new();
    for (lo, hi) in rootkit::sign_changes(g, PI / SCAN_POINTS as f64, PI * (1.0 - 1.0 / SCAN_POINTS as f64), SCAN_POINTS - 2) {
        let r = if lo == hi {
            lo
        } else {
            let b = Bracket::new(g, lo, hi).map_err(|e| e.named("f^2(x) = x"))?;
            rootkit::bisect(g, &b, 1e-14).map_err(|e| e.named("f^2(x) = x"))?.root
        };
        roots.push(r);
    }
    let mut cycle = None;
    let mut cycle_multiplier = None;
    let others: Vec<f64> = roots.iter().copied().filter(|r| (r - x_l).abs() > SAME_ROOT).collect();
    'outer: for (i, &a) in others.iter().enumerate() {
        for &b in &others[i + 1..] {
            if (f_real(a, &p) - b).abs() < 1e-8 {
                cycle = Some([a, b]);
                cycle_multiplier = Some(f_real_prime(a, &p) * f_real_prime(b, &p));
                break 'outer;
            }
        }
    }
    Ok(ProbeSide {
        lambda,
        fixed_point: x_l,
        fixed_point_multiplier: f_real_prime(x_l, &p),
        roots,
        cycle,
        cycle_multiplier,
    })
}

/// Looks for a real 2-cycle of `f` at `λ* − ε` and `λ* + ε`.
pub fn period_doubling_probe(epsilon: f64) -> Result<PeriodDoublingReport> {
    let lambda_star = constants()?.lambda_star;
    if !(epsilon > 0.0 && epsilon < lambda_star / 2.0) {
        return Err(Error::invalid(format!("epsilon must lie in (0, {}), got {epsilon}", lambda_star / 2.0)));
    }
    Ok(PeriodDoublingReport {
        lambda_star,
        epsilon,
        below: probe_side(lambda_star - epsilon)?,
        above: probe_side(lambda_star + epsilon)?,
    })
}
