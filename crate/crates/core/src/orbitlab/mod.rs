//! Orbit iteration and classification, chaos certification on the real
//! line, bifurcation-diagram sampling and the period-doubling probe.

mod bifurcation;
mod chaos;
mod probe;

pub use bifurcation::{bifurcation_scan, parse_scan_csv, Axis, BifurcationRow, BifurcationTable, RowStatus, ScanRequest};
pub use chaos::{chaos_certificate, ChaosCertificate, Interval};
pub use probe::{period_doubling_probe, PeriodDoublingReport, ProbeSide};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::family::{eval_f, Eval, ParamPoint};
use crate::paramlab::{constants, imag_two_cycles, real_fixed_points, Location, Stability, REGIME_TOL};

pub const DEFAULT_MAX_ITER: usize = 10_000;
pub const DEFAULT_EPS_ATTR: f64 = 1e-9;
pub const PARABOLIC_MAX_ITER: usize = 1_000_000;
pub const PARABOLIC_EPS_ATTR: f64 = 1e-5;
pub const ESCAPE_STREAK: u32 = 3;

/// Escape radius `max(10³, 10√λ)`.
pub fn escape_radius(p: &ParamPoint) -> f64 {
    (10.0 * p.pole_ordinate()).max(1e3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttractorId {
    Origin,
    RealFixedPlus,
    RealFixedMinus,
    ImagTwoCycle,
}

impl AttractorId {
    /// Image under `z ↦ −z`.
    pub fn negate(self) -> Self {
        match self {
            AttractorId::RealFixedPlus => AttractorId::RealFixedMinus,
            AttractorId::RealFixedMinus => AttractorId::RealFixedPlus,
            other => other,
        }
    }

    /// Image under `z ↦ z̄`; every attractor here is conjugation invariant.
    pub fn conj(self) -> Self {
        self
    }
}

/// An attracting (or, at parabolic parameters, indifferent) fixed point or
/// 2-cycle used as a classification target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Attractor {
    pub id: AttractorId,
    pub points: Vec<Complex64>,
    pub multiplier: f64,
    pub stability: Stability,
}

/// Non-repelling fixed points and 2-cycles at `λ`, in [`AttractorId`] order.
pub fn attractor_inventory(p: &ParamPoint) -> Result<Vec<Attractor>> {
    let mut out = Vec::new();
    for rec in real_fixed_points(p)? {
        if rec.stability == Stability::Repelling {
            continue;
        }
        let id = match rec.location {
            Location::RealAxis(0.0) => AttractorId::Origin,
            Location::RealAxis(x) if x > 0.0 => AttractorId::RealFixedPlus,
            _ => AttractorId::RealFixedMinus,
        };
        out.push(Attractor { id, points: vec![rec.point()], multiplier: rec.multiplier, stability: rec.stability });
    }
    if let Some(rec) = imag_two_cycles(p)?.into_iter().find(|r| r.stability != Stability::Repelling) {
        let a = rec.point();
        out.push(Attractor {
            id: AttractorId::ImagTwoCycle,
            points: vec![a, -a],
            multiplier: rec.multiplier,
            stability: rec.stability,
        });
    }
    out.sort_by_key(|a| a.id);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitOptions {
    pub max_iter: usize,
    pub eps_attr: f64,
    pub escape_radius: f64,
    pub escape_streak: u32,
}

impl OrbitOptions {
    /// Hyperbolic defaults, or the slow-convergence settings when `λ` sits on
    /// a ladder value.
    pub fn for_param(p: &ParamPoint) -> Result<Self> {
        let parabolic = constants()?.on_ladder(p.lambda(), REGIME_TOL);
        let (max_iter, eps_attr) = if parabolic {
            (PARABOLIC_MAX_ITER, PARABOLIC_EPS_ATTR)
        } else {
            (DEFAULT_MAX_ITER, DEFAULT_EPS_ATTR)
        };
        Ok(OrbitOptions { max_iter, eps_attr, escape_radius: escape_radius(p), escape_streak: ESCAPE_STREAK })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "attractor", rename_all = "snake_case")]
pub enum OrbitStatus {
    ConvergedTo(AttractorId),
    Escaped,
    PoleHit,
    Undecided,
}

impl OrbitStatus {
    /// Image of the status under `z ↦ −z`.
    pub fn negate(self) -> Self {
        match self {
            OrbitStatus::ConvergedTo(a) => OrbitStatus::ConvergedTo(a.negate()),
            s => s,
        }
    }

    pub fn conj(self) -> Self {
        match self {
            OrbitStatus::ConvergedTo(a) => OrbitStatus::ConvergedTo(a.conj()),
            s => s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitOutcome {
    pub status: OrbitStatus,
    pub iterations: usize,
    pub final_value: Complex64,
}

/// Nearest-point index and distance to a 2-cycle.
fn nearest(points: &[Complex64], z: Complex64) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (k, &c) in points.iter().enumerate() {
        let d = (z - c).norm();
        if d < best.1 {
            best = (k, d);
        }
    }
    best
}

fn converged(attractors: &[Attractor], hist: &[Complex64; 4], filled: usize, z: Complex64, eps: f64) -> Option<AttractorId> {
    for a in attractors {
        match a.points.as_slice() {
            [c] => {
                if (z - *c).norm() < eps {
                    return Some(a.id);
                }
            }
            pts => {
                let (k, d) = nearest(pts, z);
                if d >= eps || filled < 4 {
                    continue;
                }
                // the last four iterates must visit the cycle points alternately
                let gap = (pts[0] - pts[1]).norm();
                let mut expect = k;
                let mut ok = true;
                for back in 0..4 {
                    let w = hist[(filled - 1 - back) % 4];
                    let (kk, dd) = nearest(pts, w);
                    if kk != expect || dd > 0.1 * gap {
                        ok = false;
                        break;
                    }
                    expect = 1 - expect;
                }
                if ok {
                    return Some(a.id);
                }
            }
        }
    }
    None
}

/// Iterates `f` from `z0` until the orbit reaches an attractor, escapes,
/// hits a pole or exhausts `max_iter`.
pub fn iterate_orbit(z0: Complex64, p: &ParamPoint, attractors: &[Attractor], opts: &OrbitOptions) -> OrbitOutcome {
    let mut z = z0;
    let mut hist = [Complex64::new(0.0, 0.0); 4];
    let mut filled = 0usize;
    let mut streak = 0u32;
    let mut n = 0usize;
    loop {
        hist[filled % 4] = z;
        filled += 1;
        if let Some(id) = converged(attractors, &hist, filled, z, opts.eps_attr) {
            return OrbitOutcome { status: OrbitStatus::ConvergedTo(id), iterations: n, final_value: z };
        }
        if n >= opts.max_iter {
            return OrbitOutcome { status: OrbitStatus::Undecided, iterations: n, final_value: z };
        }
        let w = match eval_f(z, p) {
            Eval::Value(w) => w,
            Eval::PoleProximity => {
                return OrbitOutcome { status: OrbitStatus::PoleHit, iterations: n, final_value: z };
            }
            Eval::Overflow => {
                return OrbitOutcome { status: OrbitStatus::Escaped, iterations: n, final_value: z };
            }
        };
        n += 1;
        let (r_old, r_new) = (z.norm(), w.norm());
        streak = if r_new > r_old { streak + 1 } else { 0 };
        z = w;
        if r_new > opts.escape_radius && streak >= opts.escape_streak {
            return OrbitOutcome { status: OrbitStatus::Escaped, iterations: n, final_value: z };
        }
        // keep the history compact: filled only needs to be known mod 4 past 4
        if filled >= 8 {
            filled -= 4;
        }
    }
}

/// A parameter with its attractor inventory and orbit options, ready to
/// classify many seeds.
#[derive(Debug, Clone)]
pub struct Classifier {
    pub param: ParamPoint,
    pub attractors: Vec<Attractor>,
    pub options: OrbitOptions,
}

impl Classifier {
    pub fn new(p: &ParamPoint) -> Result<Self> {
        Ok(Classifier { param: *p, attractors: attractor_inventory(p)?, options: OrbitOptions::for_param(p)? })
    }

    pub fn with_options(p: &ParamPoint, options: OrbitOptions) -> Result<Self> {
        Ok(Classifier { param: *p, attractors: attractor_inventory(p)?, options })
    }

    pub fn classify(&self, z0: Complex64) -> OrbitOutcome {
        iterate_orbit(z0, &self.param, &self.attractors, &self.options)
    }

    pub fn attractor(&self, id: AttractorId) -> Option<&Attractor> {
        self.attractors.iter().find(|a| a.id == id)
    }
}

pub fn classify_real_orbit(x0: f64, p: &ParamPoint) -> Result<OrbitOutcome> {
    Ok(Classifier::new(p)?.classify(Complex64::new(x0, 0.0)))
}

/// Classifies the orbit of `i y0`, i.e. the `h`-orbit of `y0`.
pub fn classify_imag_orbit(y0: f64, p: &ParamPoint) -> Result<OrbitOutcome> {
    Ok(Classifier::new(p)?.classify(Complex64::new(0.0, y0)))
}
