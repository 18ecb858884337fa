use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{eval_h, f_real, Eval, ParamPoint};
use crate::orbitlab::{escape_radius, ESCAPE_STREAK};
use crate::paramlab::singular::{imag_critical_ordinate, real_critical_point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Real,
    Imag,
}

impl std::str::FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(Axis::Real),
            "imag" => Ok(Axis::Imag),
            _ => Err(Error::invalid(format!("axis must be `real` or `imag`, got `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Sampled,
    Escaped,
    PoleHit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BifurcationRow {
    pub lambda: f64,
    pub status: RowStatus,
    pub ordinates: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BifurcationTable {
    pub axis: Axis,
    pub rows: Vec<BifurcationRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRequest {
    pub axis: Axis,
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    pub n_lambda: usize,
    pub n_transient: usize,
    pub n_keep: usize,
}

impl ScanRequest {
    fn validate(&self) -> Result<()> {
        if !(self.lambda_lo.is_finite() && self.lambda_hi.is_finite()) {
            return Err(Error::invalid("scan range must be finite"));
        }
        if !(self.lambda_lo > 0.0 && self.lambda_lo < self.lambda_hi) {
            return Err(Error::invalid(format!(
                "scan range needs 0 < lo < hi, got {}:{}",
                self.lambda_lo, self.lambda_hi
            )));
        }
        if self.n_lambda == 0 || self.n_keep == 0 {
            return Err(Error::invalid("steps and kept samples must be positive"));
        }
        Ok(())
    }

    /// The `k`-th sampled parameter; the endpoints are included.
    pub fn lambda_at(&self, k: usize) -> f64 {
        if self.n_lambda == 1 {
            return self.lambda_lo;
        }
        let t = k as f64 / (self.n_lambda - 1) as f64;
        (self.lambda_lo + (self.lambda_hi - self.lambda_lo) * t).min(self.lambda_hi)
    }
}

fn scan_real(p: &ParamPoint, req: &ScanRequest) -> Result<BifurcationRow> {
    let mut x = real_critical_point(p, 0)?;
    for _ in 0..req.n_transient {
        x = f_real(x, p);
    }
    let mut ordinates = Vec::with_capacity(req.n_keep);
    for _ in 0..req.n_keep {
        x = f_real(x, p);
        ordinates.push(x);
    }
    Ok(BifurcationRow { lambda: p.lambda(), status: RowStatus::Sampled, ordinates })
}

fn scan_imag(p: &ParamPoint, req: &ScanRequest) -> Result<BifurcationRow> {
    let r_esc = escape_radius(p);
    let mut y = imag_critical_ordinate(p)?;
    let mut streak = 0;
    let mut ordinates = Vec::with_capacity(req.n_keep);
    for n in 0..req.n_transient + req.n_keep {
        let next = match eval_h(y, p) {
            Eval::Value(v) => v,
            Eval::PoleProximity => {
                return Ok(BifurcationRow { lambda: p.lambda(), status: RowStatus::PoleHit, ordinates: Vec::new() })
            }
            Eval::Overflow => {
                return Ok(BifurcationRow { lambda: p.lambda(), status: RowStatus::Escaped, ordinates: Vec::new() })
            }
        };
        streak = if next.abs() > y.abs() { streak + 1 } else { 0 };
        y = next;
        if y.abs() > r_esc && streak >= ESCAPE_STREAK {
            return Ok(BifurcationRow { lambda: p.lambda(), status: RowStatus::Escaped, ordinates: Vec::new() });
        }
        if n >= req.n_transient {
            ordinates.push(y);
        }
    }
    Ok(BifurcationRow { lambda: p.lambda(), status: RowStatus::Sampled, ordinates })
}

/// Samples the long-run orbit of the critical point of the real map (seed
/// `p_{λ,0}`) or of `h` (seed `c_λ`) across a parameter range.
pub fn bifurcation_scan(req: &ScanRequest) -> Result<BifurcationTable> {
    req.validate()?;
    let row = |k: usize| -> Result<BifurcationRow> {
        let p = ParamPoint::new(req.lambda_at(k))?;
        match req.axis {
            Axis::Real => scan_real(&p, req),
            Axis::Imag => scan_imag(&p, req),
        }
    };
    #[cfg(feature = "parallel")]
    let rows = {
        use rayon::prelude::*;
        (0..req.n_lambda).into_par_iter().map(row).collect::<Result<Vec<_>>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let rows = (0..req.n_lambda).map(row).collect::<Result<Vec<_>>>()?;
    Ok(BifurcationTable { axis: req.axis, rows })
}

impl BifurcationTable {
    /// `lambda,ordinate` with one line per retained sample; rows without
    /// samples contribute no lines.
    pub fn to_csv(&self, fmt_float: impl Fn(f64) -> String) -> String {
        let mut s = String::from("lambda,ordinate\n");
        for row in &self.rows {
            let l = fmt_float(row.lambda);
            for &y in &row.ordinates {
                let _ = writeln!(s, "{l},{}", fmt_float(y));
            }
        }
        s
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.rows.iter().flat_map(|r| r.ordinates.iter().map(move |&y| (r.lambda, y)))
    }
}

/// Parses the `lambda,ordinate` CSV back into sample pairs.
pub fn parse_scan_csv(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut lines = text.lines();
    match lines.next() {
        Some("lambda,ordinate") => {}
        other => return Err(Error::invalid(format!("unexpected CSV header {other:?}"))),
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|l| {
            let (a, b) = l.split_once(',').ok_or_else(|| Error::invalid(format!("bad CSV line `{l}`")))?;
            let parse = |t: &str| t.parse::<f64>().map_err(|_| Error::invalid(format!("bad number `{t}`")));
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}
