use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::family::{f_real, ParamPoint};
use crate::paramlab::singular::real_critical_point;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

/// Turbulence check for `f` on `J = [0, p_λ]`, `K = [p_λ, π]`.
///
/// `f` increases on `J` and decreases on `K`, with `f(0) = f(π) = 0`, so
/// `f(J) = f(K) = [0, f(p_λ)]` and `J ∪ K ⊆ f(J) ∩ f(K)` holds exactly when
/// `f(p_λ) ≥ π`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChaosCertificate {
    pub lambda: f64,
    pub p_lambda: f64,
    pub f_at_p: f64,
    #[serde(rename = "J")]
    pub j: Interval,
    #[serde(rename = "K")]
    pub k: Interval,
    pub covered: bool,
}

pub fn chaos_certificate(p: &ParamPoint) -> Result<ChaosCertificate> {
    let p0 = real_critical_point(p, 0)?;
    let f_at_p = f_real(p0, p);
    Ok(ChaosCertificate {
        lambda: p.lambda(),
        p_lambda: p0,
        f_at_p,
        j: Interval { lo: 0.0, hi: p0 },
        k: Interval { lo: p0, hi: PI },
        covered: f_at_p >= PI,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paramlab::constants;

    #[test]
    fn examples() {
        let cert = |l: f64| chaos_certificate(&ParamPoint::new(l).unwrap()).unwrap();
        assert!(cert(0.02).covered);
        assert!(!cert(1.0).covered);
        let c = constants().unwrap();
        let at = cert(c.lambda_2star);
        assert!((at.f_at_p - PI).abs() < 1e-6);
        assert!((at.p_lambda - c.witness_p_2star).abs() < 1e-9);
    }

    #[test]
    fn covered_iff_below_threshold() {
        let c = constants().unwrap();
        for l in [0.001, 0.005, 0.015, 0.0251, 0.026, 0.03, 0.117, 0.5, 1.0, 4.0] {
            let cert = chaos_certificate(&ParamPoint::new(l).unwrap()).unwrap();
            assert_eq!(cert.covered, l <= c.lambda_2star, "lambda = {l}");
            assert_eq!(cert.covered, cert.f_at_p >= PI);
            assert_eq!(cert.j.hi, cert.k.lo);
        }
    }

    #[test]
    fn monotone_on_both_halves() {
        let p = ParamPoint::new(0.01).unwrap();
        let cert = chaos_certificate(&p).unwrap();
        let n = 2000;
        let mut prev = f_real(0.0, &p);
        for i in 1..=n {
            let x = cert.p_lambda * i as f64 / n as f64;
            let v = f_real(x, &p);
            assert!(v >= prev);
            prev = v;
        }
        for i in 1..=n {
            let x = cert.p_lambda + (PI - cert.p_lambda) * i as f64 / n as f64;
            let v = f_real(x, &p);
            assert!(v <= prev);
            prev = v;
        }
    }
}
