use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::family::ParamPoint;
use crate::paramlab::constants::BifurcationConstants;
use crate::paramlab::fixed_points::{
    imag_fixed_points, imag_two_cycles, real_fixed_points, FixedPointRecord, Stability,
};
use crate::paramlab::REGIME_TOL;

/// The nine parameter ranges with distinct Fatou/Julia descriptions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeId {
    /// `0 < λ ≤ λ**`
    UpToChaosThreshold,
    /// `λ** < λ < λ*`
    BelowPeriodDoubling,
    /// `λ = λ*`
    AtPeriodDoubling,
    /// `λ* < λ < 1`
    RealFixedBasins,
    /// `λ = 1`
    ParabolicOrigin,
    /// `1 < λ < λ₁`
    OriginBasinOnly,
    /// `λ ∈ {λ₁, λ₂}`
    ParabolicTwoCycle,
    /// `λ₁ < λ < λ₂`
    OriginAndTwoCycle,
    /// `λ > λ₂`
    BeyondFold,
}

impl RegimeId {
    pub const ALL: [RegimeId; 9] = [
        RegimeId::UpToChaosThreshold,
        RegimeId::BelowPeriodDoubling,
        RegimeId::AtPeriodDoubling,
        RegimeId::RealFixedBasins,
        RegimeId::ParabolicOrigin,
        RegimeId::OriginBasinOnly,
        RegimeId::ParabolicTwoCycle,
        RegimeId::OriginAndTwoCycle,
        RegimeId::BeyondFold,
    ];

    pub fn range(&self) -> &'static str {
        match self {
            RegimeId::UpToChaosThreshold => "0 < λ ≤ λ**",
            RegimeId::BelowPeriodDoubling => "λ** < λ < λ*",
            RegimeId::AtPeriodDoubling => "λ = λ*",
            RegimeId::RealFixedBasins => "λ* < λ < 1",
            RegimeId::ParabolicOrigin => "λ = 1",
            RegimeId::OriginBasinOnly => "1 < λ < λ₁",
            RegimeId::ParabolicTwoCycle => "λ ∈ {λ₁, λ₂}",
            RegimeId::OriginAndTwoCycle => "λ₁ < λ < λ₂",
            RegimeId::BeyondFold => "λ > λ₂",
        }
    }

    pub fn fatou(&self) -> &'static str {
        match self {
            RegimeId::UpToChaosThreshold | RegimeId::BelowPeriodDoubling => {
                "no Siegel discs or Herman rings"
            }
            RegimeId::AtPeriodDoubling => "parabolic domains of ±x* and preimages",
            RegimeId::RealFixedBasins => "A₁(−x_λ) ∪ A₁(x_λ) ⊆ F(f_λ)",
            RegimeId::ParabolicOrigin => "parabolic domains of 0 and preimages",
            RegimeId::OriginBasinOnly => "A₁(0) ⊆ F(f_λ)",
            RegimeId::ParabolicTwoCycle => "A₁(0) and parabolic domains of ±iy_λ",
            RegimeId::OriginAndTwoCycle => "F(f_λ) = A₁(0) ∪ A₂(i a_{λ,2})",
            RegimeId::BeyondFold => "F(f_λ) = A₁(0)",
        }
    }

    pub fn julia(&self) -> &'static str {
        match self {
            RegimeId::UpToChaosThreshold => "preimages of ℝ lie in J(f_λ)",
            RegimeId::AtPeriodDoubling => "preimages of {nπ} ∪ {±x*} lie in J(f_λ)",
            RegimeId::BelowPeriodDoubling | RegimeId::RealFixedBasins | RegimeId::ParabolicOrigin => {
                "preimages of {nπ} lie in J(f_λ)"
            }
            _ => "J(f_λ) = ∂A₁(0)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeDescriptor {
    pub lambda: f64,
    pub regime_id: RegimeId,
    /// Attracting and indifferent fixed points and 2-cycles at this `λ`.
    pub expected_attractors: Vec<FixedPointRecord>,
    pub notes: String,
}

/// Locates `λ` on the ladder; equality with a ladder value is decided at
/// [`REGIME_TOL`].
pub fn regime_id(lambda: f64, c: &BifurcationConstants) -> RegimeId {
    let at = |v: f64| (lambda - v).abs() <= REGIME_TOL;
    if at(c.lambda_star) {
        RegimeId::AtPeriodDoubling
    } else if at(1.0) {
        RegimeId::ParabolicOrigin
    } else if at(c.lambda_1) || at(c.lambda_2) {
        RegimeId::ParabolicTwoCycle
    } else if lambda <= c.lambda_2star || at(c.lambda_2star) {
        RegimeId::UpToChaosThreshold
    } else if lambda < c.lambda_star {
        RegimeId::BelowPeriodDoubling
    } else if lambda < 1.0 {
        RegimeId::RealFixedBasins
    } else if lambda < c.lambda_1 {
        RegimeId::OriginBasinOnly
    } else if lambda < c.lambda_2 {
        RegimeId::OriginAndTwoCycle
    } else {
        RegimeId::BeyondFold
    }
}

pub fn regime(p: &ParamPoint, c: &BifurcationConstants) -> Result<RegimeDescriptor> {
    let id = regime_id(p.lambda(), c);
    let mut expected = Vec::new();
    for rec in real_fixed_points(p)?
        .into_iter()
        .chain(imag_fixed_points(p)?.into_iter().skip(1))
        .chain(imag_two_cycles(p)?)
    {
        if rec.stability != Stability::Repelling {
            expected.push(rec);
        }
    }
    Ok(RegimeDescriptor {
        lambda: p.lambda(),
        regime_id: id,
        expected_attractors: expected,
        notes: format!("{}: {}; {}", id.range(), id.fatou(), id.julia()),
    })
}
