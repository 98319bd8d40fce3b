//! Workers differ in skill. A share Υ(I) of them can only do tasks that
//! machines already do, so they compete with capital; the rest keep a scarce
//! skill and are paid the marginal product of the remaining labor.

use crate::distributions::{phi_cdf, TaskDistribution};
use crate::error::{Error, Result};
use crate::static_economy::{static_equilibrium, EconomyParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkillDistribution {
    pub upsilon: TaskDistribution,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkillWages {
    pub substituted_share: f64,
    pub w_low: f64,
    pub w_high: f64,
    /// Rental rate of capital in the shifted economy.
    pub r: f64,
    pub y: f64,
}

/// Substituted workers join the capital stock; `w_high = F_L(K + ΥL, (1-Υ)L)`.
pub fn skill_wages(params: &EconomyParams, skills: &SkillDistribution, k: f64, phi: f64, i: f64) -> Result<SkillWages> {
    let ups = phi_cdf(&skills.upsilon, i)?;
    if ups > phi {
        return Err(Error::domain(format!("skill share {ups} exceeds automated share {phi}")));
    }
    if ups >= 1.0 {
        return Err(Error::domain("no unsubstituted workers left"));
    }
    let shifted = EconomyParams { l: params.l * (1.0 - ups), ..*params };
    let eq = static_equilibrium(&shifted, k + params.l * ups, phi)?;
    Ok(SkillWages { substituted_share: ups, w_low: params.a, w_high: eq.w, r: eq.r, y: eq.y })
}
