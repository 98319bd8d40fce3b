//! A discrete mass Δ of tasks becomes automatable at once, but only capital
//! built for those tasks (say, compute) can perform them. Factor returns as
//! that specific capital `k(I_t)` is accumulated, holding K and L fixed.

use crate::error::{Error, Result};
use crate::static_economy::EconomyParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecificCapitalState {
    pub k: f64,
    pub l: f64,
    /// Automated share before the jump, Φ(I_t⁻).
    pub phi_minus: f64,
    /// Δ_t = Φ(I_t) - Φ(I_t⁻).
    pub delta_mass: f64,
    /// Specific capital per newly automated task.
    pub k_spec: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecificReturns {
    pub w: f64,
    pub r_traditional: f64,
    pub r_specific: f64,
    pub phase: u8,
    pub y: f64,
}

impl SpecificCapitalState {
    fn validate(&self) -> Result<()> {
        let ok = self.k > 0.0
            && self.l > 0.0
            && self.phi_minus > 0.0
            && self.delta_mass > 0.0
            && self.k_spec >= 0.0
            && self.phi_minus + self.delta_mass < 1.0;
        if !ok {
            return Err(Error::domain(format!("invalid specific-capital state {self:?}")));
        }
        let (k1, k2) = self.thresholds();
        if !(k1 < k2) {
            return Err(Error::domain(format!(
                "phases need labor to stay scarce after the jump (k1 < k2), got k1 = {k1}, k2 = {k2}"
            )));
        }
        Ok(())
    }

    /// `(k1, k2)`: newly automated tasks fully staffed by machines, and
    /// specific capital per task equal to traditional capital per task.
    pub fn thresholds(&self) -> (f64, f64) {
        let phi = self.phi_minus + self.delta_mass;
        (self.l / (1.0 - phi), self.k / self.phi_minus)
    }
}

/// Evaluate `A·[Σ x_j^e m_j^(1/σ)]^(σ/(σ-1))` and the marginal products
/// `A^e Y^(1/σ) x_j^(-1/σ) m_j^(1/σ)`.
fn ces(a: f64, sigma: f64, inputs: &[(f64, f64)]) -> (f64, Vec<f64>) {
    let e = (sigma - 1.0) / sigma;
    let s: f64 = inputs.iter().map(|&(x, m)| x.powf(e) * m.powf(1.0 / sigma)).sum();
    let y = a * s.powf(1.0 / e);
    let mp = inputs
        .iter()
        .map(|&(x, m)| a.powf(e) * y.powf(1.0 / sigma) * x.powf(-1.0 / sigma) * m.powf(1.0 / sigma))
        .collect();
    (y, mp)
}

pub fn specific_capital_returns(params: &EconomyParams, state: &SpecificCapitalState) -> Result<SpecificReturns> {
    state.validate()?;
    let SpecificCapitalState { k, l, phi_minus, delta_mass, k_spec } = *state;
    let EconomyParams { a, sigma, .. } = *params;
    let phi = phi_minus + delta_mass;
    let (k1, k2) = state.thresholds();
    let kin = k_spec * delta_mass;
    if k_spec < k1 {
        // labor and specific capital share the new tasks as perfect substitutes
        let (y, mp) = ces(a, sigma, &[(k, phi_minus), (kin + l, 1.0 - phi_minus)]);
        Ok(SpecificReturns { w: mp[1], r_traditional: mp[0], r_specific: mp[1], phase: 1, y })
    } else if k_spec < k2 {
        let (y, mp) = ces(a, sigma, &[(k, phi_minus), (kin, delta_mass), (l, 1.0 - phi)]);
        Ok(SpecificReturns { w: mp[2], r_traditional: mp[0], r_specific: mp[1], phase: 2, y })
    } else {
        let (y, mp) = ces(a, sigma, &[(k + kin, phi), (l, 1.0 - phi)]);
        Ok(SpecificReturns { w: mp[1], r_traditional: mp[0], r_specific: mp[0], phase: 3, y })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::static_economy::static_equilibrium;
    use approx::assert_relative_eq;

    fn state(k_spec: f64) -> SpecificCapitalState {
        SpecificCapitalState { k: 4.6, l: 1.0, phi_minus: 0.5, delta_mass: 0.1, k_spec }
    }

    #[test]
    fn zero_specific_capital_matches_pre_jump_economy() {
        let p = EconomyParams::new(0.5, 0.5, 1.0).unwrap();
        let r = specific_capital_returns(&p, &state(0.0)).unwrap();
        let base = static_equilibrium(&p, 4.6, 0.5).unwrap();
        assert_eq!(r.phase, 1);
        assert_eq!(r.w, r.r_specific);
        assert_relative_eq!(r.w, base.w, max_relative = 1e-13);
        assert_relative_eq!(r.r_traditional, base.r, max_relative = 1e-13);
    }

    #[test]
    fn returns_meet_at_k2() {
        let p = EconomyParams::new(0.5, 0.5, 1.0).unwrap();
        let (_, k2) = state(0.0).thresholds();
        let r = specific_capital_returns(&p, &state(k2)).unwrap();
        assert_eq!(r.phase, 3);
        let below = specific_capital_returns(&p, &state(k2 * (1.0 - 1e-12))).unwrap();
        assert_relative_eq!(below.r_specific, below.r_traditional, max_relative = 1e-8);
    }
}
