//! Output `Y = A·X^α·M^(1-α)`, with `X` the task composite and `M` a factor
//! in fixed supply (land, energy, minerals).

use crate::distributions::{AutomationPath, TaskDistribution};
use crate::dynamics::{
    simulate_with, NaturalSchedule, Policy, PreferenceParams, SolverSettings, Technology, Terminal, Trajectory,
};
use crate::error::{Error, Result};
use crate::static_economy::{ces_composite, EconomyParams, Region, StaticEquilibrium};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedFactorParams {
    pub alpha: f64,
    pub m: f64,
}

impl FixedFactorParams {
    pub fn new(alpha: f64, m: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::domain(format!("alpha must lie in (0,1], got {alpha}")));
        }
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::domain(format!("M must be > 0, got {m}")));
        }
        Ok(Self { alpha, m })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedFactorEquilibrium {
    pub eq: StaticEquilibrium,
    /// Return to the fixed factor.
    pub q: f64,
}

pub fn fixed_factor_equilibrium_with_share(
    params: &EconomyParams,
    ff: &FixedFactorParams,
    k: f64,
    phi: f64,
    u: f64,
) -> Result<FixedFactorEquilibrium> {
    if !(k >= 0.0) || !k.is_finite() || !(0.0..=1.0).contains(&phi) || !(0.0..=1.0).contains(&u) {
        return Err(Error::domain("fixed-factor inputs out of range"));
    }
    let EconomyParams { a, sigma, l } = *params;
    let FixedFactorParams { alpha, m } = *ff;
    // the region threshold does not depend on α or M
    if u > 0.0 && k * u > phi * l {
        let (x, xk, xl) = ces_composite(sigma, k, l, phi, u);
        let y = a * x.powf(alpha) * m.powf(1.0 - alpha);
        let w = alpha * y / x * xl;
        let r = alpha * y / x * xk;
        return Ok(FixedFactorEquilibrium {
            eq: StaticEquilibrium { region: Region::Region1, y, w, r, labor_share: w * l / y, k: k / phi, ell: l / u },
            q: (1.0 - alpha) * y / m,
        });
    }
    let n = k + l;
    let y = a * n.powf(alpha) * m.powf(1.0 - alpha);
    let w = alpha * y / n;
    Ok(FixedFactorEquilibrium {
        eq: StaticEquilibrium { region: Region::Region2, y, w, r: w, labor_share: w * l / y, k: n, ell: n },
        q: (1.0 - alpha) * y / m,
    })
}

pub fn fixed_factor_equilibrium(
    params: &EconomyParams,
    ff: &FixedFactorParams,
    k: f64,
    phi: f64,
) -> Result<FixedFactorEquilibrium> {
    fixed_factor_equilibrium_with_share(params, ff, k, phi, 1.0 - phi)
}

/// Long-run capital once labor and capital are perfect substitutes:
/// `αA(K*+L)^(α-1)M^(1-α) = ρ + δ`. Returns `(K*, labor share)`.
pub fn fixed_factor_steady_capital(
    params: &EconomyParams,
    prefs: &PreferenceParams,
    ff: &FixedFactorParams,
) -> Result<(f64, f64)> {
    let FixedFactorParams { alpha, m } = *ff;
    let target = prefs.rho + prefs.delta;
    if alpha >= 1.0 {
        return if params.a > target {
            Ok((f64::INFINITY, 0.0))
        } else {
            Err(Error::domain("no steady state: A <= rho + delta"))
        };
    }
    let n = (alpha * params.a * m.powf(1.0 - alpha) / target).powf(1.0 / (1.0 - alpha));
    let k = n - params.l;
    if !(k > 0.0) {
        return Err(Error::domain("no positive steady-state capital"));
    }
    Ok((k, alpha * params.l / n))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedFactorTech {
    pub params: EconomyParams,
    pub ff: FixedFactorParams,
}

impl Technology for FixedFactorTech {
    fn params(&self) -> &EconomyParams {
        &self.params
    }

    fn equilibrium(&self, k: f64, phi: f64, u: f64) -> Result<StaticEquilibrium> {
        Ok(fixed_factor_equilibrium_with_share(&self.params, &self.ff, k, phi, u)?.eq)
    }
}

/// Ramsey runs shoot for `F_K = ρ + δ` at the horizon, the fixed-factor steady state.
pub fn simulate_fixed_factor(
    dist: &TaskDistribution,
    path: &AutomationPath,
    params: &EconomyParams,
    prefs: &PreferenceParams,
    ff: &FixedFactorParams,
    policy: Policy,
    k0: f64,
    settings: &SolverSettings,
) -> Result<Trajectory> {
    let tech = FixedFactorTech { params: *params, ff: *ff };
    let sched = NaturalSchedule { dist: *dist, path: *path };
    let terminal = Terminal::Return(prefs.rho + prefs.delta);
    simulate_with(&tech, &sched, prefs, policy, k0, settings, Some(terminal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::static_economy::static_equilibrium;
    use approx::assert_relative_eq;

    #[test]
    fn alpha_one_is_baseline() {
        let p = EconomyParams::new(0.5, 0.5, 1.0).unwrap();
        let ff = FixedFactorParams::new(1.0, 3.0).unwrap();
        for &(k, phi) in &[(4.6, 0.608), (1.0, 0.7), (2.0, 0.1)] {
            let a = fixed_factor_equilibrium(&p, &ff, k, phi).unwrap();
            let b = static_equilibrium(&p, k, phi).unwrap();
            assert_relative_eq!(a.eq.y, b.y, max_relative = 1e-13);
            assert_relative_eq!(a.eq.w, b.w, max_relative = 1e-13);
            assert_eq!(a.q, 0.0);
        }
    }

    #[test]
    fn steady_capital_matches_first_order_condition() {
        let p = EconomyParams::new(0.5, 0.5, 1.0).unwrap();
        let pr = PreferenceParams::new(0.04, 2.0, 0.1).unwrap();
        let ff = FixedFactorParams::new(0.9, 1.0).unwrap();
        let (k, _) = fixed_factor_steady_capital(&p, &pr, &ff).unwrap();
        let foc = |k: f64| 0.9 * 0.5 * (k + 1.0f64).powf(-0.1) - 0.14;
        let (mut lo, mut hi) = (0.0, 1e9);
        for _ in 0..300 {
            let mid = 0.5 * (lo + hi);
            if foc(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert_relative_eq!(k, 0.5 * (lo + hi), max_relative = 1e-8);
    }
}
