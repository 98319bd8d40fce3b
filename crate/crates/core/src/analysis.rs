//! Long-run regimes for Pareto automation: whether capital accumulation can
//! keep up with the rate `λg` at which the unautomated share shrinks.

use crate::dynamics::{bgp_growth, long_run_savings, PreferenceParams, TrajectoryPoint};
use crate::error::{Error, Result};
use crate::static_economy::{EconomyParams, Region};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Automation outpaces any feasible accumulation; the economy ends in Region 2 with `w = A`.
    Collapse,
    /// Capital grows at the linear-economy rate and wages grow at `(g_AK - λg)/σ`.
    CapitalConstrained,
    /// Automation is the bottleneck; wages grow at `λg/(1-σ)`.
    AutomationConstrained,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Collapse => "collapse",
            Regime::CapitalConstrained => "capital_constrained",
            Regime::AutomationConstrained => "automation_constrained",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub regime: Regime,
    pub asymptotic_wage_growth: f64,
    pub asymptotic_labor_share: f64,
    pub lambda_g_hi: f64,
    pub lambda_g_lo: f64,
}

fn thresholds(params: &EconomyParams, prefs: &PreferenceParams) -> Result<(f64, f64)> {
    let hi = bgp_growth(prefs, params.a)?;
    Ok((hi, (1.0 - params.sigma) * hi))
}

pub fn classify_long_run(params: &EconomyParams, prefs: &PreferenceParams, lambda_g: f64) -> Result<RegimeReport> {
    if !(lambda_g > 0.0) {
        return Err(Error::domain(format!("lambda_g must be > 0, got {lambda_g}")));
    }
    let (hi, lo) = thresholds(params, prefs)?;
    let s = params.sigma;
    let (regime, g, ls) = if lambda_g > hi {
        (Regime::Collapse, 0.0, 0.0)
    } else if lambda_g > lo {
        // Ω_t = K^((σ-1)/σ)(Φ/(1-Φ))^(1/σ) grows at (λg - (1-σ)g_AK)/σ > 0, so the share goes to 0
        (Regime::CapitalConstrained, (hi - lambda_g) / s, 0.0)
    } else {
        (
            Regime::AutomationConstrained,
            lambda_g / (1.0 - s),
            case3_share(params, prefs, lambda_g)?,
        )
    };
    Ok(RegimeReport {
        regime,
        asymptotic_wage_growth: g,
        asymptotic_labor_share: ls,
        lambda_g_hi: hi,
        lambda_g_lo: lo,
    })
}

fn case3_share(params: &EconomyParams, prefs: &PreferenceParams, lambda_g: f64) -> Result<f64> {
    let s = params.sigma;
    let num = (params.a - prefs.rho - prefs.delta + prefs.eta * prefs.delta) / prefs.eta;
    let den = lambda_g / (1.0 - s) + prefs.delta;
    Ok(1.0 - (num / den).powf((s - 1.0) / s))
}

pub fn labor_share_limit_case3(params: &EconomyParams, prefs: &PreferenceParams, lambda_g: f64) -> Result<f64> {
    let (_, lo) = thresholds(params, prefs)?;
    if !(lambda_g > 0.0 && lambda_g <= lo) {
        return Err(Error::domain(format!(
            "labor share limit applies for 0 < lambda_g <= {lo}, got {lambda_g}"
        )));
    }
    case3_share(params, prefs, lambda_g)
}

/// Predicted asymptotic wage growth at each `λg`.
pub fn wage_growth_curve(params: &EconomyParams, prefs: &PreferenceParams, grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    grid.iter()
        .map(|&lg| Ok((lg, classify_long_run(params, prefs, lg)?.asymptotic_wage_growth)))
        .collect()
}

/// Automation rate that maximizes long-run wage growth, and that growth rate.
pub fn wage_max_rate(params: &EconomyParams, prefs: &PreferenceParams) -> Result<(f64, f64)> {
    if !(params.a > prefs.rho + prefs.delta) {
        return Err(Error::domain("need A > rho + delta"));
    }
    let (hi, lo) = thresholds(params, prefs)?;
    Ok((lo, hi))
}

/// `Ω = K^((σ-1)/σ)·(Φ/(1-Φ))^(1/σ)`; the labor share is `L^e/(Ω + L^e)`.
pub fn omega(params: &EconomyParams, point: &TrajectoryPoint) -> Result<f64> {
    if point.region != Region::Region1 || point.unautomated <= 0.0 {
        return Err(Error::domain("omega is defined in Region 1 with Φ < 1"));
    }
    let s = params.sigma;
    Ok(((s - 1.0) / s * point.k.ln() + (point.phi.ln() - point.unautomated.ln()) / s).exp())
}

/// `s∞·A - δ > λg`: the savings floor that rules out collapse.
pub fn savings_floor_holds(params: &EconomyParams, prefs: &PreferenceParams, lambda_g: f64) -> Result<bool> {
    Ok(long_run_savings(prefs, params.a)? * params.a - prefs.delta > lambda_g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn table() -> (EconomyParams, PreferenceParams) {
        (EconomyParams::new(0.5, 0.5, 1.0).unwrap(), PreferenceParams::new(0.04, 2.0, 0.1).unwrap())
    }

    #[test]
    fn regimes_at_table_values() {
        let (p, pr) = table();
        let r = classify_long_run(&p, &pr, 0.01).unwrap();
        assert_eq!(r.regime, Regime::AutomationConstrained);
        assert_relative_eq!(r.asymptotic_wage_growth, 0.02, max_relative = 1e-14);
        assert_relative_eq!(r.asymptotic_labor_share, 1.0 - 0.12 / 0.28, max_relative = 1e-12);
        let r = classify_long_run(&p, &pr, 0.20).unwrap();
        assert_eq!((r.regime, r.asymptotic_wage_growth, r.asymptotic_labor_share), (Regime::Collapse, 0.0, 0.0));
        let r = classify_long_run(&p, &pr, 0.12).unwrap();
        assert_eq!(r.regime, Regime::CapitalConstrained);
        assert_relative_eq!(r.asymptotic_wage_growth, 0.12, max_relative = 1e-12);
        let r = classify_long_run(&p, &pr, r.lambda_g_hi).unwrap();
        assert_eq!(r.regime, Regime::CapitalConstrained);
        assert_eq!(r.asymptotic_wage_growth, 0.0);
    }

    #[test]
    fn peak_and_limits() {
        let (p, pr) = table();
        let (lg, g) = wage_max_rate(&p, &pr).unwrap();
        assert_relative_eq!(lg, 0.09, max_relative = 1e-14);
        assert_relative_eq!(g, 0.18, max_relative = 1e-14);
        let near_one = EconomyParams::new(0.5, 0.999999, 1.0).unwrap();
        assert!(wage_max_rate(&near_one, &pr).unwrap().0 < 1e-6);
        assert!(labor_share_limit_case3(&p, &pr, 0.1).is_err());
        assert!(savings_floor_holds(&p, &pr, 0.12).unwrap());
        assert!(!savings_floor_holds(&p, &pr, 0.20).unwrap());
    }
}
