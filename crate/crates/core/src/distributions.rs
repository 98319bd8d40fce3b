//! Task-complexity distributions and the exponential automation path.
//!
//! Everything is evaluated on the log index `x = log i`, and the unautomated
//! share `1 - Φ` (the survival function) is computed directly rather than as
//! `1 - Φ`. Pareto survival `exp(-λx)` stays exact long after `Φ` rounds to 1.

use crate::error::{Error, Result};

/// Below this the bounded families are treated as fully automated.
const SUPPORT_EDGE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TaskDistribution {
    /// `Φ(i) = 1 - i^(-λ)`.
    Pareto { lambda: f64 },
    /// `Φ(i) = 1 - (1 - log i / log Imax)^β`, equal to 1 above `Imax`.
    PowerBounded { beta: f64, log_imax: f64 },
    /// `ω·Φ_power + (1-ω)·Φ_pareto` on a shared index.
    Mixture {
        omega: f64,
        lambda: f64,
        beta: f64,
        log_imax: f64,
    },
}

/// `I(t) = I0·e^(g t)`, stored as `log I0` to keep large indices finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutomationPath {
    pub log_i0: f64,
    pub g: f64,
}

impl AutomationPath {
    pub fn new(i0: f64, g: f64) -> Result<Self> {
        if !(i0 >= 1.0) || !i0.is_finite() {
            return Err(Error::domain(format!("I0 must be a finite index >= 1, got {i0}")));
        }
        Self::from_log(i0.ln(), g)
    }

    pub fn from_log(log_i0: f64, g: f64) -> Result<Self> {
        if !(log_i0 >= 0.0) || !log_i0.is_finite() {
            return Err(Error::domain(format!("log I0 must be finite and >= 0, got {log_i0}")));
        }
        if !(g > 0.0) || !g.is_finite() {
            return Err(Error::domain(format!("path growth g must be > 0, got {g}")));
        }
        Ok(Self { log_i0, g })
    }

    pub fn log_index(&self, t: f64) -> f64 {
        self.log_i0 + self.g * t
    }

    /// May be `inf` for long horizons; use `log_index` for arithmetic.
    pub fn index(&self, t: f64) -> f64 {
        self.log_index(t).exp()
    }
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::domain(format!("{name} must lie in [0,1], got {v}")));
    }
    Ok(())
}

fn check_pos(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::domain(format!("{name} must be finite and > 0, got {v}")));
    }
    Ok(())
}

fn power_survival(beta: f64, log_imax: f64, x: f64) -> f64 {
    let r = 1.0 - x / log_imax;
    if r < SUPPORT_EDGE {
        0.0
    } else {
        r.powf(beta)
    }
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    // f increasing, f(lo) <= 0 <= f(hi)
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= tol * (1.0 + lo.abs()) {
            break;
        }
    }
    0.5 * (lo + hi)
}

impl TaskDistribution {
    pub fn pareto(lambda: f64) -> Result<Self> {
        check_pos("lambda", lambda)?;
        Ok(TaskDistribution::Pareto { lambda })
    }

    pub fn power_bounded(beta: f64, imax: f64) -> Result<Self> {
        check_pos("beta", beta)?;
        if !(imax > 1.0) {
            return Err(Error::domain(format!("Imax must exceed 1, got {imax}")));
        }
        Ok(TaskDistribution::PowerBounded { beta, log_imax: imax.ln() })
    }

    pub fn mixture(omega: f64, lambda: f64, beta: f64, imax: f64) -> Result<Self> {
        check_unit("omega", omega)?;
        check_pos("lambda", lambda)?;
        check_pos("beta", beta)?;
        if !(imax > 1.0) {
            return Err(Error::domain(format!("Imax must exceed 1, got {imax}")));
        }
        Ok(TaskDistribution::Mixture { omega, lambda, beta, log_imax: imax.ln() })
    }

    /// Pareto distribution and path with `Φ(I0) = phi0` and decay rate `λg` of `1-Φ(t)`.
    pub fn calibrate_pareto(phi0: f64, lambda_g: f64, g: f64) -> Result<(Self, AutomationPath)> {
        check_open_unit("phi0", phi0)?;
        check_pos("lambda_g", lambda_g)?;
        check_pos("g", g)?;
        let lambda = lambda_g / g;
        let log_i0 = -(1.0 - phi0).ln() / lambda;
        Ok((Self::pareto(lambda)?, AutomationPath::from_log(log_i0, g)?))
    }

    /// Power family with `Φ(I0) = phi0` and full automation exactly `T` years later.
    pub fn calibrate_power(phi0: f64, t_full: f64, beta: f64, g: f64) -> Result<(Self, AutomationPath)> {
        check_open_unit("phi0", phi0)?;
        check_pos("T", t_full)?;
        check_pos("beta", beta)?;
        check_pos("g", g)?;
        // (gT / log Imax)^β = 1 - Φ0
        let log_imax = g * t_full * (1.0 - phi0).powf(-1.0 / beta);
        let log_i0 = log_imax - g * t_full;
        let dist = TaskDistribution::PowerBounded { beta, log_imax };
        Ok((dist, AutomationPath::from_log(log_i0, g)?))
    }

    /// Mixture on a common index: the power component completes `T` years
    /// after `I0`, the Pareto tail decays at `λg`, and `log I0` is chosen so
    /// that the mixture equals `phi0` at `t = 0`.
    pub fn calibrate_mixture(
        phi0: f64,
        omega: f64,
        lambda_g: f64,
        t_full: f64,
        beta: f64,
        g: f64,
    ) -> Result<(Self, AutomationPath)> {
        check_open_unit("phi0", phi0)?;
        check_unit("omega", omega)?;
        check_pos("lambda_g", lambda_g)?;
        check_pos("T", t_full)?;
        check_pos("beta", beta)?;
        check_pos("g", g)?;
        let lambda = lambda_g / g;
        let span = g * t_full;
        let mix = |x0: f64| {
            let pow = 1.0 - (span / (x0 + span)).powf(beta);
            let par = 1.0 - (-lambda * x0).exp();
            omega * pow + (1.0 - omega) * par - phi0
        };
        let mut hi = 1.0;
        while mix(hi) < 0.0 {
            hi *= 2.0;
            if hi > 1e300 {
                return Err(Error::domain("mixture calibration has no root"));
            }
        }
        let log_i0 = if mix(0.0) >= 0.0 { 0.0 } else { bisect(mix, 0.0, hi, 1e-15) };
        let dist = TaskDistribution::Mixture { omega, lambda, beta, log_imax: log_i0 + span };
        Ok((dist, AutomationPath::from_log(log_i0, g)?))
    }

    /// `1 - Φ` at log index `x >= 0`.
    pub fn survival_log(&self, x: f64) -> f64 {
        match *self {
            TaskDistribution::Pareto { lambda } => (-lambda * x).exp(),
            TaskDistribution::PowerBounded { beta, log_imax } => power_survival(beta, log_imax, x),
            TaskDistribution::Mixture { omega, lambda, beta, log_imax } => {
                omega * power_survival(beta, log_imax, x) + (1.0 - omega) * (-lambda * x).exp()
            }
        }
    }

    pub fn cdf_log(&self, x: f64) -> f64 {
        1.0 - self.survival_log(x)
    }

    /// `dΦ/d(log i)`, which equals `φ(i)·i`.
    pub fn log_density(&self, x: f64) -> f64 {
        let pow = |beta: f64, log_imax: f64| {
            let r = 1.0 - x / log_imax;
            if r <= 0.0 {
                0.0
            } else {
                beta * r.powf(beta - 1.0) / log_imax
            }
        };
        match *self {
            TaskDistribution::Pareto { lambda } => lambda * (-lambda * x).exp(),
            TaskDistribution::PowerBounded { beta, log_imax } => pow(beta, log_imax),
            TaskDistribution::Mixture { omega, lambda, beta, log_imax } => {
                omega * pow(beta, log_imax) + (1.0 - omega) * lambda * (-lambda * x).exp()
            }
        }
    }

    /// Upper end of the support in log index, if bounded.
    pub fn log_support_end(&self) -> Option<f64> {
        match *self {
            TaskDistribution::Pareto { .. } => None,
            TaskDistribution::PowerBounded { log_imax, .. } => Some(log_imax),
            TaskDistribution::Mixture { omega, log_imax, .. } => (omega >= 1.0).then_some(log_imax),
        }
    }

    /// Asymptotic decay rate of `1-Φ` per unit log index, for unbounded families.
    pub fn tail_lambda(&self) -> Option<f64> {
        match *self {
            TaskDistribution::Pareto { lambda } => Some(lambda),
            TaskDistribution::PowerBounded { .. } => None,
            TaskDistribution::Mixture { omega, lambda, .. } => (omega < 1.0).then_some(lambda),
        }
    }
}

fn check_open_unit(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::domain(format!("{name} must lie in (0,1), got {v}")));
    }
    Ok(())
}

fn check_index(i: f64) -> Result<f64> {
    if !(i >= 1.0) {
        return Err(Error::domain(format!("task index must be >= 1, got {i}")));
    }
    Ok(i.ln())
}

pub fn phi_cdf(dist: &TaskDistribution, i: f64) -> Result<f64> {
    Ok(dist.cdf_log(check_index(i)?))
}

pub fn phi_density(dist: &TaskDistribution, i: f64) -> Result<f64> {
    let x = check_index(i)?;
    Ok(dist.log_density(x) / i)
}

/// `Φ(I(t))`.
pub fn automated_fraction(dist: &TaskDistribution, path: &AutomationPath, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::domain(format!("time must be >= 0, got {t}")));
    }
    Ok(dist.cdf_log(path.log_index(t)))
}

/// `1 - Φ(I(t))`, accurate when `Φ` is within rounding of 1.
pub fn unautomated_share(dist: &TaskDistribution, path: &AutomationPath, t: f64) -> f64 {
    dist.survival_log(path.log_index(t))
}

pub fn time_to_fraction(dist: &TaskDistribution, path: &AutomationPath, target: f64) -> Result<Option<f64>> {
    if !(target > 0.0 && target <= 1.0) {
        return Err(Error::domain(format!("target fraction must lie in (0,1], got {target}")));
    }
    if dist.cdf_log(path.log_i0) >= target {
        return Ok(Some(0.0));
    }
    let to_t = |x: f64| ((x - path.log_i0) / path.g).max(0.0);
    match *dist {
        TaskDistribution::Pareto { lambda } => {
            if target >= 1.0 {
                return Ok(None);
            }
            Ok(Some(to_t(-(1.0 - target).ln() / lambda)))
        }
        TaskDistribution::PowerBounded { beta, log_imax } => {
            let x = log_imax * (1.0 - (1.0 - target).powf(1.0 / beta));
            Ok(Some(to_t(x)))
        }
        TaskDistribution::Mixture { omega, log_imax, .. } => {
            if target >= 1.0 {
                return Ok((omega >= 1.0).then(|| to_t(log_imax)));
            }
            let f = |x: f64| dist.cdf_log(x) - target;
            let mut hi = path.log_i0.max(1.0);
            while f(hi) < 0.0 {
                hi *= 2.0;
            }
            Ok(Some(to_t(bisect(f, path.log_i0, hi, 1e-15))))
        }
    }
}

pub fn full_automation_time(dist: &TaskDistribution, path: &AutomationPath) -> Option<f64> {
    dist.log_support_end().map(|x| ((x - path.log_i0) / path.g).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pareto_basics() {
        let d = TaskDistribution::pareto(0.3).unwrap();
        assert_eq!(phi_cdf(&d, 1.0).unwrap(), 0.0);
        assert_relative_eq!(phi_density(&d, 1.0).unwrap(), 0.3);
        assert!(phi_cdf(&d, 0.5).is_err());
        assert!(phi_cdf(&d, 1e300).unwrap() <= 1.0);
    }

    #[test]
    fn pareto_calibration_hits_table_value() {
        let (d, p) = TaskDistribution::calibrate_pareto(0.608, 0.01, 1.0).unwrap();
        let i0_pow = (-0.01 * p.log_i0).exp();
        assert_relative_eq!(i0_pow, 0.392, epsilon = 1e-14);
        assert_relative_eq!(automated_fraction(&d, &p, 0.0).unwrap(), 0.608, epsilon = 1e-14);
        assert_eq!(time_to_fraction(&d, &p, 1.0).unwrap(), None);
        assert_eq!(full_automation_time(&d, &p), None);
    }

    #[test]
    fn power_reaches_one_at_t() {
        let (d, p) = TaskDistribution::calibrate_power(0.608, 20.0, 1.0, 1.0).unwrap();
        assert_eq!(automated_fraction(&d, &p, 20.0).unwrap(), 1.0);
        assert_eq!(phi_cdf(&d, p.index(25.0)).unwrap(), 1.0);
        assert_eq!(phi_density(&d, p.index(25.0)).unwrap(), 0.0);
        let s = 0.608 * 20.0 / 0.392;
        assert_relative_eq!(automated_fraction(&d, &p, 10.0).unwrap(), (s + 10.0) / (s + 20.0), epsilon = 1e-12);
        assert_relative_eq!(time_to_fraction(&d, &p, 1.0).unwrap().unwrap(), 20.0, epsilon = 1e-12);
        assert_relative_eq!(full_automation_time(&d, &p).unwrap(), 20.0, epsilon = 1e-12);
        let (d5, p5) = TaskDistribution::calibrate_power(0.608, 5.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(full_automation_time(&d5, &p5).unwrap(), 5.0, epsilon = 1e-12);
    }

    #[test]
    fn power_calibration_matches_bisection_for_general_beta() {
        for &beta in &[0.3, 1.0, 2.5] {
            let (d, p) = TaskDistribution::calibrate_power(0.608, 7.0, beta, 1.0).unwrap();
            let TaskDistribution::PowerBounded { log_imax, .. } = d else { unreachable!() };
            // root of 1 - (T/(x0+T))^β = Φ0 in x0
            let f = |x0: f64| 1.0 - (7.0 / (x0 + 7.0)).powf(beta) - 0.608;
            let x0 = bisect(f, 0.0, 1e6, 1e-15);
            assert_relative_eq!(p.log_i0, x0, max_relative = 1e-12);
            assert_relative_eq!(log_imax - p.log_i0, 7.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn mixture_calibration_and_tail() {
        let (d, p) = TaskDistribution::calibrate_mixture(0.608, 0.5, 0.01, 5.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(automated_fraction(&d, &p, 0.0).unwrap(), 0.608, epsilon = 1e-12);
        assert_eq!(full_automation_time(&d, &p), None);
        assert_eq!(time_to_fraction(&d, &p, 1.0).unwrap(), None);
        assert!(automated_fraction(&d, &p, 1000.0).unwrap() < 1.0);
        let t = time_to_fraction(&d, &p, 0.8).unwrap().unwrap();
        assert_relative_eq!(automated_fraction(&d, &p, t).unwrap(), 0.8, epsilon = 1e-10);
    }

    #[test]
    fn time_to_fraction_edges() {
        let (d, p) = TaskDistribution::calibrate_pareto(0.608, 0.05, 1.0).unwrap();
        assert_eq!(time_to_fraction(&d, &p, 0.608).unwrap(), Some(0.0));
        assert!(time_to_fraction(&d, &p, 0.0).is_err());
        assert!(time_to_fraction(&d, &p, 1.1).is_err());
        let t = time_to_fraction(&d, &p, 0.9).unwrap().unwrap();
        assert_relative_eq!(t, (0.392f64 / 0.1).ln() / 0.05, max_relative = 1e-12);
    }

    #[test]
    fn survival_stays_positive_far_in_tail() {
        let (d, p) = TaskDistribution::calibrate_pareto(0.608, 0.12, 1.0).unwrap();
        let u = unautomated_share(&d, &p, 300.0);
        assert!(u > 0.0);
        assert_relative_eq!(u, 0.392 * (-36.0f64).exp(), max_relative = 1e-10);
    }
}
