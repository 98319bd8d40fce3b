//! Line-oriented `key = value` scenario files.
//!
//! `scenario = <preset>` loads a preset first; every other line overrides
//! one field, in file order, regardless of where the scenario line sits.
//! Blank lines and `#` comments are ignored; unknown keys are errors.

use std::fmt::Write as _;

use crate::dynamics::{Integrator, PreferenceParams, SolverSettings};
use crate::error::{Error, Result};
use crate::static_economy::EconomyParams;

use super::presets::preset;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Pareto,
    Power,
    Mixture,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Pareto => "pareto",
            Family::Power => "power",
            Family::Mixture => "mixture",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionSpec {
    pub family: Family,
    pub lambda_g: f64,
    /// Years until the power component automates every task.
    pub t_full: f64,
    pub beta: f64,
    pub omega: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicyKind {
    Ramsey,
    ConstantSavings,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RndSpec {
    pub theta: f64,
    pub gamma_lambda_g: f64,
    pub s: f64,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecificSpec {
    pub delta_mass: f64,
    /// Upper end of the k_spec sweep; `None` uses 1.5·k2.
    pub k_spec_max: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Extensions {
    pub fixed_factor: Option<(f64, f64)>,
    pub nostalgic: Option<f64>,
    pub rnd: Option<RndSpec>,
    pub skills: Option<f64>,
    pub specific: Option<SpecificSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputOptions {
    pub stride: f64,
    pub svg: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub name: String,
    pub distribution: DistributionSpec,
    pub economy: EconomyParams,
    pub preferences: PreferenceParams,
    pub phi0: f64,
    pub k0: f64,
    pub policy: PolicyKind,
    /// `None` means the long-run savings rate.
    pub savings_rate: Option<f64>,
    pub solver: SolverSettings,
    pub extensions: Extensions,
    pub output: OutputOptions,
}

/// Default fixed-factor quantity; see the README for how it was chosen.
pub const DEFAULT_FIXED_FACTOR_M: f64 = 1.5e-5;

impl ScenarioSpec {
    pub fn validate(&self) -> Result<()> {
        let inv = |key: &str, e: Error| Error::InvalidValue {
            key: key.to_string(),
            msg: match e {
                Error::Domain(m) => m,
                other => other.to_string(),
            },
        };
        self.economy.validate().map_err(|e| inv("economy", e))?;
        self.preferences.validate().map_err(|e| inv("preferences", e))?;
        self.preferences.check_against(self.economy.a).map_err(|e| inv("preferences", e))?;
        self.solver.validate().map_err(|e| inv("solver", e))?;
        if !(self.phi0 > 0.0 && self.phi0 < 1.0) {
            return Err(inv("initial.phi0", Error::domain("must lie in (0,1)")));
        }
        if !(self.k0 > 0.0) {
            return Err(inv("initial.K0", Error::domain("must be > 0")));
        }
        if let Some(s) = self.savings_rate {
            if !(s > 0.0 && s < 1.0) {
                return Err(inv("savings_rate", Error::domain("must lie in (0,1)")));
            }
        }
        let d = &self.distribution;
        let pos = |key: &str, v: f64| -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(inv(key, Error::domain("must be finite and > 0")))
            }
        };
        pos("distribution.lambda_g", d.lambda_g)?;
        pos("distribution.T", d.t_full)?;
        pos("distribution.beta", d.beta)?;
        if !(0.0..=1.0).contains(&d.omega) {
            return Err(inv("distribution.omega", Error::domain("must lie in [0,1]")));
        }
        if !(self.output.stride > 0.0) {
            return Err(inv("output.stride", Error::domain("must be > 0")));
        }
        let x = &self.extensions;
        let sims = [x.fixed_factor.is_some(), x.nostalgic.is_some(), x.rnd.is_some()];
        if sims.iter().filter(|&&b| b).count() > 1 {
            return Err(Error::Config(
                "at most one of fixed_factor, nostalgic, rnd may be enabled".into(),
            ));
        }
        if let Some((alpha, m)) = x.fixed_factor {
            if !(alpha > 0.0 && alpha <= 1.0) {
                return Err(inv("extension.fixed_factor.alpha", Error::domain("must lie in (0,1]")));
            }
            pos("extension.fixed_factor.M", m)?;
        }
        if let Some(l) = x.nostalgic {
            pos("extension.nostalgic.lambda_g_cap", l)?;
        }
        if let Some(r) = x.rnd {
            if !(r.theta < 1.0) {
                return Err(inv("extension.rnd.theta", Error::domain("must be < 1")));
            }
            pos("extension.rnd.gamma_lambda_g", r.gamma_lambda_g)?;
            if !(r.s > 0.0 && r.s < 1.0) {
                return Err(inv("extension.rnd.s", Error::domain("must lie in (0,1)")));
            }
            if !(r.c > 0.0 && r.c < 1.0) {
                return Err(inv("extension.rnd.c", Error::domain("must lie in (0,1)")));
            }
        }
        if let Some(l) = x.skills {
            pos("extension.skills.upsilon_lambda", l)?;
        }
        if let Some(sp) = x.specific {
            if !(sp.delta_mass > 0.0 && self.phi0 + sp.delta_mass < 1.0) {
                return Err(inv("extension.specific.delta_mass", Error::domain("need 0 < delta_mass < 1 - phi0")));
            }
            if let Some(m) = sp.k_spec_max {
                pos("extension.specific.k_spec_max", m)?;
            }
        }
        Ok(())
    }

    /// Apply one `key = value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let num = || -> Result<f64> {
            value.parse::<f64>().map_err(|_| Error::InvalidValue {
                key: key.to_string(),
                msg: format!("expected a number, got `{value}`"),
            })
        };
        let ff = self.extensions.fixed_factor.unwrap_or((0.9, DEFAULT_FIXED_FACTOR_M));
        let rnd = self.extensions.rnd.unwrap_or(RndSpec { theta: 0.5, gamma_lambda_g: 0.05, s: 0.3, c: 0.8 });
        let spec = self.extensions.specific.unwrap_or(SpecificSpec { delta_mass: 0.1, k_spec_max: None });
        match key {
            "scenario" => *self = preset(value)?,
            "distribution.family" => {
                self.distribution.family = match value {
                    "pareto" => Family::Pareto,
                    "power" => Family::Power,
                    "mixture" => Family::Mixture,
                    _ => {
                        return Err(Error::InvalidValue {
                            key: key.into(),
                            msg: format!("expected pareto|power|mixture, got `{value}`"),
                        })
                    }
                }
            }
            "distribution.lambda_g" => self.distribution.lambda_g = num()?,
            "distribution.T" => self.distribution.t_full = num()?,
            "distribution.beta" => self.distribution.beta = num()?,
            "distribution.omega" => self.distribution.omega = num()?,
            "economy.A" => self.economy.a = num()?,
            "economy.sigma" => self.economy.sigma = num()?,
            "economy.L" => self.economy.l = num()?,
            "preferences.rho" => self.preferences.rho = num()?,
            "preferences.eta" => self.preferences.eta = num()?,
            "preferences.delta" => self.preferences.delta = num()?,
            "initial.phi0" => self.phi0 = num()?,
            "initial.K0" => self.k0 = num()?,
            "policy" => {
                self.policy = match value {
                    "ramsey" => PolicyKind::Ramsey,
                    "constant_savings" => PolicyKind::ConstantSavings,
                    _ => {
                        return Err(Error::InvalidValue {
                            key: key.into(),
                            msg: format!("expected ramsey|constant_savings, got `{value}`"),
                        })
                    }
                }
            }
            "savings_rate" => self.savings_rate = Some(num()?),
            "solver.dt" => self.solver.dt = num()?,
            "solver.horizon" => self.solver.horizon = num()?,
            "solver.shoot_tol" => self.solver.shoot_tol = num()?,
            "solver.max_iter" => {
                self.solver.max_shoot_iter = value.parse().map_err(|_| Error::InvalidValue {
                    key: key.into(),
                    msg: format!("expected a positive integer, got `{value}`"),
                })?
            }
            "extension.fixed_factor.alpha" => self.extensions.fixed_factor = Some((num()?, ff.1)),
            "extension.fixed_factor.M" => self.extensions.fixed_factor = Some((ff.0, num()?)),
            "extension.nostalgic.lambda_g_cap" => self.extensions.nostalgic = Some(num()?),
            "extension.rnd.theta" => self.extensions.rnd = Some(RndSpec { theta: num()?, ..rnd }),
            "extension.rnd.gamma_lambda_g" => self.extensions.rnd = Some(RndSpec { gamma_lambda_g: num()?, ..rnd }),
            "extension.rnd.s" => self.extensions.rnd = Some(RndSpec { s: num()?, ..rnd }),
            "extension.rnd.c" => self.extensions.rnd = Some(RndSpec { c: num()?, ..rnd }),
            "extension.skills.upsilon_lambda" => self.extensions.skills = Some(num()?),
            "extension.specific.delta_mass" => {
                self.extensions.specific = Some(SpecificSpec { delta_mass: num()?, ..spec })
            }
            "extension.specific.k_spec_max" => {
                self.extensions.specific = Some(SpecificSpec { k_spec_max: Some(num()?), ..spec })
            }
            "output.stride" => {
                self.output.stride = num()?;
                self.solver.record_stride = self.output.stride;
            }
            "output.svg" => {
                self.output.svg = match value {
                    "true" => true,
                    "false" => false,
                    _ => {
                        return Err(Error::InvalidValue {
                            key: key.into(),
                            msg: format!("expected true|false, got `{value}`"),
                        })
                    }
                }
            }
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Serialize every field as a config file that reloads to an equal spec.
    pub fn to_config_string(&self) -> String {
        let mut s = String::new();
        let d = &self.distribution;
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("scenario", self.name.clone());
        kv("distribution.family", d.family.name().into());
        kv("distribution.lambda_g", format!("{:?}", d.lambda_g));
        kv("distribution.T", format!("{:?}", d.t_full));
        kv("distribution.beta", format!("{:?}", d.beta));
        kv("distribution.omega", format!("{:?}", d.omega));
        kv("economy.A", format!("{:?}", self.economy.a));
        kv("economy.sigma", format!("{:?}", self.economy.sigma));
        kv("economy.L", format!("{:?}", self.economy.l));
        kv("preferences.rho", format!("{:?}", self.preferences.rho));
        kv("preferences.eta", format!("{:?}", self.preferences.eta));
        kv("preferences.delta", format!("{:?}", self.preferences.delta));
        kv("initial.phi0", format!("{:?}", self.phi0));
        kv("initial.K0", format!("{:?}", self.k0));
        kv(
            "policy",
            match self.policy {
                PolicyKind::Ramsey => "ramsey".into(),
                PolicyKind::ConstantSavings => "constant_savings".into(),
            },
        );
        if let Some(sr) = self.savings_rate {
            kv("savings_rate", format!("{sr:?}"));
        }
        kv("solver.dt", format!("{:?}", self.solver.dt));
        kv("solver.horizon", format!("{:?}", self.solver.horizon));
        kv("solver.shoot_tol", format!("{:?}", self.solver.shoot_tol));
        kv("solver.max_iter", format!("{}", self.solver.max_shoot_iter));
        let x = &self.extensions;
        if let Some((a, m)) = x.fixed_factor {
            kv("extension.fixed_factor.alpha", format!("{a:?}"));
            kv("extension.fixed_factor.M", format!("{m:?}"));
        }
        if let Some(l) = x.nostalgic {
            kv("extension.nostalgic.lambda_g_cap", format!("{l:?}"));
        }
        if let Some(r) = x.rnd {
            kv("extension.rnd.theta", format!("{:?}", r.theta));
            kv("extension.rnd.gamma_lambda_g", format!("{:?}", r.gamma_lambda_g));
            kv("extension.rnd.s", format!("{:?}", r.s));
            kv("extension.rnd.c", format!("{:?}", r.c));
        }
        if let Some(l) = x.skills {
            kv("extension.skills.upsilon_lambda", format!("{l:?}"));
        }
        if let Some(sp) = x.specific {
            kv("extension.specific.delta_mass", format!("{:?}", sp.delta_mass));
            if let Some(m) = sp.k_spec_max {
                kv("extension.specific.k_spec_max", format!("{m:?}"));
            }
        }
        kv("output.stride", format!("{:?}", self.output.stride));
        kv("output.svg", format!("{}", self.output.svg));
        s
    }
}

/// Parse config text. Errors carry the 1-based line number.
pub fn parse_config(text: &str) -> Result<ScenarioSpec> {
    let mut pairs = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Error::Parse { line: n + 1, msg: format!("expected `key = value`, got `{line}`") });
        };
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || v.is_empty() {
            return Err(Error::Parse { line: n + 1, msg: "empty key or value".into() });
        }
        pairs.push((n + 1, k.to_string(), v.to_string()));
    }
    let Some(base) = pairs.iter().filter(|p| p.1 == "scenario").last() else {
        return Err(Error::Config(
            "a `scenario = <preset>` line is required; distribution and economy keys then override it".into(),
        ));
    };
    let mut spec = preset(&base.2).map_err(|e| Error::Parse { line: base.0, msg: e.to_string() })?;
    for (line, k, v) in pairs.iter().filter(|p| p.1 != "scenario") {
        spec.set(k, v).map_err(|e| match e {
            Error::Config(msg) => Error::Parse { line: *line, msg },
            other => other,
        })?;
    }
    spec.validate()?;
    Ok(spec)
}

pub fn load_config(path: &std::path::Path) -> Result<ScenarioSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

impl Default for OutputOptions {
    fn default() -> Self {
        Self { stride: 0.1, svg: false }
    }
}

pub(crate) fn default_economy() -> EconomyParams {
    EconomyParams { a: 0.5, sigma: 0.5, l: 1.0 }
}

pub(crate) fn default_preferences() -> PreferenceParams {
    PreferenceParams { rho: 0.04, eta: 2.0, delta: 0.1 }
}

pub(crate) fn default_solver(horizon: f64) -> SolverSettings {
    SolverSettings { horizon, integrator: Integrator::Rk4, ..SolverSettings::default() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_an_error() {
        assert!(matches!(parse_config(""), Err(Error::Config(_))));
    }

    #[test]
    fn preset_then_override() {
        let s = parse_config("distribution.T = 7\nscenario = baseline_agi\n").unwrap();
        assert_eq!(s.distribution.t_full, 7.0);
        assert_eq!(s.name, "baseline_agi");
    }

    #[test]
    fn bad_values_and_keys() {
        let e = parse_config("scenario = baseline_agi\npreferences.eta = 0\n").unwrap_err();
        assert!(matches!(e, Error::InvalidValue { ref key, .. } if key == "preferences"), "{e:?}");
        let e = parse_config("scenario = baseline_agi\n\nfoo.bar = 1\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 3, msg: "unknown key `foo.bar`".into() });
        let e = parse_config("scenario = baseline_agi\neconomy.A = abc\n").unwrap_err();
        assert!(matches!(e, Error::InvalidValue { .. }));
        assert!(matches!(parse_config("scenario baseline"), Err(Error::Parse { line: 1, .. })));
    }
}
