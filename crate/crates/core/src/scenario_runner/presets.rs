use crate::error::{Error, Result};

use super::config::{
    default_solver, default_economy, default_preferences, DistributionSpec, Extensions, Family, OutputOptions,
    PolicyKind, RndSpec, ScenarioSpec, SpecificSpec, DEFAULT_FIXED_FACTOR_M,
};

pub const SCENARIOS: [&str; 4] = ["business_as_usual", "baseline_agi", "aggressive_agi", "mixed"];

pub const EXTENSION_PRESETS: [&str; 5] = ["fixed_factor", "nostalgic", "singularity", "skills", "specific_capital"];

fn base(name: &str, family: Family, horizon: f64) -> ScenarioSpec {
    ScenarioSpec {
        name: name.to_string(),
        distribution: DistributionSpec { family, lambda_g: 0.01, t_full: 20.0, beta: 1.0, omega: 0.95 },
        economy: default_economy(),
        preferences: default_preferences(),
        phi0: 0.608,
        k0: 4.6,
        policy: PolicyKind::Ramsey,
        savings_rate: None,
        solver: default_solver(horizon),
        extensions: Extensions::default(),
        output: OutputOptions::default(),
    }
}

pub fn preset(name: &str) -> Result<ScenarioSpec> {
    let mut s = match name {
        "business_as_usual" => base(name, Family::Pareto, 150.0),
        "baseline_agi" => base(name, Family::Power, 100.0),
        "aggressive_agi" => {
            let mut s = base(name, Family::Power, 100.0);
            s.distribution.t_full = 5.0;
            s
        }
        "mixed" => {
            let mut s = base(name, Family::Mixture, 100.0);
            s.distribution.t_full = 5.0;
            s
        }
        "fixed_factor" => {
            let mut s = base(name, Family::Pareto, 200.0);
            s.extensions.fixed_factor = Some((0.9, DEFAULT_FIXED_FACTOR_M));
            s
        }
        "nostalgic" => {
            let mut s = base(name, Family::Power, 100.0);
            s.extensions.nostalgic = Some(0.09);
            s
        }
        "singularity" => {
            let mut s = base(name, Family::Pareto, 60.0);
            s.distribution.lambda_g = 0.05;
            s.extensions.rnd = Some(RndSpec { theta: 0.5, gamma_lambda_g: 0.05, s: 0.3, c: 0.8 });
            s
        }
        "skills" => {
            let mut s = base(name, Family::Pareto, 150.0);
            s.extensions.skills = Some(0.005);
            s
        }
        "specific_capital" => {
            let mut s = base(name, Family::Power, 100.0);
            s.extensions.specific = Some(SpecificSpec { delta_mass: 0.1, k_spec_max: None });
            s
        }
        _ => {
            return Err(Error::Config(format!(
                "unknown scenario `{name}`; known: {}, {}",
                SCENARIOS.join(", "),
                EXTENSION_PRESETS.join(", ")
            )))
        }
    };
    s.solver.record_stride = s.output.stride;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario_runner::config::parse_config;

    #[test]
    fn presets_round_trip() {
        for name in SCENARIOS.iter().chain(EXTENSION_PRESETS.iter()) {
            let s = preset(name).unwrap();
            s.validate().unwrap();
            let back = parse_config(&s.to_config_string()).unwrap();
            assert_eq!(back, s, "{name}");
        }
    }

    #[test]
    fn table_values() {
        let s = preset("baseline_agi").unwrap();
        assert_eq!(s.distribution.t_full, 20.0);
        assert_eq!((s.economy.a, s.economy.sigma, s.economy.l), (0.5, 0.5, 1.0));
        assert_eq!((s.preferences.rho, s.preferences.eta, s.preferences.delta), (0.04, 2.0, 0.1));
        assert_eq!((s.phi0, s.k0), (0.608, 4.6));
        assert_eq!(preset("aggressive_agi").unwrap().distribution.t_full, 5.0);
        assert_eq!(preset("business_as_usual").unwrap().distribution.lambda_g, 0.01);
    }
}
