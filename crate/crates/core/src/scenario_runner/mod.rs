//! Scenario configuration, presets, dispatch to the simulators, and file output.

pub mod check;
pub mod config;
pub mod output;
pub mod presets;

pub use config::{load_config, parse_config, Family, PolicyKind, ScenarioSpec};
pub use presets::{preset, EXTENSION_PRESETS, SCENARIOS};

use crate::analysis::{classify_long_run, RegimeReport};
use crate::distributions::{AutomationPath, TaskDistribution};
use crate::dynamics::{
    long_run_savings, simulate, EventKind, Policy, Trajectory, TrajectoryPoint,
};
use crate::error::Result;
use crate::extensions::{
    simulate_fixed_factor, simulate_nostalgic, simulate_two_sector, skill_wages, specific_capital_returns,
    FixedFactorParams, RndParams, SectorShares, SkillDistribution, SpecificCapitalState, SwitchRule,
};
use crate::static_economy::Region;

/// Extra per-scenario table written next to the main CSV as `<stem>.<suffix>.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub suffix: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub collapse_time: Option<f64>,
    pub reentry_time: Option<f64>,
    pub full_automation_time: Option<f64>,
    pub peak_wage_time: Option<f64>,
    pub terminal_output_growth: f64,
    pub terminal_wage_growth: f64,
}

impl Summary {
    pub fn from_trajectory(t: &Trajectory) -> Self {
        Self {
            collapse_time: t.first_event(EventKind::Region2Entry),
            reentry_time: t.first_event(EventKind::Region1Reentry),
            full_automation_time: t.first_event(EventKind::FullAutomation),
            peak_wage_time: t.first_event(EventKind::WagePeak),
            terminal_output_growth: t.tail_growth(|p| p.y),
            terminal_wage_growth: t.tail_growth(|p| p.w),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub name: String,
    pub trajectory: Trajectory,
    pub regime: Option<RegimeReport>,
    pub summary: Summary,
    pub tables: Vec<Table>,
}

impl ScenarioSpec {
    /// Distribution and automation path calibrated so that `Φ(0) = phi0`, with `g = 1`.
    pub fn automation(&self) -> Result<(TaskDistribution, AutomationPath)> {
        let d = &self.distribution;
        match d.family {
            Family::Pareto => TaskDistribution::calibrate_pareto(self.phi0, d.lambda_g, 1.0),
            Family::Power => TaskDistribution::calibrate_power(self.phi0, d.t_full, d.beta, 1.0),
            Family::Mixture => {
                TaskDistribution::calibrate_mixture(self.phi0, d.omega, d.lambda_g, d.t_full, d.beta, 1.0)
            }
        }
    }

    pub fn policy(&self) -> Result<Policy> {
        Ok(match self.policy {
            PolicyKind::Ramsey => Policy::Ramsey,
            PolicyKind::ConstantSavings => Policy::ConstantSavings(match self.savings_rate {
                Some(s) => s,
                None => long_run_savings(&self.preferences, self.economy.a)?,
            }),
        })
    }
}

fn table(suffix: &str, header: &[&str], rows: Vec<Vec<f64>>) -> Table {
    Table { suffix: suffix.into(), header: header.iter().map(|s| s.to_string()).collect(), rows }
}

pub fn run(spec: &ScenarioSpec) -> Result<RunResult> {
    spec.validate()?;
    let (dist, path) = spec.automation()?;
    let params = spec.economy;
    let prefs = spec.preferences;
    let settings = spec.solver;
    let policy = spec.policy()?;
    let x = &spec.extensions;
    let mut tables = Vec::new();

    let trajectory = if let Some((alpha, m)) = x.fixed_factor {
        let ff = FixedFactorParams::new(alpha, m)?;
        simulate_fixed_factor(&dist, &path, &params, &prefs, &ff, policy, spec.k0, &settings)?
    } else if let Some(cap) = x.nostalgic {
        let nr = simulate_nostalgic(
            &dist,
            &path,
            &params,
            &prefs,
            cap,
            SwitchRule::AnchoredAtStart,
            policy,
            spec.k0,
            &settings,
        )?;
        let rows = nr
            .capped
            .points
            .iter()
            .zip(&nr.uncapped.points)
            .map(|(c, u)| vec![c.t, c.phi, u.phi, c.y, u.y, c.w, u.w, 1.0 - c.y / u.y])
            .collect();
        tables.push(table(
            "nostalgic",
            &["t", "psi", "phi", "Y_capped", "Y_uncapped", "w_capped", "w_uncapped", "output_gap"],
            rows,
        ));
        nr.capped
    } else if let Some(r) = x.rnd {
        let gamma_dist = TaskDistribution::pareto(r.gamma_lambda_g / path.g)?;
        let rnd = RndParams {
            theta: r.theta,
            shares: SectorShares::Path { phi_dist: dist, gamma_dist, path },
            s: r.s,
            c: r.c,
            l_a: 1.0,
            l_y: params.l,
            a0: params.a,
            k0: spec.k0,
            blowup_cap: 10.0,
        };
        let run = simulate_two_sector(&rnd, settings.horizon, settings.dt, settings.record_stride)?;
        let rows = run.points.iter().map(|p| vec![p.t, p.a, p.gamma, p.g_a, p.g_y]).collect();
        let mut rows: Vec<Vec<f64>> = rows;
        if let Some(tb) = run.blowup_time {
            rows.push(vec![tb, f64::NAN, f64::NAN, f64::NAN, f64::NAN]);
        }
        tables.push(table("rnd", &["t", "A", "gamma", "g_A", "g_Y"], rows));
        let points = run
            .points
            .iter()
            .map(|p| {
                let k_y = r.c * p.k;
                let labor_scarce = p.phi < 1.0 && k_y * (1.0 - p.phi) > p.phi * params.l;
                let r_k = if labor_scarce { p.phi * p.y / k_y } else { p.a };
                TrajectoryPoint {
                    t: p.t,
                    index: path.index(p.t),
                    phi: p.phi,
                    unautomated: 1.0 - p.phi,
                    region: if labor_scarce { Region::Region1 } else { Region::Region2 },
                    k: p.k,
                    c: (1.0 - r.s) * p.y,
                    y: p.y,
                    w: p.w,
                    r: r_k,
                    labor_share: p.w * params.l / p.y,
                    savings_rate: r.s,
                }
            })
            .collect();
        Trajectory { points, events: Vec::new() }
    } else {
        simulate(&dist, &path, &params, &prefs, policy, spec.k0, &settings)?
    };

    if let Some(lu) = x.skills {
        let skills = SkillDistribution { upsilon: TaskDistribution::pareto(lu / path.g)? };
        let mut rows = Vec::new();
        for p in &trajectory.points {
            let sw = skill_wages(&params, &skills, p.k, p.phi, path.index(p.t).max(1.0))?;
            rows.push(vec![p.t, sw.substituted_share, sw.w_low, sw.w_high]);
        }
        tables.push(table("skills", &["t", "substituted_share", "w_low", "w_high"], rows));
    }
    if let Some(sp) = x.specific {
        let mut st = SpecificCapitalState {
            k: spec.k0,
            l: params.l,
            phi_minus: spec.phi0,
            delta_mass: sp.delta_mass,
            k_spec: 0.0,
        };
        let (_, k2) = st.thresholds();
        let top = sp.k_spec_max.unwrap_or(1.5 * k2);
        let n = 400;
        let mut rows = Vec::new();
        for j in 0..=n {
            st.k_spec = top * j as f64 / n as f64;
            let r = specific_capital_returns(&params, &st)?;
            rows.push(vec![st.k_spec, r.phase as f64, r.w, r.r_traditional, r.r_specific]);
        }
        tables.push(table("specific", &["k_spec", "phase", "w", "r_traditional", "r_specific"], rows));
    }

    let regime = match (spec.distribution.family, x.rnd) {
        (Family::Pareto, None) => Some(classify_long_run(&params, &prefs, spec.distribution.lambda_g)?),
        _ => None,
    };
    let summary = Summary::from_trajectory(&trajectory);
    Ok(RunResult { name: spec.name.clone(), trajectory, regime, summary, tables })
}
