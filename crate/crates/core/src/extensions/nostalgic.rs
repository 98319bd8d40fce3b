//! Society keeps some jobs human: the automated share actually deployed,
//! Ψ, may lag the technically feasible share Φ.

use crate::distributions::{AutomationPath, TaskDistribution};
use crate::dynamics::{
    default_terminal, simulate_with, NaturalSchedule, Policy, PreferenceParams, Schedule, SolverSettings, Tail,
    Trajectory,
};
use crate::error::{Error, Result};
use crate::static_economy::EconomyParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwitchRule {
    /// The cap is a Pareto path started at t = 0 from the same initial share:
    /// `1 - Ψcap(t) = (1 - Φ0)·e^(-λcap·t)`.
    AnchoredAtStart,
    /// The cap starts when the natural decay rate of `1 - Φ` first exceeds
    /// `λcap`, from the share reached at that moment.
    RateLimit,
}

/// `Ψ_t = min(Φ_t, cap_t)`, evaluated on unautomated shares as `max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CappedSchedule {
    pub natural: NaturalSchedule,
    pub lambda_g_cap: f64,
    pub rule: SwitchRule,
    anchor_t: f64,
    anchor_u: f64,
}

impl CappedSchedule {
    fn cap_share(&self, t: f64) -> f64 {
        if t < self.anchor_t || self.lambda_g_cap.is_infinite() {
            return 0.0;
        }
        self.anchor_u * (-self.lambda_g_cap * (t - self.anchor_t)).exp()
    }

    /// First time the cap holds automation below Φ, scanned at `dt` resolution.
    pub fn bind_time(&self, horizon: f64, dt: f64) -> Option<f64> {
        let n = (horizon / dt).round() as usize;
        (0..=n).map(|i| i as f64 * dt).find(|&t| self.cap_share(t) > self.natural.unautomated(t))
    }
}

impl Schedule for CappedSchedule {
    fn log_index(&self, t: f64) -> f64 {
        self.natural.log_index(t)
    }

    fn unautomated(&self, t: f64) -> f64 {
        self.natural.unautomated(t).max(self.cap_share(t))
    }

    fn tail(&self) -> Tail {
        if self.lambda_g_cap.is_infinite() {
            return self.natural.tail();
        }
        match self.natural.tail() {
            Tail::Full(_) => Tail::Exponential(self.lambda_g_cap),
            Tail::Exponential(l) => Tail::Exponential(l.min(self.lambda_g_cap)),
        }
    }
}

pub fn nostalgic_cap_path(
    dist: &TaskDistribution,
    path: &AutomationPath,
    lambda_g_cap: f64,
    rule: SwitchRule,
) -> Result<CappedSchedule> {
    if !(lambda_g_cap > 0.0) {
        return Err(Error::domain(format!("cap rate must be > 0, got {lambda_g_cap}")));
    }
    let natural = NaturalSchedule { dist: *dist, path: *path };
    let (anchor_t, anchor_u) = match rule {
        SwitchRule::AnchoredAtStart => (0.0, natural.unautomated(0.0)),
        SwitchRule::RateLimit => {
            // natural decay rate of 1-Φ is g·φ(I)·I/(1-Φ)
            let rate = |t: f64| {
                let x = path.log_index(t);
                let u = dist.survival_log(x);
                if u <= 0.0 {
                    f64::INFINITY
                } else {
                    path.g * dist.log_density(x) / u
                }
            };
            let mut t = 0.0;
            let step = 1e-3;
            while rate(t) <= lambda_g_cap && t < 1e4 {
                t += step;
            }
            if t >= 1e4 {
                (f64::INFINITY, 0.0)
            } else {
                (t, natural.unautomated(t))
            }
        }
    };
    Ok(CappedSchedule { natural, lambda_g_cap, rule, anchor_t, anchor_u })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NostalgicRun {
    pub capped: Trajectory,
    pub uncapped: Trajectory,
    /// `(t, 1 - Y_capped/Y_uncapped)` on the recorded grid.
    pub output_gap: Vec<(f64, f64)>,
    pub bind_time: Option<f64>,
}

pub fn simulate_nostalgic(
    dist: &TaskDistribution,
    path: &AutomationPath,
    params: &EconomyParams,
    prefs: &PreferenceParams,
    lambda_g_cap: f64,
    rule: SwitchRule,
    policy: Policy,
    k0: f64,
    settings: &SolverSettings,
) -> Result<NostalgicRun> {
    prefs.check_against(params.a)?;
    let capped_sched = nostalgic_cap_path(dist, path, lambda_g_cap, rule)?;
    let natural = capped_sched.natural;
    let t_nat = default_terminal(params, prefs, &natural, settings.horizon)?;
    let t_cap = default_terminal(params, prefs, &capped_sched, settings.horizon)?;
    let (uncapped, capped) = rayon::join(
        || simulate_with(params, &natural, prefs, policy, k0, settings, Some(t_nat)),
        || simulate_with(params, &capped_sched, prefs, policy, k0, settings, Some(t_cap)),
    );
    let (uncapped, capped) = (uncapped?, capped?);
    let output_gap = capped
        .points
        .iter()
        .zip(&uncapped.points)
        .map(|(c, u)| (c.t, 1.0 - c.y / u.y))
        .collect();
    Ok(NostalgicRun {
        capped,
        uncapped,
        output_gap,
        bind_time: capped_sched.bind_time(settings.horizon, settings.dt),
    })
}
