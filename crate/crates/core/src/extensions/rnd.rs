//! Two sectors with unit elasticity: final output and ideas.
//!
//! `Y = A·F_Φ(K_Y, L_Y)` and `Ȧ = A^θ·F_Γ(K_A, L_A)`, where `F_s` is the
//! Cobb-Douglas task aggregate with automated share `s`:
//! `(K/s)^s (L/(1-s))^(1-s)` while labor is scarce, `K + L` once it is not.
//! Capital is split in fixed proportions and accumulates from a constant
//! savings rate without depreciation.

use crate::distributions::{AutomationPath, TaskDistribution};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SectorShares {
    /// Automated shares held constant.
    Frozen { phi: f64, gamma: f64 },
    /// Both shares read off one automation index.
    Path {
        phi_dist: TaskDistribution,
        gamma_dist: TaskDistribution,
        path: AutomationPath,
    },
}

impl SectorShares {
    fn at(&self, t: f64) -> (f64, f64) {
        match *self {
            SectorShares::Frozen { phi, gamma } => (phi, gamma),
            SectorShares::Path { phi_dist, gamma_dist, path } => {
                let x = path.log_index(t);
                (phi_dist.cdf_log(x), gamma_dist.cdf_log(x))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RndParams {
    pub theta: f64,
    pub shares: SectorShares,
    pub s: f64,
    pub c: f64,
    pub l_a: f64,
    pub l_y: f64,
    pub a0: f64,
    pub k0: f64,
    /// Growth rate of output (per year) treated as a blow-up.
    pub blowup_cap: f64,
}

impl RndParams {
    fn validate(&self) -> Result<()> {
        let ok = self.theta < 1.0
            && self.s > 0.0
            && self.s < 1.0
            && self.c > 0.0
            && self.c < 1.0
            && self.l_a > 0.0
            && self.l_y > 0.0
            && self.a0 > 0.0
            && self.k0 > 0.0
            && self.blowup_cap > 0.0;
        if !ok {
            return Err(Error::domain(format!("invalid R&D parameters {self:?}")));
        }
        Ok(())
    }
}

/// `Γ / ((1-Φ)(1-θ))` and whether it exceeds 1.
pub fn singularity_condition(phi: f64, gamma: f64, theta: f64) -> Result<(f64, bool)> {
    if !(theta < 1.0) {
        return Err(Error::domain(format!("theta must be < 1, got {theta}")));
    }
    if !(0.0..=1.0).contains(&phi) || !(0.0..=1.0).contains(&gamma) {
        return Err(Error::domain("shares must lie in [0,1]"));
    }
    if phi == 1.0 {
        return Ok((f64::INFINITY, true));
    }
    let ratio = gamma / ((1.0 - phi) * (1.0 - theta));
    Ok((ratio, ratio > 1.0))
}

/// `ln F_s(K, L)` for the unit-elasticity task aggregate.
fn ln_task_aggregate(share: f64, k: f64, l: f64) -> f64 {
    if share >= 1.0 || k * (1.0 - share) <= share * l {
        return (k + l).ln();
    }
    let cap = if share > 0.0 { share * (k / share).ln() } else { 0.0 };
    cap + (1.0 - share) * (l / (1.0 - share)).ln()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSectorPoint {
    pub t: f64,
    pub phi: f64,
    pub gamma: f64,
    pub k: f64,
    pub a: f64,
    pub y: f64,
    pub w: f64,
    /// Instantaneous growth rate of A.
    pub g_a: f64,
    pub g_y: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoSectorRun {
    pub points: Vec<TwoSectorPoint>,
    pub blowup_time: Option<f64>,
}

pub fn simulate_two_sector(rnd: &RndParams, horizon: f64, dt: f64, stride: f64) -> Result<TwoSectorRun> {
    rnd.validate()?;
    if !(dt > 0.0) || !(horizon > 0.0) {
        return Err(Error::domain("need dt > 0 and horizon > 0"));
    }
    let RndParams { theta, s, c, l_a, l_y, .. } = *rnd;
    // state in logs: (ln K, ln A)
    let rates = |t: f64, lk: f64, la: f64| -> (f64, f64, f64) {
        let (phi, gamma) = rnd.shares.at(t);
        let ln_y = la + ln_task_aggregate(phi, c * lk.exp(), l_y);
        let ln_ideas = theta * la + ln_task_aggregate(gamma, (1.0 - c) * lk.exp(), l_a);
        (s * (ln_y - lk).exp(), (ln_ideas - la).exp(), ln_y)
    };
    let snapshot = |t: f64, lk: f64, la: f64, g_y: f64| -> TwoSectorPoint {
        let (phi, gamma) = rnd.shares.at(t);
        let (_, g_a, ln_y) = rates(t, lk, la);
        let y = ln_y.exp();
        let k_y = c * lk.exp();
        let w = if phi < 1.0 && k_y * (1.0 - phi) > phi * l_y {
            (1.0 - phi) * y / l_y
        } else {
            la.exp()
        };
        TwoSectorPoint { t, phi, gamma, k: lk.exp(), a: la.exp(), y, w, g_a, g_y }
    };

    let n = (horizon / dt).round() as usize;
    let every = ((stride / dt).round() as usize).max(1);
    let (mut lk, mut la) = (rnd.k0.ln(), rnd.a0.ln());
    let mut points = Vec::new();
    let mut last_ln_y = rates(0.0, lk, la).2;
    let mut g_y = f64::NAN;
    for i in 0..=n {
        let t = i as f64 * dt;
        let p = snapshot(t, lk, la, g_y);
        if i % every == 0 || i == n {
            points.push(p);
        }
        if g_y > rnd.blowup_cap {
            if points.last().map(|q| q.t) != Some(t) {
                points.push(p);
            }
            return Ok(TwoSectorRun { points, blowup_time: Some(t) });
        }
        if i == n {
            break;
        }
        let f = |t: f64, lk: f64, la: f64| {
            let (gk, ga, _) = rates(t, lk, la);
            (gk, ga)
        };
        let (a1, b1) = f(t, lk, la);
        let (a2, b2) = f(t + 0.5 * dt, lk + 0.5 * dt * a1, la + 0.5 * dt * b1);
        let (a3, b3) = f(t + 0.5 * dt, lk + 0.5 * dt * a2, la + 0.5 * dt * b2);
        let (a4, b4) = f(t + dt, lk + dt * a3, la + dt * b3);
        let nk = lk + dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        let na = la + dt / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
        let ln_y = rates(t + dt, nk, na).2;
        if !nk.is_finite() || !na.is_finite() || !ln_y.is_finite() || ln_y > 700.0 {
            // overflow before the growth cap tripped: report the last valid step
            if points.last().map(|q| q.t) != Some(t) {
                points.push(p);
            }
            return Ok(TwoSectorRun { points, blowup_time: Some(t) });
        }
        g_y = (ln_y - last_ln_y) / dt;
        last_ln_y = ln_y;
        lk = nk;
        la = na;
    }
    Ok(TwoSectorRun { points, blowup_time: None })
}
