//! The acceptance suite behind `automation-race check`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{classify_long_run, labor_share_limit_case3, wage_growth_curve, wage_max_rate, Regime};
use crate::dynamics::{
    bounds, bounds_violation, capital_upper_bound, long_run_savings, simulate, EventKind, NaturalSchedule, Policy,
    Trajectory,
};
use crate::error::{Error, Result};
use crate::extensions::{
    simulate_two_sector, singularity_condition, specific_capital_returns, RndParams, SectorShares,
    SpecificCapitalState,
};
use crate::static_economy::{
    oracle_equilibrium, static_equilibrium, unit_cost, EconomyParams, Region,
};

use super::{preset, run, ScenarioSpec, SCENARIOS};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub id: u8,
    pub tag: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for CheckResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<13} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.tag,
            self.title,
            self.detail
        )
    }
}

pub const CRITERIA: [(u8, &str, &str); 15] = [
    (1, "calibration", "initial labor share 0.66 +- 0.01"),
    (2, "bau", "business-as-usual growth 0.02 +- 0.002"),
    (3, "baseline", "baseline AGI collapse before 20, growth 0.18 +- 0.005, w = A after 20"),
    (4, "aggressive", "aggressive AGI Region-2 entry at 3 +- 1"),
    (5, "mixed", "mixed: entry before 5, re-entry at 9 +- 2, wages grow afterwards"),
    (6, "wage_curve", "wage-growth curve peak and simulated tails"),
    (7, "labor_share", "automation-constrained labor share 0.5714 +- 0.02"),
    (8, "upper_bound", "closed-form K+ equals bisection root"),
    (9, "bounds", "preset paths inside lower/upper bounds"),
    (10, "fixed_factor", "fixed factor: wage peak 10 +- 2, Region-2 entry 25 +- 3"),
    (11, "singularity", "two-sector blow-up iff condition ratio > 1"),
    (12, "nostalgic", "nostalgic cap: wage growth, output gap"),
    (13, "specific", "specific-capital sign pattern and continuity"),
    (14, "oracle", "closed form vs allocation oracle"),
    (15, "fpf", "factor price frontier duality"),
];

fn with_overrides(name: &str, overrides: &[(String, String)]) -> Result<ScenarioSpec> {
    let mut s = preset(name)?;
    for (k, v) in overrides {
        s.set(k, v)?;
    }
    s.validate()?;
    Ok(s)
}

fn ramsey(spec: &ScenarioSpec) -> Result<Trajectory> {
    let (d, p) = spec.automation()?;
    simulate(&d, &p, &spec.economy, &spec.preferences, Policy::Ramsey, spec.k0, &spec.solver)
}

fn constant_s_tail(spec: &ScenarioSpec, lambda_g: f64, horizon: f64) -> Result<Trajectory> {
    let mut s = spec.clone();
    s.distribution.family = super::Family::Pareto;
    s.distribution.lambda_g = lambda_g;
    s.solver.horizon = horizon;
    let (d, p) = s.automation()?;
    let sr = long_run_savings(&s.preferences, s.economy.a)?;
    simulate(&d, &p, &s.economy, &s.preferences, Policy::ConstantSavings(sr), s.k0, &s.solver)
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.2}")).unwrap_or_else(|| "none".into())
}

fn rel_ok(measured: f64, expected: f64, rel: f64) -> bool {
    if expected == 0.0 {
        measured.abs() < 0.005
    } else {
        ((measured - expected) / expected).abs() <= rel
    }
}

fn criterion(id: u8, ov: &[(String, String)]) -> Result<(bool, String)> {
    match id {
        1 => {
            let s = with_overrides("baseline_agi", ov)?;
            let eq = static_equilibrium(&s.economy, s.k0, s.phi0)?;
            Ok(((eq.labor_share - 0.66).abs() <= 0.01, format!("labor share {:.4} (expected 0.66 +- 0.01)", eq.labor_share)))
        }
        2 => {
            let s = with_overrides("business_as_usual", ov)?;
            let t = ramsey(&s)?;
            let gy = t.tail_growth(|p| p.y);
            let gw = t.tail_growth(|p| p.w);
            let rep = classify_long_run(&s.economy, &s.preferences, s.distribution.lambda_g)?;
            let ok = (gy - 0.02).abs() <= 0.002
                && (gw - 0.02).abs() <= 0.002
                && rep.regime == Regime::AutomationConstrained
                && rep.asymptotic_wage_growth == 0.02;
            Ok((
                ok,
                format!(
                    "g_Y {gy:.5}, g_w {gw:.5} over final 20% of {}y (expected 0.02 +- 0.002); regime {}, predicted {}",
                    s.solver.horizon,
                    rep.regime.name(),
                    rep.asymptotic_wage_growth
                ),
            ))
        }
        3 => {
            let s = with_overrides("baseline_agi", ov)?;
            let t = ramsey(&s)?;
            let entry = t.first_event(EventKind::Region2Entry);
            let gy = t.tail_growth(|p| p.y);
            let a = s.economy.a;
            let pinned = t.points.iter().filter(|p| p.t >= s.distribution.t_full).all(|p| p.w == a && p.r == a);
            let ok = entry.is_some_and(|e| e < s.distribution.t_full) && (gy - 0.18).abs() <= 0.005 && pinned;
            Ok((
                ok,
                format!(
                    "collapse at {} (< {}), tail g_Y {gy:.5} (expected 0.18 +- 0.005), w = A after full automation: {pinned}",
                    fmt_opt(entry),
                    s.distribution.t_full
                ),
            ))
        }
        4 => {
            let s = with_overrides("aggressive_agi", ov)?;
            let t = ramsey(&s)?;
            let entry = t.first_event(EventKind::Region2Entry);
            Ok((entry.is_some_and(|e| (e - 3.0).abs() <= 1.0), format!("Region-2 entry at {} (expected 3 +- 1)", fmt_opt(entry))))
        }
        5 => {
            let s = with_overrides("mixed", ov)?;
            let t = ramsey(&s)?;
            let entry = t.first_event(EventKind::Region2Entry);
            let re = t.first_event(EventKind::Region1Reentry);
            let gw = t.tail_growth(|p| p.w);
            let w_re = re.and_then(|r| t.point_at(r + 1.0)).map(|p| p.w).unwrap_or(f64::NAN);
            let w_end = t.points.last().map(|p| p.w).unwrap_or(f64::NAN);
            let ok = entry.is_some_and(|e| e < 5.0) && re.is_some_and(|r| (r - 9.0).abs() <= 2.0) && gw > 0.0 && w_end > w_re;
            Ok((
                ok,
                format!(
                    "entry {} (< 5), re-entry {} (9 +- 2), tail g_w {gw:.4}, w one year after re-entry {w_re:.4} -> {w_end:.4} at end",
                    fmt_opt(entry),
                    fmt_opt(re)
                ),
            ))
        }
        6 => {
            let s = with_overrides("business_as_usual", ov)?;
            let (lg, gmax) = wage_max_rate(&s.economy, &s.preferences)?;
            let grid: Vec<f64> = (1..=360).map(|i| i as f64 * 0.001).collect();
            let curve = wage_growth_curve(&s.economy, &s.preferences, &grid)?;
            let arg = curve.iter().cloned().fold((0.0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
            let peak_ok = (lg - 0.09).abs() < 1e-12 && (gmax - 0.18).abs() < 1e-12 && (arg.0 - lg).abs() <= 0.001 + 1e-12;
            let mut ok = peak_ok;
            let mut detail = format!("peak ({lg:.4}, {gmax:.4}), grid argmax {:.3}", arg.0);
            let sims: Vec<(f64, Result<Trajectory>)> = [0.01, 0.12, 0.20]
                .par_iter()
                .map(|&l| (l, constant_s_tail(&s, l, 300.0)))
                .collect();
            for (l, t) in sims {
                let t = t?;
                let pred = classify_long_run(&s.economy, &s.preferences, l)?.asymptotic_wage_growth;
                let got = t.tail_growth(|p| p.w);
                let good = rel_ok(got, pred, 0.10);
                ok &= good;
                detail += &format!("; lg={l}: g_w {got:.5} vs {pred:.5}");
            }
            Ok((ok, detail))
        }
        7 => {
            let s = with_overrides("business_as_usual", ov)?;
            let t = constant_s_tail(&s, 0.01, 300.0)?;
            let ls = t.points.last().unwrap().labor_share;
            let target = labor_share_limit_case3(&s.economy, &s.preferences, 0.01)?;
            Ok((
                (ls - 0.5714).abs() <= 0.02 && (target - 0.5714).abs() < 1e-4,
                format!("labor share at 300y {ls:.4}, closed form {target:.4} (expected 0.5714 +- 0.02)"),
            ))
        }
        8 => {
            let s = with_overrides("baseline_agi", ov)?;
            let kp = capital_upper_bound(&s.economy, &s.preferences, s.phi0)?;
            let target = s.preferences.rho + s.preferences.delta;
            let (mut lo, mut hi) = (1e-9, 1.0);
            while static_equilibrium(&s.economy, hi, s.phi0)?.r > target {
                hi *= 2.0;
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if static_equilibrium(&s.economy, mid, s.phi0)?.r > target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let root = 0.5 * (lo + hi);
            let rel = ((kp - root) / root).abs();
            Ok((rel <= 1e-6, format!("K+ {kp:.6}, bisection {root:.6}, relative gap {rel:.1e}")))
        }
        9 => {
            let results: Vec<Result<(String, Option<String>)>> = SCENARIOS
                .par_iter()
                .map(|name| {
                    let s = with_overrides(name, ov)?;
                    let (d, p) = s.automation()?;
                    let t = ramsey(&s)?;
                    let b = bounds(&NaturalSchedule { dist: d, path: p }, &s.economy, &s.preferences, s.k0, &s.solver)?;
                    Ok((name.to_string(), bounds_violation(&t, &b, 1e-9)))
                })
                .collect();
            let mut ok = true;
            let mut detail = Vec::new();
            for r in results {
                let (name, v) = r?;
                match v {
                    None => detail.push(format!("{name} inside")),
                    Some(msg) => {
                        ok = false;
                        detail.push(format!("{name} violates at {msg}"));
                    }
                }
            }
            Ok((ok, detail.join("; ")))
        }
        10 => {
            let s = with_overrides("fixed_factor", ov)?;
            let r = run(&s)?;
            let peak = r.trajectory.first_event(EventKind::WagePeak);
            let entry = r.trajectory.first_event(EventKind::Region2Entry);
            let ok = peak.is_some_and(|p| (p - 10.0).abs() <= 2.0) && entry.is_some_and(|e| (e - 25.0).abs() <= 3.0);
            let m = s.extensions.fixed_factor.map(|f| f.1).unwrap_or(f64::NAN);
            Ok((
                ok,
                format!("M = {m:e}: wage peak {} (10 +- 2), Region-2 entry {} (25 +- 3)", fmt_opt(peak), fmt_opt(entry)),
            ))
        }
        11 => {
            let hot = singularity_fixture(0.5, 0.5, 0.2);
            let cold = singularity_fixture(0.3, 0.2, 0.2);
            let (ratio_hot, _) = singularity_condition(0.5, 0.5, 0.2)?;
            let (ratio_cold, _) = singularity_condition(0.3, 0.2, 0.2)?;
            let h = simulate_two_sector(&hot, 50.0, 0.01, 0.1)?;
            let c = simulate_two_sector(&cold, 100.0, 0.01, 0.1)?;
            let tail: Vec<f64> = h.points.iter().rev().take(21).map(|p| p.g_a).collect();
            let rising = tail.len() == 21 && tail.windows(2).all(|w| w[0] > w[1]);
            let ok = h.blowup_time.is_some() && rising && c.blowup_time.is_none();
            Ok((
                ok,
                format!(
                    "ratio {ratio_hot:.3}: blow-up at {}, g_A rising over last 20 steps: {rising}; ratio {ratio_cold:.3}: blow-up {}",
                    fmt_opt(h.blowup_time),
                    fmt_opt(c.blowup_time)
                ),
            ))
        }
        12 => {
            let s = with_overrides("nostalgic", ov)?;
            let (d, p) = s.automation()?;
            let cap = s.extensions.nostalgic.unwrap_or(0.09);
            let nr = crate::extensions::simulate_nostalgic(
                &d,
                &p,
                &s.economy,
                &s.preferences,
                cap,
                crate::extensions::SwitchRule::AnchoredAtStart,
                Policy::Ramsey,
                s.k0,
                &s.solver,
            )?;
            let h = s.solver.horizon;
            let gw = nr.capped.growth_between(h - 10.0, h, |p| p.w);
            let gap_end = nr.output_gap.last().map(|g| g.1).unwrap_or(f64::NAN);
            let bind = nr.bind_time;
            let early = bind.and_then(|tb| nr.output_gap.iter().find(|g| g.0 > tb && g.0 <= tb + 2.0).copied());
            let ok = (gw - 0.18).abs() <= 0.03 && gap_end > 0.5 && early.is_some_and(|g| g.1 < 0.05);
            Ok((
                ok,
                format!(
                    "cap binds at {}, capped g_w over last decade {gw:.4} (0.18 +- 0.03), gap at end {gap_end:.3} (> 0.5), first gap after binding {} (< 0.05)",
                    fmt_opt(bind),
                    early.map(|g| format!("{:.4} at t={:.1}", g.1, g.0)).unwrap_or_else(|| "none".into())
                ),
            ))
        }
        13 => specific_check(ov),
        14 => {
            let mut rng = ChaCha8Rng::seed_from_u64(14);
            let mut worst: f64 = 0.0;
            for _ in 0..100 {
                let p = EconomyParams::new(rng.gen_range(0.2..2.0), rng.gen_range(0.1..0.9), rng.gen_range(0.5..2.0))?;
                let k = rng.gen_range(0.1..20.0);
                let phi = rng.gen_range(0.0..0.99);
                let cf = static_equilibrium(&p, k, phi)?;
                let or = oracle_equilibrium(&p, k, phi, 64)?;
                for (a, b) in [(or.y, cf.y), (or.w, cf.w), (or.r, cf.r)] {
                    let e = if b == 0.0 { a.abs() } else { ((a - b) / b).abs() };
                    worst = worst.max(e);
                }
            }
            Ok((worst <= 1e-3, format!("worst relative gap over 100 draws {worst:.2e} (<= 1e-3)")))
        }
        15 => {
            let mut rng = ChaCha8Rng::seed_from_u64(15);
            let (mut n, mut worst) = (0, 0.0f64);
            while n < 1000 {
                let p = EconomyParams::new(rng.gen_range(0.2..2.0), rng.gen_range(0.05..0.95), rng.gen_range(0.5..2.0))?;
                let k = rng.gen_range(0.01..50.0);
                let phi = rng.gen_range(0.0..1.0);
                let eq = static_equilibrium(&p, k, phi)?;
                if eq.region != Region::Region1 {
                    continue;
                }
                n += 1;
                worst = worst.max((unit_cost(&p, phi, eq.w, eq.r) - 1.0).abs());
            }
            Ok((worst <= 1e-10, format!("worst |c(w,R) - 1| over 1000 Region-1 draws {worst:.2e} (<= 1e-10)")))
        }
        _ => Err(Error::Config(format!("no criterion {id}"))),
    }
}

/// Two-sector fixture with frozen shares, used for the singularity check.
pub fn singularity_fixture(phi: f64, gamma: f64, theta: f64) -> RndParams {
    RndParams {
        theta,
        shares: SectorShares::Frozen { phi, gamma },
        s: 0.2,
        c: 0.5,
        l_a: 1.0,
        l_y: 1.0,
        a0: 5.0,
        k0: 1.0,
        blowup_cap: 10.0,
    }
}

/// Finite-difference signs of (w, R_traditional, R_specific) per phase.
pub fn specific_sign_pattern(ov_state: &SpecificCapitalState, params: &EconomyParams) -> Result<(bool, String)> {
    let (k1, k2) = ov_state.thresholds();
    let top = 1.5 * k2;
    let n = 3000;
    let mut st = *ov_state;
    let mut prev: Option<(f64, f64, f64, u8)> = None;
    let expected = |phase: u8| -> [f64; 3] {
        match phase {
            1 => [-1.0, 1.0, -1.0],
            2 => [1.0, 1.0, -1.0],
            _ => [1.0, -1.0, -1.0],
        }
    };
    let mut ok = true;
    let mut seen = [false; 3];
    for j in 0..=n {
        st.k_spec = top * j as f64 / n as f64;
        let r = specific_capital_returns(params, &st)?;
        seen[(r.phase - 1) as usize] = true;
        if let Some((w, rt, rs, ph)) = prev {
            if ph == r.phase {
                let d = [r.w - w, r.r_traditional - rt, r.r_specific - rs];
                let e = expected(r.phase);
                if d.iter().zip(e).any(|(x, s)| x * s <= 0.0) {
                    ok = false;
                }
            }
        }
        prev = Some((r.w, r.r_traditional, r.r_specific, r.phase));
    }
    let mut worst = 0.0f64;
    for kb in [k1, k2] {
        let below = SpecificCapitalState { k_spec: kb * (1.0 - 1e-13), ..*ov_state };
        let at = SpecificCapitalState { k_spec: kb, ..*ov_state };
        let a = specific_capital_returns(params, &below)?;
        let b = specific_capital_returns(params, &at)?;
        for (x, y) in [(a.w, b.w), (a.r_traditional, b.r_traditional), (a.r_specific, b.r_specific)] {
            worst = worst.max(((x - y) / y).abs());
        }
    }
    let all = seen.iter().all(|&s| s);
    Ok((
        ok && all && worst <= 1e-8,
        format!("k1 {k1:.4}, k2 {k2:.4}; sign pattern matches: {ok}; all phases visited: {all}; worst jump at thresholds {worst:.1e}"),
    ))
}

fn specific_check(ov: &[(String, String)]) -> Result<(bool, String)> {
    let s = with_overrides("specific_capital", ov)?;
    let dm = s.extensions.specific.map(|x| x.delta_mass).unwrap_or(0.1);
    let st = SpecificCapitalState { k: s.k0, l: s.economy.l, phi_minus: s.phi0, delta_mass: dm, k_spec: 0.0 };
    specific_sign_pattern(&st, &s.economy)
}

/// Resolve `--only` to criterion ids: a tag (`fpf`) or a number (`15`).
pub fn select(only: Option<&str>) -> Result<Vec<u8>> {
    match only {
        None => Ok(CRITERIA.iter().map(|c| c.0).collect()),
        Some(tag) => {
            let ids: Vec<u8> = CRITERIA
                .iter()
                .filter(|c| c.1 == tag || c.0.to_string() == tag)
                .map(|c| c.0)
                .collect();
            if ids.is_empty() {
                let tags: Vec<&str> = CRITERIA.iter().map(|c| c.1).collect();
                return Err(Error::Config(format!("unknown check `{tag}`; known: {}", tags.join(", "))));
            }
            Ok(ids)
        }
    }
}

/// Run the selected criteria, with config overrides applied to every preset.
pub fn run_checks(ids: &[u8], overrides: &[(String, String)]) -> Vec<CheckResult> {
    ids.par_iter()
        .map(|&id| {
            let (_, tag, title) = CRITERIA.iter().find(|c| c.0 == id).copied().unwrap_or((id, "?", "?"));
            let (passed, detail) = match criterion(id, overrides) {
                Ok(x) => x,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckResult { id, tag, title, passed, detail }
        })
        .collect()
}
