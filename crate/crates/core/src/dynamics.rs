//! Dynamic equilibrium along an exogenous automation path.
//!
//! Capital follows `K̇ = Y - δK - C`. Under the optimal policy consumption
//! obeys the Euler equation `Ċ/C = (F_K - ρ - δ)/η` and the initial
//! consumption level is found by forward shooting with bisection onto a
//! terminal condition taken from the known long-run regime.

use crate::analysis::{classify_long_run, Regime};
use crate::distributions::{AutomationPath, TaskDistribution};
use crate::error::{Error, Result};
use crate::static_economy::{
    ces_composite, equilibrium_with_share, EconomyParams, Region, StaticEquilibrium,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreferenceParams {
    pub rho: f64,
    pub eta: f64,
    pub delta: f64,
}

impl PreferenceParams {
    pub fn new(rho: f64, eta: f64, delta: f64) -> Result<Self> {
        let p = Self { rho, eta, delta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eta > 0.0) || !self.eta.is_finite() {
            return Err(Error::domain(format!("eta must be > 0, got {}", self.eta)));
        }
        if !(self.rho >= 0.0) || !(self.delta >= 0.0) {
            return Err(Error::domain("rho and delta must be >= 0"));
        }
        Ok(())
    }

    /// Positive long-run growth needs `A > ρ + δ`.
    pub fn check_against(&self, a: f64) -> Result<()> {
        if a > self.rho + self.delta {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "need A > rho + delta, got A = {a}, rho + delta = {}",
                self.rho + self.delta
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrator {
    Rk4,
    Euler,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    pub dt: f64,
    pub horizon: f64,
    /// Relative width of the final bracket on initial consumption.
    pub shoot_tol: f64,
    pub max_shoot_iter: usize,
    pub integrator: Integrator,
    /// Spacing of recorded points; events are located at `dt` resolution.
    pub record_stride: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            dt: 0.01,
            horizon: 100.0,
            shoot_tol: 1e-13,
            max_shoot_iter: 200,
            integrator: Integrator::Rk4,
            record_stride: 0.1,
        }
    }
}

impl SolverSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !(self.horizon >= 1.0) || !(self.shoot_tol > 0.0) {
            return Err(Error::domain("solver settings need dt > 0, horizon >= 1, shoot_tol > 0"));
        }
        if self.max_shoot_iter == 0 || !(self.record_stride > 0.0) {
            return Err(Error::domain("solver settings need max_iter >= 1 and stride > 0"));
        }
        Ok(())
    }

    fn steps(&self) -> usize {
        (self.horizon / self.dt).round() as usize
    }

    fn stride_steps(&self) -> usize {
        ((self.record_stride / self.dt).round() as usize).max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub index: f64,
    pub phi: f64,
    /// `1 - Φ`, kept separately because `phi` rounds to 1 in long Pareto tails.
    pub unautomated: f64,
    pub region: Region,
    pub k: f64,
    pub c: f64,
    pub y: f64,
    pub w: f64,
    pub r: f64,
    pub labor_share: f64,
    pub savings_rate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    Region2Entry,
    Region1Reentry,
    FullAutomation,
    WagePeak,
}

impl EventKind {
    pub fn name(self) -> &'static str {
        match self {
            EventKind::Region2Entry => "region2_entry",
            EventKind::Region1Reentry => "region1_reentry",
            EventKind::FullAutomation => "full_automation",
            EventKind::WagePeak => "wage_peak",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub kind: EventKind,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub points: Vec<TrajectoryPoint>,
    pub events: Vec<Event>,
}

impl Trajectory {
    pub fn first_event(&self, kind: EventKind) -> Option<f64> {
        self.events.iter().find(|e| e.kind == kind).map(|e| e.t)
    }

    pub fn point_at(&self, t: f64) -> Option<&TrajectoryPoint> {
        self.points.iter().min_by(|a, b| (a.t - t).abs().total_cmp(&(b.t - t).abs()))
    }

    /// Mean log-derivative of a positive series between the points nearest `t0` and `t1`.
    pub fn growth_between(&self, t0: f64, t1: f64, f: impl Fn(&TrajectoryPoint) -> f64) -> f64 {
        let a = self.point_at(t0).expect("empty trajectory");
        let b = self.point_at(t1).expect("empty trajectory");
        (f(b).ln() - f(a).ln()) / (b.t - a.t)
    }

    /// Growth over the final 20% of the recorded horizon.
    pub fn tail_growth(&self, f: impl Fn(&TrajectoryPoint) -> f64) -> f64 {
        let end = self.points.last().expect("empty trajectory").t;
        self.growth_between(0.8 * end, end, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Policy {
    Ramsey,
    ConstantSavings(f64),
}

/// How the automated share evolves in time.
pub trait Schedule: Sync {
    fn log_index(&self, t: f64) -> f64;
    /// `1 - Φ_t`.
    fn unautomated(&self, t: f64) -> f64;
    /// Long-run shape, used to pick the terminal condition.
    fn tail(&self) -> Tail;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail {
    /// Every task is automated at this time.
    Full(f64),
    /// `1 - Φ` eventually decays exponentially at this rate.
    Exponential(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NaturalSchedule {
    pub dist: TaskDistribution,
    pub path: AutomationPath,
}

impl Schedule for NaturalSchedule {
    fn log_index(&self, t: f64) -> f64 {
        self.path.log_index(t)
    }

    fn unautomated(&self, t: f64) -> f64 {
        self.dist.survival_log(self.path.log_index(t))
    }

    fn tail(&self) -> Tail {
        match self.dist.log_support_end() {
            Some(x) => Tail::Full(((x - self.path.log_i0) / self.path.g).max(0.0)),
            None => Tail::Exponential(self.dist.tail_lambda().unwrap_or(0.0) * self.path.g),
        }
    }
}

/// Production side used by the simulator.
pub trait Technology: Sync {
    fn params(&self) -> &EconomyParams;
    fn equilibrium(&self, k: f64, phi: f64, u: f64) -> Result<StaticEquilibrium>;
}

impl Technology for EconomyParams {
    fn params(&self) -> &EconomyParams {
        self
    }

    fn equilibrium(&self, k: f64, phi: f64, u: f64) -> Result<StaticEquilibrium> {
        equilibrium_with_share(self, k, phi, u)
    }
}

/// Terminal condition for shooting. `excess` is positive when initial
/// consumption was too high.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Terminal {
    /// Saddle path of the linear economy `Y = A(K+L)`: `C = (A-δ-g)(K + AL/(A-δ))`.
    AkSaddle { a: f64, l: f64, delta: f64, g: f64 },
    /// Capital at the horizon equals this level.
    Capital(f64),
    /// Consumption-output ratio at the horizon.
    ConsumptionRatio(f64),
    /// Marginal product of capital at the horizon.
    Return(f64),
}

impl Terminal {
    fn excess(&self, k: f64, c: f64, eq: &StaticEquilibrium) -> f64 {
        match *self {
            Terminal::AkSaddle { a, l, delta, g } => c - (a - delta - g) * (k + a * l / (a - delta)),
            Terminal::Capital(target) => target - k,
            Terminal::ConsumptionRatio(x) => c / eq.y - x,
            Terminal::Return(target) => eq.r - target,
        }
    }
}

pub fn consumption_growth(params: &EconomyParams, prefs: &PreferenceParams, k: f64, phi: f64) -> Result<f64> {
    let eq = crate::static_economy::static_equilibrium(params, k, phi)?;
    Ok((eq.r - prefs.rho - prefs.delta) / prefs.eta)
}

/// Growth rate of the linear economy once labor and capital are perfect substitutes.
pub fn bgp_growth(prefs: &PreferenceParams, a: f64) -> Result<f64> {
    if a < prefs.rho + prefs.delta {
        return Err(Error::domain("balanced growth needs A >= rho + delta"));
    }
    Ok((a - prefs.rho - prefs.delta) / prefs.eta)
}

/// Gross savings rate on the balanced growth path of the linear economy.
pub fn long_run_savings(prefs: &PreferenceParams, a: f64) -> Result<f64> {
    let s = (a - prefs.rho - prefs.delta + prefs.eta * prefs.delta) / (a * prefs.eta);
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::domain(format!("long-run savings rate {s} outside (0,1)")));
    }
    Ok(s)
}

/// Capital at which `F_K(K, Φ) = R`, in Region 1. Infinite at `Φ = 1`.
pub fn capital_for_return(params: &EconomyParams, phi: f64, u: f64, r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&phi) || !(0.0..=1.0).contains(&u) {
        return Err(Error::domain("automated share out of range"));
    }
    if u == 0.0 {
        return Ok(f64::INFINITY);
    }
    let EconomyParams { a, sigma, l } = *params;
    let denom = r.powf(sigma - 1.0) - a.powf(sigma - 1.0) * phi;
    if !(denom > 0.0) {
        return Err(Error::domain(format!("no capital level yields return {r}")));
    }
    Ok(a.powf(sigma) * l * u.powf(1.0 / (sigma - 1.0)) * phi / denom.powf(sigma / (sigma - 1.0)))
}

/// Largest capital stock the economy ever accumulates at automation level Φ:
/// the level where `F_K = ρ + δ`.
pub fn capital_upper_bound(params: &EconomyParams, prefs: &PreferenceParams, phi: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&phi) {
        return Err(Error::domain(format!("phi must lie in [0,1], got {phi}")));
    }
    capital_for_return(params, phi, 1.0 - phi, prefs.rho + prefs.delta)
}

/// Terminal condition implied by the long-run regime of a schedule.
pub fn default_terminal(
    params: &EconomyParams,
    prefs: &PreferenceParams,
    sched: &dyn Schedule,
    horizon: f64,
) -> Result<Terminal> {
    let g_ak = bgp_growth(prefs, params.a)?;
    let ak = Terminal::AkSaddle { a: params.a, l: params.l, delta: prefs.delta, g: g_ak };
    match sched.tail() {
        Tail::Full(_) => Ok(ak),
        Tail::Exponential(lambda_g) => {
            let report = classify_long_run(params, prefs, lambda_g)?;
            match report.regime {
                Regime::Collapse => Ok(ak),
                Regime::CapitalConstrained => Ok(Terminal::ConsumptionRatio(1.0 - long_run_savings(prefs, params.a)?)),
                Regime::AutomationConstrained => {
                    let g = lambda_g / (1.0 - params.sigma);
                    if g >= g_ak * (1.0 - 1e-9) {
                        return Ok(Terminal::ConsumptionRatio(1.0 - long_run_savings(prefs, params.a)?));
                    }
                    let u = sched.unautomated(horizon);
                    let r = prefs.rho + prefs.delta + prefs.eta * g;
                    Ok(Terminal::Capital(capital_for_return(params, 1.0 - u, u, r)?))
                }
            }
        }
    }
}

enum Mode {
    Ramsey,
    Constant(f64),
}

struct RunOutcome {
    feasible: bool,
    k: f64,
    c: f64,
    eq: Option<StaticEquilibrium>,
    trajectory: Trajectory,
}

struct Engine<'a> {
    tech: &'a dyn Technology,
    sched: &'a dyn Schedule,
    prefs: PreferenceParams,
    settings: SolverSettings,
}

impl<'a> Engine<'a> {
    fn eval(&self, t: f64, k: f64) -> Result<(StaticEquilibrium, f64, f64)> {
        let u = self.sched.unautomated(t);
        let phi = 1.0 - u;
        Ok((self.tech.equilibrium(k, phi, u)?, phi, u))
    }

    fn rhs(&self, mode: &Mode, t: f64, s: [f64; 2]) -> Option<[f64; 2]> {
        if !(s[0] > 0.0) {
            return None;
        }
        let (eq, _, _) = self.eval(t, s[0]).ok()?;
        let d = self.prefs.delta;
        Some(match mode {
            Mode::Ramsey => [eq.y - d * s[0] - s[1], s[1] * (eq.r - self.prefs.rho - d) / self.prefs.eta],
            Mode::Constant(sr) => [sr * eq.y - d * s[0], 0.0],
        })
    }

    fn step(&self, mode: &Mode, t: f64, s: [f64; 2]) -> Option<[f64; 2]> {
        let h = self.settings.dt;
        let add = |a: [f64; 2], b: [f64; 2], f: f64| [a[0] + f * b[0], a[1] + f * b[1]];
        match self.settings.integrator {
            Integrator::Euler => Some(add(s, self.rhs(mode, t, s)?, h)),
            Integrator::Rk4 => {
                let k1 = self.rhs(mode, t, s)?;
                let k2 = self.rhs(mode, t + 0.5 * h, add(s, k1, 0.5 * h))?;
                let k3 = self.rhs(mode, t + 0.5 * h, add(s, k2, 0.5 * h))?;
                let k4 = self.rhs(mode, t + h, add(s, k3, h))?;
                Some([
                    s[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
                    s[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
                ])
            }
        }
    }

    fn run(&self, mode: &Mode, k0: f64, c0: f64, record: bool) -> RunOutcome {
        let n = self.settings.steps();
        let stride = self.settings.stride_steps();
        let dt = self.settings.dt;
        let mut s = [k0, c0];
        let mut traj = Trajectory::default();
        let mut prev_region: Option<Region> = None;
        let mut full_seen = false;
        let mut peak = (f64::NEG_INFINITY, 0.0);
        let fail = |k, c, traj| RunOutcome { feasible: false, k, c, eq: None, trajectory: traj };
        for i in 0..=n {
            let t = i as f64 * dt;
            if !(s[0] > 0.0) || !s[0].is_finite() {
                return fail(s[0], s[1], traj);
            }
            let Ok((eq, phi, u)) = self.eval(t, s[0]) else {
                return fail(s[0], s[1], traj);
            };
            let c = match mode {
                Mode::Ramsey => s[1],
                Mode::Constant(sr) => (1.0 - sr) * eq.y,
            };
            if matches!(mode, Mode::Ramsey) && !(c < eq.y) {
                return fail(s[0], c, traj);
            }
            if record {
                if let Some(pr) = prev_region {
                    if pr != eq.region {
                        let kind = match eq.region {
                            Region::Region2 => EventKind::Region2Entry,
                            Region::Region1 => EventKind::Region1Reentry,
                        };
                        traj.events.push(Event { kind, t });
                    }
                }
                prev_region = Some(eq.region);
                if u == 0.0 && !full_seen {
                    full_seen = true;
                    traj.events.push(Event { kind: EventKind::FullAutomation, t });
                }
                if eq.w > peak.0 {
                    peak = (eq.w, t);
                }
                if i % stride == 0 || i == n {
                    traj.points.push(TrajectoryPoint {
                        t,
                        index: self.sched.log_index(t).exp(),
                        phi,
                        unautomated: u,
                        region: eq.region,
                        k: s[0],
                        c,
                        y: eq.y,
                        w: eq.w,
                        r: eq.r,
                        labor_share: eq.labor_share,
                        savings_rate: 1.0 - c / eq.y,
                    });
                }
            }
            if i == n {
                if record && peak.1 < t {
                    traj.events.push(Event { kind: EventKind::WagePeak, t: peak.1 });
                    traj.events.sort_by(|a, b| a.t.total_cmp(&b.t));
                }
                return RunOutcome { feasible: true, k: s[0], c, eq: Some(eq), trajectory: traj };
            }
            match self.step(mode, t, s) {
                Some(next) => s = next,
                None => return fail(s[0], s[1], traj),
            }
        }
        unreachable!()
    }
}

/// Simulate with an arbitrary production side and automation schedule.
/// `terminal = None` picks the regime-consistent terminal condition of the
/// baseline economy.
pub fn simulate_with(
    tech: &dyn Technology,
    sched: &dyn Schedule,
    prefs: &PreferenceParams,
    policy: Policy,
    k0: f64,
    settings: &SolverSettings,
    terminal: Option<Terminal>,
) -> Result<Trajectory> {
    settings.validate()?;
    prefs.validate()?;
    tech.params().validate()?;
    if !(k0 > 0.0) {
        return Err(Error::domain("initial capital must be > 0"));
    }
    let engine = Engine { tech, sched, prefs: *prefs, settings: *settings };
    match policy {
        Policy::ConstantSavings(s) => {
            if !(s > 0.0 && s < 1.0) {
                return Err(Error::domain(format!("savings rate must lie in (0,1), got {s}")));
            }
            let out = engine.run(&Mode::Constant(s), k0, 0.0, true);
            if !out.feasible {
                return Err(Error::solver("capital became non-positive"));
            }
            Ok(out.trajectory)
        }
        Policy::Ramsey => {
            let terminal = match terminal {
                Some(t) => t,
                None => default_terminal(tech.params(), prefs, sched, settings.horizon)?,
            };
            let y0 = engine.eval(0.0, k0)?.0.y;
            let (mut lo, mut hi) = (0.0, y0);
            for _ in 0..settings.max_shoot_iter {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi || hi - lo <= settings.shoot_tol * y0 {
                    break;
                }
                let out = engine.run(&Mode::Ramsey, k0, mid, false);
                let too_high = match (out.feasible, out.eq) {
                    (true, Some(eq)) => terminal.excess(out.k, out.c, &eq) > 0.0,
                    _ => true,
                };
                if too_high {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            for c0 in [0.5 * (lo + hi), lo] {
                if c0 <= 0.0 {
                    continue;
                }
                let out = engine.run(&Mode::Ramsey, k0, c0, true);
                if out.feasible {
                    return Ok(out.trajectory);
                }
            }
            Err(Error::solver(format!(
                "shooting failed: no feasible path with C0 in [{lo}, {hi}]"
            )))
        }
    }
}

pub fn simulate(
    dist: &TaskDistribution,
    path: &AutomationPath,
    params: &EconomyParams,
    prefs: &PreferenceParams,
    policy: Policy,
    k0: f64,
    settings: &SolverSettings,
) -> Result<Trajectory> {
    prefs.check_against(params.a)?;
    let sched = NaturalSchedule { dist: *dist, path: *path };
    simulate_with(params, &sched, prefs, policy, k0, settings, None)
}

/// One point of a lower or upper bound path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPoint {
    pub t: f64,
    pub phi: f64,
    pub k: f64,
    pub y: f64,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    pub lower: Vec<BoundPoint>,
    pub upper: Vec<BoundPoint>,
}

/// Lower path keeps capital at `K0`; upper path sets capital to the level
/// where `F_K = ρ + δ` at each instant.
pub fn bounds(
    sched: &dyn Schedule,
    params: &EconomyParams,
    prefs: &PreferenceParams,
    k0: f64,
    settings: &SolverSettings,
) -> Result<Bounds> {
    settings.validate()?;
    let u0 = sched.unautomated(0.0);
    let eq0 = equilibrium_with_share(params, k0, 1.0 - u0, u0)?;
    if eq0.r < prefs.rho + prefs.delta {
        return Err(Error::domain(format!(
            "bounds need F_K(K0) >= rho + delta, got {} < {}",
            eq0.r,
            prefs.rho + prefs.delta
        )));
    }
    let n = settings.steps();
    let stride = settings.stride_steps();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for i in (0..=n).filter(|i| i % stride == 0 || *i == n) {
        let t = i as f64 * settings.dt;
        let u = sched.unautomated(t);
        let phi = 1.0 - u;
        let lo = equilibrium_with_share(params, k0, phi, u)?;
        lower.push(BoundPoint { t, phi, k: k0, y: lo.y, w: lo.w });
        let kp = capital_for_return(params, phi, u, prefs.rho + prefs.delta)?;
        if kp.is_infinite() {
            upper.push(BoundPoint { t, phi, k: kp, y: f64::INFINITY, w: params.a });
        } else {
            let up = equilibrium_with_share(params, kp, phi, u)?;
            upper.push(BoundPoint { t, phi, k: kp, y: up.y, w: up.w });
        }
    }
    Ok(Bounds { lower, upper })
}

/// First violation of `K⁻ ≤ K ≤ K⁺`, `w⁻ ≤ w ≤ w⁺` (relative slack `tol`), if any.
pub fn bounds_violation(traj: &Trajectory, b: &Bounds, tol: f64) -> Option<String> {
    for p in &traj.points {
        let lo = b.lower.iter().find(|q| (q.t - p.t).abs() < 1e-9)?;
        let up = b.upper.iter().find(|q| (q.t - p.t).abs() < 1e-9)?;
        let below = |x: f64, bound: f64| x < bound - tol * bound.abs().max(1.0);
        if below(p.k, lo.k) || below(up.k, p.k) || below(p.w, lo.w) || below(up.w, p.w) {
            return Some(format!(
                "t={}: K={} in [{}, {}], w={} in [{}, {}]",
                p.t, p.k, lo.k, up.k, p.w, lo.w, up.w
            ));
        }
    }
    None
}

/// Savings rate at which automation leaves the wage unchanged (`δ = 0`).
pub fn balancing_savings(
    params: &EconomyParams,
    prefs: &PreferenceParams,
    point: &TrajectoryPoint,
    dist: &TaskDistribution,
    path: &AutomationPath,
) -> Result<f64> {
    if prefs.delta != 0.0 {
        return Err(Error::domain("balancing savings rate is only derived for delta = 0"));
    }
    if point.region != Region::Region1 {
        return Err(Error::domain("balancing savings rate needs a Region-1 state"));
    }
    let s = params.sigma;
    let u = point.unautomated;
    let phi = point.phi;
    let kap = phi / u;
    let k_over_ell = (point.k / phi) / (params.l / u);
    let bracket = kap + 1.0 / (1.0 - s) - s / (1.0 - s) * k_over_ell.powf((1.0 - s) / s);
    let elasticity = dist.log_density(path.log_index(point.t)) / phi;
    Ok(bracket * (point.k / point.y) * elasticity * path.g)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WageDecomposition {
    pub capital: f64,
    pub productivity: f64,
    pub displacement: f64,
}

impl WageDecomposition {
    pub fn total(&self) -> f64 {
        self.capital + self.productivity + self.displacement
    }
}

/// Split wage growth between two Region-1 points into capital deepening,
/// the productivity gain from automation, and displacement.
pub fn wage_growth_decomposition(
    params: &EconomyParams,
    p1: &TrajectoryPoint,
    p2: &TrajectoryPoint,
) -> Result<WageDecomposition> {
    if p1.region != Region::Region1 || p2.region != Region::Region1 {
        return Err(Error::domain("decomposition needs Region-1 points"));
    }
    let h = p2.t - p1.t;
    if !(h > 0.0) {
        return Err(Error::domain("points must be strictly ordered in time"));
    }
    let s = params.sigma;
    let k = 0.5 * (p1.k + p2.k);
    let phi = 0.5 * (p1.phi + p2.phi);
    let u = 0.5 * (p1.unautomated + p2.unautomated);
    let (x, xk, _) = ces_composite(s, k, params.l, phi, u);
    let s_k = xk * k / x;
    let s_l = 1.0 - s_k;
    let k_dot = (p2.k.ln() - p1.k.ln()) / h;
    let automation = (p1.unautomated.ln() - p2.unautomated.ln()) / h;
    Ok(WageDecomposition {
        capital: s_k * k_dot / s,
        productivity: automation * (s_l - s_k * u / phi) / (s * (1.0 - s)),
        displacement: -automation / s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn table() -> (EconomyParams, PreferenceParams) {
        (EconomyParams::new(0.5, 0.5, 1.0).unwrap(), PreferenceParams::new(0.04, 2.0, 0.1).unwrap())
    }

    #[test]
    fn growth_constants() {
        let (p, pr) = table();
        assert_relative_eq!(bgp_growth(&pr, p.a).unwrap(), 0.18, max_relative = 1e-14);
        assert_eq!(bgp_growth(&pr, 0.14).unwrap(), 0.0);
        assert_relative_eq!(long_run_savings(&pr, p.a).unwrap(), 0.56, max_relative = 1e-14);
        let pr1 = PreferenceParams::new(0.04, 1.0, 0.0).unwrap();
        assert_relative_eq!(long_run_savings(&pr1, 0.5).unwrap(), 1.0 - 0.04 / 0.5, max_relative = 1e-14);
        assert_relative_eq!(consumption_growth(&p, &pr, 1.0, 0.9).unwrap(), 0.18, max_relative = 1e-14);
        assert!(consumption_growth(&p, &pr, 1.0, 0.0).unwrap() < 0.0);
    }

    #[test]
    fn upper_bound_closed_form_and_bisection() {
        let (p, pr) = table();
        assert_eq!(capital_upper_bound(&p, &pr, 0.0).unwrap(), 0.0);
        assert!(capital_upper_bound(&p, &pr, 1.0).unwrap().is_infinite());
        assert!(capital_upper_bound(&p, &pr, 1.1).is_err());
        let kp = capital_upper_bound(&p, &pr, 0.608).unwrap();
        let (mut lo, mut hi) = (1.0, 100.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let r = crate::static_economy::static_equilibrium(&p, mid, 0.608).unwrap().r;
            if r > 0.14 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert_relative_eq!(kp, 0.5 * (lo + hi), max_relative = 1e-10);
        assert!((kp - 5.072).abs() < 1e-3);
    }
}
