use automation_race::distributions::TaskDistribution;
use automation_race::dynamics::{
    balancing_savings, bounds, bounds_violation, simulate, wage_growth_decomposition, EventKind, NaturalSchedule,
    Policy, PreferenceParams, SolverSettings, TrajectoryPoint,
};
use automation_race::static_economy::{static_equilibrium, EconomyParams, Region};
use proptest::prelude::*;

fn table() -> (EconomyParams, PreferenceParams) {
    (EconomyParams::new(0.5, 0.5, 1.0).unwrap(), PreferenceParams::new(0.04, 2.0, 0.1).unwrap())
}

fn settings(horizon: f64) -> SolverSettings {
    SolverSettings { horizon, ..SolverSettings::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn ramsey_paths_are_feasible_bounded_and_satisfy_euler(t_full in 4.0f64..40.0, k0 in 3.5f64..5.0) {
        let (p, pr) = table();
        let s = settings(80.0);
        let (d, path) = TaskDistribution::calibrate_power(0.608, t_full, 1.0, 1.0).unwrap();
        let tr = simulate(&d, &path, &p, &pr, Policy::Ramsey, k0, &s).unwrap();
        for q in &tr.points {
            prop_assert!(q.c > 0.0 && q.c < q.y, "t={} C={} Y={}", q.t, q.c, q.y);
        }
        let b = bounds(&NaturalSchedule { dist: d, path }, &p, &pr, k0, &s).unwrap();
        prop_assert_eq!(bounds_violation(&tr, &b, 1e-9), None);
        // central differences on the recorded grid
        for w in tr.points.windows(3) {
            let g = (w[2].c.ln() - w[0].c.ln()) / (w[2].t - w[0].t);
            let euler = (w[1].r - pr.rho - pr.delta) / pr.eta;
            prop_assert!((g - euler).abs() < 10.0 * s.dt, "t={} {} vs {}", w[1].t, g, euler);
        }
        let tf = tr.first_event(EventKind::FullAutomation).unwrap();
        for q in tr.points.iter().filter(|q| q.t >= tf) {
            prop_assert_eq!(q.w, p.a);
            prop_assert_eq!(q.region, Region::Region2);
        }
    }
}

#[test]
fn identical_inputs_give_identical_paths() {
    let (p, pr) = table();
    let (d, path) = TaskDistribution::calibrate_mixture(0.608, 0.95, 0.01, 5.0, 1.0, 1.0).unwrap();
    let a = simulate(&d, &path, &p, &pr, Policy::Ramsey, 4.6, &settings(60.0)).unwrap();
    let b = simulate(&d, &path, &p, &pr, Policy::Ramsey, 4.6, &settings(60.0)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn rk4_converges_at_fourth_order() {
    let (p, pr) = table();
    let (d, path) = TaskDistribution::calibrate_pareto(0.608, 0.05, 1.0).unwrap();
    let end = |dt: f64| {
        let s = SolverSettings { dt, horizon: 40.0, record_stride: 1.0, ..SolverSettings::default() };
        let q = *simulate(&d, &path, &p, &pr, Policy::ConstantSavings(0.3), 4.6, &s).unwrap().points.last().unwrap();
        (q.k, q.c)
    };
    let (a, b, c) = (end(0.2), end(0.1), end(0.05));
    for (x0, x1, x2) in [(a.0, b.0, c.0), (a.1, b.1, c.1)] {
        let (d1, d2) = ((x1 - x0).abs(), (x2 - x1).abs());
        assert!(d2 * 4.0 < d1, "{d1:e} then {d2:e}");
    }
}

fn point_at(p: &EconomyParams, k: f64, phi: f64, t: f64) -> TrajectoryPoint {
    let eq = static_equilibrium(p, k, phi).unwrap();
    TrajectoryPoint {
        t,
        index: 1.0,
        phi,
        unautomated: 1.0 - phi,
        region: eq.region,
        k,
        c: 0.0,
        y: eq.y,
        w: eq.w,
        r: eq.r,
        labor_share: eq.labor_share,
        savings_rate: 0.0,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    // with δ = 0 the wage is stationary when K̇ = s·Y at the balancing rate
    #[test]
    fn balancing_savings_freezes_the_wage(k in 1.0f64..10.0, t in 0.0f64..30.0, lg in 0.005f64..0.1) {
        let p = EconomyParams::new(0.5, 0.5, 1.0).unwrap();
        let pr = PreferenceParams::new(0.04, 2.0, 0.0).unwrap();
        let (d, path) = TaskDistribution::calibrate_pareto(0.608, lg, 1.0).unwrap();
        let phi = d.cdf_log(path.log_index(t));
        let q = point_at(&p, k, phi, t);
        prop_assume!(q.region == Region::Region1 && k * (1.0 - phi) > 1.05 * phi);
        let s = balancing_savings(&p, &pr, &q, &d, &path).unwrap();
        let (hk, hp) = (1e-6 * k, 1e-7);
        let w = |k: f64, f: f64| static_equilibrium(&p, k, f).unwrap().w.ln();
        let dw_dk = (w(k + hk, phi) - w(k - hk, phi)) / (2.0 * hk);
        let dw_dphi = (w(k, phi + hp) - w(k, phi - hp)) / (2.0 * hp);
        let phi_dot = path.g * d.log_density(path.log_index(t));
        let oracle = -dw_dphi * phi_dot / (dw_dk * q.y);
        prop_assert!((s - oracle).abs() < 1e-5 * (1.0 + oracle.abs()), "{s} vs {oracle}");
    }
}

#[test]
fn decomposition_adds_up_to_wage_growth() {
    let (p, pr) = table();
    let (d, path) = TaskDistribution::calibrate_pareto(0.608, 0.01, 1.0).unwrap();
    let tr = simulate(&d, &path, &p, &pr, Policy::Ramsey, 4.6, &settings(100.0)).unwrap();
    for w in tr.points.windows(2).step_by(97) {
        let dec = wage_growth_decomposition(&p, &w[0], &w[1]).unwrap();
        let actual = (w[1].w.ln() - w[0].w.ln()) / (w[1].t - w[0].t);
        assert!((dec.total() - actual).abs() < 1e-4 * (1.0 + actual.abs()), "{} vs {actual}", dec.total());
        assert!(dec.displacement < 0.0 && dec.capital > 0.0);
    }
}
