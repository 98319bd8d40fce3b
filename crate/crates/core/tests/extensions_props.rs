use automation_race::distributions::TaskDistribution;
use automation_race::dynamics::{Policy, PreferenceParams, Schedule, SolverSettings};
use automation_race::extensions::{
    fixed_factor_equilibrium, nostalgic_cap_path, simulate_fixed_factor, simulate_two_sector, singularity_condition,
    skill_wages, specific_capital_returns, FixedFactorParams, RndParams, SectorShares, SkillDistribution,
    SpecificCapitalState, SwitchRule,
};
use automation_race::dynamics::EventKind;
use automation_race::static_economy::{static_equilibrium, EconomyParams};
use proptest::prelude::*;
use rayon::prelude::*;

fn table() -> (EconomyParams, PreferenceParams) {
    (EconomyParams::new(0.5, 0.5, 1.0).unwrap(), PreferenceParams::new(0.04, 2.0, 0.1).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fixed_factor_keeps_the_region_threshold(alpha in 0.05f64..1.0, m in 1e-6f64..10.0, k in 0.01f64..30.0, phi in 0.0f64..=1.0) {
        let (p, _) = table();
        let ff = FixedFactorParams::new(alpha, m).unwrap();
        prop_assert_eq!(fixed_factor_equilibrium(&p, &ff, k, phi).unwrap().eq.region, static_equilibrium(&p, k, phi).unwrap().region);
    }

    #[test]
    fn skilled_wage_bill_and_capital_income_exhaust_output(lu in 0.001f64..0.5, k in 0.5f64..20.0, phi in 0.3f64..0.99, i in 1.0f64..1e4) {
        let (p, _) = table();
        let sk = SkillDistribution { upsilon: TaskDistribution::pareto(lu).unwrap() };
        let sw = match skill_wages(&p, &sk, k, phi, i) {
            Ok(sw) => sw,
            Err(_) => return Ok(()),
        };
        let ups = sw.substituted_share;
        let total = sw.r * (k + ups * p.l) + sw.w_high * (1.0 - ups) * p.l;
        prop_assert!(((total - sw.y) / sw.y).abs() < 1e-10);
        prop_assert_eq!(sw.w_low, p.a);
    }

    #[test]
    fn specific_returns_are_continuous_at_thresholds(k in 0.5f64..20.0, phi in 0.1f64..0.9, dm in 0.01f64..0.09) {
        let (p, _) = table();
        prop_assume!(phi + dm < 1.0);
        let st = SpecificCapitalState { k, l: p.l, phi_minus: phi, delta_mass: dm, k_spec: 0.0 };
        let (k1, k2) = st.thresholds();
        prop_assume!(k1 < k2);
        prop_assert!(specific_capital_returns(&p, &st).is_ok());
        for kb in [k1, k2] {
            let a = specific_capital_returns(&p, &SpecificCapitalState { k_spec: kb * (1.0 - 1e-12), ..st }).unwrap();
            let b = specific_capital_returns(&p, &SpecificCapitalState { k_spec: kb, ..st }).unwrap();
            for (x, y) in [(a.w, b.w), (a.r_traditional, b.r_traditional), (a.r_specific, b.r_specific)] {
                prop_assert!(((x - y) / y).abs() < 1e-8, "{x} vs {y} at {kb}");
            }
        }
    }

    #[test]
    fn capped_share_never_exceeds_feasible(cap in 0.01f64..0.5, t_full in 5.0f64..40.0, rate_limit in any::<bool>()) {
        let (d, path) = TaskDistribution::calibrate_power(0.608, t_full, 1.0, 1.0).unwrap();
        let rule = if rate_limit { SwitchRule::RateLimit } else { SwitchRule::AnchoredAtStart };
        let c = nostalgic_cap_path(&d, &path, cap, rule).unwrap();
        let mut prev = 0.0;
        for j in 0..=1000 {
            let t = j as f64 * 0.1;
            let psi = 1.0 - c.unautomated(t);
            prop_assert!(psi <= 1.0 - c.natural.unautomated(t));
            prop_assert!(psi >= prev);
            prev = psi;
        }
    }
}

#[test]
fn fixed_factor_paths_reach_region_two() {
    let (p, pr) = table();
    let ff = FixedFactorParams::new(0.9, 1.5e-5).unwrap();
    let s = SolverSettings { horizon: 200.0, ..SolverSettings::default() };
    let cases = [
        TaskDistribution::calibrate_pareto(0.608, 0.01, 1.0).unwrap(),
        TaskDistribution::calibrate_power(0.608, 20.0, 1.0, 1.0).unwrap(),
        TaskDistribution::calibrate_power(0.608, 5.0, 1.0, 1.0).unwrap(),
        TaskDistribution::calibrate_mixture(0.608, 0.95, 0.01, 5.0, 1.0, 1.0).unwrap(),
    ];
    let entries: Vec<Option<f64>> = cases
        .par_iter()
        .map(|(d, path)| {
            simulate_fixed_factor(d, path, &p, &pr, &ff, Policy::Ramsey, 4.6, &s)
                .unwrap()
                .first_event(EventKind::Region2Entry)
        })
        .collect();
    assert!(entries.iter().all(Option::is_some), "{entries:?}");
}

fn frozen(phi: f64, gamma: f64, theta: f64) -> RndParams {
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

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn idea_growth_trichotomy(phi in 0.05f64..0.8, gamma in 0.05f64..0.95, theta in -0.5f64..0.6) {
        let (ratio, _) = singularity_condition(phi, gamma, theta).unwrap();
        prop_assume!((ratio - 1.0).abs() > 0.1);
        let run = simulate_two_sector(&frozen(phi, gamma, theta), 100.0, 0.01, 0.1).unwrap();
        // skip the adjustment from the arbitrary starting ratio of K to A
        let g: Vec<f64> = run.points.iter().filter(|q| q.t >= 20.0).map(|q| q.g_a).collect();
        if ratio > 1.0 {
            prop_assert!(run.blowup_time.is_some());
            prop_assert!(g.windows(2).all(|w| w[1] > w[0]));
        } else {
            prop_assert!(run.blowup_time.is_none());
            prop_assert!(g.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn specific_phases_follow_the_sign_pattern(k in 2.0f64..20.0, phi in 0.2f64..0.8, dm in 0.01f64..0.15, sigma in 0.2f64..0.8) {
        let p = EconomyParams::new(0.5, sigma, 1.0).unwrap();
        prop_assume!(phi + dm < 0.95);
        let st = SpecificCapitalState { k, l: 1.0, phi_minus: phi, delta_mass: dm, k_spec: 0.0 };
        let (k1, k2) = st.thresholds();
        prop_assume!(k1 < k2);
        let (ok, detail) = automation_race::scenario_runner::check::specific_sign_pattern(&st, &p).unwrap();
        prop_assert!(ok, "{}", detail);
    }
}
