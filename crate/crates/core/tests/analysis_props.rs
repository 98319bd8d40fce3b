use automation_race::analysis::{classify_long_run, omega, savings_floor_holds, wage_growth_curve, wage_max_rate, Regime};
use automation_race::distributions::TaskDistribution;
use automation_race::dynamics::{long_run_savings, simulate, Policy, PreferenceParams, SolverSettings};
use automation_race::static_economy::EconomyParams;
use proptest::prelude::*;
use rayon::prelude::*;

fn table() -> (EconomyParams, PreferenceParams) {
    (EconomyParams::new(0.5, 0.5, 1.0).unwrap(), PreferenceParams::new(0.04, 2.0, 0.1).unwrap())
}

fn setup() -> impl Strategy<Value = (EconomyParams, PreferenceParams)> {
    (0.3f64..1.5, 0.1f64..0.9, 0.01f64..0.06, 0.5f64..4.0, 0.0f64..0.15).prop_filter_map(
        "need A > rho + delta and a savings rate below one",
        |(a, s, rho, eta, delta)| {
            let pr = PreferenceParams::new(rho, eta, delta).unwrap();
            (a > rho + delta + 0.02 && long_run_savings(&pr, a).is_ok())
                .then(|| (EconomyParams::new(a, s, 1.0).unwrap(), pr))
        },
    )
}

proptest! {
    #[test]
    fn curve_is_continuous_at_both_thresholds((p, pr) in setup()) {
        let r = classify_long_run(&p, &pr, 0.05).unwrap();
        for th in [r.lambda_g_lo, r.lambda_g_hi] {
            let c = wage_growth_curve(&p, &pr, &[th * (1.0 - 1e-13), th * (1.0 + 1e-13)]).unwrap();
            prop_assert!((c[0].1 - c[1].1).abs() < 1e-12, "{:?}", c);
        }
    }

    #[test]
    fn savings_floor_separates_collapse((p, pr) in setup(), lg in 0.001f64..0.6) {
        let r = classify_long_run(&p, &pr, lg).unwrap();
        prop_assume!((lg - r.lambda_g_hi).abs() > 1e-12);
        prop_assert_eq!(savings_floor_holds(&p, &pr, lg).unwrap(), r.regime != Regime::Collapse);
    }

    #[test]
    fn curve_peak_does_not_move_with_grid((p, pr) in setup(), n in 50usize..2000) {
        let (lo, _) = wage_max_rate(&p, &pr).unwrap();
        let top = 3.0 * lo;
        let grid: Vec<f64> = (1..=n).map(|i| top * i as f64 / n as f64).collect();
        let c = wage_growth_curve(&p, &pr, &grid).unwrap();
        let arg = c.iter().cloned().fold((0.0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a }).0;
        prop_assert!((arg - lo).abs() <= top / n as f64 + 1e-12);
    }
}

#[test]
fn constant_savings_tails_match_the_classifier() {
    let (p, pr) = table();
    let sr = long_run_savings(&pr, p.a).unwrap();
    let s = SolverSettings { horizon: 300.0, ..SolverSettings::default() };
    let rows: Vec<(f64, f64, f64)> = [0.01, 0.09, 0.12, 0.20]
        .par_iter()
        .map(|&lg| {
            let (d, path) = TaskDistribution::calibrate_pareto(0.608, lg, 1.0).unwrap();
            let tr = simulate(&d, &path, &p, &pr, Policy::ConstantSavings(sr), 4.6, &s).unwrap();
            let pred = classify_long_run(&p, &pr, lg).unwrap().asymptotic_wage_growth;
            (lg, tr.tail_growth(|q| q.w), pred)
        })
        .collect();
    for (lg, got, pred) in rows {
        if pred == 0.0 {
            assert!(got.abs() < 0.005, "lg={lg}: {got}");
        } else {
            assert!(((got - pred) / pred).abs() <= 0.10, "lg={lg}: {got} vs {pred}");
        }
    }
}

#[test]
fn omega_trend_matches_the_regime() {
    let (p, pr) = table();
    let sr = long_run_savings(&pr, p.a).unwrap();
    let s = SolverSettings { horizon: 300.0, ..SolverSettings::default() };
    let run = |lg: f64| {
        let (d, path) = TaskDistribution::calibrate_pareto(0.608, lg, 1.0).unwrap();
        simulate(&d, &path, &p, &pr, Policy::ConstantSavings(sr), 4.6, &s).unwrap()
    };
    let at = |tr: &automation_race::dynamics::Trajectory, t: f64| omega(&p, tr.point_at(t).unwrap()).unwrap();

    // automation constrained: Ω settles, decade-on-decade ratio near 1
    let tr = run(0.01);
    assert!((at(&tr, 290.0) / at(&tr, 280.0) - 1.0).abs() < 0.05);

    // capital constrained: Ω grows at (λg - (1-σ)g_AK)/σ, so the labor share goes to 0
    let tr = run(0.12);
    let g = (at(&tr, 300.0).ln() - at(&tr, 250.0).ln()) / 50.0;
    assert!((g - 0.06).abs() < 0.01, "{g}");

    // collapse: Ω rises without bound while the path is still in Region 1
    let tr = run(0.20);
    let tail: Vec<f64> = tr
        .points
        .iter()
        .filter(|q| q.t >= 20.0 && q.region == automation_race::static_economy::Region::Region1)
        .map(|q| omega(&p, q).unwrap())
        .collect();
    assert!(tail.len() > 10 && tail.windows(2).all(|w| w[1] > w[0]));
}
