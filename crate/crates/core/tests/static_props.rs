use automation_race::static_economy::{
    oracle_equilibrium, region_threshold_phi, static_equilibrium, unit_cost, EconomyParams, Region,
};
use proptest::prelude::*;

fn economy() -> impl Strategy<Value = EconomyParams> {
    (0.2f64..2.0, 0.1f64..0.9, 0.5f64..2.0).prop_map(|(a, s, l)| EconomyParams::new(a, s, l).unwrap())
}

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 { a.abs() } else { ((a - b) / b).abs() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn factor_payments_exhaust_output(p in economy(), k in 0.01f64..50.0, phi in 0.0f64..=1.0) {
        let eq = static_equilibrium(&p, k, phi).unwrap();
        prop_assert!(rel(eq.w * p.l + eq.r * k, eq.y) < 1e-10);
    }

    #[test]
    fn region1_prices_sit_on_the_frontier(p in economy(), k in 0.01f64..50.0, phi in 0.0f64..1.0) {
        let eq = static_equilibrium(&p, k, phi).unwrap();
        prop_assume!(eq.region == Region::Region1);
        prop_assert!((unit_cost(&p, phi, eq.w, eq.r) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn output_and_return_rise_with_automation(p in economy(), k in 0.01f64..50.0, phi in 0.0f64..0.99, d in 1e-4f64..0.01) {
        let a = static_equilibrium(&p, k, phi).unwrap();
        let b = static_equilibrium(&p, k, (phi + d).min(1.0)).unwrap();
        prop_assert!(b.y >= a.y * (1.0 - 1e-14));
        if a.region == Region::Region1 && b.region == Region::Region1 {
            prop_assert!(b.y > a.y);
            prop_assert!(b.r >= a.r * (1.0 - 1e-14));
        }
        if a.region == Region::Region2 {
            prop_assert_eq!(a.y, b.y);
        }
    }

    #[test]
    fn wage_is_hump_shaped_in_phi(p in economy(), k in 0.1f64..20.0) {
        let n = 400;
        let top = region_threshold_phi(k, p.l).unwrap();
        let w: Vec<f64> = (0..=n)
            .map(|j| static_equilibrium(&p, k, top * j as f64 / (n + 1) as f64).unwrap().w)
            .collect();
        let signs: Vec<bool> = w.windows(2).map(|x| x[1] > x[0]).collect();
        let changes = signs.windows(2).filter(|s| s[0] != s[1]).count();
        prop_assert_eq!(changes, 1);
        prop_assert!(signs[0]);
    }

    #[test]
    fn region2_pins_prices(p in economy(), k in 0.01f64..50.0, extra in 0.0f64..1.0) {
        let th = region_threshold_phi(k, p.l).unwrap();
        let phi = th + extra * (1.0 - th);
        let eq = static_equilibrium(&p, k, phi).unwrap();
        prop_assert_eq!(eq.region, Region::Region2);
        prop_assert_eq!(eq.w, p.a);
        prop_assert_eq!(eq.r, p.a);
    }

    #[test]
    fn oracle_agrees_with_closed_form(p in economy(), k in 0.1f64..20.0, phi in 0.0f64..0.99) {
        let cf = static_equilibrium(&p, k, phi).unwrap();
        let or = oracle_equilibrium(&p, k, phi, 48).unwrap();
        prop_assert!(rel(or.y, cf.y) < 1e-3 && rel(or.w, cf.w) < 1e-3 && rel(or.r, cf.r) < 1e-3);
    }
}

#[test]
fn table_calibration() {
    let p = EconomyParams::new(0.5, 0.5, 1.0).unwrap();
    let eq = static_equilibrium(&p, 4.6, 0.608).unwrap();
    assert_eq!(eq.region, Region::Region1);
    assert!((eq.labor_share - 0.66).abs() <= 0.01);
    // independent evaluation of Y = A[K^e Φ^(1/σ) + L^e u^(1/σ)]^(1/e), e = -1
    let x = 1.0 / (1.0 / 4.6 * 0.608f64.powi(2) + 1.0 * 0.392f64.powi(2));
    assert!((eq.y - 0.5 * x).abs() < 1e-12);
}
