use gtgs::cumulants::{
    cumulant, cumulant_by_quadrature, cumulant_report, mean_theta0, moment_finite, recursion_coefficients, tgs_cumulant,
    tgs_cumulant_recursion,
};
use gtgs::oracle::QuadratureConfig;
use gtgs::{GtgsError, GtgsParams};
use proptest::prelude::*;

#[test]
fn tgs_recursion_low_orders() {
    // g_0 = 1/(1-x), g_1 = 1/(1-x) + c x/(1-x)^2
    let (x, c) = (-0.6, 0.4);
    assert!((tgs_cumulant_recursion(0, x, c).unwrap() - 1.0 / (1.0 - x)).abs() < 1e-15);
    let g1 = 1.0 / (1.0 - x) + c * x / (1.0 - x).powi(2);
    assert!((tgs_cumulant_recursion(1, x, c).unwrap() - g1).abs() < 1e-15);
    assert_eq!(recursion_coefficients(0, c).len(), 2);
}

#[test]
fn tgs_matches_general_closed_form() {
    let p = GtgsParams::symmetric(0.0, 0.6, 1.3, 0.8, 1.1, 0.0);
    for n in 2..=6 {
        let a = tgs_cumulant(&p, n).unwrap();
        let b = cumulant(&p, n).unwrap();
        assert!((a - b).abs() < 1e-10 * b.abs().max(1e-12), "n={n}: {a} vs {b}");
    }
}

#[test]
fn theta0_mean_needs_alpha_gamma_above_one() {
    let p = GtgsParams::one_sided(0.4, 0.5, 1.0, 0.0, 1.0, 0.0);
    let r = mean_theta0(&p).unwrap();
    assert!(!r.finite && r.value.is_none());
    let p = GtgsParams::one_sided(0.8, 0.5, 1.0, 0.0, 1.0, 0.0);
    assert!(mean_theta0(&p).unwrap().finite);
}

#[test]
fn closed_form_refuses_heavy_tails() {
    let p = GtgsParams::symmetric(0.5, 0.5, 1.0, 0.0, 1.0, 0.0);
    assert!(cumulant(&p, 2).is_err());
}

#[test]
fn moment_existence_thresholds() {
    let p = GtgsParams::symmetric(0.5, 0.7, 1.0, 0.0, 1.0, 0.0);
    assert!(moment_finite(&p, 0.3).unwrap().finite);
    assert!(moment_finite(&p, 0.5).unwrap().finite);
    assert!(moment_finite(&p, 1.1).unwrap().finite);
    assert!(!moment_finite(&p, 1.3).unwrap().finite);
    assert!(!moment_finite(&p, 1.2).unwrap().finite);
    assert!(matches!(moment_finite(&p, -1.0), Err(GtgsError::Domain(_))));
    let t = GtgsParams::symmetric(0.5, 0.7, 1.0, 0.2, 1.0, 0.0);
    assert!(moment_finite(&t, 40.0).unwrap().finite);
}

#[test]
fn report_switches_methods() {
    let quad = QuadratureConfig::default();
    let p = GtgsParams::symmetric(1.6, 0.5, 1.0, 0.0, 1.0, 0.0);
    let r = cumulant_report(&p, 2, &quad).unwrap();
    assert!((r.value.unwrap() - 14.356230137079587).abs() < 1e-9);
    let r = cumulant_report(&p, 3, &quad).unwrap();
    assert!(!r.finite);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn closed_form_equals_quadrature(g in 0.0f64..1.9, a in 0.2f64..1.0, th in 0.2f64..3.0, n in 2u32..6) {
        prop_assume!((g - 1.0).abs() > 0.01);
        let p = GtgsParams::symmetric(g, a, 0.8, th, 1.0, 0.0);
        let c = cumulant(&p, n).unwrap();
        let q = cumulant_by_quadrature(&p, n).unwrap();
        if n % 2 == 1 {
            prop_assert!(c.abs() < 1e-10 && q.abs() < 1e-8);
        } else {
            prop_assert!((c - q).abs() < 1e-7 * q.abs());
        }
    }
}
