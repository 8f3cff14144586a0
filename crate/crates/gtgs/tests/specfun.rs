use approx::assert_relative_eq;
use gtgs::specfun::gamma::{gamma, lgamma, rgamma};
use gtgs::specfun::{lerch_phi, mittag_leffler, ml_negative_real, one_minus_ml, r2_1, SeriesControl};
use gtgs::GtgsError;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn lerch_reference_values() {
    let ctl = SeriesControl::default();
    // mpmath lerchphi at 30 digits
    let v = lerch_phi(c(-0.8, 0.0), 1.0, -0.5, &ctl).unwrap();
    assert_relative_eq!(v.re, -3.3053765155080756552586731654, max_relative = 1e-11);
    let v = lerch_phi(c(-5.0, 0.0), 1.0, 0.3, &ctl).unwrap();
    assert_relative_eq!(v.re, 2.1313056288403937581292599745, max_relative = 1e-12);
    let v = lerch_phi(c(-3.0, 2.0), 1.0, 1.7, &ctl).unwrap();
    assert!((v - c(0.192760318900750853611789511781, 0.0728567979749325925295770974307)).norm() < 1e-12);
}

#[test]
fn mittag_leffler_reference_values() {
    let ctl = SeriesControl::default();
    // E_{1/2}(-3) = e^9 erfc(3)
    assert_relative_eq!(ml_negative_real(0.5, 3.0, &ctl).unwrap(), 0.17900115118138995041921481531362, max_relative = 1e-12);
    assert_relative_eq!(ml_negative_real(0.7, 2.5, &ctl).unwrap(), 0.16863128667619574102224195583483, max_relative = 1e-12);
    let ml = mittag_leffler(0.7, 1.0, 1.0, c(-2.5, 0.0), &ctl).unwrap();
    assert_relative_eq!(ml.re, 0.16863128667619574102224195583483, max_relative = 1e-11);
}

#[test]
fn alpha_one_is_exponential() {
    let ctl = SeriesControl::default();
    for x in [0.1, 1.0, 7.5, 30.0] {
        assert_relative_eq!(ml_negative_real(1.0, x, &ctl).unwrap(), (-x).exp(), max_relative = 1e-12);
    }
}

#[test]
fn gamma_basics() {
    assert_relative_eq!(gamma(0.5), std::f64::consts::PI.sqrt(), max_relative = 1e-14);
    assert_relative_eq!(gamma(5.0), 24.0, max_relative = 1e-14);
    assert_eq!(rgamma(-3.0), 0.0);
    assert_relative_eq!(lgamma(100.0), 359.13420536957539878, max_relative = 1e-14);
}

#[test]
fn r2_1_gauss_reduction() {
    // τ = 1 and a = 1: Σ (b)_k/(c)_k z^k, with b = c giving the geometric series
    let ctl = SeriesControl::default();
    let v = r2_1(1.0, 0.7, 0.7, 1.0, c(0.4, 0.0), &ctl).unwrap();
    assert_relative_eq!(v.re, 1.0 / 0.6, max_relative = 1e-13);
}

#[test]
fn r2_1_rejects_cut() {
    let ctl = SeriesControl::default();
    let e = r2_1(1.0, 0.5, 1.0, 0.5, c(2.0, 0.0), &ctl).unwrap_err();
    assert!(matches!(e, GtgsError::BranchCut(_)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ml_negative_axis_completely_monotone_bits(alpha in 0.1f64..1.0, x in 0.0f64..200.0) {
        let ctl = SeriesControl::default();
        let e = ml_negative_real(alpha, x, &ctl).unwrap();
        let e2 = ml_negative_real(alpha, x * 1.1 + 1e-3, &ctl).unwrap();
        prop_assert!(e > 0.0 && e <= 1.0);
        prop_assert!(e2 < e);
        let om = one_minus_ml(alpha, x, &ctl).unwrap();
        prop_assert!((om + e - 1.0).abs() < 1e-12);
    }

    #[test]
    fn binomial_identity(a in 0.2f64..3.0, b in 0.2f64..3.0, z in -30.0f64..0.9) {
        let ctl = SeriesControl::default();
        let v = r2_1(a, b, b, 1.0, c(z, 0.0), &ctl).unwrap();
        let exact = (1.0 - z).powf(-a);
        prop_assert!((v.re - exact).abs() <= 1e-10 * exact);
    }
}
