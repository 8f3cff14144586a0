use gtgs::oracle::QuadratureConfig;
use gtgs::quad::{integrate_log_tail, integrate, QuadOpts};
use gtgs::spectral::{rosinski_support, spectral_density, spectral_mass, spectral_support, stable_ratio_density};
use gtgs::{GtgsError, GtgsParams, Side};
use proptest::prelude::*;

#[test]
fn ratio_density_is_a_probability() {
    for a in [0.3, 0.5, 0.8] {
        let head = integrate(|x| stable_ratio_density(a, x).unwrap(), 0.0, 1.0, QuadOpts::default()).unwrap().value;
        let tail = integrate_log_tail(|x| stable_ratio_density(a, x).unwrap(), 1.0, QuadOpts::default()).unwrap().value;
        assert!((head + tail - 1.0).abs() < 1e-8, "alpha={a}: {}", head + tail);
    }
}

#[test]
fn supports() {
    let p = GtgsParams::symmetric(0.5, 0.5, 1.0, 2.0, 1.0, 0.0);
    let s = spectral_support(&p, Side::Positive).unwrap();
    assert_eq!((s.lower, s.upper), (2.0, f64::INFINITY));
    let r = rosinski_support(&p, Side::Negative).unwrap();
    assert_eq!((r.lower, r.upper), (0.0, 0.5));
}

#[test]
fn rejects_unsupported_layers() {
    let mut p = GtgsParams::symmetric(0.5, 0.5, 1.0, 1.0, 1.0, 0.0);
    p.gamma_minus = 0.7;
    assert!(matches!(spectral_density(&p, 2.0), Err(GtgsError::UnsupportedRegime(_))));
    let q = GtgsParams::symmetric(0.5, 1.0, 1.0, 1.0, 1.0, 0.0);
    assert!(matches!(spectral_density(&q, 2.0), Err(GtgsError::Domain(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mass_equals_delta(g in 0.05f64..1.9, a in 0.1f64..0.95, l in 0.2f64..3.0, th in 0.0f64..3.0, d in 0.1f64..3.0) {
        let p = GtgsParams::symmetric(g, a, l, th, d, 0.0);
        let m = spectral_mass(&p, Side::Positive, &QuadratureConfig::default()).unwrap();
        prop_assert!((m - d).abs() < 1e-8 * d);
    }
}
