use gtgs::cumulants::cumulant;
use gtgs::montecarlo::{empirical_cf, ks_statistic, sample_increment, sample_path, SimConfig, SmallJumpMode};
use gtgs::{GtgsError, GtgsParams};

fn params() -> GtgsParams {
    GtgsParams::symmetric(0.6, 0.5, 1.0, 1.0, 1.0, 0.2)
}

#[test]
fn reproducible_by_seed() {
    let a = sample_increment(&params(), 1.0, 2000, SimConfig::default(), 17).unwrap();
    let b = sample_increment(&params(), 1.0, 2000, SimConfig::default(), 17).unwrap();
    let c = sample_increment(&params(), 1.0, 2000, SimConfig::default(), 18).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn sample_mean_and_variance() {
    let p = params();
    let n = 40_000;
    let xs = sample_increment(&p, 2.0, n, SimConfig::default(), 3).unwrap();
    let mean = xs.iter().sum::<f64>() / n as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let (k1, k2) = (2.0 * cumulant(&p, 1).unwrap(), 2.0 * cumulant(&p, 2).unwrap());
    assert!((mean - k1).abs() < 5.0 * (k2 / n as f64).sqrt(), "mean {mean} vs {k1}");
    assert!((var - k2).abs() < 0.1 * k2, "var {var} vs {k2}");
}

#[test]
fn gaussian_refinement_agrees_with_drift_only() {
    let p = params();
    let fine = SimConfig { epsilon: 0.001, ..Default::default() };
    let coarse = SimConfig { epsilon: 0.1, small_jump_mode: SmallJumpMode::GaussianRefinement, ..Default::default() };
    let a = sample_increment(&p, 1.0, 20_000, fine, 1).unwrap();
    let b = sample_increment(&p, 1.0, 20_000, coarse, 2).unwrap();
    assert!(ks_statistic(&a, &b) < 0.02);
}

#[test]
fn path_shape_and_output() {
    let times: Vec<f64> = (1..=50).map(|k| k as f64 * 0.02).collect();
    let path = sample_path(&params(), &times, SimConfig::default(), 9).unwrap();
    assert_eq!(path.values.len(), times.len());
    let csv = path.to_csv();
    assert!(csv.starts_with("time,value\n"));
    assert_eq!(csv.lines().count(), times.len() + 1);
    let v: serde_json::Value = serde_json::from_str(&path.to_json()).unwrap();
    assert_eq!(v["seed"], 9);
}

#[test]
fn empirical_cf_of_constant() {
    let e = empirical_cf(&[0.5; 10], &[0.0, 2.0]);
    assert!((e[0].re - 1.0).abs() < 1e-15);
    assert!((e[1].re - 1f64.cos()).abs() < 1e-15);
}

#[test]
fn rejects_bad_config() {
    let bad = SimConfig { epsilon: 1.5, ..Default::default() };
    assert!(matches!(sample_increment(&params(), 1.0, 10, bad, 0), Err(GtgsError::InvalidParams(_) | GtgsError::Domain(_))));
    let few = SimConfig { tabulation_points: 10, ..Default::default() };
    assert!(sample_increment(&params(), 1.0, 10, few, 0).is_err());
}
