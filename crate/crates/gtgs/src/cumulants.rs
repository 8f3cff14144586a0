//! Cumulants, moment-existence predicates and the TGS cumulant recursion.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::charexp::ell;
use crate::error::{GtgsError, Result};
use crate::model::{mu1_side, GtgsParams, Side, SideParams};
use crate::oracle::{cumulant_quadrature, QuadratureConfig};
use crate::specfun::gamma::gamma;
use crate::specfun::{gamma_r2_1, SeriesControl};

/// Outcome of a moment-existence question; `value` is present exactly when `finite`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub order: f64,
    pub finite: bool,
    pub value: Option<f64>,
    pub criterion: String,
}

impl MomentReport {
    fn infinite(order: f64, criterion: impl Into<String>) -> Self {
        MomentReport { order, finite: false, value: None, criterion: criterion.into() }
    }
}

/// δ Γ(n−γ) θ^{γ−n} ₂R₁(1, n−γ, 1, α; −λ/θ^α) for one side (unsigned), θ > 0 or α = 1.
fn side_levy_moment(s: &SideParams, n: u32) -> Result<f64> {
    if s.delta == 0.0 {
        return Ok(0.0);
    }
    let nf = n as f64;
    if s.alpha == 1.0 {
        let r = s.theta + s.lambda;
        return Ok(s.delta * gamma(nf - s.gamma) * r.powf(s.gamma - nf));
    }
    let w = Complex64::new(-s.lambda / s.theta.powf(s.alpha), 0.0);
    let v = gamma_r2_1(nf - s.gamma, s.alpha, w, &SeriesControl::default())?;
    Ok(s.delta * s.theta.powf(s.gamma - nf) * v.re)
}

/// n-th cumulant for θ > 0 on every active side.
///
/// n = 1 gives μ + μ1; for n ≥ 2 the ₂R₁ closed form is used, except on
/// γ = 1 sides, which are integrated numerically.
pub fn cumulant(params: &GtgsParams, n: u32) -> Result<f64> {
    cumulant_with(params, n, &QuadratureConfig::default())
}

pub fn cumulant_with(params: &GtgsParams, n: u32, quad: &QuadratureConfig) -> Result<f64> {
    let params = params.validate()?;
    if n == 0 {
        return Err(GtgsError::Domain("cumulant order must be ≥ 1".into()));
    }
    for side in params.active_sides() {
        let s = params.side(side);
        if s.theta == 0.0 && s.alpha < 1.0 {
            return Err(GtgsError::Domain(format!("{side:?} side has θ = 0; use moment_finite / variance_theta0")));
        }
    }
    if n == 1 {
        let mut mu1 = 0.0;
        for side in Side::BOTH {
            mu1 += mu1_side(&params, side, quad)?;
        }
        return Ok(params.mu + mu1);
    }
    let mut total = 0.0;
    for side in params.active_sides() {
        let s = params.side(side);
        let sign = side.sign().powi(n as i32);
        if s.gamma == 1.0 && s.alpha < 1.0 {
            total += sign * s.moment_integral(n as f64, 0.0, f64::INFINITY, quad)?;
        } else {
            total += sign * side_levy_moment(&s, n)?;
        }
    }
    Ok(total)
}

fn side_alpha_gamma(s: &SideParams) -> f64 {
    if s.alpha == 1.0 || s.theta > 0.0 {
        f64::INFINITY
    } else {
        s.alpha + s.gamma
    }
}

/// Mean for a θ = 0 law; finite iff min(α± + γ±) > 1.
pub fn mean_theta0(params: &GtgsParams) -> Result<MomentReport> {
    let params = params.validate()?;
    let m = params.active_sides().iter().map(|&s| side_alpha_gamma(&params.side(s))).fold(f64::INFINITY, f64::min);
    if m <= 1.0 {
        return Ok(MomentReport::infinite(1.0, format!("min(α+γ) = {m} ≤ 1")));
    }
    let quad = QuadratureConfig::default();
    let mut mu1 = 0.0;
    for side in Side::BOTH {
        mu1 += mu1_side(&params, side, &quad)?;
    }
    Ok(MomentReport { order: 1.0, finite: true, value: Some(params.mu + mu1), criterion: format!("min(α+γ) = {m} > 1") })
}

/// Variance for a θ = 0 law: Σ δ± ℓ(γ± − 2, α±, λ±), finite iff min(α± + γ±) > 2.
///
/// Sides with θ > 0 (or α = 1) contribute their ₂R₁ second moment instead.
pub fn variance_theta0(params: &GtgsParams) -> Result<MomentReport> {
    let params = params.validate()?;
    let m = params.active_sides().iter().map(|&s| side_alpha_gamma(&params.side(s))).fold(f64::INFINITY, f64::min);
    if m <= 2.0 {
        return Ok(MomentReport::infinite(2.0, format!("min(α+γ) = {m} ≤ 2")));
    }
    let mut v = 0.0;
    for side in params.active_sides() {
        let s = params.side(side);
        if s.theta == 0.0 && s.alpha < 1.0 {
            v += s.delta * ell(s.gamma - 2.0, s.alpha, s.lambda)?;
        } else {
            v += side_levy_moment(&s, 2)?;
        }
    }
    Ok(MomentReport { order: 2.0, finite: true, value: Some(v), criterion: format!("min(α+γ) = {m} > 2") })
}

/// Whether E|X|^p is finite, with the deciding criterion.
pub fn moment_finite(params: &GtgsParams, p: f64) -> Result<MomentReport> {
    let params = params.validate()?;
    if !(p > 0.0) {
        return Err(GtgsError::Domain("moment order must be positive".into()));
    }
    let heavy: Vec<SideParams> = params
        .active_sides()
        .iter()
        .map(|&s| params.side(s))
        .filter(|s| s.theta == 0.0 && s.alpha < 1.0)
        .collect();
    let finite = |c: &str| MomentReport { order: p, finite: true, value: None, criterion: c.to_string() };
    if heavy.is_empty() {
        return Ok(finite("exponential tempering on every active side"));
    }
    let g = heavy.iter().map(|s| s.gamma).fold(f64::INFINITY, f64::min);
    if p < g {
        return Ok(finite("below the stability index"));
    }
    if p == g {
        return Ok(finite("log-integrable boundary"));
    }
    let m = heavy.iter().map(|s| s.alpha + s.gamma).fold(f64::INFINITY, f64::min);
    if p < m {
        return Ok(finite("p < min(α+γ)"));
    }
    if p > m {
        return Ok(MomentReport::infinite(p, "p > min(α+γ)"));
    }
    // p = α+γ: the tail integrand behaves like x^{-1}; confirm by watching ∫_1^X grow with X.
    let quad = QuadratureConfig::default();
    let s = heavy.iter().find(|s| s.alpha + s.gamma == m).unwrap();
    let i1 = s.moment_integral(p, 1.0, 1e4, &quad)?;
    let i2 = s.moment_integral(p, 1.0, 1e8, &quad)?;
    if i2 - i1 > 1e-3 * i1.abs() {
        Ok(MomentReport::infinite(p, "boundary integral test: ∫^X x^p m grows without bound"))
    } else {
        Ok(finite("boundary integral test: ∫^X x^p m stabilizes"))
    }
}

/// g_n(x; c) from g_0 = 1/(1−x), g_n = x c g'_{n−1} + n g_{n−1}.
///
/// Carried exactly as a polynomial in y = 1/(1−x), using dy/dx = y² and x = 1 − 1/y.
pub fn tgs_cumulant_recursion(n: u32, x: f64, c: f64) -> Result<f64> {
    if !(x < 1.0) {
        return Err(GtgsError::Domain(format!("x = {x} must be below 1")));
    }
    let coeffs = recursion_coefficients(n, c);
    let y = 1.0 / (1.0 - x);
    Ok(coeffs.iter().rev().fold(0.0, |acc, &a| acc * y + a))
}

/// Coefficients a_j of g_n = Σ a_j y^j.
pub fn recursion_coefficients(n: u32, c: f64) -> Vec<f64> {
    let mut a = vec![0.0, 1.0];
    for step in 1..=n {
        let mut next = vec![0.0; a.len() + 1];
        for (j, &aj) in a.iter().enumerate() {
            let jf = j as f64;
            // x c d/dx y^j = c j (y^{j+1} − y^j)
            next[j + 1] += c * jf * aj;
            next[j] -= c * jf * aj;
            next[j] += step as f64 * aj;
        }
        a = next;
    }
    a
}

/// TGS (γ = 0, θ > 0) cumulant from the recursion: κ_n = Σ± (±1)^n δ θ^{−n} g_{n−1}(−λ/θ^α; α).
pub fn tgs_cumulant(params: &GtgsParams, n: u32) -> Result<f64> {
    let params = params.validate()?;
    if n < 2 {
        return Err(GtgsError::Domain("the recursion covers n ≥ 2".into()));
    }
    let mut total = 0.0;
    for side in params.active_sides() {
        let s = params.side(side);
        if s.gamma != 0.0 || !(s.theta > 0.0) {
            return Err(GtgsError::Domain("tgs_cumulant needs γ = 0 and θ > 0".into()));
        }
        let x = -s.lambda / s.theta.powf(s.alpha);
        let g = tgs_cumulant_recursion(n - 1, x, s.alpha)?;
        total += side.sign().powi(n as i32) * s.delta * s.theta.powi(-(n as i32)) * g;
    }
    Ok(total)
}

/// Cumulants of order n ≥ 2 by Lévy-moment quadrature, whatever the θ.
pub fn cumulant_by_quadrature(params: &GtgsParams, n: u32) -> Result<f64> {
    cumulant_quadrature(params, n, &QuadratureConfig::default())
}

/// Cumulant of order n whatever the tempering: closed form when every side is exponentially tempered,
/// otherwise the θ = 0 mean/variance formulas or, for n ≥ 3, the moment criterion plus quadrature.
pub fn cumulant_report(params: &GtgsParams, n: u32, quad: &QuadratureConfig) -> Result<MomentReport> {
    let p = params.validate()?;
    let tempered = p.active_sides().iter().all(|&s| p.side(s).exp_rate() > 0.0);
    if tempered {
        let v = cumulant_with(&p, n, quad)?;
        return Ok(MomentReport { order: n as f64, finite: true, value: Some(v), criterion: "exponential tempering".into() });
    }
    match n {
        0 => Err(GtgsError::Domain("cumulant order must be ≥ 1".into())),
        1 => mean_theta0(&p),
        2 => variance_theta0(&p),
        _ => {
            let mut r = moment_finite(&p, n as f64)?;
            if r.finite {
                r.value = Some(cumulant_quadrature(&p, n, quad)?);
            }
            Ok(r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recursion_by_hand() {
        assert!((tgs_cumulant_recursion(0, 0.5, 0.3).unwrap() - 2.0).abs() < 1e-15);
        assert!((tgs_cumulant_recursion(1, 0.5, 0.5).unwrap() - 3.0).abs() < 1e-15);
        assert!(tgs_cumulant_recursion(1, 1.0, 0.5).is_err());
    }

    #[test]
    fn symmetric_odd_vanishes() {
        let p = GtgsParams::symmetric(0.5, 0.5, 1.0, 2.0, 1.0, 0.0);
        assert!(cumulant(&p, 3).unwrap().abs() < 1e-14);
    }

    #[test]
    fn moment_thresholds() {
        let p = GtgsParams::symmetric(1.6, 0.5, 1.0, 0.0, 1.0, 0.0);
        assert!(moment_finite(&p, 2.0).unwrap().finite);
        assert!(!moment_finite(&p, 2.2).unwrap().finite);
        assert_eq!(moment_finite(&p, 1.6).unwrap().criterion, "log-integrable boundary");
        assert!(!moment_finite(&p, 2.1).unwrap().finite);
        let q = GtgsParams::symmetric(0.5, 0.5, 1.0, 1.0, 1.0, 0.0);
        assert!(moment_finite(&q, 7.3).unwrap().finite);
    }

    #[test]
    fn theta0_reports() {
        let p = GtgsParams::symmetric(0.4, 0.5, 1.0, 0.0, 1.0, 0.0);
        assert!(!mean_theta0(&p).unwrap().finite);
        let p = GtgsParams::symmetric(1.2, 0.5, 1.0, 0.0, 1.0, 0.0);
        assert!(mean_theta0(&p).unwrap().finite);
        assert!(!variance_theta0(&p).unwrap().finite);
    }

    #[test]
    fn closed_forms_match_quadrature() {
        let mut p = GtgsParams::symmetric(0.6, 0.7, 1.3, 1.5, 0.8, 0.1);
        p.delta_minus = 0.5;
        p.theta_minus = 2.0;
        for n in 2..=5 {
            let a = cumulant(&p, n).unwrap();
            let b = cumulant_by_quadrature(&p, n).unwrap();
            assert!((a - b).abs() < 1e-8 * b.abs().max(1e-3), "n={n}: {a} vs {b}");
        }
        let t = GtgsParams::symmetric(0.0, 0.6, 0.9, 1.4, 1.1, 0.0);
        for n in 2..=6 {
            let a = tgs_cumulant(&t, n).unwrap();
            let b = cumulant(&t, n).unwrap();
            assert!((a - b).abs() < 1e-10 * b.abs().max(1e-3), "n={n}: {a} vs {b}");
        }
        let h = GtgsParams::symmetric(1.6, 0.5, 1.0, 0.0, 1.0, 0.0);
        let v = variance_theta0(&{ let mut h = h.clone(); h.gamma_plus = 1.9; h.gamma_minus = 1.9; h }).unwrap();
        let q = cumulant_by_quadrature(&{ let mut h = h.clone(); h.gamma_plus = 1.9; h.gamma_minus = 1.9; h }, 2).unwrap();
        assert!((v.value.unwrap() - q).abs() < 1e-7 * q.abs(), "{v:?} vs {q}");
    }
}
