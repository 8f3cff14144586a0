//! Spectral and Rosiński densities of GTGS laws with α± ∈ (0,1) and common γ > 0.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{GtgsError, Result};
use crate::model::{GtgsParams, Side, SideParams};
use crate::oracle::QuadratureConfig;
use crate::quad::{integrate, integrate_log_tail, integrate_to_inf};

/// Support of one side of s or r_γ, given in |x|.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralSupport {
    pub side: Side,
    pub lower: f64,
    pub upper: f64,
}

/// Density of the ratio of two independent positive α-stable variables.
pub fn stable_ratio_density(alpha: f64, x: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(GtgsError::Domain(format!("α = {alpha} outside (0,1)")));
    }
    if !(x > 0.0) {
        return Err(GtgsError::Domain(format!("x = {x} must be positive")));
    }
    let xa = x.powf(alpha);
    let (s, c) = (alpha * PI).sin_cos();
    Ok(x.powf(alpha - 1.0) / PI * s / (xa * xa + 2.0 * xa * c + 1.0))
}

fn check(params: &GtgsParams) -> Result<GtgsParams> {
    let p = params.validate()?;
    let sides = p.active_sides();
    for &side in &sides {
        let s = p.side(side);
        if !(s.alpha > 0.0 && s.alpha < 1.0) {
            return Err(GtgsError::Domain(format!("{side:?} side: α = {} outside (0,1)", s.alpha)));
        }
        if !(s.gamma > 0.0) {
            return Err(GtgsError::Domain(format!("{side:?} side: γ = {} must be positive", s.gamma)));
        }
    }
    if sides.len() == 2 && p.gamma_plus != p.gamma_minus {
        return Err(GtgsError::UnsupportedRegime(format!(
            "spectral and Rosiński densities need γ+ = γ−, got {} and {}",
            p.gamma_plus, p.gamma_minus
        )));
    }
    Ok(p)
}

fn side_s(s: &SideParams, ax: f64) -> f64 {
    if s.delta == 0.0 || ax <= s.theta {
        return 0.0;
    }
    let u = ax - s.theta;
    let ua = u.powf(s.alpha);
    let (sn, c) = (s.alpha * PI).sin_cos();
    s.delta * u.powf(s.alpha - 1.0) / PI * sn / (ua * ua / s.lambda + 2.0 * ua * c + s.lambda)
}

fn side_r(s: &SideParams, ax: f64) -> f64 {
    if s.delta == 0.0 || ax <= 0.0 || s.theta * ax >= 1.0 {
        return 0.0;
    }
    let a = s.alpha;
    let v = 1.0 - s.theta * ax;
    let (sn, c) = (a * PI).sin_cos();
    let den = v.powf(2.0 * a) / s.lambda + 2.0 * (ax * v).powf(a) * c + s.lambda * ax.powf(2.0 * a);
    s.delta * ax.powf(a - s.gamma - 1.0) / PI * v.powf(a - 1.0) * sn / den
}

/// Spectral density s(x); zero on [−θ−, θ+].
pub fn spectral_density(params: &GtgsParams, x: f64) -> Result<f64> {
    let p = check(params)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok(side_s(&p.side(Side::of(x)), x.abs()))
}

/// Rosiński density r_γ(x); supported on (−1/θ−, 0) ∪ (0, 1/θ+).
pub fn rosinski_density(params: &GtgsParams, x: f64) -> Result<f64> {
    let p = check(params)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok(side_r(&p.side(Side::of(x)), x.abs()))
}

/// Bounds on |x| for the given side.
pub fn spectral_support(params: &GtgsParams, side: Side) -> Result<SpectralSupport> {
    let s = check(params)?.side(side);
    Ok(SpectralSupport { side, lower: s.theta, upper: f64::INFINITY })
}

/// Bounds on |x| for the given side.
pub fn rosinski_support(params: &GtgsParams, side: Side) -> Result<SpectralSupport> {
    let s = check(params)?.side(side);
    let upper = if s.theta > 0.0 { 1.0 / s.theta } else { f64::INFINITY };
    Ok(SpectralSupport { side, lower: 0.0, upper })
}

/// Q of one side, ∫ s over |x| > θ, via x = θ + v^{1/α}.
pub fn spectral_mass(params: &GtgsParams, side: Side, quad: &QuadratureConfig) -> Result<f64> {
    let p = check(params)?;
    let s = p.side(side);
    if s.delta == 0.0 {
        return Ok(0.0);
    }
    // u^{α-1} du = dv/α, so the integrand is rational in v
    let (sn, c) = (s.alpha * PI).sin_cos();
    let f = |v: f64| s.delta / (s.alpha * PI) * sn / (v * v / s.lambda + 2.0 * v * c + s.lambda);
    Ok(integrate_to_inf(f, 0.0, quad.opts())?.value)
}

/// R of one side restricted to lo < |x| < hi.
///
/// Near the origin x = u^{1/(α−γ)} absorbs the power singularity (needs γ < α when lo = 0);
/// at the edge 1/θ the substitution 1 − θx = u^{1/α} removes (1−θx)^{α−1}.
pub fn rosinski_mass(params: &GtgsParams, side: Side, lo: f64, hi: f64, quad: &QuadratureConfig) -> Result<f64> {
    rosinski_integral(params, side, lo, hi, 0.0, |_| 1.0, quad)
}

/// ∫ over lo < |x| < hi of |x|^p g(|x|) r_γ on one side; g must be mild (bounded or logarithmic) at 0.
pub fn rosinski_integral<G: Fn(f64) -> f64>(
    params: &GtgsParams,
    side: Side,
    lo: f64,
    hi: f64,
    p: f64,
    g: G,
    quad: &QuadratureConfig,
) -> Result<f64> {
    let prm = check(params)?;
    let s = prm.side(side);
    if s.delta == 0.0 {
        return Ok(0.0);
    }
    let opts = quad.opts();
    let edge = if s.theta > 0.0 { 1.0 / s.theta } else { f64::INFINITY };
    let hi = hi.min(edge);
    if !(lo >= 0.0) || hi <= lo {
        return Ok(0.0);
    }
    let r = |x: f64| side_r(&s, x) * x.powf(p) * g(x);
    let mut total = 0.0;
    let mut a = lo;
    if a == 0.0 {
        let k = s.alpha - s.gamma + p;
        if k <= 0.0 {
            return Err(GtgsError::DivergentMoment(format!(
                "∫ x^{p} r_γ diverges at 0 (γ = {}, α = {})",
                s.gamma, s.alpha
            )));
        }
        let b = hi.min(if edge.is_finite() { 0.5 * edge } else { 1.0 });
        // x = b u^{1/k}: x^{k-1} dx = b^k / k du
        let head = integrate(
            |u: f64| {
                if u <= 0.0 {
                    return 0.0;
                }
                let x = b * u.powf(1.0 / k);
                r(x) * x.powf(1.0 - k)
            },
            0.0,
            1.0,
            opts,
        )?
        .value;
        total += head * b.powf(k) / k;
        a = b;
    }
    if a >= hi {
        return Ok(total);
    }
    if hi == edge && edge.is_finite() {
        let m = a.max(0.5 * edge);
        if m > a {
            total += integrate(r, a, m, opts)?.value;
        }
        // x = (1 − u^{1/α})/θ, dx = −u^{1/α−1}/(αθ) du
        let al = s.alpha;
        let umax = (1.0 - s.theta * m).powf(al);
        let tail = integrate(
            |u: f64| {
                if u <= 0.0 {
                    return 0.0;
                }
                let x = (1.0 - u.powf(1.0 / al)) / s.theta;
                r(x) * u.powf(1.0 / al - 1.0) / (al * s.theta)
            },
            0.0,
            umax,
            opts,
        )?
        .value;
        return Ok(total + tail);
    }
    if hi.is_finite() {
        total += integrate(r, a, hi, opts)?.value;
    } else {
        if p >= s.gamma + s.alpha {
            return Err(GtgsError::DivergentMoment(format!("∫^∞ x^{p} r_γ diverges (θ = 0, α + γ = {})", s.alpha + s.gamma)));
        }
        total += integrate_log_tail(r, a, opts)?.value;
    }
    Ok(total)
}

/// The same R-mass computed from s through y = 1/x: ∫ over 1/hi < |x| < 1/lo of |x|^γ s(x).
pub fn rosinski_mass_by_duality(params: &GtgsParams, side: Side, lo: f64, hi: f64, quad: &QuadratureConfig) -> Result<f64> {
    let p = check(params)?;
    let s = p.side(side);
    if s.delta == 0.0 || hi <= lo {
        return Ok(0.0);
    }
    let opts = quad.opts();
    let a = (1.0 / hi).max(s.theta);
    let b = if lo > 0.0 { 1.0 / lo } else { f64::INFINITY };
    if b <= a {
        return Ok(0.0);
    }
    let k = 1.0 / s.alpha;
    // x = a + v^{1/α} handles the (x−θ)^{α−1} edge when a = θ
    let f = |v: f64| {
        if v <= 0.0 {
            return 0.0;
        }
        let x = a + v.powf(k);
        x.powf(s.gamma) * side_s(&s, x) * k * v.powf(k - 1.0)
    };
    if b.is_finite() {
        Ok(integrate(f, 0.0, (b - a).powf(s.alpha), opts)?.value)
    } else {
        if s.gamma >= s.alpha {
            return Err(GtgsError::DivergentMoment("∫^∞ x^γ s(x) dx diverges when γ ≥ α".into()));
        }
        Ok(integrate_to_inf(f, 0.0, opts)?.value)
    }
}

/// R({|x| > 1/β}), which vanishes exactly when β ≤ min(θ+, θ−).
pub fn rosinski_exp_tail_mass(params: &GtgsParams, beta: f64, quad: &QuadratureConfig) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(GtgsError::Domain("β must be positive".into()));
    }
    let p = check(params)?;
    let mut m = 0.0;
    for side in p.active_sides() {
        m += rosinski_mass(&p, side, 1.0 / beta, f64::INFINITY, quad)?;
    }
    Ok(m)
}

/// Laplace transform of the normalized spectral density of the side of x, evaluated at |x|.
pub fn bernstein_reconstruct(params: &GtgsParams, x: f64, quad: &QuadratureConfig) -> Result<f64> {
    let p = check(params)?;
    if x == 0.0 {
        return Err(GtgsError::Domain("x must be nonzero".into()));
    }
    let s = p.side(Side::of(x));
    let ax = x.abs();
    let (a, lam, th) = (s.alpha, s.lambda, s.theta);
    let k = 1.0 / a;
    let scale = lam.powf(-k);
    // y = θ + (λ v)^{1/α}
    let f = |v: f64| {
        if v <= 0.0 {
            return 0.0;
        }
        let u = v.powf(k);
        let y = th + u / scale;
        let se = stable_ratio_density(a, u).unwrap_or(0.0);
        (-y * ax).exp() * se * k * v.powf(k - 1.0)
    };
    Ok(integrate_to_inf(f, 0.0, quad.opts())?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tempering_function;

    #[test]
    fn ratio_density_values() {
        assert!((stable_ratio_density(0.5, 1.0).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-15);
        let a = stable_ratio_density(0.3, 0.5).unwrap() * 0.25;
        let b = stable_ratio_density(0.3, 2.0).unwrap();
        assert!((a - b).abs() < 1e-15);
        assert!(stable_ratio_density(0.5, 0.0).is_err());
    }

    #[test]
    fn masses_and_reconstruction() {
        let q = QuadratureConfig::default();
        let mut p = GtgsParams::figure1();
        p.delta_minus = 0.7;
        p.theta_minus = 0.4;
        p.gamma_minus = p.gamma_plus;
        for side in Side::BOTH {
            let m = spectral_mass(&p, side, &q).unwrap();
            assert!((m - p.side(side).delta).abs() < 1e-8, "{side:?}: {m}");
        }
        for x in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, -0.3] {
            let b = bernstein_reconstruct(&p, x, &q).unwrap();
            let t = tempering_function(&p, x).unwrap();
            assert!((b - t).abs() < 1e-6 * t, "x={x}: {b} vs {t}");
        }
    }

    #[test]
    fn duality_and_edges() {
        let q = QuadratureConfig::default();
        let p = GtgsParams::symmetric(0.3, 0.6, 1.2, 3.0, 1.0, 0.0);
        let a = rosinski_mass(&p, Side::Positive, 0.2, 0.4, &q).unwrap();
        let b = rosinski_mass_by_duality(&p, Side::Positive, 0.2, 0.4, &q).unwrap();
        assert!((a - b).abs() < 1e-9 * a, "{a} vs {b}");
        let a = rosinski_mass(&p, Side::Positive, 0.0, 1.0, &q).unwrap();
        let b = rosinski_mass_by_duality(&p, Side::Positive, 0.0, 1.0, &q).unwrap();
        assert!((a - b).abs() < 1e-8 * a, "{a} vs {b}");
        assert_eq!(rosinski_exp_tail_mass(&p, 3.0, &q).unwrap(), 0.0);
        assert!(rosinski_exp_tail_mass(&p, 3.1, &q).unwrap() > 0.0);
        assert_eq!(rosinski_density(&p, 1.0 / 3.0).unwrap(), 0.0);
    }

    #[test]
    fn rejects_out_of_scope() {
        let mut p = GtgsParams::symmetric(0.3, 0.6, 1.2, 3.0, 1.0, 0.0);
        p.gamma_minus = 0.4;
        assert!(matches!(spectral_density(&p, 1.0), Err(GtgsError::UnsupportedRegime(_))));
        let p = GtgsParams::symmetric(0.3, 1.0, 1.2, 3.0, 1.0, 0.0);
        assert!(matches!(bernstein_reconstruct(&p, 1.0, &QuadratureConfig::default()), Err(GtgsError::Domain(_))));
    }
}
