//! Scaling and sum closure, short/long-time scaling limits, and absolute-continuity verdicts.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charexp::CharExponent;
use crate::cumulants::{cumulant, variance_theta0};
use crate::error::{GtgsError, Result};
use crate::model::{mu0_side, mu1_side, GtgsParams, Side, SideParams};
use crate::oracle::QuadratureConfig;
use crate::quad::{integrate, integrate_log_tail};
use crate::specfun::gamma::gamma;
use crate::specfun::{ml_negative_real, SeriesControl};
use crate::spectral::rosinski_integral;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LimitKind {
    StableShortTime,
    StableLongTime,
    GaussianLongTime,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitLaw {
    pub kind: LimitKind,
    pub index: f64,
    pub deltas: Option<(f64, f64)>,
    pub variance: Option<f64>,
    pub drift_note: String,
    /// Drift μ that puts the process in the centering the limit requires.
    pub centered_mu: f64,
}

impl LimitLaw {
    /// Exponent of the limit at time 1.
    pub fn psi(&self, z: f64) -> Complex64 {
        match self.kind {
            LimitKind::GaussianLongTime => Complex64::new(-0.5 * self.variance.unwrap_or(0.0) * z * z, 0.0),
            _ => {
                if z == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let (dp, dm) = self.deltas.unwrap_or((0.0, 0.0));
                let g = gamma(-self.index);
                let mut out = Complex64::new(0.0, 0.0);
                for (d, sign) in [(dp, 1.0), (dm, -1.0)] {
                    if d != 0.0 {
                        out += d * g * Complex64::new(0.0, -sign * z).powf(self.index);
                    }
                }
                out
            }
        }
    }

    /// Process scaling exponent κ in h^{−1/κ} X_h.
    pub fn kappa(&self) -> f64 {
        self.index
    }
}

/// Drift that makes ψ the fully compensated form on every side.
fn minus_mu1(p: &GtgsParams, quad: &QuadratureConfig) -> Result<f64> {
    let mut m = 0.0;
    for side in Side::BOTH {
        m -= mu1_side(p, side, quad)?;
    }
    Ok(m)
}

fn mu0(p: &GtgsParams, quad: &QuadratureConfig) -> Result<f64> {
    let mut m = 0.0;
    for side in Side::BOTH {
        m += mu0_side(p, side, quad)?;
    }
    Ok(m)
}

fn common_gamma(p: &GtgsParams) -> Result<f64> {
    let sides = p.active_sides();
    let g = p.side(sides[0]).gamma;
    if sides.iter().any(|&s| p.side(s).gamma != g) {
        return Err(GtgsError::UnsupportedRegime("scaling limits need γ+ = γ−".into()));
    }
    Ok(g)
}

/// Law of cX: λ c^{−α}, θ/c, δ c^γ, with μ adjusted so that ψ_{cX}(z) = ψ_X(cz) exactly.
pub fn scaling_transform(params: &GtgsParams, c: f64) -> Result<GtgsParams> {
    let p = params.validate()?;
    if !(c > 0.0 && c.is_finite()) {
        return Err(GtgsError::InvalidParams(format!("scale c = {c} must be positive")));
    }
    let mut out = p;
    for side in Side::BOTH {
        let mut s = p.side(side);
        s.lambda *= c.powf(-s.alpha);
        s.theta /= c;
        s.delta *= c.powf(s.gamma);
        out.set_side(side, s);
    }
    let ce = CharExponent::new(&p)?;
    let ce2 = CharExponent::new(&out)?;
    let cent = |e: &CharExponent| Side::BOTH.iter().map(|&s| e.centering(s)).sum::<f64>();
    out.mu = c * (p.mu + cent(&ce)) - cent(&ce2);
    out.validate()
}

/// Independent sum of two laws sharing every parameter but δ and μ.
pub fn sum_params(p1: &GtgsParams, p2: &GtgsParams) -> Result<GtgsParams> {
    let a = p1.validate()?;
    let b = p2.validate()?;
    for side in Side::BOTH {
        let (x, y) = (a.side(side), b.side(side));
        if x.gamma != y.gamma || x.alpha != y.alpha || x.lambda != y.lambda || x.theta != y.theta {
            return Err(GtgsError::IncompatibleParams(format!("{side:?} side: γ, α, λ, θ must coincide")));
        }
        if !(x.theta > 0.0) {
            return Err(GtgsError::IncompatibleParams(format!("{side:?} side: closure under sums needs θ > 0")));
        }
    }
    let mut out = a;
    out.delta_plus += b.delta_plus;
    out.delta_minus += b.delta_minus;
    out.mu += b.mu;
    out.validate()
}

/// h → 0 limit of h^{−1/γ} X_h.
pub fn short_time_limit(params: &GtgsParams) -> Result<LimitLaw> {
    let p = params.validate()?;
    let g = common_gamma(&p)?;
    let quad = QuadratureConfig::default();
    let (centered_mu, note) = if g == 1.0 {
        return Err(GtgsError::UnsupportedRegime("short-time limit excludes γ = 1".into()));
    } else if g < 1.0 {
        (mu0(&p, &quad)?, "μ = μ0, limit drift μ*0 (uncompensated γ-stable)")
    } else {
        (minus_mu1(&p, &quad)?, "μ = −μ1, limit drift −μ*1 (compensated γ-stable)")
    };
    Ok(LimitLaw {
        kind: LimitKind::StableShortTime,
        index: g,
        deltas: Some((p.delta_plus, p.delta_minus)),
        variance: None,
        drift_note: note.into(),
        centered_mu,
    })
}

/// h → ∞ limit: stable of index α+γ when θ± = 0 and α+γ ∉ {1,2}, Gaussian when θ± > 0 or α+γ > 2.
pub fn long_time_limit(params: &GtgsParams) -> Result<LimitLaw> {
    let p = params.validate()?;
    let g = common_gamma(&p)?;
    let quad = QuadratureConfig::default();
    let sides = p.active_sides();
    let all_pos = sides.iter().all(|&s| p.side(s).exp_rate() > 0.0);
    let all_zero = sides.iter().all(|&s| p.side(s).exp_rate() == 0.0);
    let gaussian = |variance: f64, note: &str| -> Result<LimitLaw> {
        Ok(LimitLaw {
            kind: LimitKind::GaussianLongTime,
            index: 2.0,
            deltas: None,
            variance: Some(variance),
            drift_note: note.into(),
            centered_mu: minus_mu1(&p, &quad)?,
        })
    };
    if all_pos {
        return gaussian(cumulant(&p, 2)?, "centered by the mean, μ = −μ1");
    }
    if !all_zero {
        return Err(GtgsError::UnsupportedRegime("long-time limit needs θ+ and θ− both zero or both positive".into()));
    }
    let a = p.side(sides[0]).alpha;
    if sides.iter().any(|&s| p.side(s).alpha != a) {
        return Err(GtgsError::UnsupportedRegime("the θ = 0 long-time limit needs α+ = α−".into()));
    }
    let k = a + g;
    if k > 2.0 {
        let v = variance_theta0(&p)?.value.ok_or_else(|| GtgsError::DivergentMoment("variance".into()))?;
        return gaussian(v, "centered by the mean, μ = −μ1");
    }
    if k == 1.0 || k == 2.0 {
        return Err(GtgsError::UnsupportedRegime(format!("α + γ = {k} is a boundary case")));
    }
    let ds = |s: SideParams| if s.delta == 0.0 { 0.0 } else { s.delta / (gamma(1.0 - a) * s.lambda) };
    let (centered_mu, note) = if k < 1.0 {
        (mu0(&p, &quad)?, "μ = μ0, limit drift μ*0")
    } else {
        (minus_mu1(&p, &quad)?, "μ = −μ1, limit drift −μ*1")
    };
    Ok(LimitLaw {
        kind: LimitKind::StableLongTime,
        index: k,
        deltas: Some((ds(p.side(Side::Positive)), ds(p.side(Side::Negative)))),
        variance: None,
        drift_note: note.into(),
        centered_mu,
    })
}

/// For each h: max over z_grid of |h ψ(z h^{−1/κ}) − ψ_limit(z)|, with ψ recentred as the law requires.
pub fn scaling_convergence_check(params: &GtgsParams, law: &LimitLaw, h_seq: &[f64], z_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    let mut p = params.validate()?;
    p.mu = law.centered_mu;
    let ce = CharExponent::new(&p)?;
    let kappa = law.kappa();
    h_seq
        .par_iter()
        .map(|&h| {
            let mut worst: f64 = 0.0;
            for &z in z_grid {
                let v = h * ce.eval(z * h.powf(-1.0 / kappa))?;
                worst = worst.max((v - law.psi(z)).norm());
            }
            Ok((h, worst))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub reason: String,
    pub required_drift: Option<f64>,
    pub hellinger_estimate: Option<f64>,
}

/// H(ε_k) = ∫_{ε_k}^{1} f for ε_k = eps0·10^{−k}, k = 0..=decades.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HellingerProfile {
    pub cutoffs: Vec<f64>,
    pub values: Vec<f64>,
}

impl HellingerProfile {
    pub fn growth(&self) -> f64 {
        self.values.last().unwrap() / self.values[0]
    }

    /// Unbounded growth as the cutoff shrinks, read as a factor ≥ 10 over the profile.
    pub fn diverges(&self) -> bool {
        self.growth() >= 10.0
    }
}

/// Builds a profile by integrating on the log scale one decade at a time.
pub fn hellinger_profile<F: Fn(f64) -> f64>(f: F, eps0: f64, decades: usize, quad: &QuadratureConfig) -> Result<HellingerProfile> {
    let opts = quad.opts();
    let g = |u: f64| {
        let x = (-u).exp();
        f(x) * x
    };
    let u0 = -eps0.ln();
    let mut h = integrate(g, 0.0, u0, opts)?.value;
    let mut cutoffs = vec![eps0];
    let mut values = vec![h];
    let d = std::f64::consts::LN_10;
    for k in 0..decades {
        let a = u0 + k as f64 * d;
        h += integrate(g, a, a + d, opts)?.value;
        cutoffs.push(eps0 * 10f64.powi(-(k as i32 + 1)));
        values.push(h);
    }
    Ok(HellingerProfile { cutoffs, values })
}

/// (1 − q(x))² x^{−γ−1} on one side.
pub fn stable_hellinger_integrand(s: &SideParams, x: f64) -> f64 {
    let d = s.one_minus_q(x);
    d * d * x.powf(-s.gamma - 1.0)
}

/// Whether a stable law with the same γ and δ is absolutely continuous w.r.t. this GTGS law.
pub fn stable_equivalence(params: &GtgsParams) -> Result<EquivalenceVerdict> {
    let p = params.validate()?;
    let g = common_gamma(&p)?;
    if !(g > 0.0 && g < 2.0) {
        return Err(GtgsError::Domain("stable equivalence needs γ ∈ (0,2)".into()));
    }
    let quad = QuadratureConfig::default();
    let sides = p.active_sides();
    let amin = sides.iter().map(|&s| p.side(s).alpha).fold(f64::INFINITY, f64::min);
    if amin <= g / 2.0 {
        return Ok(EquivalenceVerdict {
            equivalent: false,
            reason: format!("min(α+, α−) = {amin} ≤ γ/2 = {}", g / 2.0),
            required_drift: None,
            hellinger_estimate: None,
        });
    }
    let mut h = 0.0;
    for &side in &sides {
        let s = p.side(side);
        h += hellinger_profile(|x| stable_hellinger_integrand(&s, x), 1e-6, 0, &quad)?.values[0];
    }
    let mut reason = format!("min(α+, α−) = {amin} > γ/2 = {}", g / 2.0);
    let rosinski_ok = sides.iter().all(|&s| p.side(s).alpha < 1.0);
    let required_drift = if g < 1.0 {
        Some(p.mu)
    } else if !rosinski_ok {
        reason.push_str("; μ* needs the Rosiński density, unavailable for α = 1");
        None
    } else if g == 1.0 {
        reason.push_str("; μ* integrates over ℝ+ only, as stated for γ = 1");
        let i = rosinski_integral(&p, Side::Positive, 0.0, f64::INFINITY, 1.0, |x| x.ln() - 1.0, &quad)?;
        Some(p.mu + i)
    } else {
        let mut i = 0.0;
        for &side in &sides {
            i += side.sign() * rosinski_integral(&p, side, 0.0, f64::INFINITY, 1.0, |_| 1.0, &quad)?;
        }
        Some(p.mu + gamma(1.0 - g) * i)
    };
    Ok(EquivalenceVerdict { equivalent: true, reason, required_drift, hellinger_estimate: Some(h) })
}

/// (√m₁ − √m₂)² on one side at |x|, avoiding cancellation when γ and δ agree.
pub fn mutual_hellinger_integrand(a: &SideParams, b: &SideParams, x: f64) -> f64 {
    if a.gamma == b.gamma && a.delta == b.delta {
        let (qa, qb) = (a.q(x), b.q(x));
        let diff = b.one_minus_q(x) - a.one_minus_q(x);
        let r = diff / (qa.sqrt() + qb.sqrt());
        return a.delta * r * r * x.powf(-1.0 - a.gamma);
    }
    let d = a.levy(x).sqrt() - b.levy(x).sqrt();
    d * d
}

fn same_shape(a: &SideParams, b: &SideParams) -> bool {
    a.alpha == b.alpha && a.lambda == b.lambda
}

/// Mutual absolute continuity of two GTGS laws.
///
/// A side whose (α, λ) coincide between the two laws imposes no α-constraint: the x^α terms cancel
/// and the Hellinger integrand is O(x^{1−γ}) at the origin.
pub fn mutual_equivalence(p1: &GtgsParams, p2: &GtgsParams) -> Result<EquivalenceVerdict> {
    let a = p1.validate()?;
    let b = p2.validate()?;
    let quad = QuadratureConfig::default();
    let mut reasons = Vec::new();
    let mut ok = true;
    for side in Side::BOTH {
        let (x, y) = (a.side(side), b.side(side));
        if x.delta == 0.0 && y.delta == 0.0 {
            continue;
        }
        if x.delta != y.delta {
            ok = false;
            reasons.push(format!("{side:?}: δ differs ({} vs {})", x.delta, y.delta));
            continue;
        }
        if x.gamma != y.gamma {
            ok = false;
            reasons.push(format!("{side:?}: γ differs ({} vs {})", x.gamma, y.gamma));
            continue;
        }
        let amin = x.alpha.min(y.alpha);
        if same_shape(&x, &y) {
            reasons.push(format!("{side:?}: α and λ coincide"));
        } else if amin <= x.gamma / 2.0 {
            ok = false;
            reasons.push(format!("{side:?}: min(α, α') = {amin} ≤ γ/2 = {}", x.gamma / 2.0));
        } else {
            reasons.push(format!("{side:?}: min(α, α') = {amin} > γ/2 = {}", x.gamma / 2.0));
        }
    }
    let hellinger_estimate = if ok {
        let mut h = 0.0;
        for side in Side::BOTH {
            let (x, y) = (a.side(side), b.side(side));
            if x.delta == 0.0 && y.delta == 0.0 {
                continue;
            }
            let f = |r: f64| mutual_hellinger_integrand(&x, &y, r);
            h += hellinger_profile(&f, 1e-6, 0, &quad)?.values[0];
            h += integrate_log_tail(&f, 1.0, quad.opts())?.value;
        }
        Some(h)
    } else {
        None
    };
    Ok(EquivalenceVerdict { equivalent: ok, reason: reasons.join("; "), required_drift: None, hellinger_estimate })
}

fn ln_ml(s: &SideParams, r: f64) -> Result<f64> {
    if s.alpha == 1.0 {
        return Ok(-s.lambda * r);
    }
    Ok(ml_negative_real(s.alpha, s.lambda * r.powf(s.alpha), &SeriesControl::default())?.ln())
}

/// l(x) = log(m₂(x)/m₁(x)), the jump transform of the density process.
pub fn density_process_log_jump(p1: &GtgsParams, p2: &GtgsParams, x: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(GtgsError::Domain("x must be nonzero".into()));
    }
    let v = mutual_equivalence(p1, p2)?;
    if !v.equivalent {
        return Err(GtgsError::NotEquivalent(v.reason));
    }
    let side = Side::of(x);
    let (a, b) = (p1.side(side), p2.side(side));
    let r = x.abs();
    Ok((a.theta - b.theta) * r + ln_ml(&b, r)? - ln_ml(&a, r)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charexp::char_exponent;
    use crate::model::levy_density;

    #[test]
    fn scaling_is_exact() {
        let mut p = GtgsParams::figure1();
        p.mu = 0.3;
        let t = scaling_transform(&p, 2.0).unwrap();
        assert!((t.lambda_plus - 2f64.powf(-0.5)).abs() < 1e-15);
        assert!((t.delta_plus - 2f64.powf(1.6)).abs() < 1e-14);
        for z in [0.3, -1.0, 2.5] {
            let a = char_exponent(&p, 2.0 * z).unwrap();
            let b = char_exponent(&t, z).unwrap();
            assert!((a - b).norm() < 1e-10 * (1.0 + a.norm()), "{a} vs {b}");
        }
        let id = scaling_transform(&p, 1.0).unwrap();
        assert!((id.mu - p.mu).abs() < 1e-12);
    }

    #[test]
    fn sums() {
        let p = GtgsParams::symmetric(0.5, 0.5, 1.0, 1.0, 1.0, 0.2);
        let s = sum_params(&p, &p).unwrap();
        let a = char_exponent(&s, 1.0).unwrap();
        let b = 2.0 * char_exponent(&p, 1.0).unwrap();
        assert!((a - b).norm() < 1e-10);
        let mut q = p;
        q.alpha_plus = 0.6;
        assert!(matches!(sum_params(&p, &q), Err(GtgsError::IncompatibleParams(_))));
    }

    #[test]
    fn limit_laws() {
        let l = short_time_limit(&GtgsParams::figure1()).unwrap();
        assert_eq!(l.index, 1.6);
        assert_eq!(l.deltas, Some((1.0, 1.0)));
        let p = GtgsParams::symmetric(0.3, 0.5, 2.0, 0.0, 1.5, 0.0);
        let l = long_time_limit(&p).unwrap();
        assert_eq!(l.kind, LimitKind::StableLongTime);
        assert!((l.deltas.unwrap().0 - 1.5 / (gamma(0.5) * 2.0)).abs() < 1e-15);
        let l = long_time_limit(&GtgsParams::symmetric(1.6, 0.5, 1.0, 0.0, 1.0, 0.0)).unwrap();
        assert_eq!(l.kind, LimitKind::GaussianLongTime);
    }

    #[test]
    fn gaussian_convergence() {
        let p = GtgsParams::symmetric(0.5, 0.5, 1.0, 1.0, 1.0, 0.0);
        let l = long_time_limit(&p).unwrap();
        let z: Vec<f64> = (0..9).map(|i| -2.0 + 0.5 * i as f64).collect();
        let d = scaling_convergence_check(&p, &l, &[1e2, 1e4, 1e6], &z).unwrap();
        assert!(d[2].1 < 1e-2 && d[2].1 < d[1].1 && d[1].1 < d[0].1, "{d:?}");
    }

    #[test]
    fn verdicts() {
        let p = GtgsParams::symmetric(0.8, 0.5, 1.0, 1.0, 1.0, 0.0);
        assert!(stable_equivalence(&p).unwrap().equivalent);
        let p = GtgsParams::symmetric(1.2, 0.5, 1.0, 1.0, 1.0, 0.0);
        assert!(!stable_equivalence(&p).unwrap().equivalent);
        let a = GtgsParams::symmetric(1.0, 0.6, 1.0, 1.0, 1.0, 0.0);
        let mut b = a;
        b.alpha_plus = 0.7;
        b.alpha_minus = 0.7;
        let v = mutual_equivalence(&a, &b).unwrap();
        assert!(v.equivalent && v.hellinger_estimate.unwrap().is_finite());
        assert_eq!(mutual_equivalence(&a, &a).unwrap().hellinger_estimate, Some(0.0));
        let mut c = a;
        c.delta_plus = 2.0;
        assert!(!mutual_equivalence(&a, &c).unwrap().equivalent);
        for x in [0.7, -0.4, 3.0] {
            let l = density_process_log_jump(&a, &b, x).unwrap();
            let m1 = levy_density(&a, x).unwrap();
            let m2 = levy_density(&b, x).unwrap();
            assert!((l.exp() * m1 - m2).abs() < 1e-10 * m2);
        }
        let mut d = a;
        d.theta_plus = 1.5;
        assert!((density_process_log_jump(&a, &d, 0.7).unwrap() + 0.5 * 0.7).abs() < 1e-12);
    }

    #[test]
    fn hellinger_growth_follows_exponent() {
        let q = QuadratureConfig::default();
        let conv = GtgsParams::symmetric(0.8, 0.5, 1.0, 1.0, 1.0, 0.0).side(Side::Positive);
        let div = GtgsParams::symmetric(1.2, 0.5, 1.0, 1.0, 1.0, 0.0).side(Side::Positive);
        let hc = hellinger_profile(|x| stable_hellinger_integrand(&conv, x), 1e-6, 10, &q).unwrap();
        let hd = hellinger_profile(|x| stable_hellinger_integrand(&div, x), 1e-6, 10, &q).unwrap();
        assert!(!hc.diverges() && hd.diverges(), "{} {}", hc.growth(), hd.growth());
    }
}
