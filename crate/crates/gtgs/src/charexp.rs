//! Closed-form characteristic exponents ψ(z), assembled side by side.
//!
//! Every regime returns the exponent of the triplet (μ, 0, m) under the
//! standard truncation 1{|x|<1}; the per-side centering terms (−μ0 for the
//! uncompensated forms, +μ1 for the compensated ones) are added internally.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{GtgsError, Result};
use crate::model::{mu0_side, mu1_side, GtgsParams, Side, SideParams};
use crate::oracle::QuadratureConfig;
use crate::specfun::gamma::{gamma, rgamma};
use crate::specfun::{ell_complex, gamma_r2_1, lerch_phi, SeriesControl};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegimeTag {
    Gamma0ThetaPos,
    GammaIn02ThetaPos,
    Gamma1ThetaPos,
    Theta0Gamma0,
    Theta0AlphaGammaLt1,
    Theta0AlphaGammaGe1,
    /// α = 1: the classical tempered stable law with rate θ + λ.
    ClassicalCts,
    Unsupported,
}

impl RegimeTag {
    pub fn of(s: &SideParams) -> RegimeTag {
        if s.alpha == 1.0 {
            RegimeTag::ClassicalCts
        } else if s.theta > 0.0 {
            if s.gamma == 0.0 {
                RegimeTag::Gamma0ThetaPos
            } else if s.gamma == 1.0 {
                RegimeTag::Gamma1ThetaPos
            } else {
                RegimeTag::GammaIn02ThetaPos
            }
        } else if s.gamma == 0.0 {
            RegimeTag::Theta0Gamma0
        } else if s.gamma == 1.0 {
            RegimeTag::Unsupported
        } else if s.alpha + s.gamma <= 1.0 {
            RegimeTag::Theta0AlphaGammaLt1
        } else {
            RegimeTag::Theta0AlphaGammaGe1
        }
    }

    /// Whether the closed form is the fully compensated ∫(e^{iwx} − 1 − iwx) m, needing μ1.
    pub fn compensated(self, gamma: f64) -> bool {
        match self {
            RegimeTag::GammaIn02ThetaPos | RegimeTag::Gamma1ThetaPos | RegimeTag::Theta0AlphaGammaGe1 => true,
            RegimeTag::ClassicalCts => gamma >= 1.0,
            _ => false,
        }
    }
}

/// Which of the two equivalent θ > 0, γ ∈ (0,1) forms to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ThetaPosForm {
    /// Compensated ₂R₁ combination plus iz(μ1 + μ).
    #[default]
    Compensated,
    /// Uncompensated ₂R₁ difference plus iz(μ − μ0); only for γ < 1.
    Uncompensated,
}

/// Θ(z) = cos(απ/2)(1 − i tan(απ/2) sgn z), so that |z|^α Θ(z) = (−iz)^α.
pub fn theta_factor(alpha: f64, z: f64) -> Complex64 {
    let h = 0.5 * alpha * PI;
    let sgn = if z > 0.0 {
        1.0
    } else if z < 0.0 {
        -1.0
    } else {
        0.0
    };
    h.cos() * Complex64::new(1.0, -h.tan() * sgn)
}

/// ℓ(x, y, z) = z^{x/y} π / (sin(−πx/y) y Γ(1+x)).
pub fn ell(x: f64, y: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(GtgsError::Domain(format!("ℓ needs z > 0, got {z}")));
    }
    let g = 1.0 + x;
    if g <= 0.0 && g == g.floor() {
        return Err(GtgsError::Pole(format!("Γ(1 + x) has a pole at x = {x}")));
    }
    Ok(ell_complex(x, y, Complex64::new(z, 0.0))?.re)
}

/// Distance of γ/α from an integer below which the ₂R₁ forms are evaluated as a limit in γ.
const RATIO_GUARD: f64 = 1e-5;

fn near_integer_ratio(s: &SideParams) -> bool {
    let r = s.gamma / s.alpha;
    s.gamma > 0.0 && (r - r.round()).abs() < RATIO_GUARD
}

/// The singularity at integer γ/α is removable: F and its companion terms carry cancelling poles.
/// Fourth-order Richardson over γ ± h, γ ± 2h, with h kept inside the regime.
fn removable_limit(s: &SideParams, tag: RegimeTag, form: ThetaPosForm, w: f64, ctl: &SeriesControl) -> Result<Complex64> {
    let g = s.gamma;
    let mut h = 2e-3 * s.alpha;
    h = h.min(g / 3.0);
    match tag {
        RegimeTag::GammaIn02ThetaPos => h = h.min((g - 1.0).abs() / 3.0).min((2.0 - g) / 3.0),
        _ => h = h.min((s.alpha + g - 1.0).abs() / 3.0),
    }
    if !(h > 1e-6) {
        return Err(GtgsError::Pole(format!(
            "γ/α = {} is an integer too close to a regime boundary for the limit evaluation",
            g / s.alpha
        )));
    }
    let at = |dg: f64| {
        let mut t = *s;
        t.gamma = g + dg;
        side_core_direct(&t, tag, form, w, ctl)
    };
    let a1 = 0.5 * (at(h)? + at(-h)?);
    let a2 = 0.5 * (at(2.0 * h)? + at(-2.0 * h)?);
    Ok((4.0 * a1 - a2) / 3.0)
}

/// Γ(b) ₂R₁(1, b, 1, α; −λ/s^α) for complex s.
fn big_r(b: f64, s: &SideParams, base: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    let w = -s.lambda / base.powf(s.alpha);
    gamma_r2_1(b, s.alpha, w, ctl)
}

/// F(u) = Γ(−γ) u^γ ₂R₁(1, −γ, 1, α; −λ/u^α).
fn f_term(s: &SideParams, u: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    Ok(u.powf(s.gamma) * big_r(-s.gamma, s, u, ctl)?)
}

/// Closed-form side integral at effective frequency w (w = z on the positive side, −z on the negative side),
/// without any centering term.
fn side_core(s: &SideParams, tag: RegimeTag, form: ThetaPosForm, w: f64, ctl: &SeriesControl) -> Result<Complex64> {
    let guarded = matches!(
        tag,
        RegimeTag::GammaIn02ThetaPos | RegimeTag::Theta0AlphaGammaLt1 | RegimeTag::Theta0AlphaGammaGe1
    );
    if guarded && near_integer_ratio(s) {
        return removable_limit(s, tag, form, w, ctl);
    }
    side_core_direct(s, tag, form, w, ctl)
}

fn side_core_direct(s: &SideParams, tag: RegimeTag, form: ThetaPosForm, w: f64, ctl: &SeriesControl) -> Result<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    let (g, a, l, th, d) = (s.gamma, s.alpha, s.lambda, s.theta, s.delta);
    match tag {
        RegimeTag::ClassicalCts => {
            let tp = th + l;
            let u = Complex64::new(tp, -w);
            if g == 0.0 {
                Ok(d * (tp / u).ln())
            } else if g == 1.0 {
                Ok(d * (u * (u / tp).ln() + i * w))
            } else {
                let base = u.powf(g) - tp.powf(g);
                let comp = if g > 1.0 { i * w * g * tp.powf(g - 1.0) } else { Complex64::new(0.0, 0.0) };
                Ok(d * gamma(-g) * (base + comp))
            }
        }
        RegimeTag::Gamma0ThetaPos => {
            let u = Complex64::new(th, -w);
            Ok((d / a) * ((th.powf(a) + l) / (u.powf(a) + l)).ln())
        }
        RegimeTag::GammaIn02ThetaPos => {
            let u = Complex64::new(th, -w);
            let thc = Complex64::new(th, 0.0);
            let diff = f_term(s, u, ctl)? - f_term(s, thc, ctl)?;
            match form {
                ThetaPosForm::Uncompensated if g < 1.0 => Ok(d * diff),
                _ => {
                    // i w γ θ^{γ−1} Γ(−γ) ₂R₁(1, 1−γ, 1, α; −λ/θ^α) = −i w θ^{γ−1} Γ(1−γ) ₂R₁(…)
                    let mid = -i * w * th.powf(g - 1.0) * big_r(1.0 - g, s, thc, ctl)?;
                    Ok(d * (diff + mid))
                }
            }
        }
        RegimeTag::Gamma1ThetaPos => {
            let u = Complex64::new(th, -w);
            let thc = Complex64::new(th, 0.0);
            let aa = (a - 1.0) / a;
            let phi0 = lerch_phi(-l / thc.powf(a), 1.0, aa, ctl)?;
            let phiz = lerch_phi(-l / u.powf(a), 1.0, aa, ctl)?;
            let lerch = (l / a) * (phi0 / thc.powf(a - 1.0) - phiz / u.powf(a - 1.0));
            let log = (u / a) * ((u.powf(a) + l) / (th.powf(a) + l)).ln();
            Ok(d * (lerch + log + i * w))
        }
        RegimeTag::Theta0Gamma0 => {
            let u = Complex64::new(0.0, -w);
            Ok((d / a) * (l / (u.powf(a) + l)).ln())
        }
        RegimeTag::Theta0AlphaGammaLt1 | RegimeTag::Theta0AlphaGammaGe1 => {
            let u = Complex64::new(0.0, -w);
            let mut v = f_term(s, u, ctl)? - ell(g, a, l)?;
            if tag == RegimeTag::Theta0AlphaGammaGe1 {
                v -= i * w * ell(g - 1.0, a, l)?;
            }
            Ok(d * v)
        }
        RegimeTag::Unsupported => Err(GtgsError::UnsupportedRegime(
            "θ = 0 with γ = 1 has no closed-form exponent".into(),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct PreparedSide {
    side: Side,
    params: SideParams,
    tag: RegimeTag,
    /// Signed centering drift c such that the side's standard-truncation exponent is core + i z c.
    drift: f64,
}

/// ψ for one parameter record with the centering drifts computed once.
#[derive(Debug, Clone, PartialEq)]
pub struct CharExponent {
    params: GtgsParams,
    sides: Vec<PreparedSide>,
    form: ThetaPosForm,
    ctl: SeriesControl,
}

impl CharExponent {
    pub fn new(params: &GtgsParams) -> Result<Self> {
        Self::with_options(params, ThetaPosForm::default(), &QuadratureConfig::default(), SeriesControl::default())
    }

    pub fn with_options(params: &GtgsParams, form: ThetaPosForm, quad: &QuadratureConfig, ctl: SeriesControl) -> Result<Self> {
        let params = params.validate()?;
        let mut sides = Vec::new();
        for side in params.active_sides() {
            let sp = params.side(side);
            let tag = RegimeTag::of(&sp);
            if tag == RegimeTag::Unsupported {
                return Err(GtgsError::UnsupportedRegime(format!(
                    "{side:?} side has θ = 0 and γ = 1, for which no closed-form exponent is available"
                )));
            }
            let compensated = match (tag, form) {
                (RegimeTag::GammaIn02ThetaPos, ThetaPosForm::Uncompensated) if sp.gamma < 1.0 => false,
                _ => tag.compensated(sp.gamma),
            };
            let drift = if compensated { mu1_side(&params, side, quad)? } else { -mu0_side(&params, side, quad)? };
            sides.push(PreparedSide { side, params: sp, tag, drift });
        }
        Ok(CharExponent { params, sides, form, ctl })
    }

    pub fn params(&self) -> &GtgsParams {
        &self.params
    }

    pub fn regime(&self, side: Side) -> Option<RegimeTag> {
        self.sides.iter().find(|s| s.side == side).map(|s| s.tag)
    }

    /// The internal centering drift of one side (−μ0 or +μ1 contribution).
    pub fn centering(&self, side: Side) -> f64 {
        self.sides.iter().find(|s| s.side == side).map(|s| s.drift).unwrap_or(0.0)
    }

    pub fn eval(&self, z: f64) -> Result<Complex64> {
        if z == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let mut psi = Complex64::new(0.0, z * self.params.mu);
        for s in &self.sides {
            let w = s.side.sign() * z;
            psi += side_core(&s.params, s.tag, self.form, w, &self.ctl)? + Complex64::new(0.0, z * s.drift);
        }
        Ok(psi)
    }

    /// Characteristic function e^{tψ(z)}.
    pub fn char_function(&self, z: f64, t: f64) -> Result<Complex64> {
        if !(t > 0.0) {
            return Err(GtgsError::Domain("t must be positive".into()));
        }
        Ok((t * self.eval(z)?).exp())
    }
}

/// ψ(z) for a parameter record.
pub fn char_exponent(params: &GtgsParams, z: f64) -> Result<Complex64> {
    CharExponent::new(params)?.eval(z)
}

/// E[e^{izX_t}] = e^{tψ(z)}.
pub fn char_function(params: &GtgsParams, z: f64, t: f64) -> Result<Complex64> {
    CharExponent::new(params)?.char_function(z, t)
}

/// The strip Im z ∈ (−θ+, θ−) on which ψ continues analytically.
pub fn analytic_strip(params: &GtgsParams) -> (f64, f64) {
    (-params.theta_plus, params.theta_minus)
}

/// Left side at the smallest z and the closed-form right side of
/// lim_{z→0} Γ(a) z^{−a} ₂R₁(1, a, 1, b; −c/z^b) = c^{−a/b} π / (b Γ(1−a) sin(πa/b)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaCheck {
    pub lhs: f64,
    pub rhs: f64,
}

pub fn lemma_limit_check(a: f64, b: f64, c: f64, z_seq: &[f64]) -> Result<LemmaCheck> {
    if !(b > 0.0 && b < 1.0) || !(c > 0.0) || a > b {
        return Err(GtgsError::Domain("lemma limit needs a ≤ b, b ∈ (0,1), c > 0".into()));
    }
    let z = z_seq.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(z > 0.0) {
        return Err(GtgsError::Domain("z sequence must be positive".into()));
    }
    let lhs = lemma_function(a, b, c, z)?;
    let rhs = c.powf(-a / b) * PI * rgamma(1.0 - a) / (b * (PI * a / b).sin());
    Ok(LemmaCheck { lhs, rhs })
}

/// G(z) = Γ(a) z^{−a} ₂R₁(1, a, 1, b; −c/z^b) for z > 0.
pub fn lemma_function(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let ctl = SeriesControl::default();
    Ok((z.powf(-a) * gamma_r2_1(a, b, Complex64::new(-c * z.powf(-b), 0.0), &ctl)?).re)
}

/// The n-th derivative of [`lemma_function`] in closed form: (−1)^n Γ(a+n) z^{−a−n} ₂R₁(1, a+n, 1, b; −c/z^b).
pub fn lemma_derivative(a: f64, b: f64, c: f64, z: f64, n: u32) -> Result<f64> {
    let ctl = SeriesControl::default();
    let nf = n as f64;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * (z.powf(-a - nf) * gamma_r2_1(a + nf, b, Complex64::new(-c * z.powf(-b), 0.0), &ctl)?).re)
}

/// The quoted bilateral-Linnik reduction −δ log(|z|^{2α} λ^{−2} + 2 λ^{−1} |z|^α + 1).
///
/// It omits the cos(απ/2) cross term of |λ + (−iz)^α|² and carries δ where the
/// side-wise exponent carries δ/α, so it differs from [`char_exponent`] on the
/// same parameters. Kept for comparison only.
pub fn bilateral_linnik_quoted(alpha: f64, lambda: f64, delta: f64, z: f64) -> f64 {
    let a = z.abs().powf(alpha);
    -delta * (a * a / (lambda * lambda) + 2.0 * a / lambda + 1.0).ln()
}

/// Tempered positive Linnik exponent −c1 log(1 + c2((θ − iz)^α − θ^α)), with c1 = δ/α and c2 = 1/(θ^α + λ).
pub fn tpl_exponent(alpha: f64, lambda: f64, theta: f64, delta: f64, z: f64) -> Complex64 {
    let c1 = delta / alpha;
    let c2 = 1.0 / (theta.powf(alpha) + lambda);
    let u = Complex64::new(theta, -z).powf(alpha);
    -c1 * (1.0 + c2 * (u - theta.powf(alpha))).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_factor_is_rotation() {
        let t = theta_factor(0.5, 1.0);
        assert!((t - Complex64::from_polar(1.0, -PI / 4.0)).norm() < 1e-15);
        assert!((theta_factor(0.7, -2.0) - theta_factor(0.7, 2.0).conj()).norm() < 1e-15);
        let z: f64 = 1.7;
        let lhs = z.powf(0.3) * theta_factor(0.3, z);
        let rhs = Complex64::new(0.0, -z).powf(0.3);
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn ell_values() {
        let v = ell(-0.4, 0.5, 1.0).unwrap();
        let e = PI / ((0.8 * PI).sin() * 0.5 * gamma(0.6));
        assert!((v - e).abs() < 1e-13);
        assert!((ell(-0.4, 0.5, 2.0).unwrap() - 2f64.powf(-0.8) * v).abs() < 1e-13);
        assert!(matches!(ell(-0.5, 0.5, 1.0), Err(GtgsError::Pole(_))));
    }

    #[test]
    fn zero_and_hermitian() {
        let c = CharExponent::new(&GtgsParams::figure1()).unwrap();
        assert_eq!(c.eval(0.0).unwrap(), Complex64::new(0.0, 0.0));
        let p = c.eval(1.3).unwrap();
        let m = c.eval(-1.3).unwrap();
        assert!((p - m.conj()).norm() < 1e-12);
    }

    #[test]
    fn unsupported_regime() {
        let p = GtgsParams::symmetric(1.0, 0.5, 1.0, 0.0, 1.0, 0.0);
        assert!(matches!(CharExponent::new(&p), Err(GtgsError::UnsupportedRegime(_))));
    }

    #[test]
    fn strip() {
        let mut p = GtgsParams::figure1();
        assert_eq!(analytic_strip(&p), (-1.0, 1.0));
        p.theta_plus = 2.0;
        p.theta_minus = 0.0;
        assert_eq!(analytic_strip(&p), (-2.0, 0.0));
    }

    #[test]
    fn integer_ratio_limit_matches_oracle() {
        use crate::oracle::lk_quadrature;
        let q = QuadratureConfig::default();
        let cases = [
            GtgsParams::symmetric(0.5, 0.5, 1.0, 1.0, 1.0, 0.0),
            GtgsParams::symmetric(0.6, 0.3, 1.2, 0.0, 0.8, 0.1),
            GtgsParams::symmetric(1.4, 0.7, 0.9, 0.0, 1.0, 0.0),
            GtgsParams::symmetric(1.2, 0.6, 1.0, 0.5, 1.0, 0.0),
        ];
        for p in cases {
            let ce = CharExponent::new(&p).unwrap();
            for z in [-5.0, 0.5, 2.0] {
                let a = ce.eval(z).unwrap();
                let b = lk_quadrature(&p, z, &q).unwrap();
                assert!((a - b).norm() / (1.0 + b.norm()) < 1e-7, "{p:?} z={z}: {a} vs {b}");
            }
        }
    }
}
