//! Parameter records, tempering function, Lévy and canonical densities, and
//! the truncation moments μ0 = ∫_{|x|<1} x m(x) dx, μ1 = ∫_{|x|>1} x m(x) dx.

use serde::{Deserialize, Serialize};

use crate::error::{GtgsError, Result};
use crate::oracle::QuadratureConfig;
use crate::quad::{integrate, integrate_log_tail, QuadOpts};
use crate::specfun::gamma::rgamma;
use crate::specfun::{ml_negative_real, one_minus_ml, SeriesControl};

/// Full GTGS parameter record; one γ, α, λ, θ, δ per half-line plus a drift.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GtgsParams {
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    pub alpha_plus: f64,
    pub alpha_minus: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub theta_plus: f64,
    pub theta_minus: f64,
    pub delta_plus: f64,
    pub delta_minus: f64,
    pub mu: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Positive,
    Negative,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Positive, Side::Negative];

    pub fn sign(self) -> f64 {
        match self {
            Side::Positive => 1.0,
            Side::Negative => -1.0,
        }
    }

    pub fn of(x: f64) -> Side {
        if x > 0.0 {
            Side::Positive
        } else {
            Side::Negative
        }
    }
}

/// The five parameters governing one half-line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideParams {
    pub gamma: f64,
    pub alpha: f64,
    pub lambda: f64,
    pub theta: f64,
    pub delta: f64,
}

impl GtgsParams {
    /// Same law on both half-lines.
    pub fn symmetric(gamma: f64, alpha: f64, lambda: f64, theta: f64, delta: f64, mu: f64) -> Self {
        GtgsParams {
            gamma_plus: gamma,
            gamma_minus: gamma,
            alpha_plus: alpha,
            alpha_minus: alpha,
            lambda_plus: lambda,
            lambda_minus: lambda,
            theta_plus: theta,
            theta_minus: theta,
            delta_plus: delta,
            delta_minus: delta,
            mu,
        }
    }

    /// Only positive jumps; the negative side carries δ− = 0 and copies the other shape parameters.
    pub fn one_sided(gamma: f64, alpha: f64, lambda: f64, theta: f64, delta: f64, mu: f64) -> Self {
        let mut p = Self::symmetric(gamma, alpha, lambda, theta, delta, mu);
        p.delta_minus = 0.0;
        p
    }

    /// The comparison parameters γ = 1.6, α = 0.5, λ = θ = δ = 1, symmetric, μ = 0.
    pub fn figure1() -> Self {
        Self::symmetric(1.6, 0.5, 1.0, 1.0, 1.0, 0.0)
    }

    pub fn side(&self, side: Side) -> SideParams {
        match side {
            Side::Positive => SideParams {
                gamma: self.gamma_plus,
                alpha: self.alpha_plus,
                lambda: self.lambda_plus,
                theta: self.theta_plus,
                delta: self.delta_plus,
            },
            Side::Negative => SideParams {
                gamma: self.gamma_minus,
                alpha: self.alpha_minus,
                lambda: self.lambda_minus,
                theta: self.theta_minus,
                delta: self.delta_minus,
            },
        }
    }

    pub fn set_side(&mut self, side: Side, s: SideParams) {
        match side {
            Side::Positive => {
                self.gamma_plus = s.gamma;
                self.alpha_plus = s.alpha;
                self.lambda_plus = s.lambda;
                self.theta_plus = s.theta;
                self.delta_plus = s.delta;
            }
            Side::Negative => {
                self.gamma_minus = s.gamma;
                self.alpha_minus = s.alpha;
                self.lambda_minus = s.lambda;
                self.theta_minus = s.theta;
                self.delta_minus = s.delta;
            }
        }
    }

    /// Sides with δ > 0.
    pub fn active_sides(&self) -> Vec<Side> {
        Side::BOTH.into_iter().filter(|&s| self.side(s).delta > 0.0).collect()
    }

    pub fn validate(self) -> Result<Self> {
        validate(self)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let p: GtgsParams = serde_json::from_str(s).map_err(|e| GtgsError::InvalidParams(e.to_string()))?;
        p.validate()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain struct serializes")
    }
}

/// Checks ranges and returns the record unchanged.
pub fn validate(p: GtgsParams) -> Result<GtgsParams> {
    for side in Side::BOTH {
        let s = p.side(side);
        let tag = match side {
            Side::Positive => "plus",
            Side::Negative => "minus",
        };
        if !(s.gamma >= 0.0 && s.gamma < 2.0) {
            return Err(GtgsError::InvalidParams(format!("gamma_{tag} = {} must lie in [0, 2)", s.gamma)));
        }
        if !(s.alpha > 0.0 && s.alpha <= 1.0) {
            return Err(GtgsError::InvalidParams(format!("alpha_{tag} = {} must lie in (0, 1]", s.alpha)));
        }
        if !(s.lambda > 0.0 && s.lambda.is_finite()) {
            return Err(GtgsError::InvalidParams(format!("lambda_{tag} = {} must be positive", s.lambda)));
        }
        if !(s.theta >= 0.0 && s.theta.is_finite()) {
            return Err(GtgsError::InvalidParams(format!("theta_{tag} = {} must be nonnegative", s.theta)));
        }
        if !(s.delta >= 0.0 && s.delta.is_finite()) {
            return Err(GtgsError::InvalidParams(format!("delta_{tag} = {} must be nonnegative", s.delta)));
        }
    }
    if p.delta_plus == 0.0 && p.delta_minus == 0.0 {
        return Err(GtgsError::InvalidParams("(delta_plus, delta_minus) must not both vanish".into()));
    }
    if !p.mu.is_finite() {
        return Err(GtgsError::InvalidParams("mu must be finite".into()));
    }
    Ok(p)
}

impl SideParams {
    /// q(r) = e^{-θr} E_α(-λ r^α) for r > 0.
    pub fn q(&self, r: f64) -> f64 {
        if self.alpha == 1.0 {
            return (-(self.theta + self.lambda) * r).exp();
        }
        let e = ml_negative_real(self.alpha, self.lambda * r.powf(self.alpha), &SeriesControl::default()).unwrap_or(f64::NAN);
        (-self.theta * r).exp() * e
    }

    /// 1 - q(r) without cancellation at small r.
    pub fn one_minus_q(&self, r: f64) -> f64 {
        let ctl = SeriesControl::default();
        if self.alpha == 1.0 {
            return -(-(self.theta + self.lambda) * r).exp_m1();
        }
        let om = one_minus_ml(self.alpha, self.lambda * r.powf(self.alpha), &ctl).unwrap_or(f64::NAN);
        let e_theta = (-self.theta * r).exp();
        // 1 - e^{-θr}E = (1 - E) e^{-θr} + (1 - e^{-θr})
        om * e_theta - (-self.theta * r).exp_m1()
    }

    /// δ q(r) / r^{1+γ}.
    pub fn levy(&self, r: f64) -> f64 {
        if self.delta == 0.0 {
            return 0.0;
        }
        self.delta * self.q(r) * r.powf(-1.0 - self.gamma)
    }

    /// Whether ∫_1^∞ r^p m(r) dr is finite.
    pub fn tail_moment_finite(&self, p: f64) -> bool {
        self.delta == 0.0 || self.theta > 0.0 || self.alpha == 1.0 || self.alpha + self.gamma > p
    }

    /// Effective exponential rate of the tail (θ, or θ + λ when α = 1).
    pub fn exp_rate(&self) -> f64 {
        if self.alpha == 1.0 {
            self.theta + self.lambda
        } else {
            self.theta
        }
    }

    /// ∫_a^b r^p m(r) dr on 0 ≤ a < b ≤ ∞.
    pub fn moment_integral(&self, p: f64, a: f64, b: f64, quad: &QuadratureConfig) -> Result<f64> {
        if self.delta == 0.0 || a >= b {
            return Ok(0.0);
        }
        let s = p - 1.0 - self.gamma; // power of r in r^p m(r) / q(r)
        let opts = quad.opts();
        if a == 0.0 {
            if s <= -1.0 {
                return Err(GtgsError::DivergentMoment(format!("∫_0 r^{p} m(r) dr diverges at the origin (γ = {})", self.gamma)));
            }
            let split = if b.is_finite() { b.min(1.0) } else { 1.0 };
            let k = s + 1.0;
            // r = split u^{1/k}: r^s dr = split^k / k du
            let head = integrate(|u: f64| self.q(split * u.powf(1.0 / k)), 0.0, 1.0, opts)?.value * split.powf(k) / k;
            let rest = self.moment_integral(p, split, b, quad)?;
            return Ok(self.delta * head + rest);
        }
        if b.is_finite() {
            let r = integrate(|r: f64| r.powf(p) * self.levy(r), a, b, opts)?.value;
            return Ok(r);
        }
        if !self.tail_moment_finite(p) {
            return Err(GtgsError::DivergentMoment(format!(
                "∫^∞ r^{p} m(r) dr diverges: θ = 0 and α + γ = {} ≤ {p}",
                self.alpha + self.gamma
            )));
        }
        if self.exp_rate() > 0.0 {
            return Ok(integrate_log_tail(|r: f64| r.powf(p) * self.levy(r), a, opts)?.value);
        }
        // θ = 0, α < 1: numerical integral up to X, then the algebraic expansion of E_α termwise.
        let x_big = a.max((60.0 / self.lambda).powf(1.0 / self.alpha));
        let head = if x_big > a { integrate_log_range(|r| r.powf(p) * self.levy(r), a, x_big, opts)? } else { 0.0 };
        Ok(head + self.delta * power_tail(self.alpha, self.lambda, s, x_big))
    }
}

fn integrate_log_range<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOpts) -> Result<f64> {
    let (la, lb) = (a.ln(), b.ln());
    Ok(integrate(|u: f64| {
        let r = u.exp();
        f(r) * r
    }, la, lb, opts)?
    .value)
}

/// ∫_X^∞ r^s E_α(-λ r^α) dr from E_α(-y) ≈ Σ_{k≥1} (-1)^{k+1} y^{-k}/Γ(1-αk), valid for λ^{1/α} X ≫ 1.
fn power_tail(alpha: f64, lambda: f64, s: f64, x: f64) -> f64 {
    let y = lambda * x.powf(alpha);
    let mut sum = 0.0;
    // stop on the smooth envelope Γ(αk) y^{-k}; |1/Γ(1-αk)| itself oscillates with sin(παk)
    let mut prev_env = f64::INFINITY;
    for k in 1..400 {
        let kf = k as f64;
        let env = libm::lgamma(alpha * kf) - kf * y.ln();
        if env > prev_env {
            break;
        }
        prev_env = env;
        let e = alpha * kf - s - 1.0;
        let coef = rgamma(1.0 - alpha * kf);
        if coef == 0.0 {
            continue;
        }
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let term = sign * coef * y.powf(-kf) * x.powf(s + 1.0) / e;
        sum += term;
        if env.exp() * x.powf(s + 1.0) < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn side_of(params: &GtgsParams, x: f64) -> Result<SideParams> {
    if x == 0.0 || x.is_nan() {
        return Err(GtgsError::Domain("the Lévy density is defined off the origin".into()));
    }
    Ok(params.side(Side::of(x)))
}

/// q(|x|) for the side selected by the sign of x.
pub fn tempering_function(params: &GtgsParams, x: f64) -> Result<f64> {
    Ok(side_of(params, x)?.q(x.abs()))
}

/// m(x) = δ± q(|x|) / |x|^{1+γ±}.
pub fn levy_density(params: &GtgsParams, x: f64) -> Result<f64> {
    Ok(side_of(params, x)?.levy(x.abs()))
}

/// k(x) = |x| m(x).
pub fn canonical_density(params: &GtgsParams, x: f64) -> Result<f64> {
    Ok(x.abs() * levy_density(params, x)?)
}

/// Signed contribution of one side to μ0.
pub fn mu0_side(params: &GtgsParams, side: Side, quad: &QuadratureConfig) -> Result<f64> {
    let s = params.side(side);
    if s.delta == 0.0 {
        return Ok(0.0);
    }
    if s.gamma >= 1.0 {
        return Err(GtgsError::DivergentMoment(format!("μ0 diverges on the {side:?} side (γ = {} ≥ 1)", s.gamma)));
    }
    Ok(side.sign() * s.moment_integral(1.0, 0.0, 1.0, quad)?)
}

/// Signed contribution of one side to μ1.
pub fn mu1_side(params: &GtgsParams, side: Side, quad: &QuadratureConfig) -> Result<f64> {
    let s = params.side(side);
    if s.delta == 0.0 {
        return Ok(0.0);
    }
    if !s.tail_moment_finite(1.0) {
        return Err(GtgsError::DivergentMoment(format!(
            "μ1 diverges on the {side:?} side (θ = 0, α + γ = {} ≤ 1)",
            s.alpha + s.gamma
        )));
    }
    Ok(side.sign() * s.moment_integral(1.0, 1.0, f64::INFINITY, quad)?)
}

/// (μ0, μ1), failing if either diverges.
pub fn truncation_moments(params: &GtgsParams, quad: &QuadratureConfig) -> Result<(f64, f64)> {
    let mut mu0 = 0.0;
    let mut mu1 = 0.0;
    for side in Side::BOTH {
        mu0 += mu0_side(params, side, quad)?;
        mu1 += mu1_side(params, side, quad)?;
    }
    Ok((mu0, mu1))
}


/// Lévy densities and tempering functions of the four symmetric laws tabulated by `figure1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Figure1Row {
    pub x: f64,
    pub levy_s: f64,
    pub levy_cts: f64,
    pub levy_gtgs: f64,
    pub levy_gtgs0: f64,
    pub q_s: f64,
    pub q_cts: f64,
    pub q_gtgs: f64,
    pub q_gtgs0: f64,
}

/// Stable, CTS (q = e^{−θx}), GTGS and GTGS⁰ (θ = 0) at γ = 1.6, α = 0.5, λ = θ = δ = 1.
pub fn figure1_row(x: f64) -> Result<Figure1Row> {
    if !(x > 0.0) {
        return Err(GtgsError::Domain("figure1 curves are tabulated for x > 0".into()));
    }
    let p = GtgsParams::figure1().side(Side::Positive);
    let mut p0 = p;
    p0.theta = 0.0;
    let base = p.delta * x.powf(-1.0 - p.gamma);
    let q_cts = (-p.theta * x).exp();
    let (q_gtgs, q_gtgs0) = (p.q(x), p0.q(x));
    Ok(Figure1Row {
        x,
        levy_s: base,
        levy_cts: base * q_cts,
        levy_gtgs: base * q_gtgs,
        levy_gtgs0: base * q_gtgs0,
        q_s: 1.0,
        q_cts,
        q_gtgs,
        q_gtgs0,
    })
}
