use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{lgamma, lgamma_sign, ln_gamma_c, rgamma};
use super::mellin::{line_integral, pick_abscissa};
use super::{KahanSum, SeriesControl};
use crate::error::{GtgsError, Result};
use crate::quad::{integrate_points, integrate_to_inf, QuadOpts};

/// Prabhakar function E^c_{a,b}(z) = Σ (c)_k z^k / (k! Γ(ak+b)).
pub fn mittag_leffler(a: f64, b: f64, c: f64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(GtgsError::Domain(format!("Mittag-Leffler order a = {a} outside (0,1]")));
    }
    if !(b > 0.0) || !(c > 0.0) {
        return Err(GtgsError::Domain(format!("Mittag-Leffler requires b, c > 0 (got b = {b}, c = {c})")));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(rgamma(b), 0.0));
    }
    if a == 1.0 && b == 1.0 && c == 1.0 {
        return Ok(z.exp());
    }
    if b == 1.0 && c == 1.0 && z.im == 0.0 && z.re < 0.0 {
        return ml_negative_real(a, -z.re, ctl).map(|v| Complex64::new(v, 0.0));
    }
    let t = z.norm().powf(1.0 / a);
    let arg_neg = (-z).arg().abs();
    if t <= 10.0 || arg_neg >= PI * (1.0 - 0.5 * a) {
        if let Some(v) = series(a, b, c, z, ctl) {
            return Ok(v);
        }
    }
    if t >= 40.0 && arg_neg < PI * (1.0 - a) {
        if let Some(v) = asymptotic(a, b, c, z, ctl) {
            return Ok(v);
        }
    }
    mellin_barnes(a, b, c, z, ctl)
}

fn series(a: f64, b: f64, c: f64, z: Complex64, ctl: &SeriesControl) -> Option<Complex64> {
    let mut sum = KahanSum::default();
    let ln_z = z.ln();
    let lg_c = lgamma(c);
    let mut max_term: f64 = 0.0;
    let mut small_run = 0;
    for k in 0..ctl.max_terms {
        let kf = k as f64;
        // (c)_k / (k! Γ(ak+b)) in logs; (c)_k > 0 and Γ(ak+b) > 0 here.
        let (lg_den, s_den) = lgamma_sign(a * kf + b);
        let log_mag = lgamma(c + kf) - lg_c - lgamma(kf + 1.0) - lg_den;
        let term = (Complex64::new(log_mag, 0.0) + kf * ln_z).exp() * s_den;
        sum.add(term);
        max_term = max_term.max(term.norm());
        let s = sum.value().norm();
        if term.norm() <= 0.1 * ctl.rel_tol * s {
            small_run += 1;
            if small_run >= 3 {
                if max_term * 1e-16 > 0.1 * ctl.rel_tol * s {
                    return None;
                }
                return Some(sum.value());
            }
        } else {
            small_run = 0;
        }
    }
    None
}

fn asymptotic(a: f64, b: f64, c: f64, z: Complex64, ctl: &SeriesControl) -> Option<Complex64> {
    // Residues at the poles of Γ(c+s): (1/Γ(c)) Σ (-1)^j Γ(c+j)/(j! Γ(b - a(c+j))) (-z)^{-c-j}.
    let ln_mz = (-z).ln();
    let lg_c = lgamma(c);
    let mut sum = KahanSum::default();
    let mut prev = f64::INFINITY;
    for j in 0..ctl.max_terms {
        let jf = j as f64;
        let r = rgamma(b - a * (c + jf));
        if r == 0.0 {
            continue;
        }
        let log_mag = lgamma(c + jf) - lg_c - lgamma(jf + 1.0);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let term = (Complex64::new(log_mag, 0.0) - (c + jf) * ln_mz).exp() * (sign * r);
        let mag = term.norm();
        // |1/Γ(b - a(c+j))| ≤ Γ(a(c+j) - b + 1)/π; the envelope is monotone where the terms are not
        let env = log_mag - (c + jf) * ln_mz.re + lgamma((a * (c + jf) - b + 1.0).max(0.5));
        if env > prev && j > 2 {
            // divergent tail: optimal truncation reached
            return if mag <= ctl.rel_tol * sum.value().norm() { Some(sum.value()) } else { None };
        }
        sum.add(term);
        if mag <= 0.01 * ctl.rel_tol * sum.value().norm() {
            return Some(sum.value());
        }
        prev = env;
    }
    None
}

fn mellin_barnes(a: f64, b: f64, c: f64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    let ln_x = (-z).ln();
    let decay = PI * (1.0 - 0.5 * a) - ln_x.im.abs();
    let s0 = pick_abscissa(-c, Some(0.0));
    let lg_c = lgamma(c);
    let l = |s: Complex64| ln_gamma_c(-s) + ln_gamma_c(c + s) - ln_gamma_c(b + a * s) - lg_c + s * ln_x;
    line_integral(l, s0, decay, ctl, 0.0)
}

/// E_α(-x) for real x ≥ 0.
pub fn ml_negative_real(alpha: f64, x: f64, ctl: &SeriesControl) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(GtgsError::Domain(format!("Mittag-Leffler order {alpha} outside (0,1]")));
    }
    if x < 0.0 || x.is_nan() {
        return Err(GtgsError::Domain(format!("expected a nonnegative argument, got {x}")));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if alpha == 1.0 {
        return Ok((-x).exp());
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    let t = x.powf(1.0 / alpha);
    let z = Complex64::new(-x, 0.0);
    // the series loses about e^t/E_α(-x) of relative accuracy to cancellation
    if t <= 3.0 {
        if let Some(v) = series(alpha, 1.0, 1.0, z, ctl) {
            return Ok(v.re);
        }
    }
    if t >= 40.0 {
        if let Some(v) = asymptotic(alpha, 1.0, 1.0, z, ctl) {
            return Ok(v.re);
        }
    }
    ml_negative_real_laplace(alpha, x, ctl)
}

/// E_α(-x) from its completely monotone representation
/// E_α(-t^α) = ∫_0^∞ e^{-rt} s^E_α(r) dr, after r = u^{1/α}.
pub fn ml_negative_real_laplace(alpha: f64, x: f64, ctl: &SeriesControl) -> Result<f64> {
    let t = x.powf(1.0 / alpha);
    let (sa, ca) = (alpha * PI).sin_cos();
    let pref = sa / (alpha * PI);
    let f = |u: f64| {
        if u <= 0.0 {
            return pref;
        }
        (-t * u.powf(1.0 / alpha)).exp() * pref / (u * u + 2.0 * u * ca + 1.0)
    };
    let opts = QuadOpts { abs_tol: 1e-300, rel_tol: 0.1 * ctl.rel_tol, max_subdivisions: 4000 };
    // The integrand scale is set by t^{-α} and the denominator minimum at u = -cos απ.
    let knee = t.powf(-alpha);
    let mut pts = vec![0.0, 0.25 * knee, knee, 4.0 * knee];
    if ca < 0.0 {
        pts.push(-ca);
    }
    pts.push(1.0);
    pts.sort_by(|p, q| p.partial_cmp(q).unwrap());
    pts.dedup();
    let last = *pts.last().unwrap();
    let mut g = f;
    let head = integrate_points(&mut g, &pts, opts)?;
    let tail = integrate_to_inf(f, last, opts)?;
    Ok(head.value + tail.value)
}

/// 1 - E_α(-x), accurate for small x where the difference cancels.
pub fn one_minus_ml(alpha: f64, x: f64, ctl: &SeriesControl) -> Result<f64> {
    if x < 0.0 {
        return Err(GtgsError::Domain(format!("expected a nonnegative argument, got {x}")));
    }
    if alpha == 1.0 {
        return Ok(-(-x).exp_m1());
    }
    if x.powf(1.0 / alpha) > 2.0 {
        return Ok(1.0 - ml_negative_real(alpha, x, ctl)?);
    }
    let mut sum = 0.0;
    let mut pw = 1.0;
    for k in 1..ctl.max_terms {
        pw *= -x;
        let term = -pw * rgamma(alpha * k as f64 + 1.0);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    Ok(sum)
}
