use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{gamma, lgamma_sign, ln_gamma_c, rgamma};
use super::mellin::{line_integral, pick_abscissa};
use super::{KahanSum, SeriesControl};
use crate::error::{GtgsError, Result};

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// ln|Γ(x)/Γ(y)| and its sign; `None` when Γ(x) has a pole.
fn gamma_ratio(x: f64, y: f64) -> Option<(f64, f64)> {
    if is_nonpositive_integer(x) {
        return None;
    }
    if is_nonpositive_integer(y) {
        return Some((f64::NEG_INFINITY, 1.0));
    }
    let (lx, sx) = lgamma_sign(x);
    let (ly, sy) = lgamma_sign(y);
    Some((lx - ly, sx * sy))
}

fn check_args(tau: f64, z: Complex64) -> Result<()> {
    if !(tau > 0.0 && tau <= 1.0) {
        return Err(GtgsError::Domain(format!("tau = {tau} outside (0,1]")));
    }
    if z.im == 0.0 && z.re > 1.0 {
        return Err(GtgsError::BranchCut(format!("z = {} lies on (1, ∞)", z.re)));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(GtgsError::Domain("non-finite argument".into()));
    }
    Ok(())
}

/// ₂R₁(a, b, c, τ; z) = Γ(c)/Γ(b) Σ (a)_k Γ(b+τk)/Γ(c+τk) z^k/k!, continued to ℂ \ (1, ∞).
pub fn r2_1(a: f64, b: f64, c: f64, tau: f64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    check_args(tau, z)?;
    if is_nonpositive_integer(c) {
        return Err(GtgsError::Pole(format!("c = {c} is a nonpositive integer")));
    }
    if is_nonpositive_integer(b) {
        return Err(GtgsError::Pole(format!("b = {b} is a nonpositive integer")));
    }
    let pref = gamma(c) * rgamma(b);
    if a == 1.0 && c == 1.0 {
        return Ok(gamma_r2_1(b, tau, z, ctl)? * rgamma(b));
    }
    let s = if z.norm() <= 0.9 { series(a, b, c, tau, z, ctl)? } else { mellin_barnes(a, b, c, tau, z, ctl)? };
    Ok(s * pref)
}

/// Γ(b)·₂R₁(1, b, 1, τ; w) = Σ_k Γ(b+τk)/Γ(1+τk) w^k, continued to ℂ \ (1, ∞).
///
/// This is the combination appearing in the characteristic exponents; it stays
/// finite for negative non-integer b.
pub fn gamma_r2_1(b: f64, tau: f64, w: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    check_args(tau, w)?;
    if is_nonpositive_integer(b) {
        return Err(GtgsError::Pole(format!("Γ(b) has a pole at b = {b}")));
    }
    let r = w.norm();
    if r <= 0.9 {
        return series(1.0, b, 1.0, tau, w, ctl);
    }
    if r >= ctl.switch_radius {
        if let Some(v) = connection_series(b, tau, w, ctl) {
            return Ok(v);
        }
    }
    mellin_barnes(1.0, b, 1.0, tau, w, ctl)
}

/// Σ (a)_k/k! · Γ(b+τk)/Γ(c+τk) z^k for |z| < 1.
fn series(a: f64, b: f64, c: f64, tau: f64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    let mut sum = KahanSum::default();
    let mut poch = 1.0; // (a)_k / k!
    let mut zk = Complex64::new(1.0, 0.0);
    let mut small = 0;
    for k in 0..ctl.max_terms {
        let kf = k as f64;
        if k > 0 {
            poch *= (a + kf - 1.0) / kf;
            zk *= z;
        }
        if poch == 0.0 {
            return Ok(sum.value());
        }
        let (lr, sr) = gamma_ratio(b + tau * kf, c + tau * kf)
            .ok_or_else(|| GtgsError::Pole(format!("Γ(b + τk) has a pole at k = {k}")))?;
        let term = zk * (poch * sr * lr.exp());
        sum.add(term);
        if term.norm() <= 1e-17 * sum.value().norm() {
            small += 1;
            if small >= 3 {
                return Ok(sum.value());
            }
        } else {
            small = 0;
        }
    }
    Err(GtgsError::NonConvergence(format!("₂R₁ series did not converge in {} terms at |z| = {}", ctl.max_terms, z.norm())))
}

/// Line-integral form of Σ (a)_k/k! · Γ(b+τk)/Γ(c+τk) z^k.
fn mellin_barnes(a: f64, b: f64, c: f64, tau: f64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    let ln_x = (-z).ln();
    let decay = PI - ln_x.im.abs();
    let lo = (-a).max(-b / tau);
    let s0 = pick_abscissa(lo, None);
    let mut residues = KahanSum::default();
    if s0 > 0.0 {
        let mut poch = 1.0;
        let mut zk = Complex64::new(1.0, 0.0);
        for k in 0..=(s0.floor() as usize) {
            let kf = k as f64;
            if k > 0 {
                poch *= (a + kf - 1.0) / kf;
                zk *= z;
            }
            let (lr, sr) = gamma_ratio(b + tau * kf, c + tau * kf)
                .ok_or_else(|| GtgsError::Pole(format!("Γ(b + τk) has a pole at k = {k}")))?;
            residues.add(zk * (poch * sr * lr.exp()));
        }
    }
    let (lga, sga) = lgamma_sign(a);
    let l = move |s: Complex64| {
        ln_gamma_c(-s) + ln_gamma_c(a + s) - lga + ln_gamma_c(b + tau * s) - ln_gamma_c(c + tau * s) + s * ln_x
    };
    let scale = residues.value().norm();
    let line = line_integral(l, s0, decay, ctl, scale)? * sga;
    Ok(residues.value() + line)
}

/// ℓ(x, y, z) = z^{x/y} π / (sin(-πx/y) y Γ(1+x)) with complex z on the principal branch.
pub fn ell_complex(x: f64, y: f64, z: Complex64) -> Result<Complex64> {
    let s = (-PI * x / y).sin();
    let ratio = x / y;
    if (ratio - ratio.round()).abs() < 1e-14 {
        return Err(GtgsError::Pole(format!("sin(-π x/y) vanishes at x/y = {ratio}")));
    }
    let r = rgamma(1.0 + x);
    Ok(z.powf(ratio) * (PI * r / (s * y)))
}

/// Large-|w| expansion from the residues left of the Mellin–Barnes contour:
/// -Σ_{m≥1} Γ(b-τm)/Γ(1-τm) w^{-m} + Σ_{j≥0} (-1)^j/j! ℓ(-b-j, τ, -w).
fn connection_series(b: f64, tau: f64, w: Complex64, ctl: &SeriesControl) -> Option<Complex64> {
    let winv = 1.0 / w;
    let mut first = KahanSum::default();
    let mut wm = Complex64::new(1.0, 0.0);
    let mut small = 0;
    let mut converged = false;
    for m in 1..ctl.max_terms {
        let mf = m as f64;
        wm *= winv;
        let x = b - tau * mf;
        if (x - x.round()).abs() < 1e-5 && x < 0.5 {
            return None;
        }
        let (lg, sg) = lgamma_sign(x);
        let r = rgamma(1.0 - tau * mf);
        let term = wm * (-sg * lg.exp() * r);
        first.add(term);
        if term.norm() <= 0.05 * ctl.rel_tol * first.value().norm().max(1e-300) || term.norm() == 0.0 && m > 4 {
            small += 1;
            if small >= 3 {
                converged = true;
                break;
            }
        } else {
            small = 0;
        }
    }
    if !converged {
        return None;
    }
    let mw = -w;
    let mut second = KahanSum::default();
    let mut fact = 1.0;
    small = 0;
    for j in 0..ctl.max_terms {
        let jf = j as f64;
        if j > 0 {
            fact *= jf;
        }
        let x = -b - jf;
        let ratio = x / tau;
        if (ratio - ratio.round()).abs() < 1e-5 {
            return None;
        }
        let l = ell_complex(x, tau, mw).ok()?;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let term = l * (sign / fact);
        second.add(term);
        let total = first.value() + second.value();
        if term.norm() <= 0.05 * ctl.rel_tol * total.norm() {
            small += 1;
            if small >= 3 {
                return Some(total);
            }
        } else {
            small = 0;
        }
    }
    None
}
