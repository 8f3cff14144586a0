//! Quadrature of Mellin–Barnes integrals along a vertical line.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::SeriesControl;
use crate::error::{GtgsError, Result};
use crate::quad::{integrate_points, QuadOpts};

/// (1/2π) ∫ exp(L(c + it)) dt over the real line, for an integrand decaying
/// at least like e^{-decay·|t|}.
pub(crate) fn line_integral<L>(log_integrand: L, c: f64, decay: f64, ctl: &SeriesControl, scale: f64) -> Result<Complex64>
where
    L: Fn(Complex64) -> Complex64,
{
    if !(decay > 1e-3) {
        return Err(GtgsError::NonConvergence(format!("Mellin–Barnes integrand decays too slowly (rate {decay:.3e})")));
    }
    let h = |t: f64| -> Complex64 {
        let v = log_integrand(Complex64::new(c, t));
        if v.re < -745.0 {
            Complex64::new(0.0, 0.0)
        } else {
            v.exp()
        }
    };
    let h0 = h(0.0).norm().max(scale);
    let mut t_max = 45.0 / decay;
    for _ in 0..6 {
        let tail = h(t_max).norm().max(h(-t_max).norm());
        if tail <= 1e-18 * h0 {
            break;
        }
        t_max *= 1.6;
    }
    let n = ctl.annulus_quadrature_nodes.max(2);
    let pts: Vec<f64> = (0..=n).map(|i| t_max * i as f64 / n as f64).collect();
    let opts = QuadOpts { abs_tol: 1e-3 * ctl.rel_tol * h0, rel_tol: 1e-2 * ctl.rel_tol, max_subdivisions: 2000 };
    let mut f = |t: f64| h(t) + h(-t);
    let r = integrate_points(&mut f, &pts, opts)?;
    Ok(r.value / (2.0 * PI))
}

/// An abscissa right of `lo` (and left of `hi` when given) kept as far as
/// possible from `lo`, `hi` and every integer.
pub(crate) fn pick_abscissa(lo: f64, hi: Option<f64>) -> f64 {
    let span = hi.map(|h| h - lo).unwrap_or(1.0).min(1.0);
    let mut best = (f64::NEG_INFINITY, lo + 0.5 * span);
    for i in 1..100 {
        let c = lo + span * i as f64 / 100.0;
        let mut score = (c - c.round()).abs().min(c - lo);
        if let Some(h) = hi {
            score = score.min(h - c);
        }
        if score > best.0 {
            best = (score, c);
        }
    }
    best.1
}
