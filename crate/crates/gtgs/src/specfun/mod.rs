//! Special functions behind the closed-form exponents: the Prabhakar
//! Mittag-Leffler function, the Wright-type ₂R₁ function and the Lerch
//! transcendent.
//!
//! Each function is evaluated by its defining series near the origin, by a
//! large-argument expansion far away, and by quadrature of a Mellin–Barnes
//! line integral in between.

pub mod gamma;
mod lerch;
mod mellin;
mod mittag_leffler;
mod r2_1;

pub use lerch::lerch_phi;
pub use mittag_leffler::{ml_negative_real, ml_negative_real_laplace, one_minus_ml, mittag_leffler};
pub use r2_1::{ell_complex, gamma_r2_1, r2_1};

use num_complex::Complex64;

use crate::error::{GtgsError, Result};

/// Accuracy and branch-selection knobs shared by the special functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
    /// |z| beyond which large-argument expansions take over.
    pub switch_radius: f64,
    /// Initial panel count for the Mellin–Barnes quadrature.
    pub annulus_quadrature_nodes: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl { rel_tol: 1e-10, max_terms: 2048, switch_radius: 8.0, annulus_quadrature_nodes: 16 }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-3) {
            return Err(GtgsError::InvalidParams(format!("rel_tol {} outside (0, 1e-3]", self.rel_tol)));
        }
        if self.max_terms < 64 {
            return Err(GtgsError::InvalidParams("max_terms must be at least 64".into()));
        }
        if self.switch_radius <= 1.0 {
            return Err(GtgsError::InvalidParams("switch_radius must exceed 1".into()));
        }
        Ok(())
    }
}

/// Kahan–Babuška compensated accumulator for complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: Complex64,
    comp: Complex64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, x: Complex64) {
        self.sum.re = neumaier(self.sum.re, x.re, &mut self.comp.re);
        self.sum.im = neumaier(self.sum.im, x.im, &mut self.comp.im);
    }

    pub(crate) fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn neumaier(sum: f64, x: f64, comp: &mut f64) -> f64 {
    let t = sum + x;
    if sum.abs() >= x.abs() {
        *comp += (sum - t) + x;
    } else {
        *comp += (x - t) + sum;
    }
    t
}
