//! Independent numerical ground truth: Lévy–Khintchine quadrature of ψ,
//! Lévy-moment quadrature, and Fourier inversion of e^{tψ}.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{GtgsError, Result};
use crate::model::{GtgsParams, Side, SideParams};
use crate::quad::{integrate, integrate_points, QuadOpts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailPolicy {
    /// Pick from the parameters: exponential bound when θ > 0, power bound otherwise.
    Auto,
    ExponentialTailBound,
    PowerTailBound,
}

/// Tolerances and cutoffs for every oracle integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Below |z x| < inner_cutoff the compensated exponential e^{izx}-1-izx is taken from its Taylor series.
    pub inner_cutoff: f64,
    pub outer_cutoff_policy: TailPolicy,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-13,
            rel_tol: 1e-11,
            max_subdivisions: 2000,
            inner_cutoff: 0.05,
            outer_cutoff_policy: TailPolicy::Auto,
        }
    }
}

impl QuadratureConfig {
    pub fn opts(&self) -> QuadOpts {
        QuadOpts { abs_tol: self.abs_tol, rel_tol: self.rel_tol, max_subdivisions: self.max_subdivisions }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(GtgsError::InvalidParams("quadrature tolerances must be positive".into()));
        }
        if !(self.inner_cutoff > 0.0 && self.inner_cutoff < 1.0) {
            return Err(GtgsError::InvalidParams("inner_cutoff must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

/// (e^{iy} - 1 - iy)/y², with a Taylor series for |y| < cutoff.
fn compensated_exp(y: f64, cutoff: f64) -> Complex64 {
    if y.abs() < cutoff {
        let i = Complex64::new(0.0, 1.0);
        let mut term = Complex64::new(-0.5, 0.0);
        let mut sum = term;
        for k in 3..24 {
            term *= i * y / k as f64;
            sum += term;
            if term.norm() < 1e-18 {
                break;
            }
        }
        return sum;
    }
    let e = Complex64::new(y.cos() - 1.0, y.sin() - y);
    e / (y * y)
}

/// Wynn's ε-algorithm applied to the partial sums collected so far.
fn wynn_epsilon(s: &[Complex64]) -> Complex64 {
    let n = s.len();
    if n < 3 {
        return *s.last().unwrap();
    }
    let mut prev = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut cur: Vec<Complex64> = s.to_vec();
    let mut best = *s.last().unwrap();
    let mut k = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for j in 0..cur.len() - 1 {
            let d = cur[j + 1] - cur[j];
            let v = if d.norm() == 0.0 { Complex64::new(f64::INFINITY, 0.0) } else { prev[j + 1] + 1.0 / d };
            next.push(v);
        }
        prev = cur;
        cur = next;
        k += 1;
        if k % 2 == 0 {
            if let Some(v) = cur.last() {
                if v.re.is_finite() && v.im.is_finite() {
                    best = *v;
                }
            }
        }
    }
    best
}

/// ∫_a^∞ e^{iwr} f(r) dr for a smooth decaying f, summed over half periods with ε-acceleration.
pub(crate) fn oscillatory_tail<F: Fn(f64) -> f64>(f: F, w: f64, a: f64, opts: QuadOpts) -> Result<Complex64> {
    let h = PI / w.abs();
    let mut partial = Vec::new();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut last_est = Complex64::new(f64::NAN, 0.0);
    let mut stable = 0;
    let mut lo = a;
    for k in 0..400 {
        let hi = lo + h;
        let piece = integrate(|r: f64| Complex64::from_polar(f(r), w * r), lo, hi, opts)?.value;
        sum += piece;
        partial.push(sum);
        if piece.norm() <= 1e-17 * sum.norm() || piece.norm() < 1e-300 {
            return Ok(sum);
        }
        if k >= 6 {
            let est = wynn_epsilon(&partial[partial.len().saturating_sub(24)..]);
            if (est - last_est).norm() <= 1e-2 * opts.rel_tol * est.norm().max(opts.abs_tol) {
                stable += 1;
                if stable >= 2 {
                    return Ok(est);
                }
            } else {
                stable = 0;
            }
            last_est = est;
        }
        lo = hi;
    }
    if last_est.re.is_finite() {
        return Ok(last_est);
    }
    Err(GtgsError::QuadratureFailure("oscillatory tail did not converge".into()))
}

/// ∫_0^∞ (e^{iwr} - 1 - iwr 1{r<1}) m(r) dr for one side.
fn lk_side(s: &SideParams, w: f64, quad: &QuadratureConfig) -> Result<Complex64> {
    if s.delta == 0.0 || w == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let opts = quad.opts();
    let k = 2.0 - s.gamma;
    // r = u^{1/k}: r^{1-γ} dr = du / k
    let mut pts = vec![0.0, 1.0];
    let n_osc = (w.abs() / (2.0 * PI)).ceil() as usize;
    if n_osc > 1 {
        pts = (0..=n_osc).map(|j| (j as f64 / n_osc as f64).powf(k)).collect();
    }
    let mut f = |u: f64| {
        let r = u.powf(1.0 / k);
        compensated_exp(w * r, quad.inner_cutoff) * (w * w * s.q(r))
    };
    let head = integrate_points(&mut f, &pts, opts)?.value * (s.delta / k);
    let osc = oscillatory_tail(|r| s.levy(r), w, 1.0, opts)?;
    let mass = s.moment_integral(0.0, 1.0, f64::INFINITY, quad)?;
    Ok(head + osc - mass)
}

/// ψ(z) = izμ + ∫ (e^{izx} - 1 - izx 1{|x|<1}) m(x) dx by direct quadrature.
///
/// The closed forms in [`crate::charexp`] carry their own centering terms so that
/// they equal this standard-truncation exponent with the user's μ.
pub fn lk_quadrature(params: &GtgsParams, z: f64, quad: &QuadratureConfig) -> Result<Complex64> {
    if z == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut psi = Complex64::new(0.0, z * params.mu);
    for side in Side::BOTH {
        psi += lk_side(&params.side(side), side.sign() * z, quad)?;
    }
    Ok(psi)
}

/// ∫ x^n m(x) dx for n ≥ 2; equals the n-th cumulant.
pub fn cumulant_quadrature(params: &GtgsParams, n: u32, quad: &QuadratureConfig) -> Result<f64> {
    if n < 2 {
        return Err(GtgsError::Domain("cumulant_quadrature needs n ≥ 2".into()));
    }
    let mut total = 0.0;
    for side in Side::BOTH {
        let s = params.side(side);
        total += side.sign().powi(n as i32) * s.moment_integral(n as f64, 0.0, f64::INFINITY, quad)?;
    }
    Ok(total)
}

/// A CDF value with a flag raised when e^{tψ} decays too slowly for a reliable inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdfValue {
    pub value: f64,
    pub slow_decay: bool,
}

/// First z at which |e^{tψ(z)}| drops below `floor`, probing by doubling.
fn decay_cutoff<P: Fn(f64) -> Result<Complex64>>(psi: &P, t: f64, floor: f64) -> Result<(f64, bool)> {
    let mut z: f64 = 0.5;
    while z < 1e5 {
        if (t * psi(z)?.re).exp() < floor {
            return Ok((z, false));
        }
        z *= 2.0;
    }
    Ok((z, true))
}

/// F_t(x) = 1/2 - (1/π) ∫_0^∞ Im(e^{-izx} e^{tψ(z)}) / z dz.
pub fn gil_pelaez_cdf<P: Fn(f64) -> Result<Complex64>>(psi: P, x: f64, t: f64, quad: &QuadratureConfig) -> Result<CdfValue> {
    if !(t > 0.0) {
        return Err(GtgsError::Domain("t must be positive".into()));
    }
    let (zmax, slow) = decay_cutoff(&psi, t, 1e-14)?;
    let mut err = None;
    let mut f = |z: f64| {
        match psi(z) {
            Ok(p) => {
                let v = (Complex64::new(0.0, -z * x) + t * p).exp();
                v.im / z
            }
            Err(e) => {
                err = Some(e);
                0.0
            }
        }
    };
    // break points every couple of oscillations of e^{-izx} and on a geometric ladder toward 0
    let mut pts = vec![0.0];
    let mut p = zmax / 1024.0;
    while p < zmax {
        pts.push(p);
        p *= 2.0;
    }
    let period = if x != 0.0 { 2.0 * PI / x.abs() } else { f64::INFINITY };
    let mut refined = vec![0.0];
    for w in pts.windows(2).chain(std::iter::once(&[*pts.last().unwrap(), zmax][..])) {
        let (a, b) = (w[0], w[1]);
        let n = ((b - a) / period).ceil().clamp(1.0, 4000.0) as usize;
        for j in 1..=n {
            refined.push(a + (b - a) * j as f64 / n as f64);
        }
    }
    let opts = QuadOpts { abs_tol: quad.abs_tol, rel_tol: quad.rel_tol, max_subdivisions: quad.max_subdivisions.max(refined.len() * 4) };
    let r = integrate_points(&mut f, &refined, opts)?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(CdfValue { value: 0.5 - r.value / PI, slow_decay: slow })
}

/// Uniform x grid for [`fft_pdf`]; `n` must be a power of two.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FftGrid {
    pub n: usize,
    pub x_min: f64,
    pub x_max: f64,
}

impl FftGrid {
    /// A grid spanning the mean ± `width` standard deviations.
    pub fn around(mean: f64, sd: f64, width: f64, n: usize) -> Self {
        FftGrid { n, x_min: mean - width * sd, x_max: mean + width * sd }
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n as f64
    }
}

/// Density of X_t on a uniform grid from the characteristic function by FFT.
pub fn fft_pdf<P: Fn(f64) -> Result<Complex64>>(psi: P, grid: FftGrid, t: f64) -> Result<Vec<(f64, f64)>> {
    let n = grid.n;
    if n < 16 || !n.is_power_of_two() {
        return Err(GtgsError::Domain(format!("grid length {n} must be a power of two ≥ 16")));
    }
    if !(grid.x_max > grid.x_min) || !(t > 0.0) {
        return Err(GtgsError::Domain("empty grid or nonpositive t".into()));
    }
    let dx = grid.dx();
    let dz = 2.0 * PI / (n as f64 * dx);
    let half = (n / 2) as f64;
    let mut buf = Vec::with_capacity(n);
    for k in 0..n {
        let z = (k as f64 - half) * dz;
        let phi = if z == 0.0 { Complex64::new(1.0, 0.0) } else { (t * psi(z)?).exp() };
        let w = if k == 0 { 0.5 } else { 1.0 };
        buf.push(phi * Complex64::from_polar(w, -z * grid.x_min));
    }
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut buf);
    let mut out = Vec::with_capacity(n);
    for (j, v) in buf.iter().enumerate() {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let mut d = sign * v.re * dz / (2.0 * PI);
        if d < 0.0 && d > -1e-6 {
            d = 0.0;
        }
        out.push((grid.x_min + j as f64 * dx, d));
    }
    let total: f64 = out.iter().map(|p| p.1).sum::<f64>() * dx;
    let edge = n / 100 + 1;
    let boundary: f64 = out[..edge].iter().chain(out[n - edge..].iter()).map(|p| p.1.abs()).sum::<f64>() * dx;
    if boundary > 1e-4 * total.abs().max(1e-300) {
        return Err(GtgsError::GridTooNarrow(format!("boundary mass {boundary:.3e} exceeds 1e-4")));
    }
    Ok(out)
}

/// Density of X_t at arbitrary points: FFT on a wide uniform grid, then linear interpolation.
pub fn fft_pdf_at<P: Fn(f64) -> Result<Complex64>>(psi: P, xs: &[f64], t: f64, n: usize) -> Result<Vec<f64>> {
    if xs.is_empty() {
        return Ok(Vec::new());
    }
    let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let half = 8.0 * (hi - lo).max(1.0);
    let mid = 0.5 * (lo + hi);
    let grid = FftGrid { n, x_min: mid - half, x_max: mid + half };
    let table = fft_pdf(psi, grid, t)?;
    let dx = grid.dx();
    Ok(xs
        .iter()
        .map(|&x| {
            let u = (x - grid.x_min) / dx;
            let k = (u.floor() as usize).min(n - 2);
            let f = u - k as f64;
            (1.0 - f) * table[k].1 + f * table[k + 1].1
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_branches_meet() {
        for &y in &[0.049, 0.051, -0.05, 0.2] {
            let a = compensated_exp(y, 0.05);
            let b = compensated_exp(y, 1.0);
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn oscillatory_tail_power() {
        // exponential case in closed form, power case against an independent oscillatory quadrature
        let w = 2.0;
        let v = oscillatory_tail(|r| (-0.5 * r).exp(), w, 1.0, QuadOpts::default()).unwrap();
        let s = Complex64::new(0.5, -w);
        let exact = (-s).exp() / s;
        assert!((v - exact).norm() < 1e-12, "{v} vs {exact}");
        let v = oscillatory_tail(|r| r.powf(-1.5), 1.0, 1.0, QuadOpts::default()).unwrap();
        // reference from mpmath quadosc
        let exact = Complex64::new(-0.18495045600119666, 0.5714732926457052);
        assert!((v - exact).norm() < 1e-9, "{v} vs {exact}");
    }

    #[test]
    fn laplace_density_by_fft() {
        // α = 1, γ = 0 symmetric with δt = 1 is a Laplace law with rate θ + λ
        let psi = |z: f64| Ok(Complex64::new((4.0 / (4.0 + z * z)).ln(), 0.0));
        let grid = FftGrid { n: 1 << 14, x_min: -20.0, x_max: 20.0 };
        let pdf = fft_pdf(psi, grid, 1.0).unwrap();
        for &(x, d) in pdf.iter().step_by(997) {
            let e = (-2.0 * x.abs()).exp();
            assert!((d - e).abs() < 2e-3, "x={x}: {d} vs {e}");
        }
    }
}
