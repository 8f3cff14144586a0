use num_complex::Complex64;

use super::{KahanSum, SeriesControl};
use crate::error::{GtgsError, Result};
use crate::quad::{integrate, integrate_to_inf, QuadOpts};

/// Lerch transcendent Φ(z, s, a) = Σ z^k / (a+k)^s, continued off [1, ∞).
///
/// Beyond the unit disc only s = 1 is supported, through the split integral
/// ∫_0^T e^{-at}/(1-ze^{-t}) dt + ∫_T^∞ e^{-(a+m)t} z^m/(1-ze^{-t}) dt + Σ_{j<m} z^j e^{-(a+j)T}/(a+j),
/// which continues e^{-at}/(1-ze^{-t}) to a ≤ 0 with m = ⌈-a⌉ subtracted geometric terms.
pub fn lerch_phi(z: Complex64, s: f64, a: f64, ctl: &SeriesControl) -> Result<Complex64> {
    if a <= 0.0 && a == a.floor() {
        return Err(GtgsError::Domain(format!("a = {a} is a nonpositive integer")));
    }
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(GtgsError::BranchCut(format!("z = {} lies on [1, ∞)", z.re)));
    }
    if z.norm() <= 0.9 {
        return series(z, s, a, ctl);
    }
    if s != 1.0 {
        return Err(GtgsError::Domain("continuation beyond |z| > 0.9 is implemented for s = 1 only".into()));
    }
    let m = if a > 0.0 { 0 } else { (-a).ceil() as i32 };
    let t_split = z.norm().ln().max(0.0) + 1.0;
    let opts = QuadOpts { abs_tol: 1e-300, rel_tol: 0.1 * ctl.rel_tol, max_subdivisions: 4000 };
    let one = Complex64::new(1.0, 0.0);
    let head = integrate(|t: f64| (-a * t).exp() / (one - z * (-t).exp()), 0.0, t_split, opts)?.value;
    let zm = z.powi(m);
    let tail = integrate_to_inf(|t: f64| zm * (-(a + m as f64) * t).exp() / (one - z * (-t).exp()), t_split, opts)?.value;
    let mut sum = KahanSum::default();
    sum.add(head);
    sum.add(tail);
    let mut zj = one;
    for j in 0..m {
        let aj = a + j as f64;
        sum.add(zj * ((-aj * t_split).exp() / aj));
        zj *= z;
    }
    Ok(sum.value())
}

fn series(z: Complex64, s: f64, a: f64, ctl: &SeriesControl) -> Result<Complex64> {
    let mut sum = KahanSum::default();
    let mut zk = Complex64::new(1.0, 0.0);
    let mut small = 0;
    for k in 0..ctl.max_terms {
        let base = Complex64::new(a + k as f64, 0.0);
        let term = zk / base.powf(s);
        sum.add(term);
        if term.norm() <= 0.05 * ctl.rel_tol * sum.value().norm() {
            small += 1;
            if small >= 3 {
                return Ok(sum.value());
            }
        } else {
            small = 0;
        }
        zk *= z;
        if zk.norm() == 0.0 {
            return Ok(sum.value());
        }
    }
    Err(GtgsError::NonConvergence("Lerch series did not converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_case() {
        let ctl = SeriesControl::default();
        let v = lerch_phi(Complex64::new(0.5, 0.0), 1.0, 1.0, &ctl).unwrap();
        assert!((v.re - 2.0 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn integral_matches_series_inside_disc() {
        // Pushing the series radius test through the integral branch on |z| slightly above 0.9.
        let ctl = SeriesControl::default();
        for &a in &[0.3, -0.5, -2.7] {
            let z = Complex64::from_polar(0.95, 2.5);
            let s = series(z, 1.0, a, &ctl).unwrap();
            let mut big = ctl;
            big.max_terms = 4096;
            let i = lerch_phi(z, 1.0, a, &big).unwrap();
            assert!((s - i).norm() < 1e-9 * s.norm(), "a={a}: {s} vs {i}");
        }
    }

    #[test]
    fn recurrence_holds_outside_disc() {
        let ctl = SeriesControl::default();
        let z = Complex64::new(-4.0, 1.5);
        let a = -0.6;
        let lhs = lerch_phi(z, 1.0, a, &ctl).unwrap();
        let rhs = z * lerch_phi(z, 1.0, a + 1.0, &ctl).unwrap() + 1.0 / a;
        assert!((lhs - rhs).norm() < 1e-9 * lhs.norm());
    }
}
