//! Gamma-function helpers on the real line and in the complex plane.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Γ(x) for real x; ±∞ at the poles.
pub fn gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return f64::INFINITY;
    }
    libm::tgamma(x)
}

/// 1/Γ(x), equal to zero exactly at the nonpositive integers.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if x > 171.0 {
        return (-lgamma(x)).exp();
    }
    if x < -170.0 {
        let (l, s) = lgamma_sign(x);
        return s * (-l).exp();
    }
    1.0 / libm::tgamma(x)
}

/// ln|Γ(x)|.
pub fn lgamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

/// (ln|Γ(x)|, sign Γ(x)).
pub fn lgamma_sign(x: f64) -> (f64, f64) {
    let (l, s) = libm::lgamma_r(x);
    (l, if s < 0 { -1.0 } else { 1.0 })
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// A branch of ln Γ(z); only exp of the result is meaningful across branches.
pub fn ln_gamma_c(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let one = Complex64::new(1.0, 0.0);
        return Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma_c(one - z);
    }
    let z = z - 1.0;
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + a.ln()
}

/// Γ(z) for complex z.
pub fn gamma_c(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return Complex64::new(gamma(z.re), 0.0);
    }
    ln_gamma_c(z).exp()
}

/// A branch of ln sin(πz), stable for large |Im z|.
pub fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    if z.im.abs() < 1.0 {
        return (z * PI).sin().ln();
    }
    if z.im > 0.0 {
        // sin(πz) = e^{-iπz} (e^{2iπz} - 1) / (2i)
        let e = (2.0 * i * PI * z).exp();
        -i * PI * z + ((e - 1.0) / (2.0 * i)).ln()
    } else {
        let e = (-2.0 * i * PI * z).exp();
        i * PI * z + ((1.0 - e) / (2.0 * i)).ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_matches_real() {
        for &x in &[0.3, 1.0, 2.5, 7.2, -0.4, -1.6, -3.3, 20.0] {
            let g = gamma_c(Complex64::new(x, 1e-300)).re;
            let r = gamma(x);
            assert!(((g - r) / r).abs() < 1e-13, "x={x}: {g} vs {r}");
        }
    }

    #[test]
    fn complex_known_value() {
        // Γ(i) from the reflection formula |Γ(i)|^2 = π / sinh π
        let g = gamma_c(Complex64::new(0.0, 1.0));
        assert!((g.norm_sqr() - PI / PI.sinh()).abs() < 1e-14);
        // Γ(1+i) = i Γ(i)
        let g1 = gamma_c(Complex64::new(1.0, 1.0));
        assert!((g1 - Complex64::new(0.0, 1.0) * g).norm() < 1e-14);
    }

    #[test]
    fn reciprocal_poles() {
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-3.0), 0.0);
        assert!((rgamma(0.5) - 1.0 / PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn large_imaginary_sine() {
        let z = Complex64::new(0.3, 60.0);
        let direct = (z * PI).sin().ln();
        let d = (ln_sin_pi(z) - direct).exp();
        assert!((d - 1.0).norm() < 1e-12);
    }
}
