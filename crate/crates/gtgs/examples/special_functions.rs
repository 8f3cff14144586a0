//! Prabhakar Mittag-Leffler, ₂R₁ and Lerch Φ at a few arguments.

use gtgs::specfun::{gamma_r2_1, lerch_phi, mittag_leffler, ml_negative_real, r2_1, SeriesControl};
use num_complex::Complex64;

fn main() -> gtgs::Result<()> {
    let ctl = SeriesControl::default();
    println!("E_α(-x) on the negative axis");
    for alpha in [0.3, 0.5, 0.9] {
        let row: Vec<String> = [0.1, 1.0, 10.0, 1e3]
            .iter()
            .map(|&x| ml_negative_real(alpha, x, &ctl).map(|v| format!("{v:.6e}")))
            .collect::<gtgs::Result<_>>()?;
        println!("  α = {alpha}: {}", row.join("  "));
    }

    let z = Complex64::new(-2.0, 1.5);
    println!("E^{{1.5}}_{{0.6,1.2}}({z}) = {:.10}", mittag_leffler(0.6, 1.2, 1.5, z, &ctl)?);

    // ₂R₁(a, b, b, 1; z) = (1 - z)^{-a}
    let w = Complex64::new(-5.0, 0.0);
    println!("₂R₁(0.7, 1.3, 1.3, 1; -5) = {:.12}  vs (1+5)^-0.7 = {:.12}", r2_1(0.7, 1.3, 1.3, 1.0, w, &ctl)?.re, 6f64.powf(-0.7));
    println!("Γ(b)₂R₁(1, b, 1, τ; -40) = {:.10}", gamma_r2_1(0.8, 0.5, Complex64::new(-40.0, 0.0), &ctl)?);

    println!("Φ(-0.8, 1, -0.5) = {:.15}", lerch_phi(Complex64::new(-0.8, 0.0), 1.0, -0.5, &ctl)?.re);
    Ok(())
}
