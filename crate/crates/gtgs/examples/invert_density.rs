//! Density by FFT and distribution function by Gil-Pelaez inversion.

use gtgs::charexp::CharExponent;
use gtgs::oracle::{fft_pdf_at, gil_pelaez_cdf, QuadratureConfig};
use gtgs::GtgsParams;

fn main() -> gtgs::Result<()> {
    let p = GtgsParams::symmetric(0.0, 1.0, 1.0, 1.0, 1.0, 0.0);
    let ce = CharExponent::new(&p)?;
    let xs = [-2.0, -0.5, 0.0, 0.5, 2.0];
    let pdf = fft_pdf_at(|z| ce.eval(z), &xs, 1.0, 1 << 14)?;
    let quad = QuadratureConfig::default();
    // α = 1, γ = 0, δ = 1 on both sides is Laplace with rate θ + λ = 2
    for (x, f) in xs.iter().zip(pdf) {
        let cdf = gil_pelaez_cdf(|z| ce.eval(z), *x, 1.0, &quad)?;
        let exact = if *x < 0.0 { 0.5 * (2.0 * x).exp() } else { 1.0 - 0.5 * (-2.0 * x).exp() };
        println!("x = {x:>4}: pdf {f:.5} (exact {:.5})  cdf {:.8} (exact {exact:.8})", (-2.0 * x.abs()).exp(), cdf.value);
    }
    Ok(())
}
