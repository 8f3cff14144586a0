//! Closed-form characteristic exponent against direct Lévy–Khintchine quadrature.

use gtgs::charexp::CharExponent;
use gtgs::oracle::{lk_quadrature, QuadratureConfig};
use gtgs::{GtgsParams, Side};

fn main() -> gtgs::Result<()> {
    let cases = [
        ("GTGS, θ > 0", GtgsParams::symmetric(1.4, 0.6, 1.0, 1.0, 1.0, 0.1)),
        ("TGS", GtgsParams::symmetric(0.0, 0.7, 2.0, 0.5, 1.0, 0.0)),
        ("GTGS⁰, α+γ < 1", GtgsParams::symmetric(0.3, 0.5, 1.0, 0.0, 1.0, 0.0)),
        ("CTS", GtgsParams::symmetric(0.8, 1.0, 1.0, 0.5, 1.0, 0.0)),
    ];
    let quad = QuadratureConfig::default();
    for (name, p) in cases {
        let ce = CharExponent::new(&p)?;
        println!("{name}: regime {:?}", ce.regime(Side::Positive));
        for z in [-5.0, 0.5, 3.0] {
            let a = ce.eval(z)?;
            let b = lk_quadrature(&p, z, &quad)?;
            println!("  z = {z:>4}: ψ = {a:.10}   |ψ - oracle| = {:.1e}   |φ_1| = {:.6}", (a - b).norm(), ce.char_function(z, 1.0)?.norm());
        }
    }
    Ok(())
}
