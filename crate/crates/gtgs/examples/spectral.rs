//! Spectral and Rosiński densities, their masses, and the Bernstein reconstruction of q.

use gtgs::model::tempering_function;
use gtgs::oracle::QuadratureConfig;
use gtgs::spectral::{bernstein_reconstruct, rosinski_density, rosinski_mass, spectral_density, spectral_mass, spectral_support};
use gtgs::{GtgsParams, Side};

fn main() -> gtgs::Result<()> {
    let p = GtgsParams::figure1();
    let quad = QuadratureConfig::default();
    let sup = spectral_support(&p, Side::Positive)?;
    println!("spectral support on the positive side: |x| in ({}, {})", sup.lower, sup.upper);
    for x in [1.5, 3.0, 10.0] {
        println!("  s({x}) = {:.6e}", spectral_density(&p, x)?);
    }
    for x in [0.01, 0.5, 0.99] {
        println!("  r({x}) = {:.6e}", rosinski_density(&p, x)?);
    }
    println!("spectral mass {:.12} (δ = {})", spectral_mass(&p, Side::Positive, &quad)?, p.delta_plus);
    println!("Rosiński mass on (0.2, 0.5): {:.10}", rosinski_mass(&p, Side::Positive, 0.2, 0.5, &quad)?);
    for x in [0.3, 2.0, 6.0] {
        println!("  q({x}) = {:.10}   Bernstein {:.10}", tempering_function(&p, x)?, bernstein_reconstruct(&p, x, &quad)?);
    }
    Ok(())
}
