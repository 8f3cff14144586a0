//! Absolute continuity against the stable part and between two laws.

use gtgs::limits::{hellinger_profile, mutual_equivalence, mutual_hellinger_integrand, stable_equivalence};
use gtgs::oracle::QuadratureConfig;
use gtgs::{GtgsParams, Side};

fn main() -> gtgs::Result<()> {
    let quad = QuadratureConfig::default();
    for (g, a) in [(0.8, 0.6), (1.6, 0.6)] {
        let p = GtgsParams::symmetric(g, a, 1.0, 1.0, 1.0, 0.0);
        let v = stable_equivalence(&p)?;
        println!("γ = {g}, α = {a}: equivalent to the stable law: {} ({})", v.equivalent, v.reason);
        if let Some(mu) = v.required_drift {
            println!("  required drift {mu:.10}");
        }
    }

    let p1 = GtgsParams::symmetric(1.2, 0.4, 1.0, 1.0, 1.0, 0.0);
    let p2 = GtgsParams::symmetric(1.2, 0.9, 2.0, 0.5, 1.0, 0.0);
    let v = mutual_equivalence(&p1, &p2)?;
    println!("mutual: {} ({})", v.equivalent, v.reason);
    let (a, b) = (p1.side(Side::Positive), p2.side(Side::Positive));
    let prof = hellinger_profile(|x| mutual_hellinger_integrand(&a, &b, x), 1e-6, 10, &quad)?;
    println!("Hellinger profile growth over 10 decades: {:.3e}", prof.growth());
    Ok(())
}
