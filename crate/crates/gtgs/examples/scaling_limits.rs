//! Short- and long-time limits and the exact scaling transform.

use gtgs::charexp::char_exponent;
use gtgs::limits::{long_time_limit, scaling_convergence_check, scaling_transform, short_time_limit};
use gtgs::GtgsParams;

fn main() -> gtgs::Result<()> {
    let z: Vec<f64> = (0..9).map(|k| -2.0 + 0.5 * k as f64).collect();

    let p = GtgsParams::symmetric(1.2, 0.9, 1.0, 1.0, 1.0, 0.0);
    let law = short_time_limit(&p)?;
    println!("short time: index {} ({})", law.index, law.drift_note);
    for (h, d) in scaling_convergence_check(&p, &law, &[1e-2, 1e-4, 1e-6], &z)? {
        println!("  h = {h:e}: max deviation {d:.3e}");
    }

    let heavy = GtgsParams::symmetric(0.3, 0.5, 2.0, 0.0, 1.5, 0.0);
    let law = long_time_limit(&heavy)?;
    println!("long time, θ = 0: index {}, δ* = {:?}", law.index, law.deltas);
    for (h, d) in scaling_convergence_check(&heavy, &law, &[1e2, 1e4, 1e6], &z)? {
        println!("  h = {h:e}: max deviation {d:.3e}");
    }

    let law = long_time_limit(&p)?;
    println!("long time, θ > 0: Gaussian with variance {:.10}", law.variance.unwrap_or(f64::NAN));

    let q = scaling_transform(&p, 3.0)?;
    println!("ψ_3X(0.7) = {:.12}, ψ_X(2.1) = {:.12}", char_exponent(&q, 0.7)?, char_exponent(&p, 2.1)?);
    Ok(())
}
