//! Tempering function q, Lévy density m and canonical density k = |x| m.

use gtgs::model::{canonical_density, levy_density, tempering_function};
use gtgs::{GtgsParams, Side, SideParams};

fn main() -> gtgs::Result<()> {
    let mut p = GtgsParams::symmetric(0.7, 0.6, 1.0, 0.5, 1.0, 0.0);
    p.set_side(Side::Negative, SideParams { gamma: 1.3, alpha: 0.9, lambda: 2.0, theta: 0.0, delta: 0.4 });
    println!("{:>10} {:>14} {:>14} {:>14}", "x", "q", "m", "k");
    for x in [-10.0, -1.0, -0.1, -0.01, 0.01, 0.1, 1.0, 10.0] {
        println!(
            "{x:>10} {:>14.6e} {:>14.6e} {:>14.6e}",
            tempering_function(&p, x)?,
            levy_density(&p, x)?,
            canonical_density(&p, x)?
        );
    }
    Ok(())
}
