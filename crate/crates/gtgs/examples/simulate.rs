//! Sample path and i.i.d. increments, checked against the characteristic function.

use gtgs::charexp::char_function;
use gtgs::montecarlo::{empirical_cf, sample_path, SimConfig, Simulator};
use gtgs::GtgsParams;

fn main() -> gtgs::Result<()> {
    let p = GtgsParams::symmetric(0.6, 0.5, 1.0, 1.0, 1.0, 0.0);
    let sim = Simulator::new(&p, SimConfig::default())?;
    println!("jump rate above ε: {:.4}, small-jump drift {:.4}", sim.jump_rate(), sim.small_jump_drift());

    let times: Vec<f64> = (1..=10).map(|k| 0.1 * k as f64).collect();
    let path = sample_path(&p, &times, SimConfig::default(), 42)?;
    print!("{}", path.to_csv());

    let xs = sim.sample(1.0, 50_000, 7)?;
    let zs = [0.5, 1.0, 2.0];
    for (z, e) in zs.iter().zip(empirical_cf(&xs, &zs)) {
        println!("z = {z}: empirical {e:.4}  exact {:.4}", char_function(&p, *z, 1.0)?);
    }
    Ok(())
}
