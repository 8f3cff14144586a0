//! Densities and tempering functions of the stable, CTS, GTGS and GTGS⁰ laws on a log grid.

use gtgs::model::figure1_row;

fn main() -> gtgs::Result<()> {
    println!("x,levy_s,levy_cts,levy_gtgs,levy_gtgs0,q_s,q_cts,q_gtgs,q_gtgs0");
    for k in 0..=20 {
        let x = 10f64.powf(-3.0 + 0.2 * k as f64);
        let r = figure1_row(x)?;
        println!(
            "{x:.4e},{:.6e},{:.6e},{:.6e},{:.6e},{:.6e},{:.6e},{:.6e},{:.6e}",
            r.levy_s, r.levy_cts, r.levy_gtgs, r.levy_gtgs0, r.q_s, r.q_cts, r.q_gtgs, r.q_gtgs0
        );
    }
    Ok(())
}
