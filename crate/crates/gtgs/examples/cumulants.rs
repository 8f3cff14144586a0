//! Cumulants in closed form, by quadrature, and moment existence for heavy tails.

use gtgs::cumulants::{cumulant, cumulant_by_quadrature, cumulant_report, moment_finite, tgs_cumulant};
use gtgs::oracle::QuadratureConfig;
use gtgs::GtgsParams;

fn main() -> gtgs::Result<()> {
    let p = GtgsParams::symmetric(0.4, 0.6, 1.2, 1.5, 1.0, 0.0);
    for n in 1..=4 {
        let q = if n > 1 { format!("{:.12}", cumulant_by_quadrature(&p, n)?) } else { "-".into() };
        println!("κ{n} = {:.12}   quadrature {q}", cumulant(&p, n)?);
    }
    let tgs = GtgsParams::symmetric(0.0, 0.6, 1.2, 1.5, 1.0, 0.0);
    println!("TGS κ4 by recursion {:.12}, closed form {:.12}", tgs_cumulant(&tgs, 4)?, cumulant(&tgs, 4)?);

    let heavy = GtgsParams::symmetric(1.6, 0.5, 1.0, 0.0, 1.0, 0.0);
    let quad = QuadratureConfig::default();
    for n in [1, 2, 3] {
        let r = cumulant_report(&heavy, n, &quad)?;
        println!("θ = 0, order {n}: finite = {}, value = {:?} ({})", r.finite, r.value, r.criterion);
    }
    for p_ord in [1.6, 2.05, 2.1, 2.2] {
        let r = moment_finite(&heavy, p_ord)?;
        println!("E|X|^{p_ord}: finite = {} ({})", r.finite, r.criterion);
    }
    Ok(())
}
