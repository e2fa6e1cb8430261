//! Circle means, Hardy norms and the two log-type functionals.
//!
//! `cargo run --release --example integral_means`

use std::f64::consts::PI;

use hqz::functionals::{circle_mean_p, entropy_u, hardy_norm_estimate, zygmund_plus};
use hqz::{ComplexSeries, PlanarHarmonicMap, QuadratureSpec};

fn main() -> hqz::Result<()> {
    let q = QuadratureSpec::default();
    let one_plus_z = PlanarHarmonicMap::analytic(ComplexSeries::from_real(&[1.0, 1.0]));

    println!("M_p(r, 1 + z):");
    println!("{:>6} {:>6} {:>18} {:>8}", "r", "p", "value", "nodes");
    for r in [0.5, 0.9, 1.0] {
        for p in [1.0, 2.0, 4.0] {
            let m = circle_mean_p(&one_plus_z, r, p, &q)?;
            println!("{r:>6} {p:>6} {:>18.15} {:>8}", m.value, m.nodes);
        }
    }
    let h1 = hardy_norm_estimate(&one_plus_z, 1.0, &q)?;
    println!("‖1 + z‖_h1 = {:.15} (4/π = {:.15})", h1.value, 4.0 / PI);

    let two_plus_z = PlanarHarmonicMap::analytic(ComplexSeries::from_real(&[2.0, 1.0]));
    let zyg = zygmund_plus(&two_plus_z, 1.0, &q)?;
    println!("mean |u| log⁺|u| for 2 + z: {:.15} ± {:.1e}", zyg.value, zyg.est_error);

    let half = PlanarHarmonicMap::analytic(ComplexSeries::from_real(&[1.0, 0.5]));
    let ent = entropy_u(&half, 1.0, &q)?;
    println!("mean u log u for 1 + z/2: {:.15} ± {:.1e}", ent.value, ent.est_error);
    Ok(())
}
