//! The affine family `f = m² e₁ + m x` on the 3-ball: `X` stays at 1/3 while
//! `φ(m) = 2Y` decreases to 1/3.
//!
//! `cargo run --release --example sharpness_3d`

use hqz::ball::{phi_of_m, X_of, Y_of, AffineBallMap};
use hqz::QuadratureSpec;

fn main() -> hqz::Result<()> {
    let q = QuadratureSpec::default();
    println!("{:>6} {:>20} {:>20} {:>20} {:>12}", "m", "X", "2Y", "phi(m)", "phi - 1/3");
    for m in [1.5, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 1000.0] {
        let map = AffineBallMap::m_family(m)?;
        let x = X_of(&map, &q)?.value;
        let y = Y_of(&map, &q)?.value;
        let phi = phi_of_m(m)?;
        println!("{m:>6} {x:>20.16} {:>20.16} {phi:>20.16} {:>12.3e}", 2.0 * y, phi - 1.0 / 3.0);
    }
    Ok(())
}
