//! Riesz-type Green identities for `|f|` on the disk and the 3-ball.
//!
//! `cargo run --release --example green_identities`

use hqz::ball::{ball_green_identity_n3, green_calibration_n3, AffineBallMap};
use hqz::laplacian::disk_green_identity;
use hqz::planar::random_qr_map;
use hqz::{ComplexSeries, PlanarHarmonicMap, QuadratureSpec};

fn main() -> hqz::Result<()> {
    let q = QuadratureSpec::default();
    let cases = [
        ("2 + z", PlanarHarmonicMap::analytic(ComplexSeries::from_real(&[2.0, 1.0]))),
        ("corpus seed 5, k = 0.3", random_qr_map(5, 0.3, 8, 0.02)),
    ];
    for (name, map) in cases {
        for r in [0.5, 0.9, 1.0] {
            let g = disk_green_identity(&map, r, &q)?;
            println!("disk  {name:<24} r = {r:<4} |f(0)| = {:.12}  residual = {:+.2e}", g.lhs, g.residual);
        }
    }
    for m in [2.0, 5.0] {
        let g = ball_green_identity_n3(&AffineBallMap::m_family(m)?, &q)?;
        println!("ball  m = {m:<22} |f(0)| = {:.12}  residual = {:+.2e}", g.lhs, g.residual);
    }
    let cal = green_calibration_n3(&q)?;
    println!("ball  calibration u = |x|²  residual = {:+.2e}", cal.residual);
    Ok(())
}
