//! Verify the three inequalities on sample maps, then probe the positive-part
//! bound with a randomized corpus.
//!
//! `cargo run --release --example theorem_checks -- [seeds]`

use hqz::ball::AffineBallMap;
use hqz::laplacian::phi_analysis;
use hqz::planar::random_qr_map;
use hqz::table::{write_records, Format};
use hqz::theorems::{fuzz_search, verify_T1, verify_T2, verify_T3_affine, FUZZ_POSITIVITY_MARGIN};
use hqz::{ComplexSeries, PlanarHarmonicMap, QuadratureSpec};

fn main() -> hqz::Result<()> {
    let q = QuadratureSpec::default();
    let seeds: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(50);

    let half = PlanarHarmonicMap::analytic(ComplexSeries::from_real(&[1.0, 0.5]));
    let qr = random_qr_map(11, 0.3, 8, FUZZ_POSITIVITY_MARGIN);
    let reports = vec![
        verify_T1(&qr, 1.0, 1.0, &q)?,
        verify_T2(&half, 1.0, &q)?,
        verify_T2(&qr, 0.8, &q)?,
        verify_T3_affine(&AffineBallMap::m_family(2.0)?, &q)?,
        verify_T3_affine(&AffineBallMap::unit_shift(5, 0.05)?, &q)?,
    ];
    write_records(&mut std::io::stdout().lock(), Format::Csv, &reports)?;

    for big_k in [1.0f64, 1.5, 2.0, 3.0] {
        let a = phi_analysis(big_k * big_k)?;
        println!(
            "K = {big_k}: max of ξ - K²ξ log ξ at ξ* = {:.9} (scan {:.9}), value {:.9}",
            a.xi_star, a.xi_scan, a.phi_max
        );
    }

    for k in [0.0, 0.5] {
        let s = fuzz_search(seeds, k, 8, &q)?;
        println!(
            "fuzz k = {k}: {} seeds, worst margin {:?}, best lhs/rhs {:?} at seed {:?}",
            s.seeds, s.worst_margin, s.best_ratio, s.witness_seed
        );
    }
    Ok(())
}
