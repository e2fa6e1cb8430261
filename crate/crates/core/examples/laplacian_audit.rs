//! Closed-form Laplacians on a polar grid, written as a table, and checked
//! against double-double finite differences.
//!
//! `cargo run --release --example laplacian_audit -- [out.csv]`

use std::path::PathBuf;

use hqz::fd::{fd_audit, FD_STEP};
use hqz::laplacian::{laplacian_grid, larmi_ratio_check};
use hqz::planar::{big_k, random_qr_map, PolarGrid};
use hqz::table::{write_table, Format};
use hqz::QuadratureSpec;

fn main() -> hqz::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map_or_else(|| PathBuf::from("laplacian-grid.csv"), PathBuf::from);
    let map = random_qr_map(3, 0.3, 8, 0.02);
    let grid = PolarGrid {
        radial: 16,
        angular: 64,
        r_max: 1.0,
    };

    let samples = laplacian_grid(&map, &grid)?;
    write_table(&out, Format::Csv, &samples)?;
    println!("wrote {} samples to {}", samples.len(), out.display());

    let audit = fd_audit(&map, &grid, FD_STEP)?;
    let bound = big_k(map.k_declared()).powi(2);
    println!(
        "finite differences at {} points: max relative error {:.2e} (|f|), {:.2e} (u log u)",
        audit.checked, audit.max_rel_abs, audit.max_rel_ulogu
    );
    println!(
        "max Δ|f| / Δ(u log u) = {:.6} on the audit grid, {:.6} on the dense grid; K² = {bound:.6}",
        audit.max_ratio,
        larmi_ratio_check(&map, &QuadratureSpec::default())?
    );
    Ok(())
}
