//! Empirical lower bounds for the constants in `‖H‖₁ ≤ c₁‖G[H]‖₁ ≤ c₂‖H‖₁`,
//! and the resulting quasiregular Zygmund constant `C(K)`.
//!
//! `cargo run --release --example calderon_constants -- [corpus size]`

use hqz::functionals::calderon_ratio_estimate;
use hqz::planar::random_series;
use hqz::theorems::{theorem1_constant, CLASSICAL_B};
use hqz::{Complex64, ComplexSeries, QuadratureSpec};

fn main() -> hqz::Result<()> {
    let q = QuadratureSpec::default();
    let count: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);

    let mut corpus: Vec<ComplexSeries> = (0..count).map(|s| random_series(s, 16)).collect();
    corpus.extend((1..=4).map(|j| ComplexSeries::monomial(Complex64::new(1.0, 0.0), j)));
    let est = calderon_ratio_estimate(&corpus, &q)?;
    println!("{} series: c1 >= {:.6}, c2 >= {:.6}, c1·c2 >= {:.6}", corpus.len(), est.c1_lower, est.c2_lower, est.product());
    for (j, row) in est.rows.iter().rev().take(4).rev().enumerate() {
        println!("  z^{}: ‖H‖₁ = {:.6}, ‖G[H]‖₁ = {:.6}", j + 1, row.hardy_norm, row.square_norm);
    }
    println!("classical constant B = 6πe = {CLASSICAL_B:.6}");
    for big_k in [1.0, 1.5, 3.0] {
        println!("C({big_k}) with the estimated c1·c2: {:.4}", theorem1_constant(big_k, est.product()));
    }
    Ok(())
}
