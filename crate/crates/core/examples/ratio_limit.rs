//! `X/Y → n - 1` for `f = e₁ + a x` as `a → 0`.
//!
//! `cargo run --release --example ratio_limit`

use hqz::ball::ratio_limit_scan;
use hqz::QuadratureSpec;

fn main() -> hqz::Result<()> {
    let q = QuadratureSpec::default();
    let a_values = [0.5, 0.2, 0.1, 0.05, 0.01, 0.001];
    println!("{:>3} {:>8} {:>14} {:>14} {:>12} {:>10}", "n", "a", "X", "Y", "X/Y", "rel dev");
    for n in 2..=8 {
        for row in ratio_limit_scan(n, &a_values, &q)? {
            println!(
                "{:>3} {:>8} {:>14.6e} {:>14.6e} {:>12.8} {:>10.2e}",
                row.n, row.a, row.x, row.y, row.ratio, row.deviation
            );
        }
    }
    Ok(())
}
