//! `fₙ = n/(n+1) + z/(n+1)` maps the disk into the strip `0 < u < 1`; its
//! `h¹` norm stays below 1 and tends to 1.
//!
//! `cargo run --release --example strip_corollary`

use hqz::theorems::verify_T2_strip;
use hqz::QuadratureSpec;

fn main() -> hqz::Result<()> {
    let q = QuadratureSpec::default();
    println!("{:>5} {:>20} {:>14} {:>14}", "n", "‖fₙ‖₁", "1 - ‖fₙ‖₁", "b - b²/(4a)");
    for n in [1, 2, 4, 8, 16, 32, 64, 128, 256] {
        let rep = verify_T2_strip(n, &q)?;
        // mean |a + b e^{it}| ≈ a + b²/(4a) with a = n/(n+1), b = 1/(n+1)
        let (a, b) = (f64::from(n) / f64::from(n + 1), 1.0 / f64::from(n + 1));
        let approx = b - b * b / (4.0 * a);
        println!("{n:>5} {:>20.16} {:>14.6e} {approx:>14.6e}", rep.lhs, rep.margin);
    }
    Ok(())
}
