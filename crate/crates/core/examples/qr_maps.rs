//! Build quasiregular harmonic maps and measure their dilatation.
//!
//! `cargo run --release --example qr_maps`

use hqz::planar::{big_k, dilatation_sup, make_qr_map, random_qr_map, strip_example};
use hqz::{Complex64, ComplexSeries, QuadratureSpec};

fn main() -> hqz::Result<()> {
    let q = QuadratureSpec::default();

    // F = g + h = 1 + z/2, second dilatation ω = 0.3 z
    let f = ComplexSeries::from_real(&[1.0, 0.5]);
    let omega = ComplexSeries::from_real(&[0.0, 0.3]);
    let map = make_qr_map(&f, &omega, 32)?;
    let d = dilatation_sup(&map, &q)?;
    println!("make_qr_map(1 + z/2, 0.3z): k_hat = {:.12}, K_hat = {:.6}", d.k_hat, d.big_k_hat);
    let z = Complex64::new(0.3, -0.4);
    println!("  f({z}) = {:.6}, Jacobian = {:.6}", map.eval(z), map.jacobian(z));

    for k in [0.0, 0.3, 0.5] {
        let m = random_qr_map(7, k, 8, 0.02);
        let d = dilatation_sup(&m, &q)?;
        println!(
            "random_qr_map(seed 7, k = {k}): declared K = {:.4}, measured K_hat = {:.4}, deg g = {}",
            big_k(m.k_declared()),
            d.big_k_hat,
            m.g().degree()
        );
    }

    let strip = strip_example(3);
    println!("strip example n = 3: f(0) = {}, f(1) = {}", strip.eval(Complex64::new(0.0, 0.0)), strip.eval(Complex64::new(1.0, 0.0)));

    let json = serde_json::to_string(&random_qr_map(1, 0.1, 3, 0.05)).expect("maps serialize");
    println!("serialized map: {}...", &json[..json.len().min(120)]);
    Ok(())
}
