//! Poisson extension, the square function and axial sphere means.
//!
//! `cargo run --release --example kernels`

use hqz::ball::{axial_constant, axial_mean};
use hqz::functionals::{calderon_square, poisson_extend_circle, poisson_extend_samples, square_function_norm};
use hqz::{Complex64, ComplexSeries, QuadratureSpec};

fn main() -> hqz::Result<()> {
    let q = QuadratureSpec::default();

    let x = Complex64::from_polar(0.8, 0.7);
    let got = poisson_extend_circle(|t| (2.0 * t).cos(), x, &q)?;
    println!("P[cos 2t]({x:.3}) = {:.15}, Re x² = {:.15}", got.value, (x * x).re);

    let samples: Vec<f64> = (0..256)
        .map(|i| (3.0 * std::f64::consts::TAU * i as f64 / 256.0).sin())
        .collect();
    println!(
        "P[sin 3t] from 256 samples = {:.15}, Im x³ = {:.15}",
        poisson_extend_samples(&samples, x)?,
        x.powi(3).im
    );

    let z2 = ComplexSeries::monomial(Complex64::new(1.0, 0.0), 2);
    println!("G[z²](1) = {:.15} (√(1/3) = {:.15})", calderon_square(&z2, Complex64::new(1.0, 0.0), 64), (1.0f64 / 3.0).sqrt());
    println!("‖G[z²]‖₁ = {:.15}", square_function_norm(&z2, &q)?.value);

    println!("{:>3} {:>20} {:>20}", "n", "C_n", "mean of cos² t");
    for n in 2..=8 {
        let m = axial_mean(n, |t| t.cos().powi(2), &q)?;
        println!("{n:>3} {:>20.15} {:>20.15}", axial_constant(n), m.value);
    }
    Ok(())
}
