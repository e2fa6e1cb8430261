//! Reference values from independent computations: brute-force Riemann sums
//! evaluated here, and 40-digit quadrature frozen as constants.

use std::f64::consts::PI;

use approx::assert_relative_eq;
use hqz::ball::{
    axial_mean, green_calibration_n3, laplacian_abs_affine, phi_of_m, ratio_limit_scan, AffineBallMap, X_of, Y_of,
};
use hqz::fd::{fd_laplacian_increments, FD_STEP};
use hqz::functionals::{
    calderon_square, circle_mean_p, entropy_u, hardy_norm_estimate, poisson_extend_circle, zygmund_plus,
};
use hqz::laplacian::{disk_green_identity, laplacian_abs_f, phi_analysis};
use hqz::planar::{dilatation_sup, dilatation_sup_on, make_qr_map, random_qr_map, PolarGrid, DEFAULT_TAU_G};
use hqz::theorems::{verify_T2_strip, verify_T2_with_k};
use hqz::{Complex64, ComplexSeries, PlanarHarmonicMap, QuadratureSpec};

fn q() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn poly(coeffs: &[f64]) -> PlanarHarmonicMap {
    PlanarHarmonicMap::analytic(ComplexSeries::from_real(coeffs))
}

/// Midpoint rule with `n` nodes for the mean of `f` over the circle.
fn riemann_mean<F: Fn(f64) -> f64>(f: F, n: usize) -> f64 {
    let h = 2.0 * PI / n as f64;
    (0..n).map(|i| f((i as f64 + 0.5) * h)).sum::<f64>() / n as f64
}

#[test]
fn modulus_mean_of_one_plus_z() {
    let oracle = riemann_mean(|t| c(1.0 + t.cos(), t.sin()).norm(), 1 << 20);
    let got = circle_mean_p(&poly(&[1.0, 1.0]), 1.0, 1.0, &q()).unwrap().value;
    assert_relative_eq!(oracle, 4.0 / PI, max_relative = 1e-11);
    assert_relative_eq!(got, 4.0 / PI, max_relative = 1e-10);
    let hardy = hardy_norm_estimate(&poly(&[1.0, 1.0]), 1.0, &q()).unwrap().value;
    assert_relative_eq!(hardy, 4.0 / PI, max_relative = 1e-10);
}

#[test]
fn zygmund_plus_of_two_plus_z() {
    let oracle = riemann_mean(|t| (2.0 + t.cos()) * (2.0 + t.cos()).ln(), 1 << 20);
    let got = zygmund_plus(&poly(&[2.0, 1.0]), 1.0, &q()).unwrap().value;
    assert!((got - oracle).abs() < 1e-9, "{got} vs {oracle}");
    assert!((got - 1.515_570_625_160_865_5).abs() < 1e-12);
}

#[test]
fn entropy_of_one_plus_half_z() {
    let got = entropy_u(&poly(&[1.0, 0.5]), 1.0, &q()).unwrap().value;
    let oracle = riemann_mean(|t| (1.0 + 0.5 * t.cos()) * (1.0 + 0.5 * t.cos()).ln(), 1 << 20);
    assert!((got - oracle).abs() < 1e-12);
    assert!((got - 0.064_638_132_020_487_44).abs() < 1e-13);
    // leading term b²/4 with b = 1/2
    assert!((got - 0.0625).abs() < 0.003);
}

#[test]
fn theorem2_margin_of_one_plus_half_z() {
    // Series in b for 1 + bz: margin = b⁴/64 + O(b⁶); at b = 1/2 the full value is below.
    let rep = verify_T2_with_k(&poly(&[1.0, 0.5]), 1.0, 1.0, &q()).unwrap();
    assert!((rep.margin - 0.001_093_722_047_122_492).abs() < 1e-12, "{}", rep.margin);
    let small = verify_T2_with_k(&poly(&[1.0, 0.01]), 1.0, 1.0, &q()).unwrap();
    assert_relative_eq!(small.margin, 1e-8 / 64.0, max_relative = 1e-3);
}

#[test]
fn poisson_reproduces_harmonic_polynomials() {
    for (i, x) in [c(0.3, 0.0), c(-0.5, 0.4), c(0.0, -0.9), c(0.61, 0.62)].into_iter().enumerate() {
        let got = poisson_extend_circle(|t| (2.0 * t).cos(), x, &q()).unwrap().value;
        assert!((got - (x * x).re).abs() < 1e-8, "point {i}");
        let cubic = poisson_extend_circle(|t| (3.0 * t).sin(), x, &q()).unwrap().value;
        assert!((cubic - x.powi(3).im).abs() < 1e-8, "point {i}");
    }
}

#[test]
fn square_function_of_z_squared() {
    let got = calderon_square(&ComplexSeries::monomial(c(1.0, 0.0), 2), c(1.0, 0.0), 64);
    let n = 1_000_000;
    let oracle = ((0..n)
        .map(|i| {
            let rho = (i as f64 + 0.5) / n as f64;
            4.0 * rho * rho * (1.0 - rho)
        })
        .sum::<f64>()
        / n as f64)
        .sqrt();
    assert_relative_eq!(got, (1.0f64 / 3.0).sqrt(), max_relative = 1e-14);
    assert!((got - oracle).abs() < 1e-10);
}

#[test]
fn axial_mean_of_cos_squared_in_three_dimensions() {
    let got = axial_mean(3, |t| t.cos().powi(2), &q()).unwrap().value;
    assert_relative_eq!(got, 1.0 / 3.0, max_relative = 1e-14);
}

#[test]
fn small_shift_leading_terms() {
    let map = AffineBallMap::unit_shift(4, 0.01).unwrap();
    let x = X_of(&map, &q()).unwrap().value;
    let y = Y_of(&map, &q()).unwrap().value;
    assert_relative_eq!(x, 3.749_984_374_902_342e-5, max_relative = 1e-10);
    assert_relative_eq!(y, 1.250_010_416_927_093e-5, max_relative = 1e-10);
    // a²(n-1)/(2n) and a²/(2n), relative error O(a)
    assert_relative_eq!(x, 3.75e-5, max_relative = 0.01);
    assert_relative_eq!(y, 1.25e-5, max_relative = 0.01);
    let r3 = ratio_limit_scan(3, &[0.01], &q()).unwrap()[0].ratio;
    let r2 = ratio_limit_scan(2, &[0.01], &q()).unwrap()[0].ratio;
    assert!((1.9..=2.1).contains(&r3) && (0.95..=1.05).contains(&r2));
    assert_relative_eq!(r3, 1.999_979_999_628_557, max_relative = 1e-9);
}

#[test]
fn phi_values() {
    let frozen = [
        (1.5, 0.350_484_915_528_351_9),
        (2.0, 0.342_333_153_533_424_75),
        (5.0, 0.334_682_164_024_306_6),
        (10.0, 0.333_667_623_036_192_3),
        (100.0, 0.333_336_666_761_908_7),
    ];
    for (m, want) in frozen {
        assert_relative_eq!(phi_of_m(m).unwrap(), want, max_relative = 1e-13);
    }
    let below = phi_of_m(2.0 - 1e-12).unwrap();
    assert!((below - phi_of_m(2.0).unwrap()).abs() < 1e-12);
}

#[test]
fn strip_gap_at_thirty_two() {
    let rep = verify_T2_strip(32, &q()).unwrap();
    assert!((1.0 - rep.lhs - 0.030_066_273_425_647_94).abs() < 1e-10);
}

#[test]
fn phi_maximizer_at_k_two() {
    let a = phi_analysis(4.0).unwrap();
    assert_relative_eq!(a.xi_star, (-0.75f64).exp(), max_relative = 1e-15);
    assert!((a.xi_scan - a.xi_star).abs() < 1e-6);
}

#[test]
fn dilatation_of_linear_omega_under_refinement() {
    let map = make_qr_map(&ComplexSeries::from_real(&[1.0, 0.5]), &ComplexSeries::from_real(&[0.0, 0.3]), 40).unwrap();
    let coarse = dilatation_sup(&map, &q()).unwrap().k_hat;
    let fine = dilatation_sup_on(
        &map,
        &PolarGrid {
            radial: 256,
            angular: 2048,
            r_max: 1.0,
        },
        DEFAULT_TAU_G,
    )
    .unwrap()
    .k_hat;
    assert!(coarse <= 0.3 + 1e-12 && fine <= 0.3 + 1e-12);
    // |ω| = 0.3 |z| attains 0.3 on the unit circle, which both grids contain
    assert!((fine - 0.3).abs() < 1e-12);
}

#[test]
fn constant_omega_map_pointwise() {
    let map = make_qr_map(&ComplexSeries::from_real(&[1.0, 0.5]), &ComplexSeries::from_real(&[0.3]), 32).unwrap();
    for z in (PolarGrid {
        radial: 16,
        angular: 64,
        r_max: 1.0,
    })
    .points()
    {
        assert!((map.dh(z) / map.dg(z) - 0.3).norm() < 1e-14);
        assert!((map.u(z) - (1.0 + 0.5 * z.re)).abs() < 1e-14);
    }
    let green = disk_green_identity(&map, 0.9, &q()).unwrap();
    assert!(green.residual.abs() < 1e-6);
}

#[test]
fn generated_maps_respect_their_bounds() {
    let grid = PolarGrid {
        radial: 32,
        angular: 256,
        r_max: 1.0,
    };
    for seed in 0..40 {
        for k in [0.0, 0.3, 0.5] {
            let map = random_qr_map(seed, k, 8, 0.02);
            let k_hat = dilatation_sup_on(&map, &grid, DEFAULT_TAU_G).unwrap().k_hat;
            assert!(k_hat <= k + 1e-12, "seed {seed}: {k_hat} > {k}");
            let min_u = grid.points().map(|z| map.u(z)).fold(f64::INFINITY, f64::min);
            assert!(min_u >= 0.02 - 1e-12, "seed {seed}: min u {min_u}");
        }
    }
}

#[test]
fn affine_laplacian_against_planar_and_finite_differences() {
    // n = 2: f(x) = c e₁ + a x is the analytic map c + a z
    let affine = AffineBallMap::new(2, 1.5, 0.7).unwrap();
    let planar = poly(&[1.5, 0.7]);
    for (x, y) in [(0.2, 0.1), (-0.6, 0.5), (0.0, -0.3)] {
        let a = laplacian_abs_affine(&affine, &[x, y]).unwrap();
        assert_relative_eq!(a, laplacian_abs_f(&planar, c(x, y)).unwrap(), max_relative = 1e-13);
    }
    for n in [3, 5] {
        let map = AffineBallMap::new(n, 2.0, 1.0).unwrap();
        let x: Vec<f64> = (0..n).map(|i| 0.1 * (i as f64 + 1.0) * if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let f0 = map.eval(&x);
        let norm0 = f0.iter().map(|v| v * v).sum::<f64>().sqrt();
        // |f0 + a d e_axis| - |f0| without cancellation
        let fd = fd_laplacian_increments(n, FD_STEP, |axis, d| {
            let step = map.a * d;
            let mut moved = f0.clone();
            moved[axis] += step;
            let norm1 = moved.iter().map(|v| v * v).sum::<f64>().sqrt();
            step * (2.0 * f0[axis] + step) / (norm1 + norm0)
        });
        let exact = laplacian_abs_affine(&map, &x).unwrap();
        assert_relative_eq!(exact, fd, max_relative = 1e-5);
        assert_relative_eq!(exact, map.a * map.a * (n as f64 - 1.0) / norm0, max_relative = 1e-13);
    }
}

#[test]
fn ball_calibration_is_exact() {
    let g = green_calibration_n3(&q()).unwrap();
    assert!(g.residual.abs() < 1e-10);
}
