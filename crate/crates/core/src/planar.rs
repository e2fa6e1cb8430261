//! Planar harmonic maps `f = g + conj(h)` with `g, h` holomorphic polynomials
//! and `h(0) = 0`.
//!
//! Such a map is sense-preserving and `k`-quasiregular when
//! `|h'(z)| <= k |g'(z)|`; the distortion constant is `K = (1 + k)/(1 - k)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::series::{ComplexSeries, DEFAULT_DEGREE_CAP};

/// Floor on `|g'|` below which a sampling grid is considered to hit a
/// critical point of `g`.
pub const DEFAULT_TAU_G: f64 = 1e-9;

/// `K = (1 + k)/(1 - k)`.
pub fn big_k(k: f64) -> f64 {
    (1.0 + k) / (1.0 - k)
}

/// `k = (K - 1)/(K + 1)`.
pub fn small_k(big_k: f64) -> f64 {
    (big_k - 1.0) / (big_k + 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MapJson", into = "MapJson")]
pub struct PlanarHarmonicMap {
    g: ComplexSeries,
    h: ComplexSeries,
    dg: ComplexSeries,
    dh: ComplexSeries,
    k_declared: f64,
}

/// Pointwise data needed by the Laplacian formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapJet {
    pub f: Complex64,
    pub dg: Complex64,
    pub dh: Complex64,
}

impl PlanarHarmonicMap {
    pub fn new(g: ComplexSeries, h: ComplexSeries, k_declared: f64) -> Result<Self> {
        if h.coeff(0).norm() > 0.0 {
            return Err(Error::HypothesisViolation(format!(
                "h(0) must vanish, got {}",
                h.coeff(0)
            )));
        }
        if !(0.0..1.0).contains(&k_declared) {
            return Err(Error::DomainError(format!(
                "declared dilatation {k_declared} not in [0, 1)"
            )));
        }
        let dg = g.derivative();
        let dh = h.derivative();
        Ok(Self {
            g,
            h,
            dg,
            dh,
            k_declared,
        })
    }

    /// Holomorphic map `f = g`.
    pub fn analytic(g: ComplexSeries) -> Self {
        Self::new(g, ComplexSeries::zero(), 0.0).expect("zero h is always admissible")
    }

    pub fn constant(c: Complex64) -> Self {
        Self::analytic(ComplexSeries::constant(c))
    }

    pub fn g(&self) -> &ComplexSeries {
        &self.g
    }

    pub fn h(&self) -> &ComplexSeries {
        &self.h
    }

    pub fn k_declared(&self) -> f64 {
        self.k_declared
    }

    pub fn is_analytic(&self) -> bool {
        self.dh.is_zero()
    }

    /// `f + c` for real `c`; the dilatation is unchanged.
    pub fn shifted(&self, c: f64) -> Self {
        let g = &self.g + &ComplexSeries::constant(Complex64::new(c, 0.0));
        Self::new(g, self.h.clone(), self.k_declared).expect("shift keeps h(0) = 0")
    }

    /// `g(z) + conj(h(z))`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.g.eval(z) + self.h.eval(z).conj()
    }

    pub fn u(&self, z: Complex64) -> f64 {
        self.eval(z).re
    }

    pub fn v(&self, z: Complex64) -> f64 {
        self.eval(z).im
    }

    pub fn dg(&self, z: Complex64) -> Complex64 {
        self.dg.eval(z)
    }

    pub fn dh(&self, z: Complex64) -> Complex64 {
        self.dh.eval(z)
    }

    pub fn jet(&self, z: Complex64) -> MapJet {
        let (g, dg) = self.g.eval_with_derivative(z);
        let (h, dh) = self.h.eval_with_derivative(z);
        MapJet {
            f: g + h.conj(),
            dg,
            dh,
        }
    }

    /// Jacobian determinant `|g'|² - |h'|²`.
    pub fn jacobian(&self, z: Complex64) -> f64 {
        self.dg(z).norm_sqr() - self.dh(z).norm_sqr()
    }
}

/// Wire format: `{"g": [[re, im], ...], "h": [[re, im], ...], "k": real}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapJson {
    pub g: Vec<[f64; 2]>,
    pub h: Vec<[f64; 2]>,
    pub k: f64,
}

fn to_pairs(s: &ComplexSeries) -> Vec<[f64; 2]> {
    s.coeffs().iter().map(|c| [c.re, c.im]).collect()
}

fn from_pairs(p: &[[f64; 2]]) -> ComplexSeries {
    ComplexSeries::new(p.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
}

impl From<PlanarHarmonicMap> for MapJson {
    fn from(map: PlanarHarmonicMap) -> Self {
        Self {
            g: to_pairs(&map.g),
            h: to_pairs(&map.h),
            k: map.k_declared,
        }
    }
}

impl TryFrom<MapJson> for PlanarHarmonicMap {
    type Error = Error;

    fn try_from(json: MapJson) -> Result<Self> {
        PlanarHarmonicMap::new(from_pairs(&json.g), from_pairs(&json.h), json.k)
    }
}

/// Tensor polar grid: radii `j/radial · r_max` for `j = 0..=radial` and
/// `angular` equispaced angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarGrid {
    pub radial: usize,
    pub angular: usize,
    pub r_max: f64,
}

impl PolarGrid {
    pub fn from_spec(spec: &QuadratureSpec, r_max: f64) -> Self {
        Self {
            radial: spec.radial_nodes,
            angular: spec.circle_nodes,
            r_max,
        }
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> {
        let PolarGrid {
            radial,
            angular,
            r_max,
        } = *self;
        (0..=radial).flat_map(move |j| {
            let r = r_max * j as f64 / radial as f64;
            let count = if j == 0 { 1 } else { angular };
            (0..count).map(move |i| Complex64::from_polar(r, 2.0 * PI * i as f64 / angular as f64))
        })
    }

    pub fn len(&self) -> usize {
        1 + self.radial * self.angular
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DilatationReport {
    pub k_hat: f64,
    #[serde(rename = "K_hat")]
    pub big_k_hat: f64,
    pub grid: PolarGrid,
}

/// Sup of `|h'/g'|` over the polar grid of `spec` on the closed unit disk.
pub fn dilatation_sup(map: &PlanarHarmonicMap, spec: &QuadratureSpec) -> Result<DilatationReport> {
    dilatation_sup_on(map, &PolarGrid::from_spec(spec, 1.0), DEFAULT_TAU_G)
}

pub fn dilatation_sup_on(
    map: &PlanarHarmonicMap,
    grid: &PolarGrid,
    tau_g: f64,
) -> Result<DilatationReport> {
    if map.is_analytic() {
        return Ok(DilatationReport {
            k_hat: 0.0,
            big_k_hat: 1.0,
            grid: *grid,
        });
    }
    let mut min_dg = f64::INFINITY;
    let mut k_hat: f64 = 0.0;
    for z in grid.points() {
        let dg = map.dg(z).norm();
        min_dg = min_dg.min(dg);
        if dg > tau_g {
            k_hat = k_hat.max(map.dh(z).norm() / dg);
        }
    }
    if min_dg <= tau_g {
        return Err(Error::DegenerateDerivative {
            min_abs: min_dg,
            floor: tau_g,
        });
    }
    if k_hat >= 1.0 {
        return Err(Error::HypothesisViolation(format!(
            "map is not sense-preserving quasiregular on the grid (k_hat = {k_hat})"
        )));
    }
    Ok(DilatationReport {
        k_hat,
        big_k_hat: big_k(k_hat),
        grid: *grid,
    })
}

fn trim(s: &ComplexSeries) -> ComplexSeries {
    let coeffs = s.coeffs();
    let len = coeffs
        .iter()
        .rposition(|c| c.norm() > 0.0)
        .map_or(0, |i| i + 1);
    ComplexSeries::new(coeffs[..len].to_vec())
}

/// Build `f = g + conj(h)` with `g + h ≈ F` and `h'/g' = ω`:
/// `g' = F'/(1 + ω)` (series-truncated), `h' = ω g'`, `g(0) = F(0)`, `h(0) = 0`.
///
/// The ratio `h'/g' = ω` holds exactly as polynomials; the truncation of
/// `1/(1 + ω)` only perturbs `g + h` away from `F` in coefficients of degree
/// above `truncation_degree - deg ω`.
pub fn make_qr_map(
    f: &ComplexSeries,
    omega: &ComplexSeries,
    truncation_degree: usize,
) -> Result<PlanarHarmonicMap> {
    make_qr_map_capped(f, omega, truncation_degree, DEFAULT_DEGREE_CAP)
}

pub fn make_qr_map_capped(
    f: &ComplexSeries,
    omega: &ComplexSeries,
    truncation_degree: usize,
    cap: usize,
) -> Result<PlanarHarmonicMap> {
    if truncation_degree > cap {
        return Err(Error::TruncationOverflow {
            requested: truncation_degree,
            cap,
        });
    }
    let f0 = f.coeff(0);
    if f0.im.abs() > 1e-15 * (1.0 + f0.re.abs()) {
        return Err(Error::HypothesisViolation(format!(
            "F(0) = {f0} is not real"
        )));
    }
    let f0 = Complex64::new(f0.re, 0.0);
    let omega = trim(omega);
    let k_declared = omega.l1();
    if k_declared >= 1.0 {
        return Err(Error::DomainError(format!(
            "coefficient bound of omega is {k_declared}, need < 1"
        )));
    }
    let df = f.derivative();
    if omega.is_zero() || df.is_zero() {
        return PlanarHarmonicMap::new(
            f.truncated(truncation_degree),
            ComplexSeries::zero(),
            k_declared,
        );
    }
    let omega_degree = omega.degree();
    if truncation_degree <= omega_degree {
        return Err(Error::DomainError(format!(
            "truncation degree {truncation_degree} must exceed deg omega = {omega_degree}"
        )));
    }
    let dg_degree = truncation_degree - 1 - omega_degree;
    let one_plus_omega = &ComplexSeries::constant(Complex64::new(1.0, 0.0)) + &omega;
    let recip = one_plus_omega.reciprocal(dg_degree)?;
    let dg = df.mul_truncated(&recip, dg_degree);
    let dh = &omega * &dg;
    let g = dg.antiderivative(f0);
    let h = dh.antiderivative(Complex64::new(0.0, 0.0));
    PlanarHarmonicMap::new(g, h, k_declared)
}

/// Deterministic random quasiregular map with `Re f >= positivity_margin` on
/// the closed disk, `Im f(0) = 0` and `sup |h'/g'| <= k`.
///
/// `F = c₀ + Σ_{j=1..degree} c_j z^j` has `Σ_{j≥1} |c_j| <= c₀ - margin` and a
/// dominant linear term (`|c₁| > Σ_{j≥2} j |c_j|`), so `F'` has no zeros on the
/// closed disk. `ω` has `Σ |ω_j| <= k`. If series truncation moves `g + h`
/// away from `F`, the constant term of `g` is raised by the `ℓ¹` size of that
/// perturbation so the positivity bound still holds.
pub fn random_qr_map(
    seed: u64,
    k: f64,
    degree: usize,
    positivity_margin: f64,
) -> PlanarHarmonicMap {
    assert!((0.0..1.0).contains(&k), "k must lie in [0, 1)");
    assert!(
        positivity_margin > 0.0,
        "positivity margin must be positive"
    );
    let degree = degree.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let c0 = positivity_margin + rng.gen_range(0.05..3.0);
    let budget = (c0 - positivity_margin) * rng.gen_range(0.02..1.0);
    let linear_share = rng.gen_range(0.5..0.95);
    let c1 = budget * linear_share;
    let decay = rng.gen_range(0.3..0.9);
    let raw: Vec<f64> = (2..=degree)
        .map(|j| rng.gen::<f64>() * decay_pow(decay, j))
        .collect();
    let raw_l1: f64 = raw.iter().sum();
    let raw_weighted: f64 = raw
        .iter()
        .enumerate()
        .map(|(i, q)| (i + 2) as f64 * q)
        .sum();
    let scale = if raw_l1 > 0.0 {
        (budget * (1.0 - linear_share) / raw_l1).min(0.9 * c1 / raw_weighted)
    } else {
        0.0
    };
    let mut coeffs = Vec::with_capacity(degree + 1);
    coeffs.push(Complex64::new(c0, 0.0));
    coeffs.push(Complex64::from_polar(c1, rng.gen_range(0.0..2.0 * PI)));
    for q in &raw {
        coeffs.push(Complex64::from_polar(
            scale * q,
            rng.gen_range(0.0..2.0 * PI),
        ));
    }
    let f = ComplexSeries::new(coeffs);

    let omega = if k > 0.0 {
        let omega_degree = rng.gen_range(0..=3usize);
        let weights: Vec<f64> = (0..=omega_degree)
            .map(|_| rng.gen_range(0.05..1.0))
            .collect();
        let total: f64 = weights.iter().sum();
        let mass = k * rng.gen_range(0.5..1.0);
        ComplexSeries::new(
            weights
                .iter()
                .map(|w| Complex64::from_polar(mass * w / total, rng.gen_range(0.0..2.0 * PI)))
                .collect(),
        )
    } else {
        ComplexSeries::zero()
    };

    let truncation = (degree + 32).min(DEFAULT_DEGREE_CAP);
    let map = make_qr_map(&f, &omega, truncation).expect("generator respects construction bounds");
    let completion = map.g() + map.h();
    let deficit = positivity_margin + completion.tail_l1() - completion.coeff(0).re;
    if deficit > 0.0 {
        map.shifted(deficit)
    } else {
        map
    }
}

fn decay_pow(base: f64, j: usize) -> f64 {
    base.powi(j as i32 - 2)
}

/// Random polynomial `H` of the given degree with `H(0) = 0` and
/// geometrically decaying, randomly phased coefficients.
pub fn random_series(seed: u64, degree: usize) -> ComplexSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5e71e5);
    let decay = rng.gen_range(0.5..1.0);
    let mut coeffs = vec![Complex64::new(0.0, 0.0)];
    for j in 1..=degree.max(1) {
        let mag = rng.gen_range(0.0..1.0) * decay_pow(decay, j + 1);
        coeffs.push(Complex64::from_polar(mag, rng.gen_range(0.0..2.0 * PI)));
    }
    ComplexSeries::new(coeffs)
}

/// `f(z) = n/(n+1) + z/(n+1)`: analytic, values in the strip `0 < Re f < 1`
/// on the open disk, `Im f(0) = 0`.
pub fn strip_example(n: u32) -> PlanarHarmonicMap {
    assert!(n >= 1, "strip example needs n >= 1");
    let d = f64::from(n) + 1.0;
    PlanarHarmonicMap::analytic(ComplexSeries::from_real(&[f64::from(n) / d, 1.0 / d]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let id = PlanarHarmonicMap::analytic(ComplexSeries::z());
        assert_eq!(id.eval(c(0.0, 1.0)), c(0.0, 1.0));

        let shifted = PlanarHarmonicMap::analytic(ComplexSeries::from_real(&[1.0, 1.0]));
        assert_eq!(shifted.eval(c(0.0, 0.0)), c(1.0, 0.0));

        let k = 0.4;
        let h = ComplexSeries::from_real(&[0.0, 0.0, k / 2.0]);
        let map = PlanarHarmonicMap::new(ComplexSeries::z(), h, k).unwrap();
        assert_abs_diff_eq!(
            (map.eval(c(1.0, 0.0)) - c(1.0 + k / 2.0, 0.0)).norm(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn h_must_vanish_at_origin() {
        let h = ComplexSeries::from_real(&[0.1, 1.0]);
        assert!(matches!(
            PlanarHarmonicMap::new(ComplexSeries::z(), h, 0.0),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn dilatation_of_analytic_and_scaled_maps() {
        let spec = QuadratureSpec::default();
        let g = ComplexSeries::from_real(&[1.0, 0.5, 0.1]);
        let rep = dilatation_sup(&PlanarHarmonicMap::analytic(g.clone()), &spec).unwrap();
        assert_eq!((rep.k_hat, rep.big_k_hat), (0.0, 1.0));

        let mut h = g.scale(c(0.5, 0.0));
        h = &h - &ComplexSeries::constant(h.coeff(0));
        let rep = dilatation_sup(&PlanarHarmonicMap::new(g, h, 0.5).unwrap(), &spec).unwrap();
        assert_abs_diff_eq!(rep.k_hat, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(rep.big_k_hat, 3.0, epsilon = 1e-13);
    }

    #[test]
    fn degenerate_derivative_detected() {
        // g' = 2z vanishes at the grid point z = 0
        let g = ComplexSeries::from_real(&[1.0, 0.0, 1.0]);
        let h = ComplexSeries::from_real(&[0.0, 0.0, 0.1]);
        let map = PlanarHarmonicMap::new(g, h, 0.1).unwrap();
        assert!(matches!(
            dilatation_sup(&map, &QuadratureSpec::default()),
            Err(Error::DegenerateDerivative { .. })
        ));
    }

    #[test]
    fn make_qr_map_analytic_and_constant_cases() {
        let f = ComplexSeries::from_real(&[1.0, 0.5]);
        let map = make_qr_map(&f, &ComplexSeries::zero(), 32).unwrap();
        assert_eq!(map.g(), &f);
        assert!(map.h().is_zero());

        let one = ComplexSeries::from_real(&[1.0]);
        let map = make_qr_map(&one, &ComplexSeries::from_real(&[0.2, 0.3]), 32).unwrap();
        assert_eq!(map.g(), &one);
        assert!(map.h().is_zero());
    }

    #[test]
    fn make_qr_map_constant_omega() {
        let f = ComplexSeries::from_real(&[1.0, 0.5]);
        let map = make_qr_map(&f, &ComplexSeries::from_real(&[0.3]), 32).unwrap();
        for z in (PolarGrid {
            radial: 8,
            angular: 64,
            r_max: 1.0,
        })
        .points()
        {
            let j = map.jet(z);
            assert_abs_diff_eq!((j.dh - j.dg * 0.3).norm(), 0.0, epsilon = 1e-15);
            assert_abs_diff_eq!(map.u(z), 1.0 + z.re / 2.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn make_qr_map_rejects_overflow_and_complex_constant() {
        let f = ComplexSeries::from_real(&[1.0, 0.5]);
        assert!(matches!(
            make_qr_map(&f, &ComplexSeries::zero(), 65),
            Err(Error::TruncationOverflow {
                requested: 65,
                cap: 64
            })
        ));
        let f = ComplexSeries::new(vec![c(1.0, 0.5), c(0.5, 0.0)]);
        assert!(make_qr_map(&f, &ComplexSeries::zero(), 8).is_err());
    }

    #[test]
    fn strip_example_values() {
        let f1 = strip_example(1);
        assert_eq!(f1.g(), &ComplexSeries::from_real(&[0.5, 0.5]));
        let f3 = strip_example(3);
        assert_eq!(f3.eval(c(1.0, 0.0)), c(1.0, 0.0));
        for n in [1, 2, 7, 64] {
            let f = strip_example(n);
            assert_eq!(f.v(c(0.0, 0.0)), 0.0);
            for z in (PolarGrid {
                radial: 16,
                angular: 64,
                r_max: 0.999,
            })
            .points()
            {
                let u = f.u(z);
                assert!(u > 0.0 && u < 1.0);
            }
        }
    }

    #[test]
    fn json_round_trip_and_shape() {
        let map = random_qr_map(7, 0.3, 6, 0.1);
        let text = serde_json::to_string(&map).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(value["g"].is_array() && value["h"].is_array() && value["k"].is_number());
        let back: PlanarHarmonicMap = serde_json::from_str(&text).unwrap();
        assert_eq!(back, map);
    }

    #[test]
    fn random_map_is_deterministic() {
        let a = serde_json::to_string(&random_qr_map(11, 0.5, 8, 0.05)).unwrap();
        let b = serde_json::to_string(&random_qr_map(11, 0.5, 8, 0.05)).unwrap();
        assert_eq!(a, b);
        let zero = random_qr_map(0, 0.0, 8, 0.05);
        assert!(zero.is_analytic());
    }
}
