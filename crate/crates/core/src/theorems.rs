//! Verifiers for the Zygmund-type inequalities.
//!
//! Each verifier evaluates both sides of one inequality on a concrete map and
//! returns a [`TheoremReport`]; the inequality holds numerically when
//! `margin >= -quad_error`.

use std::collections::BTreeMap;
use std::f64::consts::{E, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ball::{phi_of_m, zygmund_plus_axial, AffineBallMap, X_of, Y_of};
use crate::error::{Error, Result};
use crate::functionals::{circle_mean_p, entropy_u, hardy_norm_estimate, zygmund_plus};
use crate::planar::{dilatation_sup, random_qr_map, strip_example, PlanarHarmonicMap};
use crate::quadrature::{PeriodicTrapezoid, QuadratureSpec};

/// Largest admissible `|Im f(0)|` for the positive-real-part inequality.
pub const V0_TOL: f64 = 1e-12;

/// Lower bound on `Re f` used for the fuzz corpus.
pub const FUZZ_POSITIVITY_MARGIN: f64 = 0.02;

/// Constants of the classical Zygmund inequality `‖ũ‖ <= A ‖u log⁺u‖ + B`.
pub const CLASSICAL_A: f64 = 1.0;
pub const CLASSICAL_B: f64 = 6.0 * PI * E;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    T1,
    T2,
    #[serde(rename = "T2_strip")]
    T2Strip,
    T3,
}

impl TheoremId {
    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::T1 => "T1",
            TheoremId::T2 => "T2",
            TheoremId::T2Strip => "T2_strip",
            TheoremId::T3 => "T3",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem_id: TheoremId,
    pub params: BTreeMap<String, f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub quad_error: f64,
}

impl TheoremReport {
    fn new(theorem_id: TheoremId, lhs: f64, rhs: f64, quad_error: f64) -> Self {
        Self {
            theorem_id,
            params: BTreeMap::new(),
            lhs,
            rhs,
            margin: rhs - lhs,
            quad_error,
        }
    }

    fn with(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_owned(), value);
        self
    }

    pub fn holds(&self) -> bool {
        self.margin >= -self.quad_error
    }

    pub fn param(&self, key: &str) -> Option<f64> {
        self.params.get(key).copied()
    }
}

/// `C(K) = 2(6πe + 1) c₁c₂ K`.
pub fn theorem1_constant(big_k: f64, c1c2: f64) -> f64 {
    2.0 * (CLASSICAL_B + 1.0) * c1c2 * big_k
}

/// `‖f‖₁ <= C(K) (1 + ‖u log⁺|u|‖₁)` on the circle of radius `r`.
#[allow(non_snake_case)]
pub fn verify_T1(
    map: &PlanarHarmonicMap,
    r: f64,
    c1c2: f64,
    q: &QuadratureSpec,
) -> Result<TheoremReport> {
    if !(c1c2 > 0.0) {
        return Err(Error::DomainError(format!(
            "c1c2 = {c1c2} must be positive"
        )));
    }
    let big_k = dilatation_sup(map, q)?.big_k_hat;
    let mean = circle_mean_p(map, r, 1.0, q)?;
    let zyg = zygmund_plus(map, r, q)?;
    let constant = theorem1_constant(big_k, c1c2);
    let rhs = constant * (1.0 + zyg.value);
    let quad_error = mean.est_error + constant * zyg.est_error;
    Ok(
        TheoremReport::new(TheoremId::T1, mean.value, rhs, quad_error)
            .with("r", r)
            .with("K", big_k)
            .with("c1c2", c1c2)
            .with("zygmund_plus", zyg.value)
            .with("empirical_constant", mean.value / (1.0 + zyg.value))
            .with("classical_envelope", CLASSICAL_A * zyg.value + CLASSICAL_B),
    )
}

/// `M₁(r, f) <= K² (e^{-1 + 1/K²} + (1/2π)∫ u log u)` for `u > 0`, `v(0) = 0`,
/// with `K` measured by [`dilatation_sup`].
#[allow(non_snake_case)]
pub fn verify_T2(map: &PlanarHarmonicMap, r: f64, q: &QuadratureSpec) -> Result<TheoremReport> {
    let big_k = dilatation_sup(map, q)?.big_k_hat;
    verify_T2_with_k(map, r, big_k, q)
}

#[allow(non_snake_case)]
pub fn verify_T2_with_k(
    map: &PlanarHarmonicMap,
    r: f64,
    big_k: f64,
    q: &QuadratureSpec,
) -> Result<TheoremReport> {
    let v0 = map.v(Complex64::new(0.0, 0.0));
    if v0.abs() >= V0_TOL {
        return Err(Error::HypothesisViolation(format!(
            "Im f(0) = {v0:e} is not zero"
        )));
    }
    let entropy = entropy_u(map, r, q).map_err(|e| match e {
        Error::NonpositiveRealPart { min_u } => {
            Error::HypothesisViolation(format!("Re f is not positive on |z| = {r} (min {min_u:e})"))
        }
        other => other,
    })?;
    let mean = circle_mean_p(map, r, 1.0, q)?;
    let k2 = big_k * big_k;
    let rhs = k2 * ((-1.0 + 1.0 / k2).exp() + entropy.value);
    let quad_error = mean.est_error + k2 * entropy.est_error;

    // ‖v‖₁ on the same nodes as the final ‖f‖₁ level, where |v| <= |f| pointwise.
    let v_mean = PeriodicTrapezoid::new(|t| map.v(Complex64::from_polar(r, t)).abs(), mean.nodes)
        .next()
        .map_or(0.0, |(_, m)| m);

    Ok(
        TheoremReport::new(TheoremId::T2, mean.value, rhs, quad_error)
            .with("r", r)
            .with("K", big_k)
            .with("k", crate::planar::small_k(big_k))
            .with("entropy", entropy.value)
            .with("v_norm1", v_mean),
    )
}

/// Corollary for the strip: `‖fₙ‖₁ < 1` for `fₙ = n/(n+1) + z/(n+1)`.
#[allow(non_snake_case)]
pub fn verify_T2_strip(n: u32, q: &QuadratureSpec) -> Result<TheoremReport> {
    let norm = hardy_norm_estimate(&strip_example(n), 1.0, q)?;
    Ok(
        TheoremReport::new(TheoremId::T2Strip, norm.value, 1.0, norm.est_error)
            .with("n", f64::from(n))
            .with("gap", 1.0 - norm.value),
    )
}

/// `‖f‖₁ - |f(0)| <= (n-1) (∫ u log u dσ - u(0) log u(0))` for an affine map
/// (`K = 1`). Also records the variant
/// `‖f‖₁ <= (n-1)(e^{-1 + 1/(n-1)} + ‖u log⁺u‖₁)`.
#[allow(non_snake_case)]
pub fn verify_T3_affine(map: &AffineBallMap, q: &QuadratureSpec) -> Result<TheoremReport> {
    if map.a > 0.0 && !map.first_component_positive() {
        return Err(Error::HypothesisViolation(format!(
            "f₁ must be positive: c = {} <= a = {}",
            map.c, map.a
        )));
    }
    let lambda = map.n as f64 - 1.0;
    let x = X_of(map, q)?;
    let y = Y_of(map, q)?;
    let rhs = lambda * y.value;
    let zyg = zygmund_plus_axial(map, q)?;
    let lhs_plus = x.value + map.c;
    let rhs_plus = lambda * ((-1.0 + 1.0 / lambda).exp() + zyg.value);
    let mut report = TheoremReport::new(
        TheoremId::T3,
        x.value,
        rhs,
        x.est_error + lambda * y.est_error,
    )
    .with("n", map.n as f64)
    .with("c", map.c)
    .with("a", map.a)
    .with("K", 1.0)
    .with("norm1", lhs_plus)
    .with("rhs_plus", rhs_plus)
    .with("margin_plus", rhs_plus - lhs_plus);
    if map.n == 3 && map.a > 1.0 && map.c == map.a * map.a {
        report = report.with("phi_m", phi_of_m(map.a)?);
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub seeds: u64,
    pub k: f64,
    pub worst_margin: Option<f64>,
    pub best_ratio: Option<f64>,
    pub witness: Option<PlanarHarmonicMap>,
    pub witness_seed: Option<u64>,
}

/// Run [`verify_T2`] at `r = 1` over `random_qr_map(seed, k, degree, ·)` for
/// `seed` in `0..seeds`.
pub fn fuzz_search(seeds: u64, k: f64, degree: usize, q: &QuadratureSpec) -> Result<FuzzSummary> {
    fuzz_search_from(0, seeds, k, degree, q).map(|(summary, _)| summary)
}

/// As [`fuzz_search`], over `first_seed..first_seed + count`; also returns
/// the individual reports in seed order.
pub fn fuzz_search_from(
    first_seed: u64,
    count: u64,
    k: f64,
    degree: usize,
    q: &QuadratureSpec,
) -> Result<(FuzzSummary, Vec<TheoremReport>)> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::DomainError(format!("k = {k} not in [0, 1)")));
    }
    let reports: Vec<(u64, TheoremReport)> = (first_seed..first_seed + count)
        .into_par_iter()
        .map(|seed| {
            let map = random_qr_map(seed, k, degree, FUZZ_POSITIVITY_MARGIN);
            verify_T2(&map, 1.0, q).map(|rep| (seed, rep.with("seed", seed as f64)))
        })
        .collect::<Result<_>>()?;
    let worst_margin = reports.iter().map(|(_, r)| r.margin).reduce(f64::min);
    let best = reports
        .iter()
        .map(|(seed, r)| (*seed, r.lhs / r.rhs))
        .reduce(|a, b| if b.1 > a.1 { b } else { a });
    let summary = FuzzSummary {
        seeds: count,
        k,
        worst_margin,
        best_ratio: best.map(|(_, ratio)| ratio),
        witness: best.map(|(seed, _)| random_qr_map(seed, k, degree, FUZZ_POSITIVITY_MARGIN)),
        witness_seed: best.map(|(seed, _)| seed),
    };
    Ok((summary, reports.into_iter().map(|(_, r)| r).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ComplexSeries;
    use approx::assert_abs_diff_eq;

    fn q() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn t2_degenerate_constant_has_zero_margin() {
        let one = PlanarHarmonicMap::constant(Complex64::new(1.0, 0.0));
        let rep = verify_T2(&one, 1.0, &q()).unwrap();
        assert_eq!((rep.lhs, rep.rhs, rep.margin), (1.0, 1.0, 0.0));
    }

    #[test]
    fn t2_constant_at_other_levels_has_nonnegative_margin() {
        for c in [0.2, 0.5, 1.0, 3.0] {
            for big_k in [1.0, 1.5, 3.0] {
                let map = PlanarHarmonicMap::constant(Complex64::new(c, 0.0));
                let rep = verify_T2_with_k(&map, 1.0, big_k, &q()).unwrap();
                assert!(rep.margin >= -1e-15, "c = {c}, K = {big_k}: {rep:?}");
            }
        }
    }

    #[test]
    fn t2_hypotheses_enforced() {
        let tilted = PlanarHarmonicMap::analytic(ComplexSeries::new(vec![
            Complex64::new(1.0, 0.1),
            Complex64::new(0.2, 0.0),
        ]));
        assert!(matches!(
            verify_T2(&tilted, 1.0, &q()),
            Err(Error::HypothesisViolation(_))
        ));
        let negative = PlanarHarmonicMap::analytic(ComplexSeries::from_real(&[0.5, 1.0]));
        assert!(matches!(
            verify_T2(&negative, 1.0, &q()),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn t1_constant_map() {
        let half = PlanarHarmonicMap::constant(Complex64::new(0.5, 0.0));
        let rep = verify_T1(&half, 1.0, 0.01, &q()).unwrap();
        assert_eq!(rep.lhs, 0.5);
        assert_eq!(rep.param("zygmund_plus"), Some(0.0));
        assert_abs_diff_eq!(rep.rhs, 2.0 * (6.0 * PI * E + 1.0) * 0.01, epsilon = 1e-15);
        assert!(rep.margin > 0.0);
        assert!(verify_T1(&half, 1.0, 0.0, &q()).is_err());
    }

    #[test]
    fn t3_constant_map() {
        let map = AffineBallMap::new(5, 1.0, 0.0).unwrap();
        let rep = verify_T3_affine(&map, &q()).unwrap();
        assert_eq!((rep.lhs, rep.rhs, rep.margin), (0.0, 0.0, 0.0));
        let bad = AffineBallMap::new(3, 0.5, 0.7).unwrap();
        assert!(verify_T3_affine(&bad, &q()).is_err());
    }

    #[test]
    fn fuzz_singleton_matches_direct_verification() {
        let (summary, reports) = fuzz_search_from(0, 1, 0.0, 6, &q()).unwrap();
        let direct =
            verify_T2(&random_qr_map(0, 0.0, 6, FUZZ_POSITIVITY_MARGIN), 1.0, &q()).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(summary.worst_margin, Some(direct.margin));
        assert_eq!(summary.best_ratio, Some(direct.lhs / direct.rhs));
    }

    #[test]
    fn fuzz_empty_corpus() {
        let summary = fuzz_search(0, 0.3, 6, &q()).unwrap();
        assert_eq!(summary.worst_margin, None);
        assert!(summary.witness.is_none());
    }
}
