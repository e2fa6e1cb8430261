//! Quadrature rules and the refinement policy shared by every integral in
//! the crate.
//!
//! Two rules are used:
//!
//! * the periodic trapezoidal rule on the circle, refined by doubling the
//!   node count (old nodes are reused, so each level costs only the new
//!   midpoints);
//! * Gauss–Legendre on a finite interval, refined by doubling the order.
//!
//! In both cases the reported error estimate is the absolute difference
//! between the last two refinement levels.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Node counts and refinement policy.
///
/// `circle_nodes` is the starting number of trapezoid nodes on a circle (and
/// the angular resolution of sampling grids), `radial_nodes` the starting
/// Gauss–Legendre order for radial/axial integrals (and the radial resolution
/// of sampling grids). Each refinement doubles both.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub circle_nodes: usize,
    pub radial_nodes: usize,
    pub refinement_limit: usize,
    pub abs_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            circle_nodes: 512,
            radial_nodes: 64,
            refinement_limit: 12,
            abs_tol: 1e-10,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.circle_nodes == 0 || self.radial_nodes == 0 || self.refinement_limit == 0 {
            return Err(Error::ConfigError(
                "node counts and refinement limit must be positive".into(),
            ));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::ConfigError("abs_tol must be positive".into()));
        }
        Ok(())
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }
}

/// A refined integral (or mean) together with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Integral {
    pub value: f64,
    pub est_error: f64,
    pub nodes: usize,
}

impl Integral {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            est_error: 0.0,
            nodes: 0,
        }
    }
}

/// Neumaier-compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().total()
}

/// Successive trapezoid means of a 2π-periodic function, `n0, 2 n0, 4 n0, ...`
/// nodes. Each level reuses the sum of the previous one.
pub struct PeriodicTrapezoid<F> {
    f: F,
    nodes: usize,
    sum: CompensatedSum,
    started: bool,
}

impl<F: Fn(f64) -> f64> PeriodicTrapezoid<F> {
    pub fn new(f: F, n0: usize) -> Self {
        Self {
            f,
            nodes: n0.max(1),
            sum: CompensatedSum::new(),
            started: false,
        }
    }
}

impl<F: Fn(f64) -> f64> Iterator for PeriodicTrapezoid<F> {
    type Item = (usize, f64);

    fn next(&mut self) -> Option<Self::Item> {
        if !self.started {
            self.started = true;
            let h = 2.0 * PI / self.nodes as f64;
            for j in 0..self.nodes {
                self.sum.add((self.f)(h * j as f64));
            }
        } else {
            let h = 2.0 * PI / self.nodes as f64;
            for j in 0..self.nodes {
                self.sum.add((self.f)(h * (j as f64 + 0.5)));
            }
            self.nodes *= 2;
        }
        Some((self.nodes, self.sum.total() / self.nodes as f64))
    }
}

/// Drive a sequence of refinement levels until two consecutive transformed
/// values agree within `spec.abs_tol`.
pub fn converge<I, T>(levels: I, transform: T, spec: &QuadratureSpec) -> Result<Integral>
where
    I: IntoIterator<Item = (usize, f64)>,
    T: Fn(f64) -> f64,
{
    let mut levels = levels.into_iter();
    let Some((mut nodes, first)) = levels.next() else {
        return Err(Error::NoConvergence {
            est_error: f64::INFINITY,
            abs_tol: spec.abs_tol,
            nodes: 0,
        });
    };
    let mut prev = transform(first);
    let mut est_error = f64::INFINITY;
    for _ in 0..spec.refinement_limit {
        let Some((n, raw)) = levels.next() else { break };
        let value = transform(raw);
        est_error = (value - prev).abs();
        nodes = n;
        prev = value;
        if est_error <= spec.abs_tol {
            return Ok(Integral {
                value,
                est_error,
                nodes,
            });
        }
    }
    Err(Error::NoConvergence {
        est_error,
        abs_tol: spec.abs_tol,
        nodes,
    })
}

/// `(1/2π) ∫₀^{2π} f(t) dt` with trapezoid refinement.
pub fn periodic_mean<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<Integral> {
    converge(PeriodicTrapezoid::new(f, spec.circle_nodes), |x| x, spec)
}

/// Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on the three-term recurrence for P_n.
    pub fn new(order: usize) -> Self {
        assert!(order > 0, "Gauss-Legendre order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Shared, lazily built rule of the given order.
    pub fn cached(order: usize) -> Arc<GaussLegendre> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(rule) = cache.lock().expect("rule cache poisoned").get(&order) {
            return Arc::clone(rule);
        }
        let rule = Arc::new(GaussLegendre::new(order));
        cache
            .lock()
            .expect("rule cache poisoned")
            .entry(order)
            .or_insert(rule)
            .clone()
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights mapped to [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        compensated_sum(self.mapped(a, b).map(|(x, w)| w * f(x)))
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// `∫_a^b f` by Gauss–Legendre, doubling the order from `n0` until two
/// successive orders agree within `spec.abs_tol`.
pub fn gauss_legendre_refined<F: Fn(f64) -> f64>(
    a: f64,
    b: f64,
    f: F,
    n0: usize,
    spec: &QuadratureSpec,
) -> Result<Integral> {
    let levels = std::iter::successors(Some(n0.max(1)), |n| Some(n * 2))
        .map(|n| (n, GaussLegendre::cached(n).integrate(a, b, &f)));
    converge(levels, |x| x, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gauss_legendre_is_exact_to_degree_2n_minus_1() {
        for n in [1, 2, 5, 16, 33] {
            let rule = GaussLegendre::new(n);
            let deg = 2 * n - 1;
            let got = rule.integrate(0.0, 1.0, |x| x.powi(deg as i32));
            assert_abs_diff_eq!(got, 1.0 / (deg as f64 + 1.0), epsilon = 1e-14);
            assert_abs_diff_eq!(rule.weights().iter().sum::<f64>(), 2.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn nodes_are_sorted_and_symmetric() {
        let rule = GaussLegendre::new(40);
        for w in rule.nodes().windows(2) {
            assert!(w[0] < w[1]);
        }
        for (a, b) in rule.nodes().iter().zip(rule.nodes().iter().rev()) {
            assert_abs_diff_eq!(*a, -*b, epsilon = 1e-15);
        }
    }

    #[test]
    fn trapezoid_levels_are_nested() {
        let mut it = PeriodicTrapezoid::new(|t: f64| (3.0 * t).cos().powi(2), 8);
        let (n0, _) = it.next().unwrap();
        let (n1, m1) = it.next().unwrap();
        assert_eq!((n0, n1), (8, 16));
        assert_abs_diff_eq!(m1, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn periodic_mean_of_smooth_function() {
        // mean of e^{cos t} is I_0(1)
        let got = periodic_mean(|t| t.cos().exp(), &QuadratureSpec::default()).unwrap();
        assert_abs_diff_eq!(got.value, 1.266_065_877_752_008_4, epsilon = 1e-14);
    }

    #[test]
    fn no_convergence_is_reported() {
        let spec = QuadratureSpec {
            circle_nodes: 4,
            refinement_limit: 2,
            abs_tol: 1e-14,
            ..QuadratureSpec::default()
        };
        let err = periodic_mean(|t| (t - 1.0).abs(), &spec).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { .. }));
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let s = compensated_sum([1.0, 1e-17, -1.0, 1e-17]);
        assert_eq!(s, 2e-17);
    }

    #[test]
    fn invalid_spec_rejected() {
        let spec = QuadratureSpec {
            abs_tol: 0.0,
            ..QuadratureSpec::default()
        };
        assert!(spec.validate().is_err());
    }
}
