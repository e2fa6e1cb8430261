//! Circle functionals of planar maps: integral means `M_p(r, f)`, Hardy
//! norms, the `|u| log⁺|u|` and `u log u` means, Poisson extension, and the
//! radial square function `G[H]`.

use std::cell::Cell;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::planar::PlanarHarmonicMap;
use crate::quadrature::{
    converge, periodic_mean, GaussLegendre, Integral, PeriodicTrapezoid, QuadratureSpec,
};
use crate::series::ComplexSeries;

/// Smallest admissible `1 - |x|` for Poisson extension.
pub const POISSON_GAP_FLOOR: f64 = 1e-3;

/// Number of dyadic radii `1 - 2^{-j}` used by the Hardy-norm monotonicity
/// cross-check.
pub const HARDY_RADIUS_LEVELS: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanReport {
    pub r: f64,
    pub p: f64,
    pub value: f64,
    pub nodes: usize,
    pub est_error: f64,
}

pub fn log_plus(x: f64) -> f64 {
    if x > 1.0 {
        x.ln()
    } else {
        0.0
    }
}

/// `x log x` with the continuous extension `0 log 0 = 0`.
pub fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r <= 1.0 {
        Ok(())
    } else {
        Err(Error::DomainError(format!("radius {r} not in (0, 1]")))
    }
}

/// `M_p(r, f) = ((1/2π) ∫ |f(r e^{it})|^p dt)^{1/p}`.
pub fn circle_mean_p(
    map: &PlanarHarmonicMap,
    r: f64,
    p: f64,
    q: &QuadratureSpec,
) -> Result<MeanReport> {
    check_radius(r)?;
    if !(p > 0.0) {
        return Err(Error::DomainError(format!(
            "exponent p = {p} must be positive"
        )));
    }
    let integrand = |t: f64| map.eval(Complex64::from_polar(r, t)).norm().powf(p);
    let levels = PeriodicTrapezoid::new(integrand, q.circle_nodes);
    let out = if p == 1.0 {
        converge(levels, |m| m, q)?
    } else {
        converge(levels, |m| m.powf(1.0 / p), q)?
    };
    Ok(MeanReport {
        r,
        p,
        value: out.value,
        nodes: out.nodes,
        est_error: out.est_error,
    })
}

/// `‖f‖_p` for polynomial data: the mean at `r = 1`, after checking that the
/// means on the radii `1 - 2^{-j}` are nondecreasing.
pub fn hardy_norm_estimate(
    map: &PlanarHarmonicMap,
    p: f64,
    q: &QuadratureSpec,
) -> Result<MeanReport> {
    if !(p >= 1.0) {
        return Err(Error::DomainError(format!(
            "Hardy norm needs p >= 1, got {p}"
        )));
    }
    let boundary = circle_mean_p(map, 1.0, p, q)?;
    let mut prev: Option<MeanReport> = None;
    let radii = (1..=HARDY_RADIUS_LEVELS).map(|j| 1.0 - 0.5f64.powi(j as i32));
    for r in radii {
        let cur = circle_mean_p(map, r, p, q)?;
        check_monotone(prev.as_ref(), &cur, q)?;
        prev = Some(cur);
    }
    check_monotone(prev.as_ref(), &boundary, q)?;
    Ok(boundary)
}

fn check_monotone(prev: Option<&MeanReport>, cur: &MeanReport, q: &QuadratureSpec) -> Result<()> {
    let Some(prev) = prev else { return Ok(()) };
    let slack = q.abs_tol + prev.est_error + cur.est_error + 1e-14 * prev.value;
    if cur.value < prev.value - slack {
        return Err(Error::MonotonicityViolation {
            r_prev: prev.r,
            prev: prev.value,
            r_next: cur.r,
            next: cur.value,
        });
    }
    Ok(())
}

/// `(1/2π) ∫ |u| log⁺|u|` on the circle of radius `r`, `u = Re f`.
pub fn zygmund_plus(map: &PlanarHarmonicMap, r: f64, q: &QuadratureSpec) -> Result<Integral> {
    check_radius(r)?;
    periodic_mean(
        |t| {
            let u = map.u(Complex64::from_polar(r, t)).abs();
            u * log_plus(u)
        },
        q,
    )
}

/// `(1/2π) ∫ u log u` on the circle of radius `r`; requires `u > 0`.
pub fn entropy_u(map: &PlanarHarmonicMap, r: f64, q: &QuadratureSpec) -> Result<Integral> {
    check_radius(r)?;
    let min_u = Cell::new(f64::INFINITY);
    let result = periodic_mean(
        |t| {
            let u = map.u(Complex64::from_polar(r, t));
            min_u.set(min_u.get().min(u));
            if u > 0.0 {
                u * u.ln()
            } else {
                0.0
            }
        },
        q,
    );
    if min_u.get() <= 0.0 {
        return Err(Error::NonpositiveRealPart { min_u: min_u.get() });
    }
    result
}

/// Planar Poisson kernel `(1 - |x|²)/|x - η|²`, normalized against `dt/2π`.
pub fn poisson_kernel(x: Complex64, eta: Complex64) -> f64 {
    (1.0 - x.norm_sqr()) / (x - eta).norm_sqr()
}

fn check_gap(x: Complex64) -> Result<()> {
    let gap = 1.0 - x.norm();
    if gap < POISSON_GAP_FLOOR {
        Err(Error::KernelBlowup { gap })
    } else {
        Ok(())
    }
}

/// `(1/2π) ∫ P(x, e^{it}) φ(t) dt` with trapezoid refinement.
pub fn poisson_extend_circle<F: Fn(f64) -> f64>(
    boundary: F,
    x: Complex64,
    q: &QuadratureSpec,
) -> Result<Integral> {
    check_gap(x)?;
    periodic_mean(
        |t| poisson_kernel(x, Complex64::from_polar(1.0, t)) * boundary(t),
        q,
    )
}

/// Poisson extension of fixed samples `φ(2πj/N)`, `j = 0..N`.
pub fn poisson_extend_samples(samples: &[f64], x: Complex64) -> Result<f64> {
    check_gap(x)?;
    if samples.is_empty() {
        return Err(Error::DomainError("no boundary samples".into()));
    }
    let n = samples.len() as f64;
    let terms = samples.iter().enumerate().map(|(j, &phi)| {
        poisson_kernel(x, Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n)) * phi
    });
    Ok(crate::quadrature::compensated_sum(terms) / n)
}

/// Gauss–Legendre order that integrates `|H'(ρz)|²(1 - ρ)` exactly.
fn square_function_order(h_degree: usize, radial_nodes: usize) -> usize {
    let dh2 = 2 * h_degree.saturating_sub(1);
    ((dh2 + 2).max(32) / 2).max(radial_nodes)
}

fn square_with_derivative(dh: &ComplexSeries, rule: &GaussLegendre, z: Complex64) -> f64 {
    rule.integrate(0.0, 1.0, |rho| dh.eval(z * rho).norm_sqr() * (1.0 - rho))
        .max(0.0)
        .sqrt()
}

/// `G[H](z) = (∫₀¹ |H'(ρz)|² (1 - ρ) dρ)^{1/2}`.
pub fn calderon_square(h: &ComplexSeries, z: Complex64, radial_nodes: usize) -> f64 {
    let rule = GaussLegendre::cached(square_function_order(h.degree(), radial_nodes));
    square_with_derivative(&h.derivative(), &rule, z)
}

/// `(1/2π) ∫ G[H](e^{it}) dt`.
pub fn square_function_norm(h: &ComplexSeries, q: &QuadratureSpec) -> Result<Integral> {
    let rule = GaussLegendre::cached(square_function_order(h.degree(), q.radial_nodes));
    let dh = h.derivative();
    periodic_mean(
        |t| square_with_derivative(&dh, &rule, Complex64::from_polar(1.0, t)),
        q,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalderonRow {
    pub hardy_norm: f64,
    pub square_norm: f64,
}

impl CalderonRow {
    /// `‖H‖₁ / ‖G[H]‖₁`
    pub fn forward(&self) -> f64 {
        self.hardy_norm / self.square_norm
    }

    /// `‖G[H]‖₁ / ‖H‖₁`
    pub fn backward(&self) -> f64 {
        self.square_norm / self.hardy_norm
    }
}

/// Corpus maxima of `‖H‖₁/‖G[H]‖₁` and `‖G[H]‖₁/‖H‖₁`, the empirical lower
/// estimates of `c₁(1)` and `c₂(1)` in `‖H‖₁ <= c₁ ‖G[H]‖₁ <= c₂ ‖H‖₁`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalderonEstimate {
    pub c1_lower: f64,
    pub c2_lower: f64,
    pub rows: Vec<CalderonRow>,
}

impl CalderonEstimate {
    pub fn product(&self) -> f64 {
        self.c1_lower * self.c2_lower
    }
}

pub fn calderon_ratio_estimate(
    corpus: &[ComplexSeries],
    q: &QuadratureSpec,
) -> Result<CalderonEstimate> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut rows = Vec::with_capacity(corpus.len());
    for h in corpus {
        if h.coeff(0).norm() != 0.0 {
            return Err(Error::HypothesisViolation(format!(
                "H(0) = {} is not zero",
                h.coeff(0)
            )));
        }
        let hardy = circle_mean_p(&PlanarHarmonicMap::analytic(h.clone()), 1.0, 1.0, q)?;
        let square = square_function_norm(h, q)?;
        if !(hardy.value > 0.0 && square.value > 0.0) {
            return Err(Error::DomainError("zero series in corpus".into()));
        }
        rows.push(CalderonRow {
            hardy_norm: hardy.value,
            square_norm: square.value,
        });
    }
    let c1_lower = rows.iter().map(CalderonRow::forward).fold(0.0, f64::max);
    let c2_lower = rows.iter().map(CalderonRow::backward).fold(0.0, f64::max);
    Ok(CalderonEstimate {
        c1_lower,
        c2_lower,
        rows,
    })
}
