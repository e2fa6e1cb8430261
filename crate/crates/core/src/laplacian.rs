//! Closed-form Laplacians of `|f|` and `u log u` for planar harmonic maps,
//! the pointwise ratio bound `Δ|f| <= K² Δ(u log u)`, the disk Green
//! representation of `|f(0)|`, and the maximization of
//! `Φ(ξ) = ξ - λ ξ log ξ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::circle_mean_p;
use crate::planar::{PlanarHarmonicMap, PolarGrid};
use crate::quadrature::{compensated_sum, converge, GaussLegendre, QuadratureSpec};

/// Floor on `|f|` below which `Δ|f|` is not evaluated.
pub const DEFAULT_TAU_F: f64 = 1e-8;

/// `Δ|f| = |g' - (f/f̄) h'|² / |f|`.
pub fn laplacian_abs_f(map: &PlanarHarmonicMap, z: Complex64) -> Result<f64> {
    let jet = map.jet(z);
    let modulus = jet.f.norm();
    if modulus <= DEFAULT_TAU_F {
        return Err(Error::VanishingModulus {
            modulus,
            floor: DEFAULT_TAU_F,
        });
    }
    let phase = jet.f / jet.f.conj();
    Ok((jet.dg - phase * jet.dh).norm_sqr() / modulus)
}

/// `Δ(u log u) = |∇u|²/u = |g' + h'|²/u`.
pub fn laplacian_ulogu(map: &PlanarHarmonicMap, z: Complex64) -> Result<f64> {
    let jet = map.jet(z);
    let u = jet.f.re;
    if u <= 0.0 {
        return Err(Error::NonpositiveRealPart { min_u: u });
    }
    Ok((jet.dg + jet.dh).norm_sqr() / u)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaplacianSample {
    pub x: f64,
    pub y: f64,
    pub lap_abs_f: f64,
    pub lap_ulogu: f64,
    pub ratio: f64,
}

/// Both Laplacians at `z`. A `0/0` ratio (constant maps, critical points of
/// `g + h` where `h' = 0` too) is reported as 0.
pub fn laplacian_sample(map: &PlanarHarmonicMap, z: Complex64) -> Result<LaplacianSample> {
    let lap_abs_f = laplacian_abs_f(map, z)?;
    let lap_ulogu = laplacian_ulogu(map, z)?;
    let ratio = if lap_ulogu > 0.0 {
        lap_abs_f / lap_ulogu
    } else if lap_abs_f == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(LaplacianSample {
        x: z.re,
        y: z.im,
        lap_abs_f,
        lap_ulogu,
        ratio,
    })
}

pub fn laplacian_grid(map: &PlanarHarmonicMap, grid: &PolarGrid) -> Result<Vec<LaplacianSample>> {
    grid.points().map(|z| laplacian_sample(map, z)).collect()
}

/// For a K-quasiregular map with `u > 0` this is at most `K²`.
/// The lemma bounds this by `K²`.
pub fn larmi_ratio_check(map: &PlanarHarmonicMap, grid: &QuadratureSpec) -> Result<f64> {
    let grid = PolarGrid::from_spec(grid, 1.0);
    grid.points().try_fold(
        0.0f64,
        |acc, z| Ok(acc.max(laplacian_sample(map, z)?.ratio)),
    )
}

/// Both sides of `|f(0)| = (1/2π)∫|f(re^{it})|dt - (1/2π)∫_{|z|<r} Δ|f| log(r/|z|) dA`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenResidual {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub est_error: f64,
}

/// Disk Green identity for `|f|` at radius `r`.
///
/// The area term is `r² ∫₀¹ s log(1/s) A(s) ds` with `A(s)` the angular mean
/// of `Δ|f|` on `|z| = rs`; substituting `s = t⁴` turns the weight into
/// `16 t⁷ log(1/t)`, smooth enough for Gauss–Legendre. Both the angular
/// trapezoid and the radial order are doubled per refinement level.
pub fn disk_green_identity(
    map: &PlanarHarmonicMap,
    r: f64,
    q: &QuadratureSpec,
) -> Result<GreenResidual> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::DomainError(format!("radius {r} not in (0, 1]")));
    }
    let lhs = map.eval(Complex64::new(0.0, 0.0)).norm();
    let boundary = circle_mean_p(map, r, 1.0, q)?;

    let mut failure = None;
    let levels = (0..).map(|level: u32| {
        let angular = q.circle_nodes << level;
        let radial = q.radial_nodes << level;
        match area_term(map, r, angular, radial) {
            Ok(v) => Some((angular * radial, v)),
            Err(e) => {
                failure.get_or_insert(e);
                None
            }
        }
    });
    let levels = levels.map_while(|level| level);
    let area = converge(levels, |x| x, q);
    if let Some(e) = failure {
        return Err(e);
    }
    let area = area?;
    let rhs = boundary.value - area.value;
    Ok(GreenResidual {
        lhs,
        rhs,
        residual: lhs - rhs,
        est_error: boundary.est_error + area.est_error,
    })
}

fn area_term(map: &PlanarHarmonicMap, r: f64, angular: usize, radial: usize) -> Result<f64> {
    let rule = GaussLegendre::cached(radial);
    let mut terms = Vec::with_capacity(radial);
    for (t, w) in rule.mapped(0.0, 1.0) {
        let s = t.powi(4);
        let rho = r * s;
        let mut ring = Vec::with_capacity(angular);
        for i in 0..angular {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / angular as f64;
            ring.push(laplacian_abs_f(map, Complex64::from_polar(rho, theta))?);
        }
        let mean = compensated_sum(ring) / angular as f64;
        terms.push(w * 16.0 * t.powi(7) * (-t.ln()) * mean);
    }
    Ok(r * r * compensated_sum(terms))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiAnalysis {
    pub lambda: f64,
    pub xi_star: f64,
    pub phi_max: f64,
    /// Maximizer located by a grid scan over (0, 3].
    pub xi_scan: f64,
}

/// `Φ(ξ) = ξ - λ ξ log ξ`.
pub fn phi(lambda: f64, xi: f64) -> f64 {
    xi - lambda * xi * xi.ln()
}

/// Closed-form maximizer `ξ* = e^{-1 + 1/λ}` and maximum `λ ξ*`, confirmed
/// by a three-stage grid scan (steps 1e-3, 1e-6, 1e-9).
pub fn phi_analysis(lambda: f64) -> Result<PhiAnalysis> {
    if !(lambda >= 1.0) {
        return Err(Error::DomainError(format!(
            "lambda = {lambda} must be >= 1"
        )));
    }
    let xi_star = (-1.0 + 1.0 / lambda).exp();
    let phi_max = lambda * xi_star;
    let mut best = scan_argmax(lambda, 1e-3, 3.0, 1e-3);
    for step in [1e-6, 1e-9] {
        let lo = (best - 2000.0 * step).max(step);
        best = scan_argmax(lambda, lo, best + 2000.0 * step, step);
    }
    Ok(PhiAnalysis {
        lambda,
        xi_star,
        phi_max,
        xi_scan: best,
    })
}

fn scan_argmax(lambda: f64, lo: f64, hi: f64, step: f64) -> f64 {
    let count = ((hi - lo) / step).round() as usize;
    (0..=count)
        .map(|i| lo + step * i as f64)
        .fold((lo, f64::NEG_INFINITY), |(bx, bv), x| {
            let v = phi(lambda, x);
            if v > bv {
                (x, v)
            } else {
                (bx, bv)
            }
        })
        .0
}
