//! Affine harmonic maps `f(x) = c e₁ + a x` of the unit ball in `ℝⁿ`.
//!
//! Every quantity needed here depends on a point of the sphere only through
//! the angle `t` to `e₁`, so sphere means reduce to
//! `C_n ∫₀^π sin^{n-2} t · profile(t) dt` with
//! `C_n = Γ(n/2) / (√π Γ((n-1)/2))`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laplacian::GreenResidual;
use crate::quadrature::{
    compensated_sum, converge, gauss_legendre_refined, GaussLegendre, Integral, QuadratureSpec,
};
use crate::special::ln_gamma;

/// Floor on `|f|` for the radial-field Laplacian.
pub const AFFINE_TAU_F: f64 = 1e-12;

/// `f(x) = c e₁ + a x` on the unit ball of `ℝⁿ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineBallMap {
    pub n: usize,
    pub c: f64,
    pub a: f64,
}

impl AffineBallMap {
    pub fn new(n: usize, c: f64, a: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::DomainError(format!("dimension {n} < 2")));
        }
        if !(c >= 0.0 && a >= 0.0) {
            return Err(Error::DomainError(format!(
                "need c >= 0 and a >= 0, got c = {c}, a = {a}"
            )));
        }
        Ok(Self { n, c, a })
    }

    /// `f(x) = m² e₁ + m x` in `ℝ³`.
    pub fn m_family(m: f64) -> Result<Self> {
        Self::new(3, m * m, m)
    }

    /// `f(x) = e₁ + a x`.
    pub fn unit_shift(n: usize, a: f64) -> Result<Self> {
        Self::new(n, 1.0, a)
    }

    /// `f₁ = c + a x₁ > 0` on the closed ball.
    pub fn first_component_positive(&self) -> bool {
        self.c > self.a
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "point dimension mismatch");
        let mut out: Vec<f64> = x.iter().map(|xi| self.a * xi).collect();
        out[0] += self.c;
        out
    }

    /// `|f|` at a point at radius `rho` and angle `t` from `e₁`.
    pub fn modulus_polar(&self, rho: f64, t: f64) -> f64 {
        (self.c * self.c + self.a * self.a * rho * rho + 2.0 * self.a * self.c * rho * t.cos())
            .sqrt()
    }
}

/// `C_n = Γ(n/2) / (√π Γ((n-1)/2))`, the normalizer of `sin^{n-2} t dt`.
pub fn axial_constant(n: usize) -> f64 {
    assert!(n >= 2, "axial constant needs n >= 2");
    let n = n as f64;
    (ln_gamma(n / 2.0) - ln_gamma((n - 1.0) / 2.0)).exp() / PI.sqrt()
}

/// Surface area `ω_{n-1} = 2 π^{n/2} / Γ(n/2)` of the unit sphere in `ℝⁿ`.
pub fn sphere_area(n: usize) -> f64 {
    let nf = n as f64;
    2.0 * PI.powf(nf / 2.0) / ln_gamma(nf / 2.0).exp()
}

/// Green-function constant `c_n = 1 / ((n - 2) ω_{n-1})`, `n >= 3`.
pub fn green_constant(n: usize) -> f64 {
    assert!(n >= 3, "green constant needs n >= 3");
    1.0 / ((n as f64 - 2.0) * sphere_area(n))
}

fn sin_power(t: f64, n: usize) -> f64 {
    if n == 2 {
        1.0
    } else {
        t.sin().powi(n as i32 - 2)
    }
}

/// `C_n ∫₀^π sin^{n-2} t · profile(t) dt`: the normalized sphere mean of a
/// function of the angle to `e₁`.
pub fn axial_mean<F: Fn(f64) -> f64>(n: usize, profile: F, q: &QuadratureSpec) -> Result<Integral> {
    axial_mean_split(n, profile, &[], q)
}

/// As [`axial_mean`], integrating separately between the given angles in
/// `(0, π)` so that kinks of `profile` sit on panel ends.
pub fn axial_mean_split<F: Fn(f64) -> f64>(n: usize, profile: F, breaks: &[f64], q: &QuadratureSpec) -> Result<Integral> {
    let cn = axial_constant(n);
    let mut edges = vec![0.0];
    edges.extend(breaks.iter().copied().filter(|&t| t > 0.0 && t < PI));
    edges.push(PI);
    let mut total = Integral::exact(0.0);
    for w in edges.windows(2) {
        let part = gauss_legendre_refined(w[0], w[1], |t| sin_power(t, n) * profile(t), q.radial_nodes, q)?;
        total.value += part.value;
        total.est_error += part.est_error;
        total.nodes += part.nodes;
    }
    Ok(Integral {
        value: cn * total.value,
        est_error: cn * total.est_error,
        nodes: total.nodes,
    })
}

/// `X(f) = ‖f‖₁ - |f(0)|`, integrating `|f| - c` directly to avoid the
/// O(1) cancellation when `a` is small.
#[allow(non_snake_case)]
pub fn X_of(map: &AffineBallMap, q: &QuadratureSpec) -> Result<Integral> {
    let AffineBallMap { n, c, a } = *map;
    if a == 0.0 {
        return Ok(Integral::exact(0.0));
    }
    axial_mean(
        n,
        |t| {
            let lin = a * a + 2.0 * a * c * t.cos();
            lin / ((c * c + lin).max(0.0).sqrt() + c)
        },
        q,
    )
}

/// `w log w - c log c` for `w = c + δ`, arranged as
/// `δ log c + w log(1 + δ/c)`.
fn entropy_increment(c: f64, delta: f64) -> f64 {
    let w = c + delta;
    if w <= 0.0 {
        return -c * c.ln();
    }
    delta * c.ln() + w * (delta / c).ln_1p()
}

/// `Y(f) = ∫_S u log u dσ - u(0) log u(0)` with `u = f₁`.
#[allow(non_snake_case)]
pub fn Y_of(map: &AffineBallMap, q: &QuadratureSpec) -> Result<Integral> {
    let AffineBallMap { n, c, a } = *map;
    if a == 0.0 {
        return Ok(Integral::exact(0.0));
    }
    if c < a {
        return Err(Error::NonpositiveRealPart { min_u: c - a });
    }
    axial_mean(n, |t| entropy_increment(c, a * t.cos()), q)
}

/// `∫_S u log⁺ u dσ` for `u = f₁`.
pub fn zygmund_plus_axial(map: &AffineBallMap, q: &QuadratureSpec) -> Result<Integral> {
    let AffineBallMap { n, c, a } = *map;
    // u = 1 at cos t = (1 - c)/a
    let kink = if a > 0.0 && ((1.0 - c) / a).abs() < 1.0 {
        vec![((1.0 - c) / a).acos()]
    } else {
        Vec::new()
    };
    axial_mean_split(
        n,
        |t| {
            let u = c + a * t.cos();
            if u > 1.0 {
                u * u.ln()
            } else {
                0.0
            }
        },
        &kink,
        q,
    )
}

/// `φ(m) = (m/2)[(1+m)² log(m+1) - (2m + (m-1)² log(m-1) + 4m log m)]`.
///
/// The `log m` parts cancel exactly (`(1+m)² - (m-1)² - 4m = 0`). For
/// `m >= 2` the bracket is expanded in `x = 1/m`, giving
/// `φ = Σ_{i>=0} 2x^{2i} / ((2i+1)(2i+2)(2i+3))` with no cancellation; below
/// that `(1+m)² log1p(1/m) - (m-1)² log1p(-1/m) - 2m` is summed directly.
pub fn phi_of_m(m: f64) -> Result<f64> {
    if !(m > 1.0) {
        return Err(Error::DomainError(format!("phi(m) needs m > 1, got {m}")));
    }
    let inv = 1.0 / m;
    if m >= 2.0 {
        let x2 = inv * inv;
        let mut sum = 0.0;
        let mut power = 1.0;
        for i in 0..64 {
            let j = 2.0 * i as f64;
            let term = 2.0 * power / ((j + 1.0) * (j + 2.0) * (j + 3.0));
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
            power *= x2;
        }
        return Ok(sum);
    }
    let up = (1.0 + m).powi(2) * inv.ln_1p();
    let down = (m - 1.0).powi(2) * (-inv).ln_1p();
    Ok(0.5 * m * compensated_sum([up, -down, -2.0 * m]))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub n: usize,
    pub a: f64,
    pub x: f64,
    pub y: f64,
    pub ratio: f64,
    pub target: f64,
    pub deviation: f64,
}

/// `X/Y` for `f = e₁ + a x` over the given `a` values; the target is `n - 1`.
pub fn ratio_limit_scan(n: usize, a_values: &[f64], q: &QuadratureSpec) -> Result<Vec<RatioRow>> {
    a_values
        .iter()
        .map(|&a| {
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::DomainError(format!("scan needs 0 < a < 1, got {a}")));
            }
            let map = AffineBallMap::unit_shift(n, a)?;
            let x = X_of(&map, q)?.value;
            let y = Y_of(&map, q)?.value;
            let ratio = x / y;
            let target = n as f64 - 1.0;
            Ok(RatioRow {
                n,
                a,
                x,
                y,
                ratio,
                target,
                deviation: (ratio - target).abs() / target,
            })
        })
        .collect()
}

/// `Δ|f| = |f| ‖DS‖²` with `S = f/|f|`; for affine maps
/// `DS = (a/|f|)(I - S Sᵀ)`.
pub fn laplacian_abs_affine(map: &AffineBallMap, x: &[f64]) -> Result<f64> {
    let f = map.eval(x);
    let modulus = f.iter().map(|v| v * v).sum::<f64>().sqrt();
    if modulus <= AFFINE_TAU_F {
        return Err(Error::VanishingModulus {
            modulus,
            floor: AFFINE_TAU_F,
        });
    }
    let s: Vec<f64> = f.iter().map(|v| v / modulus).collect();
    let scale = map.a / modulus;
    let mut frob = 0.0;
    for i in 0..map.n {
        for j in 0..map.n {
            let id = if i == j { 1.0 } else { 0.0 };
            let entry = scale * (id - s[i] * s[j]);
            frob += entry * entry;
        }
    }
    Ok(modulus * frob)
}

/// `Δ(f₁ log f₁) = |∇f₁|² / f₁ = a² / f₁`.
pub fn laplacian_entropy_affine(map: &AffineBallMap, x: &[f64]) -> Result<f64> {
    let u = map.c + map.a * x[0];
    if u <= 0.0 {
        return Err(Error::NonpositiveRealPart { min_u: u });
    }
    Ok(map.a * map.a / u)
}

/// Sphere mean of `|f|`.
pub fn sphere_mean_abs(map: &AffineBallMap, q: &QuadratureSpec) -> Result<Integral> {
    if map.a == 0.0 {
        return Ok(Integral::exact(map.c));
    }
    axial_mean(map.n, |t| map.modulus_polar(1.0, t), q)
}

/// `sphere_mean - center - c₃ ∫_B lap(x) (1/|x| - 1) dV` in `ℝ³` for an
/// axially symmetric `lap(ρ, t)`. The volume element is
/// `2π ρ² sin t dρ dt`, so the integrand is `2π ρ(1 - ρ) sin t · lap`.
pub fn ball_green_residual_n3<L: Fn(f64, f64) -> Result<f64>>(
    sphere_mean: Integral,
    center: f64,
    lap: L,
    q: &QuadratureSpec,
) -> Result<GreenResidual> {
    let mut failure = None;
    let levels = (0..).map(|level: u32| {
        let order = q.radial_nodes << level;
        match volume_term(&lap, order) {
            Ok(v) => (order * order, v),
            Err(e) => {
                failure.get_or_insert(e);
                (order * order, f64::NAN)
            }
        }
    });
    let volume = converge(levels, |v| v, q);
    if let Some(e) = failure {
        return Err(e);
    }
    let volume = volume?;
    let rhs = center + green_constant(3) * volume.value;
    Ok(GreenResidual {
        lhs: sphere_mean.value,
        rhs,
        residual: sphere_mean.value - rhs,
        est_error: sphere_mean.est_error + green_constant(3) * volume.est_error,
    })
}

fn volume_term<L: Fn(f64, f64) -> Result<f64>>(lap: &L, order: usize) -> Result<f64> {
    let rule = GaussLegendre::cached(order);
    let mut terms = Vec::with_capacity(order * order);
    for (rho, wr) in rule.mapped(0.0, 1.0) {
        for (t, wt) in rule.mapped(0.0, PI) {
            terms.push(wr * wt * 2.0 * PI * rho * (1.0 - rho) * t.sin() * lap(rho, t)?);
        }
    }
    Ok(compensated_sum(terms))
}

/// `‖f‖₁ = |f(0)| + c₃ ∫_B Δ|f| (1/|x| - 1) dV` for an affine map in `ℝ³`.
pub fn ball_green_identity_n3(map: &AffineBallMap, q: &QuadratureSpec) -> Result<GreenResidual> {
    if map.n != 3 {
        return Err(Error::DomainError(format!(
            "ball Green identity is implemented for n = 3, got {}",
            map.n
        )));
    }
    if map.a == 0.0 {
        return Ok(GreenResidual {
            lhs: map.c,
            rhs: map.c,
            residual: 0.0,
            est_error: 0.0,
        });
    }
    if !map.first_component_positive() {
        return Err(Error::HypothesisViolation(format!(
            "need c > a, got c = {}, a = {}",
            map.c, map.a
        )));
    }
    let mean = sphere_mean_abs(map, q)?;
    ball_green_residual_n3(
        mean,
        map.c,
        |rho, t| laplacian_abs_affine(map, &[rho * t.cos(), rho * t.sin(), 0.0]),
        q,
    )
}

/// Calibration of the `c₃ = 1/(4π)` convention with `u(x) = |x|²`
/// (`Δu = 6`, sphere mean 1, `u(0) = 0`).
pub fn green_calibration_n3(q: &QuadratureSpec) -> Result<GreenResidual> {
    ball_green_residual_n3(Integral::exact(1.0), 0.0, |_, _| Ok(6.0), q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn q() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn axial_constants() {
        assert_abs_diff_eq!(axial_constant(3), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(axial_constant(2), 1.0 / PI, epsilon = 1e-15);
        assert_abs_diff_eq!(green_constant(3), 1.0 / (4.0 * PI), epsilon = 1e-16);
        assert_abs_diff_eq!(sphere_area(2), 2.0 * PI, epsilon = 1e-14);
    }

    #[test]
    fn axial_mean_basics() {
        for n in 2..=8 {
            assert_abs_diff_eq!(
                axial_mean(n, |_| 1.0, &q()).unwrap().value,
                1.0,
                epsilon = 1e-13
            );
            assert_abs_diff_eq!(
                axial_mean(n, f64::cos, &q()).unwrap().value,
                0.0,
                epsilon = 1e-14
            );
        }
        let m = axial_mean(3, |t| t.cos().powi(2), &q()).unwrap().value;
        assert_abs_diff_eq!(m, 1.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn constant_maps_are_exact() {
        let map = AffineBallMap::new(4, 2.0, 0.0).unwrap();
        assert_eq!(X_of(&map, &q()).unwrap().value, 0.0);
        assert_eq!(Y_of(&map, &q()).unwrap().value, 0.0);
        assert_eq!(
            ball_green_identity_n3(&AffineBallMap::new(3, 2.0, 0.0).unwrap(), &q())
                .unwrap()
                .residual,
            0.0
        );
    }

    #[test]
    fn y_requires_positive_first_component() {
        let map = AffineBallMap::new(3, 0.5, 1.0).unwrap();
        assert!(matches!(
            Y_of(&map, &q()),
            Err(Error::NonpositiveRealPart { .. })
        ));
    }

    #[test]
    fn phi_domain() {
        assert!(phi_of_m(1.0).is_err());
        assert!(phi_of_m(0.5).is_err());
        assert!(phi_of_m(1.5).unwrap().is_finite());
    }

    #[test]
    fn affine_laplacian_closed_form() {
        for n in 2..=6 {
            let map = AffineBallMap::new(n, 1.0, 0.3).unwrap();
            let origin = vec![0.0; n];
            assert_abs_diff_eq!(
                laplacian_abs_affine(&map, &origin).unwrap(),
                0.09 * (n as f64 - 1.0),
                epsilon = 1e-15
            );
            let mut x = vec![0.0; n];
            x[0] = -0.4;
            x[n - 1] = 0.5;
            let fx = map.eval(&x);
            let modulus = fx.iter().map(|v| v * v).sum::<f64>().sqrt();
            assert_abs_diff_eq!(
                laplacian_abs_affine(&map, &x).unwrap(),
                0.09 * (n as f64 - 1.0) / modulus,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn eval_shape() {
        let map = AffineBallMap::new(3, 2.0, 0.5).unwrap();
        assert_eq!(map.eval(&[1.0, -1.0, 0.0]), vec![2.5, -0.5, 0.0]);
        assert!(AffineBallMap::new(1, 1.0, 0.1).is_err());
    }
}
