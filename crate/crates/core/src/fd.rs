//! Finite-difference Laplacians used to audit the closed forms.
//!
//! The stencil is the fourth-order five-point central second difference on
//! each axis. With step 1e-4 the division by `h²` amplifies rounding in the
//! sampled values by ~1e8, so for planar maps the stencil is fed with
//! *increments* `f(z + d) - f(z)` computed in double-double arithmetic. The
//! oracle only ever evaluates `f`; it never touches `g'` or `h'`.

use num_complex::Complex64;

use crate::error::Result;
use crate::laplacian::laplacian_sample;
use crate::planar::{PlanarHarmonicMap, PolarGrid};
use crate::series::ComplexSeries;

/// Default stencil step.
pub const FD_STEP: f64 = 1e-4;

/// Laplacian from increments: `increment(axis, d) = v(x + d e_axis) - v(x)`.
pub fn fd_laplacian_increments<F: Fn(usize, f64) -> f64>(
    dims: usize,
    step: f64,
    increment: F,
) -> f64 {
    (0..dims)
        .map(|axis| {
            (-increment(axis, 2.0 * step)
                + 16.0 * increment(axis, step)
                + 16.0 * increment(axis, -step)
                - increment(axis, -2.0 * step))
                / (12.0 * step * step)
        })
        .sum()
}

/// Plain `f64` stencil for an arbitrary function of `n` variables.
pub fn fd_laplacian<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], step: f64) -> f64 {
    let v0 = f(x);
    fd_laplacian_increments(x.len(), step, |axis, d| {
        let mut p = x.to_vec();
        p[axis] += d;
        f(&p) - v0
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd {
        hi: s,
        lo: b - (s - a),
    }
}

fn split(a: f64) -> (f64, f64) {
    let c = 134_217_729.0 * a;
    let hi = c - (c - a);
    (hi, a - hi)
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn sum_exact(a: f64, b: f64) -> Self {
        let (s, e) = two_sum(a, b);
        Dd { hi: s, lo: e }
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        quick_two_sum(s, e + self.lo + o.lo)
    }

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        quick_two_sum(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

#[derive(Debug, Clone, Copy)]
struct DdComplex {
    re: Dd,
    im: Dd,
}

impl DdComplex {
    fn add(self, o: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    fn mul(self, o: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.mul(o.re).add(self.im.mul(o.im).neg()),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    fn conj(self) -> DdComplex {
        DdComplex {
            re: self.re,
            im: self.im.neg(),
        }
    }

    fn from_c64(c: Complex64) -> DdComplex {
        DdComplex {
            re: Dd::from_f64(c.re),
            im: Dd::from_f64(c.im),
        }
    }
}

fn horner_dd(s: &ComplexSeries, z: DdComplex) -> DdComplex {
    s.coeffs().iter().rev().fold(
        DdComplex {
            re: Dd::ZERO,
            im: Dd::ZERO,
        },
        |acc, &c| acc.mul(z).add(DdComplex::from_c64(c)),
    )
}

fn eval_dd(map: &PlanarHarmonicMap, z: DdComplex) -> DdComplex {
    horner_dd(map.g(), z).add(horner_dd(map.h(), z).conj())
}

/// `f(z0 + d e_axis) - f(z0)` with the shifted point represented exactly.
fn increment(
    map: &PlanarHarmonicMap,
    z0: Complex64,
    base: DdComplex,
    axis: usize,
    d: f64,
) -> Complex64 {
    let shifted = if axis == 0 {
        DdComplex {
            re: Dd::sum_exact(z0.re, d),
            im: Dd::from_f64(z0.im),
        }
    } else {
        DdComplex {
            re: Dd::from_f64(z0.re),
            im: Dd::sum_exact(z0.im, d),
        }
    };
    let moved = eval_dd(map, shifted);
    Complex64::new(
        moved.re.add(base.re.neg()).to_f64(),
        moved.im.add(base.im.neg()).to_f64(),
    )
}

fn planar_stencil<F: Fn(Complex64, Complex64) -> f64>(
    map: &PlanarHarmonicMap,
    z: Complex64,
    step: f64,
    value_increment: F,
) -> f64 {
    let base = eval_dd(map, DdComplex::from_c64(z));
    let f0 = Complex64::new(base.re.to_f64(), base.im.to_f64());
    fd_laplacian_increments(2, step, |axis, d| {
        value_increment(f0, increment(map, z, base, axis, d))
    })
}

/// Finite-difference `Δ|f|` at `z`.
pub fn fd_laplacian_abs_f(map: &PlanarHarmonicMap, z: Complex64, step: f64) -> f64 {
    planar_stencil(map, z, step, |f0, df| {
        // |f0 + df| - |f0| = Re(df · conj(2 f0 + df)) / (|f0 + df| + |f0|)
        (df * (f0 * 2.0 + df).conj()).re / ((f0 + df).norm() + f0.norm())
    })
}

/// Finite-difference `Δ(u log u)` at `z`, `u = Re f > 0`.
pub fn fd_laplacian_ulogu(map: &PlanarHarmonicMap, z: Complex64, step: f64) -> f64 {
    planar_stencil(map, z, step, |f0, df| {
        let (u0, du) = (f0.re, df.re);
        // (u0 + du) log(u0 + du) - u0 log u0
        du * u0.ln() + (u0 + du) * (du / u0).ln_1p()
    })
}

/// Points with `|f|` or `u` at or below this level are left out of the
/// finite-difference comparison.
pub const AUDIT_FLOOR: f64 = 0.1;

/// Finite differences against closed forms over a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdAudit {
    pub points: usize,
    pub checked: usize,
    pub max_rel_abs: f64,
    pub max_rel_ulogu: f64,
    pub max_ratio: f64,
}

/// Compare `Δ|f|` and `Δ(u log u)` with their finite-difference values at
/// every grid point where `|f|, u > AUDIT_FLOOR`, and record the largest
/// ratio `Δ|f| / Δ(u log u)` over those points.
pub fn fd_audit(map: &PlanarHarmonicMap, grid: &PolarGrid, step: f64) -> Result<FdAudit> {
    let mut audit = FdAudit {
        points: grid.len(),
        checked: 0,
        max_rel_abs: 0.0,
        max_rel_ulogu: 0.0,
        max_ratio: 0.0,
    };
    for z in grid.points() {
        let f = map.eval(z);
        if f.norm() <= AUDIT_FLOOR || f.re <= AUDIT_FLOOR {
            continue;
        }
        let sample = laplacian_sample(map, z)?;
        let rel = |exact: f64, approx: f64| {
            if exact == approx {
                0.0
            } else {
                (exact - approx).abs() / exact.abs()
            }
        };
        audit.checked += 1;
        audit.max_rel_abs = audit.max_rel_abs.max(rel(sample.lap_abs_f, fd_laplacian_abs_f(map, z, step)));
        audit.max_rel_ulogu = audit.max_rel_ulogu.max(rel(sample.lap_ulogu, fd_laplacian_ulogu(map, z, step)));
        audit.max_ratio = audit.max_ratio.max(sample.ratio);
    }
    Ok(audit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn plain_stencil_on_quadratic() {
        // Δ(x² + 2y² + 3z²) = 12
        let lap = fd_laplacian(
            |p| p[0] * p[0] + 2.0 * p[1] * p[1] + 3.0 * p[2] * p[2],
            &[0.3, -0.2, 0.5],
            1e-3,
        );
        assert_relative_eq!(lap, 12.0, max_relative = 1e-9);
    }

    #[test]
    fn double_double_products_are_exact_for_split_values() {
        let a = Dd::from_f64(1.0 + 2f64.powi(-30));
        let p = a.mul(a);
        // (1 + 2^-30)^2 = 1 + 2^-29 + 2^-60, exactly representable as a pair
        assert_eq!(p.hi, 1.0 + 2f64.powi(-29));
        assert_eq!(p.lo, 2f64.powi(-60));
    }

    #[test]
    fn abs_of_identity_map() {
        // Δ|z| = 1/|z|
        let id = PlanarHarmonicMap::analytic(ComplexSeries::z());
        let z = Complex64::new(0.3, 0.4);
        assert_relative_eq!(
            fd_laplacian_abs_f(&id, z, FD_STEP),
            2.0,
            max_relative = 1e-9
        );
    }

    #[test]
    fn ulogu_of_affine_real_part() {
        // u = 2 + x: Δ(u log u) = 1/u
        let f = PlanarHarmonicMap::analytic(ComplexSeries::from_real(&[2.0, 1.0]));
        let z = Complex64::new(0.25, -0.1);
        assert_relative_eq!(
            fd_laplacian_ulogu(&f, z, FD_STEP),
            1.0 / 2.25,
            max_relative = 1e-9
        );
    }
}
