//! Truncated complex power series `Σ c_j z^j`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the degree of any series built by map construction.
pub const DEFAULT_DEGREE_CAP: usize = 64;

/// Coefficients of a polynomial in `z`; index `j` holds the coefficient of
/// `z^j`. An empty series is the zero series.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComplexSeries {
    coeffs: Vec<Complex64>,
}

impl ComplexSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// `c · z^j`
    pub fn monomial(c: Complex64, j: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); j + 1];
        coeffs[j] = c;
        Self::new(coeffs)
    }

    /// The identity series `z`.
    pub fn z() -> Self {
        Self::monomial(Complex64::new(1.0, 0.0), 1)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs.get(j).copied().unwrap_or_default()
    }

    /// `len(coeffs) - 1`; the zero series has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in a single Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let mut p = zero;
        let mut dp = zero;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| c * j as f64)
                .collect(),
        )
    }

    /// Termwise antiderivative with the given constant term.
    pub fn antiderivative(&self, constant: Complex64) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(constant);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, &c)| c / (j as f64 + 1.0)),
        );
        Self::new(coeffs)
    }

    /// Drop all terms of degree greater than `degree`.
    pub fn truncated(&self, degree: usize) -> Self {
        Self::new(self.coeffs.iter().take(degree + 1).copied().collect())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Product truncated to `degree`.
    pub fn mul_truncated(&self, other: &Self, degree: usize) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(degree + 1);
        let mut out = vec![Complex64::new(0.0, 0.0); len];
        for (i, &a) in self.coeffs.iter().enumerate().take(len) {
            for (j, &b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `1 / self` truncated to `degree`, by the coefficient recursion
    /// `r_0 = 1/a_0`, `r_j = -(Σ_{i=1..j} a_i r_{j-i}) / a_0`.
    pub fn reciprocal(&self, degree: usize) -> Result<Self> {
        let a0 = self.coeff(0);
        if a0.norm() == 0.0 {
            return Err(Error::DomainError(
                "reciprocal of a series with zero constant term".into(),
            ));
        }
        let inv0 = a0.inv();
        let mut r = Vec::with_capacity(degree + 1);
        r.push(inv0);
        for j in 1..=degree {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 1..=j.min(self.degree()) {
                acc += self.coeffs[i] * r[j - i];
            }
            r.push(-acc * inv0);
        }
        Ok(Self::new(r))
    }

    /// `Σ_{j≥1} |c_j|`, a bound on `|self(z) - self(0)|` over the closed disk.
    pub fn tail_l1(&self) -> f64 {
        self.coeffs.iter().skip(1).map(|c| c.norm()).sum()
    }

    /// `Σ |c_j|`, a bound on `|self(z)|` over the closed disk.
    pub fn l1(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }
}

impl Add for &ComplexSeries {
    type Output = ComplexSeries;

    fn add(self, rhs: &ComplexSeries) -> ComplexSeries {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ComplexSeries::new((0..len).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &ComplexSeries {
    type Output = ComplexSeries;

    fn sub(self, rhs: &ComplexSeries) -> ComplexSeries {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ComplexSeries::new((0..len).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Neg for &ComplexSeries {
    type Output = ComplexSeries;

    fn neg(self) -> ComplexSeries {
        ComplexSeries::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl Mul for &ComplexSeries {
    type Output = ComplexSeries;

    /// Full (untruncated) product.
    fn mul(self, rhs: &ComplexSeries) -> ComplexSeries {
        let degree = [self.coeffs.len(), rhs.coeffs.len()].iter().sum();
        self.mul_truncated(rhs, degree)
    }
}
