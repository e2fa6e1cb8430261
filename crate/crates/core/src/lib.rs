//! Numerical toolkit for harmonic quasiregular mappings of the unit disk and
//! the unit ball.
//!
//! * [`series`] and [`planar`]: polynomial maps `f = g + conj(h)` with
//!   controlled dilatation `|h'/g'|`.
//! * [`functionals`]: circle means `M_p(r, f)`, Hardy norms, the
//!   `|u| log⁺|u|` and `u log u` means, Poisson extension, the square
//!   function `G[H]`.
//! * [`laplacian`]: closed-form `Δ|f|`, `Δ(u log u)`, their ratio bound, the
//!   disk Green identity and the `Φ(ξ) = ξ - λ ξ log ξ` maximization.
//! * [`fd`]: finite-difference Laplacians used to audit the closed forms.
//! * [`ball`]: affine maps of the ball in `ℝⁿ`, axially symmetric sphere
//!   means, the `X/Y` functionals and the 3-ball Green identity.
//! * [`theorems`]: inequality verifiers producing [`theorems::TheoremReport`]s.
//! * [`scenarios`] and [`cli`]: the `hqz` scenario runner.
//!
//! The `examples/` directory has one runnable program per capability, e.g.
//! `cargo run --release --example qr_maps`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ball;
pub mod cli;
pub mod error;
pub mod fd;
pub mod functionals;
pub mod laplacian;
pub mod planar;
pub mod quadrature;
pub mod scenarios;
pub mod series;
pub mod special;
pub mod table;
pub mod theorems;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use planar::PlanarHarmonicMap;
pub use quadrature::QuadratureSpec;
pub use series::ComplexSeries;
