//! Spectral zeta functions and heat kernels of the Laplacian on the unit
//! n-sphere.
//!
//! The crate is organised bottom-up:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`specfun`] | Gamma, Riemann and Hurwitz zeta, Gegenbauer ratios, Legendre reference polynomials |
//! | [`spectrum`] | Eigenvalues `k(k+n-1)`, multiplicities, the shifted spectrum `(k+ρ)²`, sphere constants |
//! | [`kernels`] | Pointwise heat and zeta kernels, the heat trace, and the Mellin bridge between them |
//! | [`zeta`] | Global spectral zeta, the shifted ("regularized") zeta, closed forms for `n ≤ 4` |
//! | [`majorize`] | Weak/strong majorisation, partial-sum domination, Schur-convexity probes |
//! | [`kato`] | Discrete Kato inequality, semigroup domination, trace domination, Duhamel formula |
//!
//! Every infinite series returns an [`EvalResult`] carrying a certified
//! bound on the truncation error. An evaluator that cannot meet its
//! [`TruncationPolicy`] returns [`Error::Truncation`] rather than a
//! silently truncated value.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod kato;
pub mod kernels;
pub mod majorize;
pub mod quadrature;
mod series;
pub mod specfun;
pub mod spectrum;
pub mod zeta;

pub use error::{Error, Result};
pub use specfun::{EvalResult, TruncationPolicy};
pub use spectrum::{SpectrumEntry, SphereSpec};
