//! Scalar special functions used throughout the crate.
//!
//! Real arguments only. Series evaluators return an [`EvalResult`] whose
//! `tail_bound` is a rigorous bound on the truncation error.

mod gegenbauer;
mod hurwitz;
mod legendre;

pub use gegenbauer::{gegenbauer_ratio, gegenbauer_ratios, GegenbauerRatios};
pub use hurwitz::{hurwitz_via_binomial, hurwitz_zeta, riemann_zeta};
pub use legendre::{legendre_ode_residual, legendre_rodrigues_oracle, LegendrePoly, MAX_RODRIGUES_DEGREE};

pub(crate) use hurwitz::power_sum;

use crate::error::{domain, Error, Result};

/// Value of a truncated series together with a certified error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub terms_used: usize,
    /// Absolute bound on `|value - exact|` coming from truncation.
    pub tail_bound: f64,
}

impl EvalResult {
    pub fn new(value: f64, terms_used: usize, tail_bound: f64) -> Self {
        debug_assert!(tail_bound.is_finite() && tail_bound >= 0.0);
        Self {
            value,
            terms_used,
            tail_bound,
        }
    }

    /// Exact value (closed form, no truncation).
    pub fn exact(value: f64) -> Self {
        Self::new(value, 0, 0.0)
    }

    /// True when the certified intervals of `self` and `other` are within
    /// `slack` of each other.
    pub fn agrees_with(&self, other: &EvalResult, slack: f64) -> bool {
        (self.value - other.value).abs() <= self.tail_bound + other.tail_bound + slack
    }
}

/// How far an infinite series may be summed and how small its tail must be.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub max_k: usize,
    pub tol: f64,
}

impl TruncationPolicy {
    pub fn new(max_k: usize, tol: f64) -> Result<Self> {
        if max_k == 0 {
            return Err(Error::Usage("max_k must be positive".into()));
        }
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(Error::Usage(format!("tol must be a positive finite number, got {tol}")));
        }
        Ok(Self { max_k, tol })
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            max_k: 2_000_000,
            tol: 1e-10,
        }
    }
}

/// Γ(x) for real x > 0.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("gamma_fn requires x > 0, got {x}")));
    }
    Ok(statrs::function::gamma::gamma(x))
}

/// ln Γ(x) for real x > 0.
pub fn ln_gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("ln_gamma_fn requires x > 0, got {x}")));
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}

/// Regularized upper incomplete gamma Q(a, x) = Γ(a, x)/Γ(a).
pub(crate) fn gamma_upper_regularized(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    statrs::function::gamma::gamma_ur(a, x)
}
