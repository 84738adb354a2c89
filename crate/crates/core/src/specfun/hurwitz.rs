//! Riemann and Hurwitz zeta at real s > 1.
//!
//! `Σ_{k≥0} (k+a)^{-s}` is summed directly for `k < N` and the remainder is
//! taken from the Euler–Maclaurin formula. For `f(x) = (x+a)^{-s}` every
//! even derivative is positive, so the Euler–Maclaurin remainder after `p`
//! correction terms has the sign of, and is no larger than, the first
//! omitted correction. That term is the certified `tail_bound`.

use super::{EvalResult, TruncationPolicy};
use crate::error::{domain, Error, Result};

/// B_{2j} for j = 1..=13.
const BERNOULLI_EVEN: [f64; 13] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
];

const MIN_DIRECT_TERMS: usize = 16;

/// Σ_{k≥0} (k+a)^{-s} for s > 1, a > 0.
pub(crate) fn power_sum(s: f64, a: f64, policy: &TruncationPolicy) -> Result<EvalResult> {
    debug_assert!(s > 1.0 && a > 0.0);
    let mut n = MIN_DIRECT_TERMS.min(policy.max_k);
    loop {
        let (value, bound) = power_sum_at(s, a, n);
        if bound <= policy.tol {
            return Ok(EvalResult::new(value, n, bound));
        }
        if n >= policy.max_k {
            return Err(Error::Truncation {
                what: "power sum",
                terms: n,
                bound,
                tol: policy.tol,
            });
        }
        n = (2 * n).min(policy.max_k);
    }
}

/// Direct sum of the first `n` terms plus Euler–Maclaurin remainder;
/// returns (value, remainder bound).
fn power_sum_at(s: f64, a: f64, n: usize) -> (f64, f64) {
    // smallest terms first
    let mut direct = 0.0;
    for k in (0..n).rev() {
        direct += (k as f64 + a).powf(-s);
    }
    let x = n as f64 + a;
    let fx = x.powf(-s);
    let mut tail = x * fx / (s - 1.0) + 0.5 * fx;

    // term_j = B_{2j}/(2j)! · s(s+1)…(s+2j−2) · x^{−s−2j+1}
    let inv_x2 = 1.0 / (x * x);
    let mut rising = s; // s(s+1)…(s+2j−2)
    let mut fact = 2.0; // (2j)!
    let mut xpow = fx / x; // x^{−s−2j+1}
    let p = BERNOULLI_EVEN.len() - 1;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate().take(p) {
        tail += b / fact * rising * xpow;
        let j1 = (j + 1) as f64; // current j is j1; advance to j1 + 1
        rising *= (s + 2.0 * j1 - 1.0) * (s + 2.0 * j1);
        fact *= (2.0 * j1 + 1.0) * (2.0 * j1 + 2.0);
        xpow *= inv_x2;
    }
    let bound = (BERNOULLI_EVEN[p] / fact * rising * xpow).abs();
    (direct + tail, bound)
}

/// ζ_R(s) = Σ_{k≥1} k^{-s} for real s > 1.
pub fn riemann_zeta(s: f64, policy: &TruncationPolicy) -> Result<EvalResult> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(domain(format!(
            "riemann_zeta requires s > 1 (no continuation), got {s}"
        )));
    }
    power_sum(s, 1.0, policy)
}

/// ζ_R(s) − 1, evaluated without cancellation for large s.
pub(crate) fn zeta_minus_one(s: f64, policy: &TruncationPolicy) -> Result<EvalResult> {
    debug_assert!(s > 1.0);
    power_sum(s, 2.0, policy)
}

/// ζ_H(s, a) = Σ_{k≥0} (k+a)^{-s} for real s > 1 and 0 < a ≤ 1.
pub fn hurwitz_zeta(s: f64, a: f64, policy: &TruncationPolicy) -> Result<EvalResult> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(domain(format!("hurwitz_zeta requires s > 1, got {s}")));
    }
    if !(a > 0.0 && a <= 1.0) {
        return Err(domain(format!("hurwitz_zeta requires 0 < a <= 1, got {a}")));
    }
    power_sum(s, a, policy)
}

/// ζ_H(2s, ρ) through the binomial expansion in ρ:
///
/// `ρ^{−2s} + Σ_{m≥0} (−1)^m Γ(2s+m)/(m! Γ(2s)) ρ^m ζ_R(2s+m)`.
///
/// The `ζ_R(2s+m) = 1 + (ζ_R(2s+m) − 1)` split is applied so that the
/// unit parts sum in closed form to `(1+ρ)^{−2s}`; the remaining series
/// alternates with terms bounded by `p_m 2^{−(2s+m)}` and is truncated
/// after `m_max` with the alternating-series bound.
pub fn hurwitz_via_binomial(s: f64, rho: f64, m_max: usize) -> Result<EvalResult> {
    if !(2.0 * s > 1.0) || !s.is_finite() {
        return Err(domain(format!("hurwitz_via_binomial requires 2s > 1, got s = {s}")));
    }
    if !(rho > 0.0 && rho < 1.0) {
        return Err(domain(format!("hurwitz_via_binomial requires 0 < rho < 1, got {rho}")));
    }
    if m_max == 0 {
        return Err(Error::Usage("m_max must be positive".into()));
    }
    let two_s = 2.0 * s;
    let inner = TruncationPolicy {
        max_k: 1 << 16,
        tol: 1e-22,
    };

    // p_m = Γ(2s+m)/(m! Γ(2s)) ρ^m
    let mut p = 1.0;
    let mut sum = 0.0;
    let mut eval_err = 0.0;
    for m in 0..=m_max {
        let z = zeta_minus_one(two_s + m as f64, &inner)?;
        let term = p * z.value;
        if !term.is_finite() {
            return Err(Error::Numeric(format!("binomial term overflow at m = {m}")));
        }
        if m % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        eval_err += p * z.tail_bound;
        p *= (two_s + m as f64) * rho / (m as f64 + 1.0);
    }

    // Terms decrease from m_max+1 on once (2s+m)ρ/(m+1) < 1 there.
    let next = m_max as f64 + 1.0;
    if (two_s + next) * rho / (next + 1.0) >= 1.0 {
        return Err(Error::Truncation {
            what: "binomial Hurwitz expansion (terms not yet decreasing)",
            terms: m_max + 1,
            bound: f64::INFINITY,
            tol: 0.0,
        });
    }
    let omitted = p * zeta_minus_one(two_s + next, &inner)?.value;
    let closed = rho.powf(-two_s) + (1.0 + rho).powf(-two_s);
    let rounding = 4.0 * f64::EPSILON * (closed.abs() + sum.abs());
    Ok(EvalResult::new(closed + sum, m_max + 1, omitted + eval_err + rounding))
}
