//! Laplace spectrum of the round unit sphere Sⁿ.
//!
//! Eigenvalues are `λ_k = k(k+n−1)` with multiplicity `d_k(n)`. The shifted
//! operator `Δ + ρ²`, `ρ = (n−1)/2`, has the perfect-square spectrum
//! `μ_k = (k+ρ)²` with the same multiplicities.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::specfun::gamma_fn;

/// Constants attached to Sⁿ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereSpec {
    pub n: usize,
    /// ρ = (n−1)/2
    pub rho: f64,
    /// Additive shift c = ρ².
    pub c: f64,
    /// Surface volume of Sⁿ.
    pub volume: f64,
}

impl SphereSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(domain("sphere dimension n must be >= 1"));
        }
        let rho = (n as f64 - 1.0) / 2.0;
        let half = (n as f64 + 1.0) / 2.0;
        let volume = 2.0 * PI.powf(half) / gamma_fn(half)?;
        Ok(Self {
            n,
            rho,
            c: rho * rho,
            volume,
        })
    }

    pub fn eigenvalue(&self, k: usize) -> f64 {
        eigenvalue(k, self.n)
    }

    pub fn shifted_eigenvalue(&self, k: usize) -> f64 {
        shifted_eigenvalue(k, self.n)
    }
}

/// Convenience alias for [`SphereSpec::new`].
pub fn sphere_spec(n: usize) -> Result<SphereSpec> {
    SphereSpec::new(n)
}

/// One rung of the spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub k: usize,
    pub lambda: f64,
    pub mu: f64,
    pub d: u128,
}

/// λ_k = k(k+n−1).
pub fn eigenvalue(k: usize, n: usize) -> f64 {
    (k as f64) * ((k + n) as f64 - 1.0)
}

/// μ_k = λ_k + ρ² = (k+ρ)². Computed as the square so that the identity
/// holds bit-exactly whenever `k+ρ` and its square are representable.
pub fn shifted_eigenvalue(k: usize, n: usize) -> f64 {
    let m = k as f64 + (n as f64 - 1.0) / 2.0;
    m * m
}

/// binom(m, r) in exact arithmetic, zero when m < r or m < 0.
fn binom(m: i64, r: u32) -> Result<u128> {
    if m < 0 || (m as u128) < r as u128 {
        return Ok(0);
    }
    let mut acc: u128 = 1;
    for i in 0..r as u128 {
        // acc * (m − i) / (i + 1) stays integral at every step
        acc = acc
            .checked_mul(m as u128 - i)
            .ok_or_else(|| Error::Range(format!("binomial({m}, {r}) overflows u128")))?
            / (i + 1);
    }
    Ok(acc)
}

/// d_k(n) = binom(k+n, n) − binom(k+n−2, n), exact.
pub fn multiplicity(k: usize, n: usize) -> Result<u128> {
    if n < 1 {
        return Err(domain("sphere dimension n must be >= 1"));
    }
    let n32 = u32::try_from(n).map_err(|_| Error::Range("n too large".into()))?;
    let k = i64::try_from(k).map_err(|_| Error::Range("k too large".into()))?;
    let n = n as i64;
    let hi = binom(k + n, n32)?;
    let lo = binom(k + n - 2, n32)?;
    Ok(hi - lo)
}

/// d_k(n) = (2k+n−1)(k+n−2)! / (k!(n−1)!), exact. Independent of the
/// binomial-difference form in [`multiplicity`].
pub fn multiplicity_product_form(k: usize, n: usize) -> Result<u128> {
    if n < 1 {
        return Err(domain("sphere dimension n must be >= 1"));
    }
    if n == 1 {
        // (2k)(k−1)!/k! = 2 for k ≥ 1; d_0 = 1
        return Ok(if k == 0 { 1 } else { 2 });
    }
    let overflow = || Error::Range(format!("d_{k}({n}) overflows u128"));
    // (k+n−2)!/k! = (k+1)(k+2)…(k+n−2)
    let mut num: u128 = (2 * k + n - 1) as u128;
    for j in 1..=(n - 2) {
        num = num.checked_mul((k + j) as u128).ok_or_else(overflow)?;
    }
    let den: u128 = (1..n as u128).product();
    Ok(num / den)
}

/// d_k(n) as a float, for series loops.
pub(crate) fn multiplicity_f64(k: usize, n: usize) -> f64 {
    if n == 1 {
        return if k == 0 { 1.0 } else { 2.0 };
    }
    let mut num = (2 * k + n - 1) as f64;
    let mut den = 1.0;
    for j in 1..=(n - 2) {
        num *= (k + j) as f64;
        den *= (j + 1) as f64;
    }
    num / den
}

/// Entries k = 0..=k_max.
pub fn spectrum_slice(n: usize, k_max: usize) -> Result<Vec<SpectrumEntry>> {
    if n < 1 {
        return Err(domain("sphere dimension n must be >= 1"));
    }
    (0..=k_max)
        .map(|k| {
            Ok(SpectrumEntry {
                k,
                lambda: eigenvalue(k, n),
                mu: shifted_eigenvalue(k, n),
                d: multiplicity(k, n)?,
            })
        })
        .collect()
}
