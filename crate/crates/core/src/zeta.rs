//! Global spectral zeta functions of Sⁿ.
//!
//! * [`spectral_zeta`]: `ζ_{Sⁿ}(s) = Σ_{k≥1} d_k λ_k^{−s}`
//! * [`regularized_zeta`]: `Z_{Sⁿ}(s) = Σ_{k≥1} d_k (k+ρ)^{−2s}`, the zeta of `Δ + ρ²`
//! * [`closed_form_z`]: Riemann-zeta expressions for `Z_{Sⁿ}` when n ≤ 4
//! * [`hurwitz_style_z`]: the multiplicity-free sum `Σ_{k≥0} (k+c)^{−2s}`
//!
//! Both series are summed directly up to a cutoff K and completed with the
//! midpoint of a certified enclosure of the tail, so `tail_bound` is the
//! half-width of that enclosure plus a rounding allowance.

use crate::error::{domain, Result};
use crate::kernels::laplace_cutoff;
use crate::majorize::{partial_sum_domination, DominationReport};
use crate::series::{laplace_tail_enclosure, shifted_tail_enclosure, CompensatedSum};
use crate::specfun::{hurwitz_via_binomial, power_sum, riemann_zeta, EvalResult, TruncationPolicy};
use crate::spectrum::{eigenvalue, multiplicity_f64, shifted_eigenvalue};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Spectrum {
    Laplace,
    Shifted,
}

fn check_order(s: f64, n: usize) -> Result<()> {
    if n < 1 {
        return Err(domain("sphere dimension n must be >= 1"));
    }
    if !(s > n as f64 / 2.0) || !s.is_finite() {
        return Err(domain(format!("s must exceed n/2 = {}, got {s}", n as f64 / 2.0)));
    }
    Ok(())
}

/// `d_k · base_k^{−s}`; the same expression for both spectra, so that at
/// n = 1 (where λ_k = μ_k) the two sums agree bit for bit.
fn term(k: usize, n: usize, s: f64, which: Spectrum) -> f64 {
    let base = match which {
        Spectrum::Laplace => eigenvalue(k, n),
        Spectrum::Shifted => shifted_eigenvalue(k, n),
    };
    multiplicity_f64(k, n) * base.powf(-s)
}

fn enclosure(n: usize, s: f64, k: usize, which: Spectrum) -> (f64, f64) {
    match which {
        Spectrum::Laplace => laplace_tail_enclosure(n, s, k),
        Spectrum::Shifted => shifted_tail_enclosure(n, s, k),
    }
}

fn spectral_sum(s: f64, n: usize, policy: &TruncationPolicy, which: Spectrum) -> Result<EvalResult> {
    check_order(s, n)?;
    let what = match which {
        Spectrum::Laplace => "spectral zeta",
        Spectrum::Shifted => "regularized zeta",
    };
    let half_width = |k: usize| {
        let (lo, hi) = enclosure(n, s, k, which);
        0.5 * (hi - lo)
    };
    let cutoff = laplace_cutoff(n, policy.tol, policy.max_k, what, half_width)?;
    let mut sum = CompensatedSum::default();
    // smallest terms first
    for k in (1..=cutoff).rev() {
        sum.add(term(k, n, s, which));
    }
    let (lo, hi) = enclosure(n, s, cutoff, which);
    let value = sum.value() + 0.5 * (lo + hi);
    let rounding = 4.0 * f64::EPSILON * value.abs();
    Ok(EvalResult::new(value, cutoff, 0.5 * (hi - lo) + rounding))
}

/// `ζ_{Sⁿ}(s) = Σ_{k≥1} d_k(n) / (k(k+n−1))^s`, for `s > n/2`.
pub fn spectral_zeta(s: f64, n: usize, policy: &TruncationPolicy) -> Result<EvalResult> {
    spectral_sum(s, n, policy, Spectrum::Laplace)
}

/// `Z_{Sⁿ}(s) = Σ_{k≥1} d_k(n) / (k+ρ)^{2s}`, for `s > n/2`.
pub fn regularized_zeta(s: f64, n: usize, policy: &TruncationPolicy) -> Result<EvalResult> {
    spectral_sum(s, n, policy, Spectrum::Shifted)
}

/// Which closed form to use for `Z_{S³}`.
///
/// Summing `Σ_{k≥1} (k+1)² (k+1)^{−2s}` gives `ζ_R(2s−2) − 1`; that is
/// [`ClosedForm::Standard`]. The expression `ζ_R(2s−1) − 1` is kept as
/// [`ClosedForm::S3AsPrinted`] for comparison. It does not match the
/// series. For n ≠ 3 the two variants coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClosedForm {
    #[default]
    Standard,
    S3AsPrinted,
}

/// `b^e` through `exp(e ln b)`. Every power in the closed forms goes
/// through here.
fn pow(base: f64, e: f64) -> f64 {
    (e * base.ln()).exp()
}

fn zeta_part(arg: f64) -> Result<EvalResult> {
    if !(arg > 1.0) {
        return Err(domain(format!(
            "closed form needs a Riemann zeta argument > 1, got {arg}"
        )));
    }
    riemann_zeta(arg, &TruncationPolicy::new(1 << 20, 1e-15)?)
}

/// Linear combination `Σ c_i ζ_R(a_i) + constant` with propagated bounds.
fn combine(parts: &[(f64, f64)], constant: f64) -> Result<EvalResult> {
    let mut value = constant;
    let mut bound = 0.0;
    let mut magnitude = constant.abs();
    let mut terms = 0;
    for &(coef, arg) in parts {
        let z = zeta_part(arg)?;
        value += coef * z.value;
        bound += coef.abs() * z.tail_bound;
        magnitude += (coef * z.value).abs();
        terms = terms.max(z.terms_used);
    }
    Ok(EvalResult::new(value, terms, bound + 8.0 * f64::EPSILON * magnitude))
}

/// `Z_{Sⁿ}(s)` in closed form for n ∈ {1, 2, 3, 4}:
///
/// ```text
/// n = 1:  2 ζ_R(2s)
/// n = 2:  (2^{2s} − 2) ζ_R(2s−1) − 4^s
/// n = 3:  ζ_R(2s−2) − 1
/// n = 4:  ⅓(2^{2s−3} − 1) ζ_R(2s−3) − ⅓(2^{2s−3} − ¼) ζ_R(2s−1)
///         − ⅓(2/3)^{2s−3} + ⅛(2/3)^{2s}
/// ```
pub fn closed_form_z(s: f64, n: usize) -> Result<EvalResult> {
    closed_form_z_variant(s, n, ClosedForm::Standard)
}

/// [`closed_form_z`] with an explicit choice of the S³ expression.
pub fn closed_form_z_variant(s: f64, n: usize, form: ClosedForm) -> Result<EvalResult> {
    if !s.is_finite() {
        return Err(domain(format!("s must be finite, got {s}")));
    }
    match (n, form) {
        (1, _) => combine(&[(2.0, 2.0 * s)], 0.0),
        (2, _) => combine(&[(pow(2.0, 2.0 * s) - 2.0, 2.0 * s - 1.0)], -pow(4.0, s)),
        (3, ClosedForm::Standard) => combine(&[(1.0, 2.0 * s - 2.0)], -1.0),
        (3, ClosedForm::S3AsPrinted) => combine(&[(1.0, 2.0 * s - 1.0)], -1.0),
        (4, _) => {
            let p = pow(2.0, 2.0 * s - 3.0);
            let third = 1.0 / 3.0;
            let constant = -third * pow(2.0 / 3.0, 2.0 * s - 3.0) + 0.125 * pow(2.0 / 3.0, 2.0 * s);
            combine(
                &[(third * (p - 1.0), 2.0 * s - 3.0), (-third * (p - 0.25), 2.0 * s - 1.0)],
                constant,
            )
        }
        _ => Err(domain(format!("closed forms exist for n in 1..=4, got {n}"))),
    }
}

/// How [`hurwitz_style_z`] evaluates its sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HurwitzRoute {
    /// Direct summation with an Euler–Maclaurin tail.
    Direct,
    /// Binomial expansion in Riemann zeta values, for `0 < c < 1`.
    /// `c ≥ 1` falls back to [`HurwitzRoute::Direct`].
    Binomial { m_max: usize },
}

/// `Σ_{k≥0} (k+c)^{−2s}` for `2s > 1`, `c > 0`. No multiplicities: at
/// `c = 1` this is `ζ_R(2s)`, not a sphere zeta.
pub fn hurwitz_style_z(s: f64, c: f64, route: HurwitzRoute, policy: &TruncationPolicy) -> Result<EvalResult> {
    if !(2.0 * s > 1.0) || !s.is_finite() {
        return Err(domain(format!("hurwitz_style_z needs 2s > 1, got s = {s}")));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(domain(format!("hurwitz_style_z needs c > 0, got {c}")));
    }
    match route {
        HurwitzRoute::Binomial { m_max } if c < 1.0 => hurwitz_via_binomial(s, c, m_max),
        _ => power_sum(2.0 * s, c, policy),
    }
}

/// Side-by-side evaluation of `Z_{Sⁿ}(s)` and `ζ_{Sⁿ}(s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaPair {
    pub s: f64,
    pub n: usize,
    pub zeta_laplace: EvalResult,
    pub zeta_shifted: EvalResult,
    /// `d_k μ_k^{−s} ≤ d_k λ_k^{−s}` for every k ≤ K.
    pub termwise: bool,
    /// Prefix sums of the shifted terms against the Laplace terms, k ≤ K.
    pub prefix: DominationReport,
    /// `ζ_{Sⁿ}(s) − Z_{Sⁿ}(s)`.
    pub gap: f64,
    pub dominated: bool,
}

/// Compare the two zetas termwise, by prefix sums up to `horizon`, and in
/// total.
pub fn compare_zeta_pair(s: f64, n: usize, horizon: usize, policy: &TruncationPolicy) -> Result<ZetaPair> {
    check_order(s, n)?;
    if horizon < 1 {
        return Err(domain("partial-sum horizon must be >= 1"));
    }
    let shifted: Vec<f64> = (1..=horizon).map(|k| term(k, n, s, Spectrum::Shifted)).collect();
    let laplace: Vec<f64> = (1..=horizon).map(|k| term(k, n, s, Spectrum::Laplace)).collect();
    let termwise = shifted.iter().zip(&laplace).all(|(a, b)| a <= b);
    let total: f64 = laplace.iter().sum();
    let prefix = partial_sum_domination(&shifted, &laplace, 1e-12 * total)?;
    let zeta_laplace = spectral_zeta(s, n, policy)?;
    let zeta_shifted = regularized_zeta(s, n, policy)?;
    let slack = zeta_laplace.tail_bound + zeta_shifted.tail_bound;
    let dominated = termwise && prefix.holds && zeta_shifted.value <= zeta_laplace.value + slack;
    Ok(ZetaPair {
        s,
        n,
        gap: zeta_laplace.value - zeta_shifted.value,
        zeta_laplace,
        zeta_shifted,
        termwise,
        prefix,
        dominated,
    })
}
