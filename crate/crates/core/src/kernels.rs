//! Pointwise heat and zeta kernels on Sⁿ.
//!
//! Both kernels depend on the two points only through `cos γ = x·y`:
//!
//! ```text
//! K(t, x, y)   = (1/Vₙ) Σ_{k≥0} e^{−λ_k t} d_k(n) r_k(cos γ)
//! ζ(s, x, y)   = (1/Vₙ) Σ_{k≥1} d_k(n) λ_k^{−s} r_k(cos γ)
//! ```
//!
//! with `r_k` the normalized Gegenbauer ratio. The normalization makes the
//! k = 0 heat term exactly `1/Vₙ` and `∫ K(t,x,x) dV = Σ d_k e^{−λ_k t}`.
//! [`mellin_zeta_kernel`] recovers the zeta kernel from the heat kernel by
//! numerical Mellin transform and serves as a cross-check of the two series.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::quadrature::GaussLegendre;
use crate::series::{heat_tail_bound, laplace_tail_enclosure, min_tail_index, CompensatedSum};
use crate::specfun::{
    gamma_fn, gamma_upper_regularized, gegenbauer_ratios, EvalResult, GegenbauerRatios, TruncationPolicy,
};
use crate::spectrum::{eigenvalue, multiplicity_f64, SphereSpec};

/// Evaluation point of a kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelQuery {
    pub n: usize,
    /// Inner product `x·y` of the two points.
    pub cos_gamma: f64,
    pub policy: TruncationPolicy,
}

impl KernelQuery {
    pub fn new(n: usize, cos_gamma: f64, policy: TruncationPolicy) -> Result<Self> {
        if n < 1 {
            return Err(domain("sphere dimension n must be >= 1"));
        }
        if !(cos_gamma.abs() <= 1.0) {
            return Err(domain(format!("cos_gamma must lie in [-1, 1], got {cos_gamma}")));
        }
        Ok(Self { n, cos_gamma, policy })
    }
}

/// Discretization of the Mellin integral `∫₀^∞ t^{s−1}(K − 1/V) dt`.
///
/// `(t_floor, split_point]` is integrated in `ln t` with composite
/// 16-point Gauss–Legendre, `[split_point, t_cutoff]` in `t`. Both end
/// pieces are bounded analytically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraturePolicy {
    pub split_point: f64,
    pub nodes_small: usize,
    pub nodes_large: usize,
    pub t_cutoff: f64,
    pub t_floor: f64,
}

impl Default for QuadraturePolicy {
    fn default() -> Self {
        Self {
            split_point: 1.0,
            nodes_small: 512,
            nodes_large: 256,
            t_cutoff: 60.0,
            t_floor: 1e-10,
        }
    }
}

impl QuadraturePolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.split_point > 0.0) {
            return Err(Error::Usage("split_point must be positive".into()));
        }
        if !(self.t_cutoff > self.split_point) {
            return Err(Error::Usage("t_cutoff must exceed split_point".into()));
        }
        if !(self.t_floor > 0.0 && self.t_floor < self.split_point) {
            return Err(Error::Usage("t_floor must lie in (0, split_point)".into()));
        }
        if self.nodes_small < GL_ORDER || self.nodes_large < GL_ORDER {
            return Err(Error::Usage(format!("node counts must be at least {GL_ORDER}")));
        }
        Ok(())
    }
}

const GL_ORDER: usize = 16;

/// `Σ_{k≥1} d_k r_k e^{−λ_k t}` for a fixed `cos γ`, with the coefficients
/// `d_k r_k` cached across evaluations at different `t`.
struct HeatSeries {
    n: usize,
    ratios: GegenbauerRatios,
    /// index k−1 holds (d_k, d_k r_k)
    coeffs: Vec<(f64, f64)>,
}

struct Deviation {
    value: f64,
    bound: f64,
    terms: usize,
}

impl HeatSeries {
    fn new(n: usize, cos_gamma: f64) -> Result<Self> {
        let mut ratios = gegenbauer_ratios(n, cos_gamma)?;
        ratios.next(); // k = 0
        Ok(Self {
            n,
            ratios,
            coeffs: Vec::new(),
        })
    }

    fn coeff(&mut self, k: usize) -> (f64, f64) {
        while self.coeffs.len() < k {
            let j = self.coeffs.len() + 1;
            let d = multiplicity_f64(j, self.n);
            let r = self.ratios.next().expect("iterator is infinite");
            self.coeffs.push((d, d * r));
        }
        self.coeffs[k - 1]
    }

    /// Sum until the certified tail is below `tol_abs + tol_rel · Σ|terms|`.
    fn deviation(&mut self, t: f64, tol_abs: f64, tol_rel: f64, max_k: usize) -> Result<Deviation> {
        let n = self.n;
        let decay = (-2.0 * t).exp();
        let mut sum = CompensatedSum::default();
        let mut abs_sum = 0.0;
        // e = e^{−λ_k t}, g = e^{−(2k+n)t} = e^{−(λ_{k+1}−λ_k)t}
        let mut e = 0.0;
        let mut g = 0.0;
        let mut last_bound = f64::INFINITY;
        for k in 1..=max_k {
            if k % 512 == 1 {
                e = (-eigenvalue(k, n) * t).exp();
                g = (-((2 * k + n) as f64) * t).exp();
            }
            let (d, c) = self.coeff(k);
            sum.add(c * e);
            abs_sum += d * e;
            let tol = tol_abs + tol_rel * abs_sum;
            if d * e <= tol || k % 64 == 0 {
                if let Some(b) = heat_tail_bound(n, t, k) {
                    last_bound = b;
                    if b <= tol {
                        return Ok(Deviation {
                            value: sum.value(),
                            bound: b,
                            terms: k,
                        });
                    }
                }
            }
            e *= g;
            g *= decay;
        }
        Err(Error::Truncation {
            what: "heat kernel series",
            terms: max_k,
            bound: last_bound,
            tol: tol_abs,
        })
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain(format!("t must be positive and finite, got {t}")));
    }
    Ok(())
}

fn check_zeta_order(s: f64, n: usize) -> Result<()> {
    if !(s > n as f64 / 2.0) || !s.is_finite() {
        return Err(domain(format!("s must exceed n/2 = {}, got {s}", n as f64 / 2.0)));
    }
    Ok(())
}

/// Heat kernel `K(t, x, y)` at `x·y = q.cos_gamma`.
pub fn heat_kernel(t: f64, q: &KernelQuery) -> Result<EvalResult> {
    check_time(t)?;
    let sphere = SphereSpec::new(q.n)?;
    let mut series = HeatSeries::new(q.n, q.cos_gamma)?;
    let max_k = q.policy.max_k.saturating_sub(1).max(1);
    let dev = series.deviation(t, q.policy.tol * sphere.volume, 0.0, max_k)?;
    Ok(EvalResult::new(
        (1.0 + dev.value) / sphere.volume,
        dev.terms + 1,
        dev.bound / sphere.volume,
    ))
}

/// Heat trace `Σ_{k≥0} d_k(n) e^{−λ_k t}`.
pub fn heat_trace(t: f64, n: usize, policy: &TruncationPolicy) -> Result<EvalResult> {
    check_time(t)?;
    if n < 1 {
        return Err(domain("sphere dimension n must be >= 1"));
    }
    let mut sum = CompensatedSum::default();
    sum.add(1.0);
    let mut last_bound = f64::INFINITY;
    for k in 1..policy.max_k {
        sum.add(multiplicity_f64(k, n) * (-eigenvalue(k, n) * t).exp());
        if let Some(b) = heat_tail_bound(n, t, k) {
            last_bound = b;
            if b <= policy.tol {
                return Ok(EvalResult::new(sum.value(), k + 1, b));
            }
        }
    }
    Err(Error::Truncation {
        what: "heat trace",
        terms: policy.max_k,
        bound: last_bound,
        tol: policy.tol,
    })
}

/// Smallest K ≥ the monotone threshold with `tail(K) ≤ tol`, or a
/// truncation error if none exists below `max_k`.
pub(crate) fn laplace_cutoff(
    n: usize,
    tol: f64,
    max_k: usize,
    what: &'static str,
    tail: impl Fn(usize) -> f64,
) -> Result<usize> {
    let mut hi = min_tail_index(n);
    if hi > max_k {
        return Err(Error::Truncation {
            what,
            terms: max_k,
            bound: tail(hi),
            tol,
        });
    }
    while tail(hi) > tol {
        if hi >= max_k {
            return Err(Error::Truncation {
                what,
                terms: max_k,
                bound: tail(hi),
                tol,
            });
        }
        hi = (2 * hi).min(max_k);
    }
    let mut lo = (hi / 2).max(min_tail_index(n));
    if tail(lo) <= tol {
        return Ok(lo);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if tail(mid) <= tol {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Zeta kernel `ζ(s, x, y)` at `x·y = q.cos_gamma` for real `s > n/2`.
///
/// Off the diagonal the tail is bounded by `Σ_{k>K} d_k λ_k^{−s}` using
/// `|r_k| ≤ 1`. On the diagonal every ratio is 1, so the tail is replaced by
/// the midpoint of its enclosure and the bound is the half-width.
pub fn zeta_kernel(s: f64, q: &KernelQuery) -> Result<EvalResult> {
    check_zeta_order(s, q.n)?;
    let sphere = SphereSpec::new(q.n)?;
    let n = q.n;
    let diagonal = q.cos_gamma == 1.0;
    let tail = |k: usize| {
        let (lo, hi) = laplace_tail_enclosure(n, s, k);
        let width = if diagonal { 0.5 * (hi - lo) } else { hi };
        width / sphere.volume
    };
    let cutoff = laplace_cutoff(n, q.policy.tol, q.policy.max_k, "zeta kernel series", tail)?;
    let mut sum = CompensatedSum::default();
    let ratios: Vec<f64> = gegenbauer_ratios(n, q.cos_gamma)?.skip(1).take(cutoff).collect();
    for k in (1..=cutoff).rev() {
        sum.add(multiplicity_f64(k, n) * eigenvalue(k, n).powf(-s) * ratios[k - 1]);
    }
    if diagonal {
        let (lo, hi) = laplace_tail_enclosure(n, s, cutoff);
        sum.add(0.5 * (lo + hi));
    }
    let value = sum.value() / sphere.volume;
    Ok(EvalResult::new(
        value,
        cutoff,
        tail(cutoff) + 4.0 * f64::EPSILON * value.abs(),
    ))
}

/// Zeta kernel through the heat kernel:
/// `(1/Γ(s)) ∫₀^∞ t^{s−1} (K(t, x, y) − 1/Vₙ) dt`.
///
/// `tail_bound` collects the analytic bounds for `(0, t_floor)` and
/// `(t_cutoff, ∞)`, the heat-series truncation at every node, and the
/// difference between the quadrature and a half-resolution rerun. An
/// [`Error::Accuracy`] is returned if it exceeds `q.policy.tol`.
pub fn mellin_zeta_kernel(s: f64, q: &KernelQuery, quad: &QuadraturePolicy) -> Result<EvalResult> {
    check_zeta_order(s, q.n)?;
    quad.validate()?;
    let n = q.n;
    let sphere = SphereSpec::new(n)?;
    let inv_v = 1.0 / sphere.volume;
    let gl = GaussLegendre::new(GL_ORDER);
    let mut series = HeatSeries::new(n, q.cos_gamma)?;
    let max_k = q.policy.max_k.max(1 << 22);
    const NODE_TOL_ABS: f64 = 1e-16;
    const NODE_TOL_REL: f64 = 1e-15;

    let mut series_err = 0.0;
    let mut nodes_used = 0usize;

    // (t_floor, split] in u = ln t: integrand t^s (K − 1/V)
    let u_lo = quad.t_floor.ln();
    let u_hi = quad.split_point.ln();
    let small_panels = quad.nodes_small.div_ceil(GL_ORDER);
    let mut small = [0.0; 2];
    for (slot, panels) in [small_panels, (small_panels / 2).max(1)].into_iter().enumerate() {
        let mut acc = CompensatedSum::default();
        for (u, w) in composite_nodes(&gl, u_lo, u_hi, panels) {
            let t = u.exp();
            let dev = series.deviation(t, NODE_TOL_ABS, NODE_TOL_REL, max_k)?;
            let weight = w * t.powf(s) * inv_v;
            acc.add(weight * dev.value);
            if slot == 0 {
                series_err += weight.abs() * dev.bound;
                nodes_used += 1;
            }
        }
        small[slot] = acc.value();
    }

    // [split, t_cutoff] in t: integrand t^{s−1} (K − 1/V)
    let large_panels = quad.nodes_large.div_ceil(GL_ORDER);
    let mut large = [0.0; 2];
    for (slot, panels) in [large_panels, (large_panels / 2).max(1)].into_iter().enumerate() {
        let mut acc = CompensatedSum::default();
        for (t, w) in composite_nodes(&gl, quad.split_point, quad.t_cutoff, panels) {
            let dev = series.deviation(t, NODE_TOL_ABS, NODE_TOL_REL, max_k)?;
            let weight = w * t.powf(s - 1.0) * inv_v;
            acc.add(weight * dev.value);
            if slot == 0 {
                series_err += weight.abs() * dev.bound;
                nodes_used += 1;
            }
        }
        large[slot] = acc.value();
    }

    let quad_err = (small[0] - small[1]).abs() + (large[0] - large[1]).abs();
    let near_zero = near_zero_bound(n, s, quad.t_floor) * inv_v;
    let far = far_tail_bound(n, s, quad.t_cutoff)? * inv_v;
    let gamma_s = gamma_fn(s)?;
    let value = (small[0] + large[0]) / gamma_s;
    let bound = (quad_err + near_zero + far + series_err) / gamma_s;
    if bound > q.policy.tol {
        return Err(Error::Accuracy {
            what: "Mellin quadrature of the heat kernel",
            bound,
            tol: q.policy.tol,
        });
    }
    Ok(EvalResult::new(value, nodes_used, bound))
}

fn composite_nodes(gl: &GaussLegendre, a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
    let h = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * gl.nodes.len());
    for p in 0..panels {
        let mid = a + h * (p as f64 + 0.5);
        for (x, w) in gl.nodes.iter().zip(&gl.weights) {
            out.push((mid + 0.5 * h * x, 0.5 * h * w));
        }
    }
    out
}

/// Bound on `∫₀^{t0} t^{s−1} Σ_{k≥1} d_k e^{−λ_k t} dt`.
///
/// Uses `d_k ≤ 2 m^{n−1}/(n−1)!` with `m = k+ρ`, `λ_k = m² − ρ²`, and
/// `Σ_{k≥1} g(k+ρ) ≤ ∫₀^∞ g + max g` for the unimodal `g(m) = m^{n−1} e^{−m² t}`.
fn near_zero_bound(n: usize, s: f64, t0: f64) -> f64 {
    let nf = n as f64;
    let rho = (nf - 1.0) / 2.0;
    let fact: f64 = (1..n).map(|i| i as f64).product();
    let prefactor = 2.0 * (rho * rho * t0).exp() / fact;
    let gamma_half_n = statrs::function::gamma::gamma(nf / 2.0);
    let integral_part = 0.5 * gamma_half_n * t0.powf(s - nf / 2.0) / (s - nf / 2.0);
    let peak_coeff = if n == 1 {
        1.0
    } else {
        (rho / std::f64::consts::E).powf(rho)
    };
    let peak_part = peak_coeff * t0.powf(s - rho) / (s - rho);
    prefactor * (integral_part + peak_part)
}

/// Bound on `∫_{tc}^∞ t^{s−1} Σ_{k≥1} d_k e^{−λ_k t} dt` via
/// `Σ_{k≥1} d_k e^{−λ_k t} ≤ e^{−λ_1 t} Σ_{k≥1} d_k e^{−(λ_k−λ_1) tc}` for t ≥ tc.
fn far_tail_bound(n: usize, s: f64, tc: f64) -> Result<f64> {
    let lambda1 = eigenvalue(1, n);
    let mut sum = 0.0;
    let mut k = 1;
    loop {
        sum += multiplicity_f64(k, n) * (-(eigenvalue(k, n) - lambda1) * tc).exp();
        if let Some(b) = heat_tail_bound(n, tc, k) {
            let rest = b * (lambda1 * tc).exp();
            if rest <= 1e-3 * sum || k > 100_000 {
                sum += rest;
                break;
            }
        }
        k += 1;
    }
    let gamma_s = gamma_fn(s)?;
    Ok(sum * lambda1.powf(-s) * gamma_s * gamma_upper_regularized(s, lambda1 * tc))
}

/// Heat kernel on the circle, `(1/2π)(1 + 2Σ_{k≥1} e^{−k² t} cos kγ)`,
/// summed directly until the terms drop below 1e−20. Independent of the
/// Gegenbauer machinery; used as a reference for `n = 1`.
pub fn circle_heat_oracle(t: f64, gamma: f64) -> f64 {
    let mut sum = 1.0;
    let mut k = 1u64;
    loop {
        let kf = k as f64;
        let w = (-kf * kf * t).exp();
        if w < 1e-20 || k > 10_000_000 {
            break;
        }
        sum += 2.0 * w * (kf * gamma).cos();
        k += 1;
    }
    sum / (2.0 * PI)
}

/// `|∫_{S¹} K(t, x, z) K(τ, z, y) dz − K(t+τ, x, y)|` at angular separation
/// `theta`, with the convolution by the `nodes`-point periodic trapezoid rule.
pub fn circle_semigroup_residual(t: f64, tau: f64, theta: f64, nodes: usize, policy: &TruncationPolicy) -> Result<f64> {
    check_time(t)?;
    check_time(tau)?;
    if nodes < 2 {
        return Err(Error::Usage("need at least two trapezoid nodes".into()));
    }
    let h = 2.0 * PI / nodes as f64;
    let mut acc = CompensatedSum::default();
    for j in 0..nodes {
        let phi = h * j as f64;
        let a = heat_kernel(t, &KernelQuery::new(1, (theta - phi).cos(), *policy)?)?.value;
        let b = heat_kernel(tau, &KernelQuery::new(1, phi.cos(), *policy)?)?.value;
        acc.add(a * b);
    }
    let direct = heat_kernel(t + tau, &KernelQuery::new(1, theta.cos(), *policy)?)?.value;
    Ok((acc.value() * h - direct).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::spectral_zeta;

    fn policy() -> TruncationPolicy {
        TruncationPolicy::new(2_000_000, 1e-13).unwrap()
    }

    fn query(n: usize, c: f64) -> KernelQuery {
        KernelQuery::new(n, c, policy()).unwrap()
    }

    #[test]
    fn large_time_limit_is_inverse_volume() {
        let v = heat_kernel(50.0, &query(2, 0.3)).unwrap();
        assert!((v.value - 1.0 / (4.0 * PI)).abs() < 1e-12);
        for n in 1..=4 {
            let tr = heat_trace(100.0, n, &policy()).unwrap();
            assert!((tr.value - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn circle_diagonal_value() {
        // (1/2π)(1 + 2Σ e^{−k²}) summed by hand to k = 6
        let by_hand: f64 = (1..=6).map(|k: i32| (-(k * k) as f64).exp()).sum::<f64>() * 2.0 + 1.0;
        let v = heat_kernel(1.0, &query(1, 1.0)).unwrap();
        assert!((v.value - by_hand / (2.0 * PI)).abs() < 1e-15);
        assert!((v.value - 0.282_123_973_456_762_2).abs() < 1e-15);
        let tr = heat_trace(1.0, 1, &policy()).unwrap();
        assert!((tr.value - 1.772_637_204_826_652).abs() < 1e-12);
    }

    #[test]
    fn circle_oracle_agreement() {
        for &(t, g) in &[(0.1, 0.0), (0.3, 1.2), (1.0, 2.5), (2.0, 3.1), (0.15, -0.7)] {
            let v = heat_kernel(t, &query(1, f64::cos(g))).unwrap();
            assert!((v.value - circle_heat_oracle(t, g)).abs() < 1e-12, "t={t} g={g}");
        }
    }

    #[test]
    fn circle_oracle_integrates_to_one() {
        let nodes = 400;
        let h = 2.0 * PI / nodes as f64;
        let total: f64 = (0..nodes).map(|j| circle_heat_oracle(0.2, h * j as f64)).sum::<f64>() * h;
        assert!((total - 1.0).abs() < 1e-10);
        assert!((circle_heat_oracle(80.0, 0.0) - 1.0 / (2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn trace_consistency() {
        for n in 1..=4 {
            let v = SphereSpec::new(n).unwrap().volume;
            for &t in &[0.25, 1.0, 4.0] {
                let k = heat_kernel(t, &query(n, 1.0)).unwrap();
                let tr = heat_trace(t, n, &policy()).unwrap();
                assert!((v * k.value - tr.value).abs() <= 1e-10, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn trace_decreasing() {
        let mut last = f64::INFINITY;
        for i in 1..40 {
            let v = heat_trace(0.05 * i as f64, 3, &policy()).unwrap().value;
            assert!(v < last);
            last = v;
        }
    }

    #[test]
    fn diagonal_is_maximal() {
        for n in 1..=4 {
            let diag = heat_kernel(0.3, &query(n, 1.0)).unwrap().value;
            for i in 0..=20 {
                let c = -1.0 + 0.1 * i as f64;
                assert!(heat_kernel(0.3, &query(n, c)).unwrap().value <= diag + 1e-14);
            }
        }
    }

    #[test]
    fn small_time_refused_when_uncertifiable() {
        let q = KernelQuery::new(2, 1.0, TruncationPolicy::new(50, 1e-12).unwrap()).unwrap();
        assert!(matches!(heat_kernel(1e-4, &q), Err(Error::Truncation { .. })));
        assert!(matches!(heat_kernel(0.0, &q), Err(Error::Domain(_))));
    }

    #[test]
    fn zeta_kernel_diagonal_is_trace() {
        for n in 1..=2 {
            let s = n as f64;
            let v = SphereSpec::new(n).unwrap().volume;
            let p = TruncationPolicy::new(5_000_000, 1e-9).unwrap();
            let zk = zeta_kernel(s, &KernelQuery::new(n, 1.0, p).unwrap()).unwrap();
            let z = spectral_zeta(s, n, &p).unwrap();
            assert!((v * zk.value - z.value).abs() <= v * zk.tail_bound + z.tail_bound);
        }
    }

    #[test]
    fn zeta_kernel_circle_quarter_turn() {
        // (1/π) Σ cos(kπ/2)/k² = (1/π)(−π²/48)
        let p = TruncationPolicy::new(10_000_000, 1e-7).unwrap();
        let zk = zeta_kernel(1.0, &KernelQuery::new(1, 0.0, p).unwrap()).unwrap();
        assert!((zk.value + PI / 48.0).abs() <= zk.tail_bound + 1e-14);
    }

    #[test]
    fn zeta_kernel_domain() {
        assert!(matches!(zeta_kernel(1.0, &query(2, 0.0)), Err(Error::Domain(_))));
        assert!(KernelQuery::new(2, 1.5, policy()).is_err());
    }

    #[test]
    fn mellin_matches_series() {
        let p = TruncationPolicy::new(5_000_000, 1e-8).unwrap();
        let quad = QuadraturePolicy::default();
        for &(n, s, c) in &[(2usize, 2.0, 1.0), (1, 1.5, 0.5)] {
            let q = KernelQuery::new(n, c, p).unwrap();
            let m = mellin_zeta_kernel(s, &q, &quad).unwrap();
            let z = zeta_kernel(s, &q).unwrap();
            assert!(
                (m.value - z.value).abs() < 1e-6,
                "n={n} s={s}: {} vs {}",
                m.value,
                z.value
            );
        }
    }

    #[test]
    fn far_time_decay_rate_is_first_eigenvalue() {
        for n in 1..=3 {
            let q = query(n, 0.5);
            let inv_v = 1.0 / SphereSpec::new(n).unwrap().volume;
            let d5 = heat_kernel(5.0, &q).unwrap().value - inv_v;
            let d10 = heat_kernel(10.0, &q).unwrap().value - inv_v;
            let rate = (d5 / d10).ln() / 5.0;
            let lambda1 = n as f64;
            assert!((rate - lambda1).abs() <= 0.05 * lambda1, "n={n} rate={rate}");
        }
    }

    #[test]
    fn circle_semigroup() {
        for &(t, tau) in &[(0.5, 0.5), (1.0, 2.0)] {
            for &theta in &[0.0, 1.0, 2.5] {
                let r = circle_semigroup_residual(t, tau, theta, 128, &policy()).unwrap();
                assert!(r < 1e-8, "t={t} tau={tau} theta={theta}: {r}");
            }
        }
    }

    #[test]
    fn quadrature_policy_validation() {
        let q = QuadraturePolicy {
            t_cutoff: 0.5,
            ..Default::default()
        };
        assert!(q.validate().is_err());
        let q = QuadraturePolicy {
            nodes_small: 3,
            ..Default::default()
        };
        assert!(q.validate().is_err());
    }
}
