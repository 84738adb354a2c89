//! Compensated summation and certified tail bounds for the sphere series.

use crate::spectrum::{eigenvalue, multiplicity_f64};

/// Neumaier compensated sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Bound on `Σ_{k>K} d_k(n) e^{−λ_k t}`, valid for K ≥ 0.
///
/// Successive term ratios `d_{k+1}/d_k · e^{−(2k+n)t}` are nonincreasing in
/// k ≥ 1, so once the ratio at K+1 is below one the tail is dominated by a
/// geometric series. Returns `None` while terms are still growing.
pub(crate) fn heat_tail_bound(n: usize, t: f64, k: usize) -> Option<f64> {
    let k1 = k + 1;
    let d1 = multiplicity_f64(k1, n);
    let d2 = multiplicity_f64(k1 + 1, n);
    let ratio = d2 / d1 * (-((2 * k1 + n) as f64) * t).exp();
    if ratio >= 1.0 {
        return None;
    }
    let first = d1 * (-eigenvalue(k1, n) * t).exp();
    Some(first / (1.0 - ratio))
}

/// Coefficients of `d_k(n)` as a polynomial in `m = k + ρ`, lowest degree
/// first. Valid for k ≥ 1.
///
/// `d_k(n) = 2m/(n−1)! · Π_{j=1}^{n−2} (m − ρ + j)`, and `d_k(1) = 2`.
pub(crate) fn multiplicity_poly_in_m(n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![2.0];
    }
    let rho = (n as f64 - 1.0) / 2.0;
    let mut poly = vec![0.0, 2.0]; // 2m
    for j in 1..=(n - 2) {
        let shift = j as f64 - rho;
        let mut next = vec![0.0; poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] += c;
            next[i] += c * shift;
        }
        poly = next;
    }
    let fact: f64 = (1..n).map(|i| i as f64).product();
    poly.iter().map(|c| c / fact).collect()
}

/// ∫_M^∞ d(m) m^{−2s} dm for the multiplicity polynomial.
fn shifted_tail_integral(poly: &[f64], s: f64, m: f64) -> f64 {
    poly.iter()
        .enumerate()
        .map(|(j, a)| {
            let e = j as f64 + 1.0 - 2.0 * s;
            a * m.powf(e) / (-e)
        })
        .sum()
}

/// Smallest K for which [`shifted_tail_enclosure`] may be used: beyond it
/// `d(m) m^{−2s}` is decreasing in m.
pub(crate) fn min_tail_index(n: usize) -> usize {
    4 * n
}

/// Enclosure `[lower, upper]` of `Σ_{k>K} d_k(n) (k+ρ)^{−2s}` for 2s > n.
pub(crate) fn shifted_tail_enclosure(n: usize, s: f64, k: usize) -> (f64, f64) {
    debug_assert!(2.0 * s > n as f64);
    debug_assert!(k >= min_tail_index(n));
    let rho = (n as f64 - 1.0) / 2.0;
    let poly = multiplicity_poly_in_m(n);
    let kf = k as f64;
    let lower = shifted_tail_integral(&poly, s, kf + 1.0 + rho);
    let upper = shifted_tail_integral(&poly, s, kf + rho);
    (lower.max(0.0), upper)
}

/// Enclosure of `Σ_{k>K} d_k(n) λ_k^{−s}` for 2s > n.
///
/// `μ_k^{−s} ≤ λ_k^{−s} ≤ μ_k^{−s} (1 − ρ²/μ_{K+1})^{−s}` for k > K.
pub(crate) fn laplace_tail_enclosure(n: usize, s: f64, k: usize) -> (f64, f64) {
    let (lower, upper) = shifted_tail_enclosure(n, s, k);
    let rho = (n as f64 - 1.0) / 2.0;
    let m = k as f64 + 1.0 + rho;
    let factor = (1.0 - rho * rho / (m * m)).powf(-s);
    (lower, upper * factor)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_reproduces_multiplicity() {
        for n in 1..=6 {
            let poly = multiplicity_poly_in_m(n);
            let rho = (n as f64 - 1.0) / 2.0;
            for k in 1..40 {
                let m = k as f64 + rho;
                let v: f64 = poly.iter().rev().fold(0.0, |acc, c| acc * m + c);
                assert!((v - multiplicity_f64(k, n)).abs() < 1e-9 * v, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn enclosures_contain_brute_force_tail() {
        for n in 1..=4 {
            let rho = (n as f64 - 1.0) / 2.0;
            let s = n as f64 / 2.0 + 1.5;
            let k0 = 40;
            let mut shifted = 0.0;
            let mut laplace = 0.0;
            for k in (k0 + 1..400_000).rev() {
                let d = multiplicity_f64(k, n);
                shifted += d * (k as f64 + rho).powf(-2.0 * s);
                laplace += d * eigenvalue(k, n).powf(-s);
            }
            let (lo, hi) = shifted_tail_enclosure(n, s, k0);
            // brute force misses a tail below the lower bound at K = 4e5
            let (rest_lo, _) = shifted_tail_enclosure(n, s, 399_999);
            assert!(lo <= shifted + rest_lo + 1e-15 && shifted <= hi, "n={n}");
            let (lo, hi) = laplace_tail_enclosure(n, s, k0);
            assert!(lo <= laplace + 2.0 * rest_lo + 1e-15 && laplace <= hi, "n={n}");
        }
    }

    #[test]
    fn heat_tail_bound_holds() {
        for n in 1..=4 {
            for &t in &[0.01, 0.1, 1.0] {
                for k in [5usize, 20, 80] {
                    if let Some(b) = heat_tail_bound(n, t, k) {
                        let exact: f64 = (k + 1..20_000)
                            .map(|j| multiplicity_f64(j, n) * (-eigenvalue(j, n) * t).exp())
                            .sum();
                        assert!(exact <= b * (1.0 + 1e-12), "n={n} t={t} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::default();
        s.add(1.0);
        for _ in 0..1000 {
            s.add(1e-17);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-14).abs() < 1e-20);
    }
}
