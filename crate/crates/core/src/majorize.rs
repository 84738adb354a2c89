//! Majorisation of finite real sequences.
//!
//! `x` weakly majorises `y` when every prefix sum of `x↓` is at least the
//! corresponding prefix sum of `y↓` (`↓` = sorted nonincreasing); it
//! majorises `y` when in addition the totals agree. All comparisons take an
//! explicit absolute tolerance.

use crate::error::{domain, usage, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    WeaklyMajorizes,
    Majorizes,
    Fails,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MajorizationReport {
    pub x_sorted: Vec<f64>,
    pub y_sorted: Vec<f64>,
    /// `Σ_{i≤K} x↓_i − Σ_{i≤K} y↓_i` for K = 1..=len.
    pub prefix_gaps: Vec<f64>,
    pub verdict: Verdict,
    /// 1-based prefix length of the first failing comparison.
    pub first_violation: Option<usize>,
}

impl MajorizationReport {
    pub fn weakly(&self) -> bool {
        self.verdict != Verdict::Fails
    }

    pub fn strongly(&self) -> bool {
        self.verdict == Verdict::Majorizes
    }
}

/// `1e−12 × max(|Σx|, |Σy|)`.
pub fn default_tolerance(x: &[f64], y: &[f64]) -> f64 {
    let tx: f64 = x.iter().sum();
    let ty: f64 = y.iter().sum();
    1e-12 * tx.abs().max(ty.abs())
}

fn check_pair(x: &[f64], y: &[f64], tol: f64) -> Result<()> {
    if x.len() != y.len() {
        return Err(usage(format!("length mismatch: {} vs {}", x.len(), y.len())));
    }
    if x.is_empty() {
        return Err(usage("sequences must be nonempty"));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(domain("sequences must be finite"));
    }
    if !(tol >= 0.0) {
        return Err(usage("tolerance must be nonnegative"));
    }
    Ok(())
}

/// Nonincreasing order; equal values keep their input order.
fn sorted_desc(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[b].total_cmp(&v[a]).then(a.cmp(&b)));
    idx.into_iter().map(|i| v[i]).collect()
}

fn classify(x: &[f64], y: &[f64], tol: f64) -> Result<MajorizationReport> {
    check_pair(x, y, tol)?;
    let x_sorted = sorted_desc(x);
    let y_sorted = sorted_desc(y);
    let mut px = 0.0;
    let mut py = 0.0;
    let mut first_violation = None;
    let prefix_gaps: Vec<f64> = x_sorted
        .iter()
        .zip(&y_sorted)
        .enumerate()
        .map(|(i, (a, b))| {
            px += a;
            py += b;
            let gap = px - py;
            if gap < -tol && first_violation.is_none() {
                first_violation = Some(i + 1);
            }
            gap
        })
        .collect();
    let total_gap = *prefix_gaps.last().expect("nonempty");
    let verdict = match first_violation {
        Some(_) => Verdict::Fails,
        None if total_gap.abs() <= tol => Verdict::Majorizes,
        None => Verdict::WeaklyMajorizes,
    };
    Ok(MajorizationReport {
        x_sorted,
        y_sorted,
        prefix_gaps,
        verdict,
        first_violation,
    })
}

/// Does `x` weakly majorise `y`? The report also records whether the
/// totals agree, in which case the verdict is [`Verdict::Majorizes`].
pub fn weak_majorizes(x: &[f64], y: &[f64], tol: f64) -> Result<MajorizationReport> {
    classify(x, y, tol)
}

/// Does `x` majorise `y`? Check [`MajorizationReport::strongly`].
pub fn majorizes(x: &[f64], y: &[f64], tol: f64) -> Result<MajorizationReport> {
    classify(x, y, tol)
}

/// Prefix-sum comparison in the given order (no sorting).
#[derive(Debug, Clone, PartialEq)]
pub struct DominationReport {
    pub holds: bool,
    /// 1-based prefix length of the first violation.
    pub first_violation: Option<usize>,
    /// `Σ_{k≤K} b_k − Σ_{k≤K} a_k`.
    pub gaps: Vec<f64>,
}

/// True iff `Σ_{k≤K} a_k ≤ Σ_{k≤K} b_k + tol` for every K.
pub fn partial_sum_domination(a: &[f64], b: &[f64], tol: f64) -> Result<DominationReport> {
    check_pair(a, b, tol)?;
    if a.iter().chain(b).any(|v| *v < 0.0) {
        return Err(domain("partial_sum_domination expects nonnegative sequences"));
    }
    let mut sa = 0.0;
    let mut sb = 0.0;
    let mut first_violation = None;
    let gaps = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (x, y))| {
            sa += x;
            sb += y;
            let gap = sb - sa;
            if gap < -tol && first_violation.is_none() {
                first_violation = Some(i + 1);
            }
            gap
        })
        .collect();
    Ok(DominationReport {
        holds: first_violation.is_none(),
        first_violation,
        gaps,
    })
}

/// For each `(x, y)` with `x` majorising `y`, report whether `f(x) ≥ f(y) − tol`.
///
/// A diagnostic only. Pairs that are not majorising are rejected.
pub fn schur_convex_probe<F>(f: F, pairs: &[(Vec<f64>, Vec<f64>)], tol: f64) -> Result<Vec<bool>>
where
    F: Fn(&[f64]) -> f64,
{
    pairs
        .iter()
        .enumerate()
        .map(|(i, (x, y))| {
            if !majorizes(x, y, tol)?.strongly() {
                return Err(usage(format!("pair {i}: x does not majorise y")));
            }
            Ok(f(x) >= f(y) - tol)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReciprocalReport {
    /// `y⁻¹` tested for weakly majorising `x⁻¹`.
    pub report: MajorizationReport,
    pub holds: bool,
}

/// Given `x ≻ y` with positive entries, test whether the reciprocals satisfy
/// `y⁻¹` weakly majorising `x⁻¹`. Reported, never asserted: the relation
/// fails in general (e.g. x = (3,1), y = (2,2)).
pub fn reciprocal_order_probe(x: &[f64], y: &[f64], tol: f64) -> Result<ReciprocalReport> {
    check_pair(x, y, tol)?;
    if x.iter().chain(y).any(|v| *v <= 0.0) {
        return Err(domain("reciprocal probe needs strictly positive entries"));
    }
    if !majorizes(x, y, tol)?.strongly() {
        return Err(usage("reciprocal probe requires x to majorise y"));
    }
    let xr: Vec<f64> = x.iter().map(|v| 1.0 / v).collect();
    let yr: Vec<f64> = y.iter().map(|v| 1.0 / v).collect();
    let report = weak_majorizes(&yr, &xr, tol)?;
    Ok(ReciprocalReport {
        holds: report.weakly(),
        report,
    })
}
