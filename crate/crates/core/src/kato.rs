//! Finite-dimensional Kato inequalities and heat-semigroup comparisons.
//!
//! The operators are real symmetric matrices, typically weighted graph
//! Laplacians (nonpositive off-diagonal entries, zero row sums). For that
//! class the discrete Kato inequality
//!
//! ```text
//! Re(sgn(ψ) ⊙ Lψ) ≥ L|ψ|        entrywise
//! ```
//!
//! holds exactly, and `e^{−tL}` is positivity preserving. The semigroup
//! generator is `A = −L`. Matrix exponentials go through a cached symmetric
//! eigendecomposition.

use std::path::Path;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, usage, Error, Result};
use crate::quadrature::simpson_rule;

/// Eigenvalues above this are accepted as "nonnegative".
pub const PSD_TOLERANCE: f64 = 1e-10;

/// Dense real symmetric matrix with its eigendecomposition.
#[derive(Debug, Clone)]
pub struct SymmetricOperator {
    matrix: DMatrix<f64>,
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
    psd: bool,
}

impl SymmetricOperator {
    /// Requires a square, finite, exactly symmetric matrix.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let dim = matrix.nrows();
        if dim == 0 || matrix.ncols() != dim {
            return Err(usage(format!(
                "operator must be square and nonempty, got {}x{}",
                dim,
                matrix.ncols()
            )));
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(domain("operator entries must be finite"));
        }
        for i in 0..dim {
            for j in 0..i {
                if matrix[(i, j)] != matrix[(j, i)] {
                    return Err(usage(format!("operator is not symmetric at ({i}, {j})")));
                }
            }
        }
        let eig = SymmetricEigen::new(matrix.clone());
        Ok(Self::from_parts(matrix, eig.eigenvalues, eig.eigenvectors))
    }

    fn from_parts(matrix: DMatrix<f64>, eigenvalues: DVector<f64>, eigenvectors: DMatrix<f64>) -> Self {
        let psd = eigenvalues.iter().all(|l| *l >= -PSD_TOLERANCE);
        Self {
            matrix,
            eigenvalues,
            eigenvectors,
            psd,
        }
    }

    /// Row-major construction.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(usage("every row must have as many entries as there are rows"));
        }
        Self::new(DMatrix::from_fn(dim, dim, |i, j| rows[i][j]))
    }

    /// Parse "dim" on the first line followed by `dim` rows of reals.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let dim: usize = lines
            .next()
            .ok_or_else(|| usage("matrix file is empty"))?
            .parse()
            .map_err(|e| usage(format!("bad dimension line: {e}")))?;
        let rows = lines
            .take(dim)
            .map(|l| {
                l.split_whitespace()
                    .map(|v| v.parse::<f64>().map_err(|e| usage(format!("bad entry {v:?}: {e}"))))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != dim {
            return Err(usage(format!("expected {dim} rows, found {}", rows.len())));
        }
        Self::from_rows(&rows)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Certified by the eigendecomposition, with tolerance [`PSD_TOLERANCE`].
    pub fn is_psd(&self) -> bool {
        self.psd
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.eigenvalues.iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    }

    /// All off-diagonal entries ≤ 0 (the graph-Laplacian class).
    pub fn has_nonpositive_off_diagonal(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| i == j || self.matrix[(i, j)] <= 0.0))
    }

    fn is_diagonal(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| i == j || self.matrix[(i, j)] == 0.0))
    }

    fn apply_complex(&self, v: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| v[j] * self.matrix[(i, j)]).sum())
            .collect()
    }

    fn apply_real(&self, v: &[f64]) -> Vec<f64> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| self.matrix[(i, j)] * v[j]).sum())
            .collect()
    }

    /// `self + diag(v)`.
    pub fn with_potential(&self, v: &Potential) -> Result<Self> {
        if v.dim() != self.dim() {
            return Err(usage("potential and operator dimensions differ"));
        }
        let mut m = self.matrix.clone();
        for (i, x) in v.diagonal().iter().enumerate() {
            m[(i, i)] += x;
        }
        Self::new(m)
    }

    /// `self + other`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if other.dim() != self.dim() {
            return Err(usage("operator dimensions differ"));
        }
        Self::new(&self.matrix + &other.matrix)
    }
}

/// Nonnegative diagonal multiplication operator.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    diagonal: Vec<f64>,
}

impl Potential {
    pub fn new(diagonal: Vec<f64>) -> Result<Self> {
        if diagonal.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(domain("potential entries must be finite and >= 0"));
        }
        Ok(Self { diagonal })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            diagonal: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }
}

/// Finite complex vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    entries: Vec<Complex64>,
}

impl ComplexVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(domain("vector entries must be finite"));
        }
        Ok(Self { entries })
    }

    pub fn from_real(v: &[f64]) -> Result<Self> {
        Self::new(v.iter().map(|x| Complex64::new(*x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Entrywise modulus.
    pub fn abs(&self) -> Vec<f64> {
        self.entries.iter().map(|z| z.norm()).collect()
    }

    /// Entries uniform in the square [−1, 1]², with about one in ten set
    /// to zero so the `ψ = 0` branch of the sign function is exercised.
    pub fn random<R: Rng>(dim: usize, rng: &mut R) -> Self {
        let entries = (0..dim)
            .map(|_| {
                if rng.random_bool(0.1) {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                }
            })
            .collect();
        Self { entries }
    }
}

fn check_dim(l: &SymmetricOperator, d: usize) -> Result<()> {
    if l.dim() != d {
        return Err(usage(format!(
            "operator is {0}x{0} but vector has {d} entries",
            l.dim()
        )));
    }
    Ok(())
}

fn require_graph_class(l: &SymmetricOperator) -> Result<()> {
    if !l.has_nonpositive_off_diagonal() {
        return Err(usage(
            "operator has a positive off-diagonal entry; Kato's inequality is not guaranteed",
        ));
    }
    Ok(())
}

/// m×m Laplacian of the m-cycle: 2 on the diagonal, −1 on cyclic neighbours.
pub fn cycle_laplacian(m: usize) -> Result<SymmetricOperator> {
    if m < 3 {
        return Err(usage(format!("cycle needs m >= 3, got {m}")));
    }
    let mut a = DMatrix::zeros(m, m);
    for i in 0..m {
        a[(i, i)] = 2.0;
        a[(i, (i + 1) % m)] = -1.0;
        a[((i + 1) % m, i)] = -1.0;
    }
    SymmetricOperator::new(a)
}

/// Laplacian of the complete graph K_m: `m·I − J`.
pub fn complete_laplacian(m: usize) -> Result<SymmetricOperator> {
    if m < 2 {
        return Err(usage(format!("complete graph needs m >= 2, got {m}")));
    }
    SymmetricOperator::new(DMatrix::from_fn(
        m,
        m,
        |i, j| if i == j { m as f64 - 1.0 } else { -1.0 },
    ))
}

/// Weighted Laplacian of a random connected graph on m vertices: a random
/// spanning path plus each remaining edge with probability `edge_prob`;
/// weights uniform in [0.5, 1.5).
pub fn random_graph_laplacian(m: usize, edge_prob: f64, seed: u64) -> Result<SymmetricOperator> {
    if m < 2 {
        return Err(usage(format!("random graph needs m >= 2, got {m}")));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(usage(format!("edge probability must lie in [0, 1], got {edge_prob}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(&mut rng);
    let mut w = DMatrix::<f64>::zeros(m, m);
    for pair in order.windows(2) {
        let x = rng.random_range(0.5..1.5);
        w[(pair[0], pair[1])] = x;
        w[(pair[1], pair[0])] = x;
    }
    for i in 0..m {
        for j in (i + 1)..m {
            if w[(i, j)] == 0.0 && rng.random_bool(edge_prob) {
                let x = rng.random_range(0.5..1.5);
                w[(i, j)] = x;
                w[(j, i)] = x;
            }
        }
    }
    let mut l = -w.clone();
    for i in 0..m {
        l[(i, i)] = w.row(i).sum();
    }
    SymmetricOperator::new(l)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SignMode {
    /// `conj(ψ)/|ψ|`, and 0 where ψ = 0.
    Exact,
    /// `conj(ψ)/sqrt(|ψ|² + ε²)`.
    Regularized(f64),
}

pub fn sign_vector(psi: &ComplexVector, mode: SignMode) -> Result<ComplexVector> {
    let entries = match mode {
        SignMode::Exact => psi
            .entries
            .iter()
            .map(|z| {
                let r = z.norm();
                if r == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    z.conj() / r
                }
            })
            .collect(),
        SignMode::Regularized(eps) => {
            let abs_eps = regularized_abs(psi, eps)?;
            psi.entries.iter().zip(abs_eps).map(|(z, r)| z.conj() / r).collect()
        }
    };
    Ok(ComplexVector { entries })
}

/// `sqrt(|ψ_i|² + ε²)` entrywise.
pub fn regularized_abs(psi: &ComplexVector, eps: f64) -> Result<Vec<f64>> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(domain(format!("eps must be positive, got {eps}")));
    }
    Ok(psi.entries.iter().map(|z| z.norm().hypot(eps)).collect())
}

/// Entrywise comparison `lhs ≥ rhs − tol`, recorded as `slack = lhs − rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub slack: Vec<f64>,
    pub min_slack: f64,
    pub holds: bool,
}

impl CheckReport {
    fn from_slack(slack: Vec<f64>, tol: f64) -> Self {
        let min_slack = slack.iter().copied().fold(f64::INFINITY, f64::min);
        Self {
            holds: min_slack >= -tol,
            slack,
            min_slack,
        }
    }
}

/// `Re(sgn(ψ) ⊙ Lψ) ≥ L|ψ| − tol` entrywise.
pub fn kato_pointwise_check(l: &SymmetricOperator, psi: &ComplexVector, tol: f64) -> Result<CheckReport> {
    require_graph_class(l)?;
    check_dim(l, psi.dim())?;
    let sgn = sign_vector(psi, SignMode::Exact)?;
    let lpsi = l.apply_complex(&psi.entries);
    let labs = l.apply_real(&psi.abs());
    let slack = sgn
        .entries
        .iter()
        .zip(&lpsi)
        .zip(&labs)
        .map(|((s, v), r)| (s * v).re - r)
        .collect();
    Ok(CheckReport::from_slack(slack, tol))
}

/// Both sides of `⟨Re(sgn(ψ) ⊙ Aψ), φ⟩ ≤ ⟨|ψ|, Aφ⟩` with `A = −L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairingReport {
    pub lhs: f64,
    pub rhs: f64,
    /// rhs − lhs
    pub slack: f64,
    pub holds: bool,
}

pub fn generator_pairing_check(
    l: &SymmetricOperator,
    psi: &ComplexVector,
    phi: &[f64],
    tol: f64,
) -> Result<PairingReport> {
    check_dim(l, psi.dim())?;
    check_dim(l, phi.len())?;
    if phi.iter().any(|v| !(*v >= 0.0)) {
        return Err(usage("test function phi must be entrywise >= 0"));
    }
    let sgn = sign_vector(psi, SignMode::Exact)?;
    let lpsi = l.apply_complex(&psi.entries);
    let lhs: f64 = sgn
        .entries
        .iter()
        .zip(&lpsi)
        .zip(phi)
        .map(|((s, v), p)| -(s * v).re * p)
        .sum();
    let lphi = l.apply_real(phi);
    let rhs: f64 = psi.abs().iter().zip(&lphi).map(|(a, v)| -a * v).sum();
    let slack = rhs - lhs;
    Ok(PairingReport {
        lhs,
        rhs,
        slack,
        holds: slack >= -tol,
    })
}

fn exp_from_eigen(values: &DVector<f64>, vectors: &DMatrix<f64>, t: f64) -> DMatrix<f64> {
    let scaled = DMatrix::from_fn(vectors.nrows(), vectors.ncols(), |i, j| {
        vectors[(i, j)] * (-t * values[j]).exp()
    });
    let e = scaled * vectors.transpose();
    // exact symmetry
    (&e + e.transpose()) * 0.5
}

fn semigroup_matrix(l: &SymmetricOperator, t: f64) -> DMatrix<f64> {
    let d = l.dim();
    if t == 0.0 {
        return DMatrix::identity(d, d);
    }
    if l.is_diagonal() {
        return DMatrix::from_fn(d, d, |i, j| if i == j { (-t * l.matrix[(i, i)]).exp() } else { 0.0 });
    }
    exp_from_eigen(&l.eigenvalues, &l.eigenvectors, t)
}

/// `e^{−tL}` by spectral calculus. `t = 0` gives the identity exactly and a
/// diagonal `L` gives the entrywise exponential.
pub fn semigroup(l: &SymmetricOperator, t: f64) -> Result<SymmetricOperator> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(domain(format!("t must be >= 0, got {t}")));
    }
    let matrix = semigroup_matrix(l, t);
    let values = l.eigenvalues.map(|x| (-t * x).exp());
    let vectors = if t == 0.0 || l.is_diagonal() {
        DMatrix::identity(l.dim(), l.dim())
    } else {
        l.eigenvectors.clone()
    };
    let values = if t == 0.0 {
        DVector::from_element(l.dim(), 1.0)
    } else if l.is_diagonal() {
        DVector::from_fn(l.dim(), |i, _| matrix[(i, i)])
    } else {
        values
    };
    Ok(SymmetricOperator::from_parts(matrix, values, vectors))
}

/// `|e^{−tL}ψ| ≤ e^{−tL}|ψ| + tol` entrywise; slack is `rhs − lhs`.
pub fn positivity_domination_check(
    l: &SymmetricOperator,
    t: f64,
    psi: &ComplexVector,
    tol: f64,
) -> Result<CheckReport> {
    require_graph_class(l)?;
    check_dim(l, psi.dim())?;
    let e = semigroup(l, t)?;
    Ok(positivity_with(&e, psi, tol))
}

fn positivity_with(e: &SymmetricOperator, psi: &ComplexVector, tol: f64) -> CheckReport {
    let lhs = e.apply_complex(&psi.entries);
    let rhs = e.apply_real(&psi.abs());
    let slack = lhs.iter().zip(&rhs).map(|(a, b)| b - a.norm()).collect();
    CheckReport::from_slack(slack, tol)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceReport {
    /// Tr e^{−tL}
    pub trace_free: f64,
    /// Tr e^{−t(L+V)}
    pub trace_perturbed: f64,
    pub ratio: f64,
    /// `min_k (λ_k(L+V) − λ_k(L))` over ascending spectra.
    pub interlacing_margin: f64,
    pub holds: bool,
}

/// `Tr e^{−t(L+V)} ≤ Tr e^{−tL} + tol`, with per-eigenvalue monotonicity.
pub fn trace_domination_check(l: &SymmetricOperator, v: &Potential, t: f64, tol: f64) -> Result<TraceReport> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain(format!("t must be > 0, got {t}")));
    }
    let h = l.with_potential(v)?;
    let free = l.eigenvalues();
    let perturbed = h.eigenvalues();
    let trace = |ev: &[f64]| ev.iter().map(|x| (-t * x).exp()).sum::<f64>();
    let trace_free = trace(&free);
    let trace_perturbed = trace(&perturbed);
    let interlacing_margin = perturbed
        .iter()
        .zip(&free)
        .map(|(a, b)| a - b)
        .fold(f64::INFINITY, f64::min);
    Ok(TraceReport {
        trace_free,
        trace_perturbed,
        ratio: trace_perturbed / trace_free,
        interlacing_margin,
        holds: trace_perturbed <= trace_free + tol && interlacing_margin >= -tol,
    })
}

fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    m.clone().svd(false, false).singular_values.max()
}

/// Spectral norm of
/// `e^{−t(X+Y)} − e^{−tX} + ∫₀^t e^{−(t−s)(X+Y)} Y e^{−sX} ds`,
/// the integral by composite Simpson on `steps` panels (odd counts are
/// rounded up).
pub fn duhamel_residual(x: &SymmetricOperator, y: &SymmetricOperator, t: f64, steps: usize) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain(format!("t must be > 0, got {t}")));
    }
    if steps < 2 {
        return Err(usage(format!("need at least 2 Simpson panels, got {steps}")));
    }
    let h = x.sum(y)?;
    let (nodes, weights) = simpson_rule(t, steps);
    let d = x.dim();
    let mut integral = DMatrix::<f64>::zeros(d, d);
    for (s, w) in nodes.iter().zip(&weights) {
        let left = semigroup_matrix(&h, t - s);
        let right = semigroup_matrix(x, *s);
        integral += (left * &y.matrix * right) * *w;
    }
    let residual = semigroup_matrix(&h, t) - semigroup_matrix(x, t) + integral;
    Ok(spectral_norm(&residual))
}

/// Spectral norm of `L e^{−tL} − e^{−tL} L`.
pub fn commute_residual(l: &SymmetricOperator, t: f64) -> Result<f64> {
    let e = semigroup(l, t)?;
    let c = &l.matrix * &e.matrix - &e.matrix * &l.matrix;
    Ok(spectral_norm(&c))
}

/// Entrywise sign-function identities on one vector pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignPropertyReport {
    /// `max_i |sgn(ψ)_i ψ_i − |ψ_i||`
    pub identity_error: f64,
    /// `min_i (|φ_i| − |sgn(ψ)_i φ_i|)`
    pub contraction_margin: f64,
    /// `max_i |sgn(ψ)_i φ_i|` over entries where ψ vanishes.
    pub off_support: f64,
}

pub fn sign_properties(psi: &ComplexVector, phi: &ComplexVector) -> Result<SignPropertyReport> {
    if psi.dim() != phi.dim() {
        return Err(usage("psi and phi must have equal length"));
    }
    let sgn = sign_vector(psi, SignMode::Exact)?;
    let mut identity_error: f64 = 0.0;
    let mut contraction_margin = f64::INFINITY;
    let mut off_support: f64 = 0.0;
    for ((s, p), f) in sgn.entries.iter().zip(&psi.entries).zip(&phi.entries) {
        identity_error = identity_error.max((s * p - p.norm()).norm());
        contraction_margin = contraction_margin.min(f.norm() - (s * f).norm());
        if p.norm() == 0.0 {
            off_support = off_support.max((s * f).norm());
        }
    }
    Ok(SignPropertyReport {
        identity_error,
        contraction_margin,
        off_support,
    })
}

/// Outcome of a batch of seeded random trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialSummary {
    pub seed: u64,
    pub trials: usize,
    pub failures: usize,
    pub min_slack: f64,
}

impl TrialSummary {
    fn new(seed: u64) -> Self {
        Self {
            seed,
            trials: 0,
            failures: 0,
            min_slack: f64::INFINITY,
        }
    }

    fn record(&mut self, slack: f64, holds: bool) {
        self.trials += 1;
        self.min_slack = self.min_slack.min(slack);
        if !holds {
            self.failures += 1;
        }
    }

    pub fn all_hold(&self) -> bool {
        self.failures == 0
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn kato_pointwise_trials(l: &SymmetricOperator, trials: usize, seed: u64, tol: f64) -> Result<TrialSummary> {
    let mut r = rng(seed);
    let mut out = TrialSummary::new(seed);
    for _ in 0..trials {
        let psi = ComplexVector::random(l.dim(), &mut r);
        let rep = kato_pointwise_check(l, &psi, tol)?;
        out.record(rep.min_slack, rep.holds);
    }
    Ok(out)
}

pub fn generator_pairing_trials(l: &SymmetricOperator, trials: usize, seed: u64, tol: f64) -> Result<TrialSummary> {
    let mut r = rng(seed);
    let mut out = TrialSummary::new(seed);
    for _ in 0..trials {
        let psi = ComplexVector::random(l.dim(), &mut r);
        let phi: Vec<f64> = (0..l.dim()).map(|_| r.random_range(0.0..1.0)).collect();
        let rep = generator_pairing_check(l, &psi, &phi, tol)?;
        out.record(rep.slack, rep.holds);
    }
    Ok(out)
}

/// Every trial vector is tested at every time in `times`.
pub fn positivity_trials(
    l: &SymmetricOperator,
    times: &[f64],
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<TrialSummary> {
    require_graph_class(l)?;
    let semigroups = times.iter().map(|t| semigroup(l, *t)).collect::<Result<Vec<_>>>()?;
    let mut r = rng(seed);
    let mut out = TrialSummary::new(seed);
    for _ in 0..trials {
        let psi = ComplexVector::random(l.dim(), &mut r);
        for e in &semigroups {
            let rep = positivity_with(e, &psi, tol);
            out.record(rep.min_slack, rep.holds);
        }
    }
    Ok(out)
}

/// Sign identities on random pairs; the slack is the worst of
/// `−identity_error`, `contraction_margin` and `−off_support`.
pub fn sign_property_trials(dim: usize, trials: usize, seed: u64, tol: f64) -> Result<TrialSummary> {
    let mut r = rng(seed);
    let mut out = TrialSummary::new(seed);
    for _ in 0..trials {
        let psi = ComplexVector::random(dim, &mut r);
        let phi = ComplexVector::random(dim, &mut r);
        let rep = sign_properties(&psi, &phi)?;
        let slack = (-rep.identity_error).min(rep.contraction_margin).min(-rep.off_support);
        out.record(slack, slack >= -tol);
    }
    Ok(out)
}

/// Random potentials with entries uniform in [0, 2); every potential is
/// tested at every time. The slack is the worse of the trace gap and the
/// interlacing margin.
pub fn trace_domination_trials(
    l: &SymmetricOperator,
    times: &[f64],
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<TrialSummary> {
    let mut r = rng(seed);
    let mut out = TrialSummary::new(seed);
    for _ in 0..trials {
        let v = Potential::new((0..l.dim()).map(|_| r.random_range(0.0..2.0)).collect())?;
        for t in times {
            let rep = trace_domination_check(l, &v, *t, tol)?;
            let slack = (rep.trace_free - rep.trace_perturbed).min(rep.interlacing_margin);
            out.record(slack, rep.holds);
        }
    }
    Ok(out)
}

/// Seeded `dim×dim` pair for the Duhamel check: `X = BᵀB/dim` with B
/// uniform in [−1, 1), and `Y` diagonal uniform in [0, 1).
pub fn duhamel_instance(dim: usize, seed: u64) -> Result<(SymmetricOperator, SymmetricOperator)> {
    if dim == 0 {
        return Err(usage("dimension must be positive"));
    }
    let mut r = rng(seed);
    let b = DMatrix::from_fn(dim, dim, |_, _| r.random_range(-1.0..1.0));
    let x = b.transpose() * &b / dim as f64;
    let x = (&x + x.transpose()) * 0.5;
    let y = DMatrix::from_diagonal(&DVector::from_fn(dim, |_, _| r.random_range(0.0..1.0)));
    Ok((SymmetricOperator::new(x)?, SymmetricOperator::new(y)?))
}

/// Builder spec: `cycle:m`, `complete:m`, `random:m:seed` or `file:PATH`.
pub fn operator_from_spec(spec: &str) -> Result<SymmetricOperator> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| usage(format!("graph spec {spec:?} must look like kind:arg")))?;
    let int = |s: &str| {
        s.parse::<usize>()
            .map_err(|e| usage(format!("bad size {s:?} in graph spec: {e}")))
    };
    match kind {
        "cycle" => cycle_laplacian(int(rest)?),
        "complete" => complete_laplacian(int(rest)?),
        "random" => {
            let (m, seed) = rest.split_once(':').unwrap_or((rest, "0"));
            let seed = seed
                .parse::<u64>()
                .map_err(|e| usage(format!("bad seed {seed:?}: {e}")))?;
            random_graph_laplacian(int(m)?, 0.3, seed)
        }
        "file" => SymmetricOperator::from_file(rest),
        _ => Err(Error::Usage(format!("unknown graph kind {kind:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cycle_spectrum() {
        let l = cycle_laplacian(4).unwrap();
        let ev = l.eigenvalues();
        for (a, b) in ev.iter().zip([0.0, 2.0, 2.0, 4.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        for m in [5, 8, 16] {
            let l = cycle_laplacian(m).unwrap();
            let mut oracle: Vec<f64> = (0..m)
                .map(|j| 2.0 - 2.0 * (2.0 * PI * j as f64 / m as f64).cos())
                .collect();
            oracle.sort_by(f64::total_cmp);
            for (a, b) in l.eigenvalues().iter().zip(&oracle) {
                assert!((a - b).abs() < 1e-12);
            }
            assert!(l.is_psd());
            let ones = vec![1.0; m];
            assert!(l.apply_real(&ones).iter().all(|v| *v == 0.0));
        }
        assert!(matches!(cycle_laplacian(2), Err(Error::Usage(_))));
    }

    #[test]
    fn builders() {
        let k = complete_laplacian(8).unwrap();
        let ev = k.eigenvalues();
        assert!(ev[0].abs() < 1e-12 && ev[1..].iter().all(|x| (x - 8.0).abs() < 1e-12));
        for seed in 0..5 {
            let g = random_graph_laplacian(12, 0.2, seed).unwrap();
            let ev = g.eigenvalues();
            // connected: a single zero eigenvalue
            assert!(ev[0].abs() < 1e-10 && ev[1] > 1e-6, "seed {seed}");
            assert!(g.has_nonpositive_off_diagonal());
        }
        let parsed = SymmetricOperator::parse("2\n1 -1\n-1 1\n").unwrap();
        assert_eq!(parsed.matrix()[(0, 1)], -1.0);
        assert!(matches!(
            SymmetricOperator::parse("2\n1 2\n3 1\n"),
            Err(Error::Usage(_))
        ));
        assert!(matches!(SymmetricOperator::parse("2\n1 2\n"), Err(Error::Usage(_))));
        assert!(operator_from_spec("cycle:6").is_ok());
        assert!(operator_from_spec("torus:6").is_err());
    }

    #[test]
    fn sign_examples() {
        let pos = ComplexVector::from_real(&[0.5, 2.0, 3.0]).unwrap();
        let s = sign_vector(&pos, SignMode::Exact).unwrap();
        assert!(s.entries().iter().all(|z| *z == c(1.0, 0.0)));

        let psi = ComplexVector::new(vec![c(3.0, 4.0), c(0.0, 0.0), c(-1.0, 1.0)]).unwrap();
        let phi = ComplexVector::new(vec![c(1.0, -2.0), c(5.0, 5.0), c(0.0, 0.5)]).unwrap();
        let rep = sign_properties(&psi, &phi).unwrap();
        assert!(rep.identity_error < 1e-15);
        assert!(rep.contraction_margin >= -1e-15);
        assert_eq!(rep.off_support, 0.0);

        // disjoint supports: the product vanishes
        let a = ComplexVector::new(vec![c(1.0, 1.0), c(0.0, 0.0)]).unwrap();
        let b = ComplexVector::new(vec![c(0.0, 0.0), c(2.0, -1.0)]).unwrap();
        let sa = sign_vector(&a, SignMode::Exact).unwrap();
        assert!(sa.entries().iter().zip(b.entries()).all(|(s, f)| s * f == c(0.0, 0.0)));
        // φ = ψ: sgn(ψ)φ = conj(ψ)ψ/|φ|
        for (s, p) in sa.entries().iter().zip(a.entries()) {
            if p.norm() > 0.0 {
                assert!((s * p - p.conj() * p / p.norm()).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn regularized_abs_behaviour() {
        let zero = ComplexVector::new(vec![c(0.0, 0.0); 3]).unwrap();
        assert_eq!(regularized_abs(&zero, 0.25).unwrap(), vec![0.25; 3]);
        let mut r = rng(3);
        let psi = ComplexVector::random(20, &mut r);
        let a = regularized_abs(&psi, 1e-3).unwrap();
        let b = regularized_abs(&psi, 1e-2).unwrap();
        let t = regularized_abs(&psi, 1e-8).unwrap();
        for ((x, y), (z, m)) in a.iter().zip(&b).zip(t.iter().zip(psi.abs())) {
            assert!(x <= y && *x >= m);
            assert!((z - m).abs() <= 1e-8);
        }
        assert!(matches!(regularized_abs(&psi, 0.0), Err(Error::Domain(_))));
        let reg = sign_vector(&psi, SignMode::Regularized(1e-12)).unwrap();
        let exact = sign_vector(&psi, SignMode::Exact).unwrap();
        for (a, b) in reg.entries().iter().zip(exact.entries()) {
            assert!((a - b).norm() < 1e-9 && a.norm() <= 1.0);
        }
    }

    #[test]
    fn pointwise_cases() {
        let l = cycle_laplacian(16).unwrap();
        let phase = c(0.6, -0.8);
        let psi = ComplexVector::new((0..16).map(|i| phase * (1.0 + i as f64)).collect()).unwrap();
        let rep = kato_pointwise_check(&l, &psi, 1e-12).unwrap();
        assert!(rep.holds && rep.slack.iter().all(|s| s.abs() < 1e-12));

        let mut entries: Vec<Complex64> = (0..16).map(|i| c(i as f64 - 7.0, 1.0)).collect();
        entries[3] = c(0.0, 0.0);
        let rep = kato_pointwise_check(&l, &ComplexVector::new(entries).unwrap(), 1e-12).unwrap();
        assert!(rep.holds);

        let s = kato_pointwise_trials(&l, 1000, 42, 1e-12).unwrap();
        assert!(s.all_hold() && s.trials == 1000);

        let bad = SymmetricOperator::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        assert!(matches!(kato_pointwise_check(&bad, &psi, 0.0), Err(Error::Usage(_))));
    }

    #[test]
    fn pairing_cases() {
        let l = cycle_laplacian(12).unwrap();
        let psi = ComplexVector::from_real(&(1..=12).map(|i| i as f64).collect::<Vec<_>>()).unwrap();
        let phi: Vec<f64> = (0..12).map(|i| (i % 3) as f64).collect();
        let rep = generator_pairing_check(&l, &psi, &phi, 1e-12).unwrap();
        assert!((rep.lhs - rep.rhs).abs() < 1e-12);
        let rep = generator_pairing_check(&l, &psi, &[0.0; 12], 0.0).unwrap();
        assert_eq!((rep.lhs, rep.rhs), (0.0, 0.0));
        assert!(generator_pairing_trials(&l, 1000, 7, 1e-12).unwrap().all_hold());
        let mut neg = phi.clone();
        neg[0] = -1.0;
        assert!(matches!(
            generator_pairing_check(&l, &psi, &neg, 0.0),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn semigroup_laws() {
        let l = cycle_laplacian(16).unwrap();
        let id = semigroup(&l, 0.0).unwrap();
        assert_eq!(id.matrix(), &DMatrix::identity(16, 16));
        let a = semigroup(&l, 0.3).unwrap();
        let b = semigroup(&l, 0.9).unwrap();
        let ab = semigroup(&l, 1.2).unwrap();
        assert!((a.matrix() * b.matrix() - ab.matrix()).amax() < 1e-10);
        assert!(ab.matrix().iter().all(|v| *v >= -1e-12));
        let row = ab.apply_real(&[1.0; 16]);
        assert!(row.iter().all(|v| (v - 1.0).abs() < 1e-12));
        let d = SymmetricOperator::new(DMatrix::from_diagonal(&DVector::from_vec(vec![0.0, 1.0, 3.0]))).unwrap();
        let e = semigroup(&d, 2.0).unwrap();
        assert_eq!(e.matrix()[(2, 2)], (-6.0f64).exp());
        assert_eq!(e.matrix()[(0, 2)], 0.0);
    }

    #[test]
    fn positivity_cases() {
        let l = cycle_laplacian(16).unwrap();
        let psi = ComplexVector::from_real(&[1.0; 16]).unwrap();
        let rep = positivity_domination_check(&l, 1.0, &psi, 1e-12).unwrap();
        assert!(rep.slack.iter().all(|s| s.abs() < 1e-12));
        let mut r = rng(1);
        let psi = ComplexVector::random(16, &mut r);
        let rep = positivity_domination_check(&l, 0.0, &psi, 0.0).unwrap();
        assert!(rep.slack.iter().all(|s| *s == 0.0));
        assert!(positivity_trials(&l, &[0.1, 1.0, 10.0], 1000, 5, 1e-12)
            .unwrap()
            .all_hold());
    }

    #[test]
    fn trace_cases() {
        let l = cycle_laplacian(10).unwrap();
        let rep = trace_domination_check(&l, &Potential::zero(10), 1.0, 1e-12).unwrap();
        assert!((rep.trace_free - rep.trace_perturbed).abs() < 1e-12 && rep.holds);
        let v = Potential::new((0..10).map(|i| 0.1 + 0.05 * i as f64).collect()).unwrap();
        let rep = trace_domination_check(&l, &v, 1.0, 1e-12).unwrap();
        assert!(rep.holds && rep.trace_perturbed < rep.trace_free && rep.ratio < 1.0);
        let rep = trace_domination_check(&l, &v, 1e-6, 1e-12).unwrap();
        assert!((rep.trace_free - 10.0).abs() < 1e-4 && (rep.trace_free - rep.trace_perturbed).abs() < 1e-4);
        assert!(trace_domination_trials(&l, &[0.1, 1.0, 10.0], 200, 9, 1e-12)
            .unwrap()
            .all_hold());
        assert!(Potential::new(vec![0.0, -1.0]).is_err());
    }

    #[test]
    fn duhamel_orders() {
        let (x, _) = duhamel_instance(8, 1).unwrap();
        let zero = SymmetricOperator::new(DMatrix::zeros(8, 8)).unwrap();
        assert!(duhamel_residual(&x, &zero, 1.0, 16).unwrap() < 1e-14);

        let dx = SymmetricOperator::new(DMatrix::from_diagonal(&DVector::from_vec(vec![0.5, 1.0, 2.0]))).unwrap();
        let dy = SymmetricOperator::new(DMatrix::from_diagonal(&DVector::from_vec(vec![0.3, 0.0, 0.5]))).unwrap();
        assert!(duhamel_residual(&dx, &dy, 1.0, 64).unwrap() <= 1e-10);

        for seed in [1, 2, 3] {
            let (x, y) = duhamel_instance(8, seed).unwrap();
            let r64 = duhamel_residual(&x, &y, 1.0, 64).unwrap();
            let r128 = duhamel_residual(&x, &y, 1.0, 128).unwrap();
            let r256 = duhamel_residual(&x, &y, 1.0, 256).unwrap();
            let ratio = r64 / r128;
            assert!(r256 <= 1e-9, "seed {seed}: {r256}");
            assert!((8.0..=32.0).contains(&ratio), "seed {seed}: ratio {ratio}");
        }
    }

    #[test]
    fn commutation() {
        let l = cycle_laplacian(16).unwrap();
        assert!(commute_residual(&l, 0.7).unwrap() <= 1e-11);
        assert_eq!(commute_residual(&l, 0.0).unwrap(), 0.0);
        let d = SymmetricOperator::new(DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 2.0, 5.0]))).unwrap();
        assert_eq!(commute_residual(&d, 0.4).unwrap(), 0.0);
    }
}
