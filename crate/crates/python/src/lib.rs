//! Python bindings for `spherezeta`.
//!
//! Series evaluators return an `EvalResult` with `value`, `terms_used` and
//! `tail_bound`. Domain and usage problems raise `ValueError`; a series or
//! quadrature that cannot meet its tolerance raises `ArithmeticError`.

use pyo3::exceptions::{PyArithmeticError, PyNotImplementedError, PyValueError};
use pyo3::prelude::*;

use spherezeta::kato as k;
use spherezeta::kernels::{self, KernelQuery, QuadraturePolicy};
use spherezeta::majorize as mj;
use spherezeta::specfun;
use spherezeta::zeta::{self as z, ClosedForm, HurwitzRoute};
use spherezeta::{Error, TruncationPolicy};

const DEFAULT_TOL: f64 = 1e-10;
const DEFAULT_MAX_K: usize = 2_000_000;

fn py_err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Domain(_) | Error::Usage(_) | Error::Range(_) => PyValueError::new_err(msg),
        Error::Truncation { .. } | Error::Accuracy { .. } | Error::Numeric(_) => PyArithmeticError::new_err(msg),
        Error::Unsupported(_) => PyNotImplementedError::new_err(msg),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for spherezeta::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn policy(tol: f64, max_k: usize) -> PyResult<TruncationPolicy> {
    TruncationPolicy::new(max_k, tol).py()
}

#[pyclass(name = "EvalResult", module = "spherezeta_py", frozen, skip_from_py_object, get_all)]
#[derive(Debug, Clone, Copy)]
pub struct PyEvalResult {
    pub value: f64,
    pub terms_used: usize,
    pub tail_bound: f64,
}

#[pymethods]
impl PyEvalResult {
    fn __repr__(&self) -> String {
        format!(
            "EvalResult(value={:e}, terms_used={}, tail_bound={:e})",
            self.value, self.terms_used, self.tail_bound
        )
    }

    fn __float__(&self) -> f64 {
        self.value
    }
}

impl From<spherezeta::EvalResult> for PyEvalResult {
    fn from(r: spherezeta::EvalResult) -> Self {
        Self {
            value: r.value,
            terms_used: r.terms_used,
            tail_bound: r.tail_bound,
        }
    }
}

fn eval(r: spherezeta::Result<spherezeta::EvalResult>) -> PyResult<PyEvalResult> {
    r.py().map(Into::into)
}

/// `(k, lambda, mu, multiplicity)` for k = 0..=kmax.
#[pyfunction]
pub fn spectrum(n: usize, kmax: usize) -> PyResult<Vec<(usize, f64, f64, u128)>> {
    Ok(spherezeta::spectrum::spectrum_slice(n, kmax)
        .py()?
        .into_iter()
        .map(|e| (e.k, e.lambda, e.mu, e.d))
        .collect())
}

#[pyfunction]
#[pyo3(signature = (s, n, tol = DEFAULT_TOL, max_k = DEFAULT_MAX_K))]
pub fn spectral_zeta(s: f64, n: usize, tol: f64, max_k: usize) -> PyResult<PyEvalResult> {
    eval(z::spectral_zeta(s, n, &policy(tol, max_k)?))
}

#[pyfunction]
#[pyo3(signature = (s, n, tol = DEFAULT_TOL, max_k = DEFAULT_MAX_K))]
pub fn regularized_zeta(s: f64, n: usize, tol: f64, max_k: usize) -> PyResult<PyEvalResult> {
    eval(z::regularized_zeta(s, n, &policy(tol, max_k)?))
}

/// Closed form of Z for n ≤ 4. `printed=True` uses ζ_R(2s−1) − 1 on S³.
#[pyfunction]
#[pyo3(signature = (s, n, printed = false))]
pub fn closed_form_z(s: f64, n: usize, printed: bool) -> PyResult<PyEvalResult> {
    let form = if printed {
        ClosedForm::S3AsPrinted
    } else {
        ClosedForm::Standard
    };
    eval(z::closed_form_z_variant(s, n, form))
}

/// Σ_{k≥0} (k+c)^{−2s}; pass `m_max` to use the binomial expansion (c < 1).
#[pyfunction]
#[pyo3(signature = (s, c, m_max = None, tol = DEFAULT_TOL, max_k = DEFAULT_MAX_K))]
pub fn hurwitz_style_z(s: f64, c: f64, m_max: Option<usize>, tol: f64, max_k: usize) -> PyResult<PyEvalResult> {
    let route = m_max.map_or(HurwitzRoute::Direct, |m_max| HurwitzRoute::Binomial { m_max });
    eval(z::hurwitz_style_z(s, c, route, &policy(tol, max_k)?))
}

#[pyfunction]
#[pyo3(signature = (s, tol = 1e-14, max_k = DEFAULT_MAX_K))]
pub fn riemann_zeta(s: f64, tol: f64, max_k: usize) -> PyResult<PyEvalResult> {
    eval(specfun::riemann_zeta(s, &policy(tol, max_k)?))
}

#[pyfunction]
#[pyo3(signature = (s, a, tol = 1e-14, max_k = DEFAULT_MAX_K))]
pub fn hurwitz_zeta(s: f64, a: f64, tol: f64, max_k: usize) -> PyResult<PyEvalResult> {
    eval(specfun::hurwitz_zeta(s, a, &policy(tol, max_k)?))
}

/// C_k^{α}(t) / C_k^{α}(1) with α = (n−1)/2.
#[pyfunction]
pub fn gegenbauer_ratio(k: usize, n: usize, t: f64) -> PyResult<f64> {
    specfun::gegenbauer_ratio(k, n, t).py()
}

#[pyfunction]
#[pyo3(signature = (t, n, cos_gamma, tol = DEFAULT_TOL, max_k = DEFAULT_MAX_K))]
pub fn heat_kernel(t: f64, n: usize, cos_gamma: f64, tol: f64, max_k: usize) -> PyResult<PyEvalResult> {
    let q = KernelQuery::new(n, cos_gamma, policy(tol, max_k)?).py()?;
    eval(kernels::heat_kernel(t, &q))
}

#[pyfunction]
#[pyo3(signature = (s, n, cos_gamma, tol = DEFAULT_TOL, max_k = DEFAULT_MAX_K))]
pub fn zeta_kernel(s: f64, n: usize, cos_gamma: f64, tol: f64, max_k: usize) -> PyResult<PyEvalResult> {
    let q = KernelQuery::new(n, cos_gamma, policy(tol, max_k)?).py()?;
    eval(kernels::zeta_kernel(s, &q))
}

#[pyfunction]
#[pyo3(signature = (t, n, tol = DEFAULT_TOL, max_k = DEFAULT_MAX_K))]
pub fn heat_trace(t: f64, n: usize, tol: f64, max_k: usize) -> PyResult<PyEvalResult> {
    eval(kernels::heat_trace(t, n, &policy(tol, max_k)?))
}

/// Zeta kernel from the Mellin transform of the heat kernel.
#[pyfunction]
#[pyo3(signature = (s, n, cos_gamma, tol = 1e-7, max_k = DEFAULT_MAX_K, nodes = None))]
pub fn mellin_zeta_kernel(
    s: f64,
    n: usize,
    cos_gamma: f64,
    tol: f64,
    max_k: usize,
    nodes: Option<usize>,
) -> PyResult<PyEvalResult> {
    let q = KernelQuery::new(n, cos_gamma, policy(tol, max_k)?).py()?;
    let mut quad = QuadraturePolicy::default();
    if let Some(m) = nodes {
        quad.nodes_small = m;
        quad.nodes_large = m;
    }
    eval(kernels::mellin_zeta_kernel(s, &q, &quad))
}

#[pyclass(name = "ZetaPair", module = "spherezeta_py", frozen, skip_from_py_object, get_all)]
#[derive(Debug, Clone)]
pub struct PyZetaPair {
    pub s: f64,
    pub n: usize,
    pub zeta_laplace: PyEvalResult,
    pub zeta_shifted: PyEvalResult,
    pub termwise: bool,
    pub prefix_holds: bool,
    pub gap: f64,
    pub dominated: bool,
}

#[pyfunction]
#[pyo3(signature = (s, n, horizon = 200, tol = 1e-9, max_k = DEFAULT_MAX_K))]
pub fn compare_zeta_pair(s: f64, n: usize, horizon: usize, tol: f64, max_k: usize) -> PyResult<PyZetaPair> {
    let p = z::compare_zeta_pair(s, n, horizon, &policy(tol, max_k)?).py()?;
    Ok(PyZetaPair {
        s: p.s,
        n: p.n,
        zeta_laplace: p.zeta_laplace.into(),
        zeta_shifted: p.zeta_shifted.into(),
        termwise: p.termwise,
        prefix_holds: p.prefix.holds,
        gap: p.gap,
        dominated: p.dominated,
    })
}

#[pyclass(
    name = "MajorizationReport",
    module = "spherezeta_py",
    frozen,
    skip_from_py_object,
    get_all
)]
#[derive(Debug, Clone)]
pub struct PyMajorizationReport {
    pub x_sorted: Vec<f64>,
    pub y_sorted: Vec<f64>,
    pub prefix_gaps: Vec<f64>,
    /// "weakly_majorizes", "majorizes" or "fails"
    pub verdict: String,
    pub first_violation: Option<usize>,
    pub weakly: bool,
    pub strongly: bool,
}

impl From<mj::MajorizationReport> for PyMajorizationReport {
    fn from(r: mj::MajorizationReport) -> Self {
        let verdict = match r.verdict {
            mj::Verdict::WeaklyMajorizes => "weakly_majorizes",
            mj::Verdict::Majorizes => "majorizes",
            mj::Verdict::Fails => "fails",
        };
        Self {
            weakly: r.weakly(),
            strongly: r.strongly(),
            verdict: verdict.to_string(),
            x_sorted: r.x_sorted,
            y_sorted: r.y_sorted,
            prefix_gaps: r.prefix_gaps,
            first_violation: r.first_violation,
        }
    }
}

#[pyfunction]
#[pyo3(signature = (x, y, tol = None))]
pub fn majorizes(x: Vec<f64>, y: Vec<f64>, tol: Option<f64>) -> PyResult<PyMajorizationReport> {
    let tol = tol.unwrap_or_else(|| mj::default_tolerance(&x, &y));
    mj::majorizes(&x, &y, tol).py().map(Into::into)
}

#[pyfunction]
#[pyo3(signature = (x, y, tol = None))]
pub fn weak_majorizes(x: Vec<f64>, y: Vec<f64>, tol: Option<f64>) -> PyResult<PyMajorizationReport> {
    let tol = tol.unwrap_or_else(|| mj::default_tolerance(&x, &y));
    mj::weak_majorizes(&x, &y, tol).py().map(Into::into)
}

/// Symmetric matrix, usually a graph Laplacian.
#[pyclass(name = "Operator", module = "spherezeta_py", frozen, skip_from_py_object)]
#[derive(Debug, Clone)]
pub struct PyOperator {
    inner: k::SymmetricOperator,
}

#[pymethods]
impl PyOperator {
    #[new]
    fn new(rows: Vec<Vec<f64>>) -> PyResult<Self> {
        k::SymmetricOperator::from_rows(&rows).py().map(|inner| Self { inner })
    }

    /// `cycle:m`, `complete:m`, `random:m:seed` or `file:PATH`.
    #[staticmethod]
    pub fn from_spec(spec: &str) -> PyResult<Self> {
        k::operator_from_spec(spec).py().map(|inner| Self { inner })
    }

    #[staticmethod]
    fn cycle(m: usize) -> PyResult<Self> {
        k::cycle_laplacian(m).py().map(|inner| Self { inner })
    }

    #[staticmethod]
    fn complete(m: usize) -> PyResult<Self> {
        k::complete_laplacian(m).py().map(|inner| Self { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (m, edge_prob, seed))]
    fn random_graph(m: usize, edge_prob: f64, seed: u64) -> PyResult<Self> {
        k::random_graph_laplacian(m, edge_prob, seed)
            .py()
            .map(|inner| Self { inner })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn eigenvalues(&self) -> Vec<f64> {
        self.inner.eigenvalues()
    }

    fn rows(&self) -> Vec<Vec<f64>> {
        let m = self.inner.matrix();
        m.row_iter().map(|r| r.iter().copied().collect()).collect()
    }

    /// Rows of e^{−tL}.
    fn semigroup(&self, t: f64) -> PyResult<Vec<Vec<f64>>> {
        let e = k::semigroup(&self.inner, t).py()?;
        Ok(Self { inner: e }.rows())
    }

    fn commute_residual(&self, t: f64) -> PyResult<f64> {
        k::commute_residual(&self.inner, t).py()
    }

    fn __repr__(&self) -> String {
        format!("Operator(dim={})", self.inner.dim())
    }
}

#[pyclass(
    name = "TrialSummary",
    module = "spherezeta_py",
    frozen,
    skip_from_py_object,
    get_all
)]
#[derive(Debug, Clone, Copy)]
pub struct PyTrialSummary {
    pub seed: u64,
    pub trials: usize,
    pub failures: usize,
    pub min_slack: f64,
    pub all_hold: bool,
}

impl From<k::TrialSummary> for PyTrialSummary {
    fn from(s: k::TrialSummary) -> Self {
        Self {
            seed: s.seed,
            trials: s.trials,
            failures: s.failures,
            min_slack: s.min_slack,
            all_hold: s.all_hold(),
        }
    }
}

#[pyfunction]
#[pyo3(signature = (op, trials = 1000, seed = 0, tol = 1e-12))]
pub fn kato_pointwise_trials(op: &PyOperator, trials: usize, seed: u64, tol: f64) -> PyResult<PyTrialSummary> {
    k::kato_pointwise_trials(&op.inner, trials, seed, tol)
        .py()
        .map(Into::into)
}

#[pyfunction]
#[pyo3(signature = (op, trials = 1000, seed = 0, tol = 1e-12))]
pub fn generator_pairing_trials(op: &PyOperator, trials: usize, seed: u64, tol: f64) -> PyResult<PyTrialSummary> {
    k::generator_pairing_trials(&op.inner, trials, seed, tol)
        .py()
        .map(Into::into)
}

#[pyfunction]
#[pyo3(signature = (op, times = vec![0.1, 1.0, 10.0], trials = 1000, seed = 0, tol = 1e-12))]
pub fn positivity_trials(
    op: &PyOperator,
    times: Vec<f64>,
    trials: usize,
    seed: u64,
    tol: f64,
) -> PyResult<PyTrialSummary> {
    k::positivity_trials(&op.inner, &times, trials, seed, tol)
        .py()
        .map(Into::into)
}

#[pyfunction]
#[pyo3(signature = (op, times = vec![0.1, 1.0, 10.0], trials = 200, seed = 0, tol = 1e-12))]
pub fn trace_domination_trials(
    op: &PyOperator,
    times: Vec<f64>,
    trials: usize,
    seed: u64,
    tol: f64,
) -> PyResult<PyTrialSummary> {
    k::trace_domination_trials(&op.inner, &times, trials, seed, tol)
        .py()
        .map(Into::into)
}

/// Simpson residual of the Duhamel formula for e^{−t(X+Y)}.
#[pyfunction]
#[pyo3(signature = (x, y, t, steps = 256))]
pub fn duhamel_residual(x: &PyOperator, y: &PyOperator, t: f64, steps: usize) -> PyResult<f64> {
    k::duhamel_residual(&x.inner, &y.inner, t, steps).py()
}

#[pymodule]
fn spherezeta_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEvalResult>()?;
    m.add_class::<PyZetaPair>()?;
    m.add_class::<PyMajorizationReport>()?;
    m.add_class::<PyOperator>()?;
    m.add_class::<PyTrialSummary>()?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(regularized_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_z, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_style_z, m)?)?;
    m.add_function(wrap_pyfunction!(riemann_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(gegenbauer_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(heat_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(heat_trace, m)?)?;
    m.add_function(wrap_pyfunction!(mellin_zeta_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(compare_zeta_pair, m)?)?;
    m.add_function(wrap_pyfunction!(majorizes, m)?)?;
    m.add_function(wrap_pyfunction!(weak_majorizes, m)?)?;
    m.add_function(wrap_pyfunction!(kato_pointwise_trials, m)?)?;
    m.add_function(wrap_pyfunction!(generator_pairing_trials, m)?)?;
    m.add_function(wrap_pyfunction!(positivity_trials, m)?)?;
    m.add_function(wrap_pyfunction!(trace_domination_trials, m)?)?;
    m.add_function(wrap_pyfunction!(duhamel_residual, m)?)?;
    Ok(())
}
