//! Command-line front end for `spherezeta`.
//!
//! Exit codes: 0 on success (verdict true or absent), 2 when a checked
//! inequality fails, 1 on usage or domain errors.

mod config;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spherezeta::kato::{
    commute_residual, duhamel_instance, duhamel_residual, generator_pairing_trials, kato_pointwise_trials,
    operator_from_spec, positivity_trials, trace_domination_trials, SymmetricOperator, TrialSummary,
};
use spherezeta::kernels::{heat_kernel, heat_trace, mellin_zeta_kernel, zeta_kernel, KernelQuery, QuadraturePolicy};
use spherezeta::majorize::{default_tolerance, majorizes, weak_majorizes};
use spherezeta::specfun::{gegenbauer_ratio, hurwitz_zeta, riemann_zeta};
use spherezeta::spectrum::spectrum_slice;
use spherezeta::zeta::{
    closed_form_z_variant, compare_zeta_pair, hurwitz_style_z, regularized_zeta, spectral_zeta, ClosedForm,
    HurwitzRoute,
};
use spherezeta::{Error, EvalResult, Result, TruncationPolicy};

pub use config::ConfigFile;
pub use output::{format_float, write_records, Field, Format, OutputRecord};

/// Tolerance for the matrix inequality checks.
const MATRIX_TOL: f64 = 1e-12;
/// Default certification target for the Mellin quadrature.
const MELLIN_TOL: f64 = 1e-7;
const DUHAMEL_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "spherezeta",
    version,
    about = "Spectral zeta functions and heat kernels on the unit n-sphere"
)]
pub struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Absolute tolerance for series tails.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Largest series index that may be summed.
    #[arg(long = "max-k", global = true)]
    pub max_k: Option<usize>,
    /// key=value file with policy defaults; flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write records here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues, shifted eigenvalues and multiplicities for k = 0..=kmax.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kmax: usize,
    },
    /// Global zeta functions of Sⁿ.
    Zeta(ZetaArgs),
    /// Pointwise heat or zeta kernel.
    Kernel(KernelArgs),
    /// Heat trace Σ d_k e^{−λ_k t}.
    HeatTrace {
        #[arg(long)]
        n: usize,
        #[arg(long, required_unless_present = "t_grid")]
        t: Option<f64>,
        /// a:b:step
        #[arg(long)]
        t_grid: Option<String>,
    },
    /// Zeta kernel by Mellin quadrature against the direct series.
    MellinCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: f64,
        #[arg(long, allow_negative_numbers = true)]
        cos_gamma: f64,
        /// Gauss–Legendre nodes for the small- and large-t ranges.
        #[arg(long)]
        quad_nodes: Option<usize>,
    },
    /// Prefix-sum and total domination of Z_{Sⁿ}(s) by ζ_{Sⁿ}(s).
    Dominate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 200)]
        kmax: usize,
    },
    /// Does x majorise y?
    Majorize {
        /// Comma-separated reals.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Only require weak majorisation.
        #[arg(long)]
        weak: bool,
    },
    /// Discrete Kato and semigroup checks.
    Kato(KatoArgs),
    /// Scalar special functions.
    Specfun(SpecfunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZetaForm {
    /// Z_{Sⁿ}(s) by direct summation.
    Series,
    /// ζ_{Sⁿ}(s) by direct summation.
    Laplace,
    /// Z_{Sⁿ}(s) from the Riemann-zeta closed form (n ≤ 4).
    Closed,
    /// Closed form with the S³ expression ζ_R(2s−1) − 1.
    Printed,
    /// Σ_{k≥0} (k+c)^{−2s}, no multiplicities.
    Hurwitz,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, required_unless_present = "s_grid")]
    pub s: Option<f64>,
    #[arg(long, value_enum, default_value_t = ZetaForm::Series)]
    pub form: ZetaForm,
    /// a:b:step
    #[arg(long)]
    pub s_grid: Option<String>,
    /// Shift for --form hurwitz.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Use the binomial expansion with this many terms (--form hurwitz, c < 1).
    #[arg(long)]
    pub m_max: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelKind {
    Heat,
    Zeta,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = KernelKind::Heat)]
    pub kind: KernelKind,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub t: Option<f64>,
    /// a:b:step over t (heat) or s (zeta).
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub cos_gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KatoCheck {
    Pointwise,
    Pairing,
    Positivity,
    Trace,
    Duhamel,
    Commute,
}

#[derive(Debug, Args)]
pub struct KatoArgs {
    #[arg(value_enum)]
    pub check: KatoCheck,
    /// cycle:m, complete:m, random:m:seed or file:PATH.
    #[arg(long)]
    pub graph: Option<String>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Time; positivity and trace default to 0.1, 1 and 10.
    #[arg(long)]
    pub t: Option<f64>,
    /// Simpson panels for duhamel.
    #[arg(long, default_value_t = 256)]
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpecfunKind {
    Zeta,
    Hurwitz,
    Gegenbauer,
}

#[derive(Debug, Args)]
pub struct SpecfunArgs {
    #[arg(value_enum)]
    pub function: SpecfunKind,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
}

/// Resolved global settings.
struct Settings {
    tol: Option<f64>,
    max_k: Option<usize>,
    quad: config::QuadOverrides,
}

impl Settings {
    fn policy(&self, default_tol: f64) -> Result<TruncationPolicy> {
        let d = TruncationPolicy::default();
        TruncationPolicy::new(self.max_k.unwrap_or(d.max_k), self.tol.unwrap_or(default_tol))
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| usage(format!("missing required flag --{flag}")))
}

/// Inclusive grid `a:b:step`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(usage(format!("grid {spec:?} must be a:b:step")));
    }
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|e| usage(format!("bad grid value {s:?}: {e}")))
    };
    let (a, b, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
    let ordered = step > 0.0 && b >= a && a.is_finite() && b.is_finite();
    if !ordered {
        return Err(usage(format!("grid {spec:?} needs a <= b and step > 0")));
    }
    let count = ((b - a) / step + 1e-9).floor() as usize;
    if count > 1_000_000 {
        return Err(usage("grid has more than a million points"));
    }
    Ok((0..=count).map(|i| a + step * i as f64).collect())
}

fn parse_list(spec: &str) -> Result<Vec<f64>> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| usage(format!("bad number {s:?}: {e}")))
        })
        .collect()
}

fn with_eval(rec: OutputRecord, r: &EvalResult) -> OutputRecord {
    rec.value("value", r.value)
        .value("terms_used", r.terms_used)
        .tail(r.tail_bound)
}

fn spectrum_cmd(n: usize, kmax: usize) -> Result<Vec<OutputRecord>> {
    Ok(spectrum_slice(n, kmax)?
        .into_iter()
        .map(|e| {
            OutputRecord::new("spectrum")
                .input("n", n)
                .input("k", e.k)
                .value("lambda", e.lambda)
                .value("mu", e.mu)
                .value("multiplicity", e.d)
        })
        .collect())
}

fn zeta_cmd(a: &ZetaArgs, st: &Settings) -> Result<Vec<OutputRecord>> {
    let grid = match (&a.s_grid, a.s) {
        (Some(g), _) => parse_grid(g)?,
        (None, Some(s)) => vec![s],
        (None, None) => return Err(usage("zeta needs --s or --s-grid")),
    };
    let policy = st.policy(TruncationPolicy::default().tol)?;
    let form_name = a
        .form
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    grid.into_iter()
        .map(|s| {
            let r = match a.form {
                ZetaForm::Series => regularized_zeta(s, a.n, &policy)?,
                ZetaForm::Laplace => spectral_zeta(s, a.n, &policy)?,
                ZetaForm::Closed => closed_form_z_variant(s, a.n, ClosedForm::Standard)?,
                ZetaForm::Printed => closed_form_z_variant(s, a.n, ClosedForm::S3AsPrinted)?,
                ZetaForm::Hurwitz => {
                    let route = match a.m_max {
                        Some(m_max) => HurwitzRoute::Binomial { m_max },
                        None => HurwitzRoute::Direct,
                    };
                    hurwitz_style_z(s, a.c, route, &policy)?
                }
            };
            let mut rec = OutputRecord::new("zeta").input("form", form_name.as_str());
            rec = if a.form == ZetaForm::Hurwitz {
                rec.input("c", a.c)
            } else {
                rec.input("n", a.n)
            };
            Ok(with_eval(rec.input("s", s), &r))
        })
        .collect()
}

fn kernel_cmd(a: &KernelArgs, st: &Settings) -> Result<Vec<OutputRecord>> {
    let policy = st.policy(TruncationPolicy::default().tol)?;
    let q = KernelQuery::new(a.n, a.cos_gamma, policy)?;
    let (flag, single) = match a.kind {
        KernelKind::Heat => ("t", a.t),
        KernelKind::Zeta => ("s", a.s),
    };
    let points = match (&a.grid, single) {
        (Some(g), _) => parse_grid(g)?,
        (None, Some(v)) => vec![v],
        (None, None) => return Err(usage(format!("kernel --kind needs --{flag} or --grid"))),
    };
    points
        .into_iter()
        .map(|x| {
            let (kind, r) = match a.kind {
                KernelKind::Heat => ("heat", heat_kernel(x, &q)?),
                KernelKind::Zeta => ("zeta", zeta_kernel(x, &q)?),
            };
            let rec = OutputRecord::new("kernel")
                .input("kind", kind)
                .input("n", a.n)
                .input("cos_gamma", a.cos_gamma)
                .input(flag, x);
            Ok(with_eval(rec, &r))
        })
        .collect()
}

fn heat_trace_cmd(n: usize, t: Option<f64>, grid: Option<&str>, st: &Settings) -> Result<Vec<OutputRecord>> {
    let policy = st.policy(TruncationPolicy::default().tol)?;
    let points = match (grid, t) {
        (Some(g), _) => parse_grid(g)?,
        (None, Some(t)) => vec![t],
        (None, None) => return Err(usage("heat-trace needs --t or --t-grid")),
    };
    points
        .into_iter()
        .map(|t| {
            let r = heat_trace(t, n, &policy)?;
            Ok(with_eval(
                OutputRecord::new("heat-trace").input("n", n).input("t", t),
                &r,
            ))
        })
        .collect()
}

fn mellin_cmd(n: usize, s: f64, cos_gamma: f64, nodes: Option<usize>, st: &Settings) -> Result<Vec<OutputRecord>> {
    let policy = st.policy(MELLIN_TOL)?;
    let mut quad = QuadraturePolicy::default();
    st.quad.apply(&mut quad);
    if let Some(m) = nodes {
        quad.nodes_small = m;
        quad.nodes_large = m;
    }
    let q = KernelQuery::new(n, cos_gamma, policy)?;
    let mellin = mellin_zeta_kernel(s, &q, &quad)?;
    let series = zeta_kernel(s, &q)?;
    let diff = (mellin.value - series.value).abs();
    let bound = mellin.tail_bound + series.tail_bound;
    Ok(vec![OutputRecord::new("mellin-check")
        .input("n", n)
        .input("s", s)
        .input("cos_gamma", cos_gamma)
        .input("nodes_small", quad.nodes_small)
        .input("nodes_large", quad.nodes_large)
        .value("mellin", mellin.value)
        .value("series", series.value)
        .value("difference", diff)
        .value("quadrature_error", mellin.tail_bound)
        .value("series_tail", series.tail_bound)
        .tail(bound)
        .verdict(diff <= bound + policy.tol)])
}

fn dominate_cmd(n: usize, s: f64, kmax: usize, st: &Settings) -> Result<Vec<OutputRecord>> {
    let policy = st.policy(1e-9)?;
    let pair = compare_zeta_pair(s, n, kmax, &policy)?;
    let first_violation = pair.prefix.first_violation.map(|v| v as u128).unwrap_or(0);
    Ok(vec![OutputRecord::new("dominate")
        .input("n", n)
        .input("s", s)
        .input("kmax", kmax)
        .value("zeta_laplace", pair.zeta_laplace.value)
        .value("zeta_shifted", pair.zeta_shifted.value)
        .value("gap", pair.gap)
        .value("termwise", pair.termwise)
        .value("prefix_holds", pair.prefix.holds)
        .value("first_violation", first_violation)
        .tail(pair.zeta_laplace.tail_bound + pair.zeta_shifted.tail_bound)
        .verdict(pair.dominated)])
}

fn majorize_cmd(x: &str, y: &str, weak: bool, st: &Settings) -> Result<Vec<OutputRecord>> {
    let xs = parse_list(x)?;
    let ys = parse_list(y)?;
    let tol = st.tol.unwrap_or_else(|| default_tolerance(&xs, &ys));
    let rep = if weak {
        weak_majorizes(&xs, &ys, tol)?
    } else {
        majorizes(&xs, &ys, tol)?
    };
    let verdict = if weak { rep.weakly() } else { rep.strongly() };
    let min_gap = rep.prefix_gaps.iter().copied().fold(f64::INFINITY, f64::min);
    let total_gap = *rep.prefix_gaps.last().expect("nonempty");
    Ok(vec![OutputRecord::new("majorize")
        .input("x", x)
        .input("y", y)
        .input("weak", weak)
        .value("verdict_kind", format!("{:?}", rep.verdict))
        .value("min_prefix_gap", min_gap)
        .value("total_gap", total_gap)
        .value("first_violation", rep.first_violation.map(|v| v as u128).unwrap_or(0))
        .tail(tol)
        .verdict(verdict)])
}

fn trial_record(check: &str, graph: &str, s: &TrialSummary) -> OutputRecord {
    OutputRecord::new("kato")
        .input("check", check)
        .input("graph", graph)
        .input("trials", s.trials)
        .value("failures", s.failures)
        .value("min_slack", s.min_slack)
        .tail(MATRIX_TOL)
        .verdict(s.all_hold())
        .seed(s.seed)
}

fn kato_cmd(a: &KatoArgs) -> Result<Vec<OutputRecord>> {
    let check = a
        .check
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let times: Vec<f64> = a.t.map(|t| vec![t]).unwrap_or_else(|| vec![0.1, 1.0, 10.0]);
    let graph_spec = a.graph.clone();
    let load = || -> Result<(String, SymmetricOperator)> {
        let spec = graph_spec.clone().ok_or_else(|| usage("kato needs --graph"))?;
        let op = operator_from_spec(&spec)?;
        Ok((spec, op))
    };
    match a.check {
        KatoCheck::Pointwise => {
            let (g, l) = load()?;
            let s = kato_pointwise_trials(&l, a.trials.unwrap_or(1000), a.seed, MATRIX_TOL)?;
            Ok(vec![trial_record(&check, &g, &s)])
        }
        KatoCheck::Pairing => {
            let (g, l) = load()?;
            let s = generator_pairing_trials(&l, a.trials.unwrap_or(1000), a.seed, MATRIX_TOL)?;
            Ok(vec![trial_record(&check, &g, &s)])
        }
        KatoCheck::Positivity => {
            let (g, l) = load()?;
            let s = positivity_trials(&l, &times, a.trials.unwrap_or(1000), a.seed, MATRIX_TOL)?;
            Ok(vec![trial_record(&check, &g, &s)])
        }
        KatoCheck::Trace => {
            let (g, l) = load()?;
            let s = trace_domination_trials(&l, &times, a.trials.unwrap_or(200), a.seed, MATRIX_TOL)?;
            Ok(vec![trial_record(&check, &g, &s)])
        }
        KatoCheck::Duhamel => {
            let t = a.t.unwrap_or(1.0);
            let (g, x, y) = match &a.graph {
                Some(spec) => {
                    let x = operator_from_spec(spec)?;
                    let (_, y) = duhamel_instance(x.dim(), a.seed)?;
                    (spec.clone(), x, y)
                }
                None => {
                    let (x, y) = duhamel_instance(8, a.seed)?;
                    ("random-psd:8".to_string(), x, y)
                }
            };
            let r = duhamel_residual(&x, &y, t, a.steps)?;
            let coarse = duhamel_residual(&x, &y, t, a.steps / 4)?;
            let mid = duhamel_residual(&x, &y, t, a.steps / 2)?;
            let ratio = coarse / mid;
            Ok(vec![OutputRecord::new("kato")
                .input("check", check.as_str())
                .input("graph", g)
                .input("t", t)
                .input("steps", a.steps)
                .value("residual", r)
                .value("residual_quarter_steps", coarse)
                .value("residual_half_steps", mid)
                .value("order_ratio", ratio)
                .tail(DUHAMEL_TOL)
                .verdict(r <= DUHAMEL_TOL)
                .seed(a.seed)])
        }
        KatoCheck::Commute => {
            let (g, l) = load()?;
            let norm = l.eigenvalues().iter().fold(0.0f64, |m, x| m.max(x.abs()));
            times
                .iter()
                .map(|t| {
                    let r = commute_residual(&l, *t)?;
                    let allowed = 1e-10 * norm;
                    Ok(OutputRecord::new("kato")
                        .input("check", check.as_str())
                        .input("graph", g.as_str())
                        .input("t", *t)
                        .value("residual", r)
                        .value("operator_norm", norm)
                        .tail(allowed)
                        .verdict(r <= allowed))
                })
                .collect()
        }
    }
}

fn specfun_cmd(a: &SpecfunArgs, st: &Settings) -> Result<Vec<OutputRecord>> {
    let policy = st.policy(1e-14)?;
    match a.function {
        SpecfunKind::Zeta => {
            let s = need(a.s, "s")?;
            let r = riemann_zeta(s, &policy)?;
            Ok(vec![with_eval(
                OutputRecord::new("specfun").input("function", "zeta").input("s", s),
                &r,
            )])
        }
        SpecfunKind::Hurwitz => {
            let s = need(a.s, "s")?;
            let x = need(a.a, "a")?;
            let r = hurwitz_zeta(s, x, &policy)?;
            Ok(vec![with_eval(
                OutputRecord::new("specfun")
                    .input("function", "hurwitz")
                    .input("s", s)
                    .input("a", x),
                &r,
            )])
        }
        SpecfunKind::Gegenbauer => {
            let n = need(a.n, "n")?;
            let k = need(a.k, "k")?;
            let t = need(a.t, "t")?;
            let r = gegenbauer_ratio(k, n, t)?;
            Ok(vec![OutputRecord::new("specfun")
                .input("function", "gegenbauer")
                .input("n", n)
                .input("k", k)
                .input("t", t)
                .value("ratio", r)])
        }
    }
}

fn execute(cli: &Cli) -> Result<Vec<OutputRecord>> {
    let cfg = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let st = Settings {
        tol: cli.tol.or(cfg.tol),
        max_k: cli.max_k.or(cfg.max_k),
        quad: cfg.quad,
    };
    match &cli.command {
        Command::Spectrum { n, kmax } => spectrum_cmd(*n, *kmax),
        Command::Zeta(a) => zeta_cmd(a, &st),
        Command::Kernel(a) => kernel_cmd(a, &st),
        Command::HeatTrace { n, t, t_grid } => heat_trace_cmd(*n, *t, t_grid.as_deref(), &st),
        Command::MellinCheck {
            n,
            s,
            cos_gamma,
            quad_nodes,
        } => mellin_cmd(*n, *s, *cos_gamma, *quad_nodes, &st),
        Command::Dominate { n, s, kmax } => dominate_cmd(*n, *s, *kmax, &st),
        Command::Majorize { x, y, weak } => majorize_cmd(x, y, *weak, &st),
        Command::Kato(a) => kato_cmd(a),
        Command::Specfun(a) => specfun_cmd(a, &st),
    }
}

/// Parse `argv` (including the program name), run, and write records.
/// Returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let records = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 1;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::File::create(path).and_then(|mut f| write_records(&mut f, &records, cli.format)),
        None => write_records(stdout, &records, cli.format),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return 1;
    }
    if records.iter().any(|r| r.verdict == Some(false)) {
        2
    } else {
        0
    }
}
