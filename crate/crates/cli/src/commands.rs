use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use dampwalk::estimators::{self, CandidateSource, EstimateError, ScanConfig, SAMPLING_SLACK_Z};
use dampwalk::spectrum::{self, RootKind, SignLogDet};
use dampwalk::walker::{self, WalkError, DEFAULT_STEP_CAP};
use dampwalk::{GraphError, RandomSource, SpanningTree, WeightedGraph};
use serde::Serialize;

use crate::io::{read_graph, ReadError};
use crate::runner::ParallelRunner;
use crate::verify::{self, Check, VerifyError};

const SCHEMA: u32 = 1;

/// Damped random walks, spanning trees and the ratio C(-λ)/C(λ).
///
/// Every option can also be set through an environment variable named
/// DAMPWALK_<OPTION>, e.g. DAMPWALK_SEED or DAMPWALK_LAMBDA_MIN.
#[derive(Debug, Parser)]
#[command(name = "dampwalk", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, env = "DAMPWALK_FORMAT", default_value = "text")]
    pub format: Format,
    #[arg(long, global = true, env = "DAMPWALK_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 uses one per core. Output does not depend on it.
    #[arg(long, global = true, env = "DAMPWALK_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// Maximum walk steps per sampled tree.
    #[arg(long, global = true, env = "DAMPWALK_STEP_CAP", default_value_t = DEFAULT_STEP_CAP)]
    pub step_cap: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Product,
    TreeSign,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate C(λ), C(-λ) and their ratio exactly.
    Ratio {
        #[arg(long, env = "DAMPWALK_GRAPH")]
        graph: PathBuf,
        #[arg(long, env = "DAMPWALK_LAMBDA", value_parser = positive, allow_negative_numbers = true)]
        lambda: f64,
    },
    /// Monte Carlo estimate of the ratio.
    Estimate {
        #[arg(long, env = "DAMPWALK_GRAPH")]
        graph: PathBuf,
        #[arg(long, env = "DAMPWALK_LAMBDA", value_parser = positive, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, env = "DAMPWALK_METHOD", default_value = "product")]
        method: MethodArg,
        #[arg(long, env = "DAMPWALK_TRIALS", value_parser = count, default_value = "100000")]
        trials: u64,
        /// Bound exponent; the walk count defaults to the matching k.
        #[arg(long, env = "DAMPWALK_C", value_parser = positive, allow_negative_numbers = true, conflicts_with = "k")]
        c: Option<f64>,
        /// Walk count for the product method, overriding the one derived from c.
        #[arg(long, env = "DAMPWALK_K", value_parser = count)]
        k: Option<u64>,
    },
    /// Tabulate the ratio over a λ grid and list eigenvalue candidates.
    Scan {
        #[arg(long, env = "DAMPWALK_GRAPH")]
        graph: PathBuf,
        #[arg(long, env = "DAMPWALK_LAMBDA_MIN", value_parser = positive, default_value_t = 0.05, allow_negative_numbers = true)]
        lambda_min: f64,
        #[arg(long, env = "DAMPWALK_LAMBDA_MAX", value_parser = positive, default_value_t = 2.2, allow_negative_numbers = true)]
        lambda_max: f64,
        /// Grid points, endpoints included.
        #[arg(long, env = "DAMPWALK_STEPS", value_parser = clap::value_parser!(u64).range(2..), default_value_t = 100)]
        steps: u64,
        /// Add product-estimator columns.
        #[arg(long, env = "DAMPWALK_ESTIMATES")]
        estimates: bool,
        #[arg(long, env = "DAMPWALK_TRIALS", value_parser = count, default_value = "100000")]
        trials: u64,
        /// Walk count for estimates is the k of this bound exponent.
        #[arg(long, env = "DAMPWALK_C_SCAN", value_parser = positive, default_value_t = 2.0)]
        c_scan: f64,
    },
    /// Cross-check fast paths against the exact oracles.
    Verify {
        #[arg(long, env = "DAMPWALK_GRAPH", required_unless_present = "random", conflicts_with = "random")]
        graph: Option<PathBuf>,
        /// Check random connected graphs with this many vertices instead.
        #[arg(long, env = "DAMPWALK_RANDOM", value_parser = clap::value_parser!(u64).range(2..=10))]
        random: Option<u64>,
        #[arg(long, env = "DAMPWALK_COUNT", default_value_t = 20)]
        count: u64,
    },
    /// Draw one spanning tree, of G or (with --lambda) of G_λ.
    SampleTree {
        #[arg(long, env = "DAMPWALK_GRAPH")]
        graph: PathBuf,
        #[arg(long, env = "DAMPWALK_LAMBDA", value_parser = positive, allow_negative_numbers = true)]
        lambda: Option<f64>,
        /// Start vertex of the plain walk.
        #[arg(long, env = "DAMPWALK_START", default_value_t = 1)]
        start: usize,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("must be positive and finite, got {s}"))
    }
}

/// A positive integer, also accepted in exponent form (`1e5`).
fn count(s: &str) -> Result<u64, String> {
    let n = match s.parse::<u64>() {
        Ok(n) => n,
        Err(_) => {
            let x: f64 = s.parse().map_err(|_| format!("`{s}` is not a count"))?;
            if !(x.fract() == 0.0 && x >= 0.0 && x <= u64::MAX as f64) {
                return Err(format!("`{s}` is not a whole number"));
            }
            x as u64
        }
    };
    if n == 0 {
        return Err("must be at least 1".into());
    }
    Ok(n)
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Internal(String),
    /// The output was written but reports a failed check.
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) | CliError::CheckFailed(_) => 1,
        }
    }
}

impl From<ReadError> for CliError {
    fn from(e: ReadError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(format!("write failed: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Internal(format!("csv output failed: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(format!("json output failed: {e}"))
    }
}

fn input_like_walk(e: &WalkError) -> bool {
    !matches!(e, WalkError::StepCapExceeded { .. })
}

impl From<EstimateError> for CliError {
    fn from(e: EstimateError) -> Self {
        let input = match &e {
            EstimateError::Graph(_)
            | EstimateError::InvalidC(_)
            | EstimateError::TooFewVertices
            | EstimateError::InvalidK(_)
            | EstimateError::NoTrials
            | EstimateError::InvalidScan => true,
            EstimateError::Walk(w) => input_like_walk(w),
            EstimateError::Spectrum(_) => false,
        };
        if input {
            CliError::Input(e.to_string())
        } else {
            CliError::Internal(e.to_string())
        }
    }
}

impl From<WalkError> for CliError {
    fn from(e: WalkError) -> Self {
        if input_like_walk(&e) {
            CliError::Input(e.to_string())
        } else {
            CliError::Internal(e.to_string())
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<spectrum::SpectrumError> for CliError {
    fn from(e: spectrum::SpectrumError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Internal(e.to_string())
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let source = RandomSource::new(cli.seed);
    match &cli.command {
        Command::Ratio { graph, lambda } => {
            let g = read_graph(graph)?;
            ratio(&g, *lambda, cli.format, out)
        }
        Command::Estimate {
            graph,
            lambda,
            method,
            trials,
            c,
            k,
        } => {
            let g = read_graph(graph)?;
            let runner = runner(cli.threads)?;
            let report = estimate(&g, *lambda, *method, *trials, *c, *k, &source, cli.step_cap, &runner)?;
            emit_record(&report, cli.format, out)
        }
        Command::Scan {
            graph,
            lambda_min,
            lambda_max,
            steps,
            estimates,
            trials,
            c_scan,
        } => {
            let g = read_graph(graph)?;
            let runner = runner(cli.threads)?;
            let config = ScanConfig {
                lambda_min: *lambda_min,
                lambda_max: *lambda_max,
                steps: *steps as usize,
                trials: *trials,
                c_scan: *c_scan,
                with_estimates: *estimates,
                ..ScanConfig::default()
            };
            let table = scan(&g, &config, &source, &runner)?;
            emit_scan(&table, cli.format, out)
        }
        Command::Verify { graph, random, count } => {
            let graphs: Vec<(String, WeightedGraph)> = match (graph, random) {
                (Some(path), _) => vec![(path.display().to_string(), read_graph(path)?)],
                (None, Some(n)) => (0..*count)
                    .map(|j| (format!("random[n={n},seed={},index={j}]", cli.seed), verify::corpus_graph(*n as usize, cli.seed, j)))
                    .collect(),
                (None, None) => return Err(CliError::Input("need --graph or --random".into())),
            };
            let report = verify_all(&graphs)?;
            emit_verify(&report, cli.format, out)?;
            if report.pass {
                Ok(())
            } else {
                let failed = report.graphs.iter().flat_map(|g| &g.checks).filter(|c| !c.pass).count();
                Err(CliError::CheckFailed(format!("{failed} check(s) failed")))
            }
        }
        Command::SampleTree { graph, lambda, start } => {
            let g = read_graph(graph)?;
            let tree = sample_tree(&g, *lambda, *start, &source, cli.step_cap)?;
            emit_record(&tree, cli.format, out)
        }
    }
}

fn runner(threads: usize) -> Result<ParallelRunner, CliError> {
    ParallelRunner::new(threads).map_err(|e| CliError::Internal(format!("thread pool: {e}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogValue {
    pub sign: i8,
    /// `ln |value|`; absent when the value is zero.
    pub log_magnitude: Option<f64>,
}

impl From<SignLogDet> for LogValue {
    fn from(d: SignLogDet) -> Self {
        LogValue {
            sign: d.sign,
            log_magnitude: (d.sign != 0).then_some(d.log_magnitude),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioOutput {
    pub schema: u32,
    pub lambda: f64,
    pub c_lambda_sign: i8,
    pub c_lambda_log: Option<f64>,
    pub c_minus_lambda_sign: i8,
    pub c_minus_lambda_log: Option<f64>,
    pub ratio: f64,
}

pub fn ratio_output(g: &WeightedGraph, lambda: f64) -> Result<RatioOutput, CliError> {
    let plus = LogValue::from(spectrum::char_poly_eval(g, lambda));
    let minus = LogValue::from(spectrum::char_poly_eval(g, -lambda));
    let ratio = spectrum::spectral_ratio(g, lambda)?;
    Ok(RatioOutput {
        schema: SCHEMA,
        lambda,
        c_lambda_sign: plus.sign,
        c_lambda_log: plus.log_magnitude,
        c_minus_lambda_sign: minus.sign,
        c_minus_lambda_log: minus.log_magnitude,
        ratio,
    })
}

fn ratio(g: &WeightedGraph, lambda: f64, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let r = ratio_output(g, lambda)?;
    if format != Format::Text {
        return emit_record(&r, format, out);
    }
    let show = |sign: i8, log: Option<f64>| match log {
        Some(l) => format!("{} exp({l})", if sign < 0 { "-" } else { "+" }),
        None => "0".to_string(),
    };
    writeln!(out, "lambda      {}", r.lambda)?;
    writeln!(out, "C(lambda)   {}", show(r.c_lambda_sign, r.c_lambda_log))?;
    writeln!(out, "C(-lambda)  {}", show(r.c_minus_lambda_sign, r.c_minus_lambda_log))?;
    writeln!(out, "ratio       {}", r.ratio)?;
    Ok(())
}

/// Flat estimate record; field order is the JSON and CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateOutput {
    pub schema: u32,
    pub method: &'static str,
    pub lambda: f64,
    pub k: Option<u64>,
    pub trials: u64,
    pub mean: f64,
    pub std_error: f64,
    pub exact_ratio: f64,
    pub discrepancy: f64,
    /// `2/n^c`, product method only.
    pub bound_2_over_nc: Option<f64>,
    /// Product: discrepancy < bound + 4·std_error. Tree-sign: discrepancy < 4·std_error.
    pub pass: bool,
    pub seed: u64,
}

#[allow(clippy::too_many_arguments)]
pub fn estimate(
    g: &WeightedGraph,
    lambda: f64,
    method: MethodArg,
    trials: u64,
    c: Option<f64>,
    k: Option<u64>,
    source: &RandomSource,
    step_cap: u64,
    runner: &ParallelRunner,
) -> Result<EstimateOutput, CliError> {
    let (report, bound) = match method {
        MethodArg::Product => {
            let params = estimators::theorem_k(g, c.unwrap_or(1.0))?;
            let k = k.unwrap_or(params.k.max(2));
            let report = estimators::product_estimator(g, lambda, k, trials, source, runner)?;
            (report, Some(params.bound()))
        }
        MethodArg::TreeSign => {
            let report = estimators::tree_sign_estimator(g, lambda, trials, source, step_cap, runner)?;
            (report, None)
        }
    };
    let slack = SAMPLING_SLACK_Z * report.std_error;
    Ok(EstimateOutput {
        schema: SCHEMA,
        method: report.method.name(),
        lambda,
        k: report.k,
        trials: report.trials,
        mean: report.mean,
        std_error: report.std_error,
        exact_ratio: report.exact_ratio,
        discrepancy: report.discrepancy,
        bound_2_over_nc: bound,
        pass: report.discrepancy < bound.unwrap_or(0.0) + slack,
        seed: report.seed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRowOutput {
    pub lambda: f64,
    pub exact_ratio: f64,
    pub estimate: Option<f64>,
    pub std_error: Option<f64>,
    pub sign_change: bool,
    pub ci_straddles_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateOutput {
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    pub source: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenvalueOutput {
    pub value: f64,
    pub kind: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanOutput {
    pub schema: u32,
    pub k: Option<u64>,
    pub rows: Vec<ScanRowOutput>,
    pub candidates: Vec<CandidateOutput>,
    pub eigenvalues: Vec<EigenvalueOutput>,
}

fn kind_name(kind: RootKind) -> &'static str {
    match kind {
        RootKind::Trivial => "trivial",
        RootKind::SignChange => "sign_change",
        RootKind::EvenMultiplicity => "even_multiplicity",
    }
}

pub fn scan(
    g: &WeightedGraph,
    config: &ScanConfig,
    source: &RandomSource,
    runner: &ParallelRunner,
) -> Result<ScanOutput, CliError> {
    let table = estimators::eigen_scan(g, config, source, runner)?;
    Ok(ScanOutput {
        schema: SCHEMA,
        k: table.k,
        rows: table
            .rows
            .iter()
            .map(|r| ScanRowOutput {
                lambda: r.lambda,
                exact_ratio: r.exact_ratio,
                estimate: r.estimate.map(|e| e.0),
                std_error: r.estimate.map(|e| e.1),
                sign_change: r.sign_change,
                ci_straddles_zero: r.ci_straddles_zero,
            })
            .collect(),
        candidates: table
            .candidates
            .iter()
            .map(|c| CandidateOutput {
                lambda_lo: c.lambda_lo,
                lambda_hi: c.lambda_hi,
                source: match c.source {
                    CandidateSource::ExactSignChange => "exact_sign_change",
                    CandidateSource::Eigenvalue(RootKind::EvenMultiplicity) => "eigenvalue_even_multiplicity",
                    CandidateSource::Eigenvalue(_) => "eigenvalue",
                    CandidateSource::EstimateInterval => "estimate_interval",
                },
            })
            .collect(),
        eigenvalues: table
            .eigenvalues
            .iter()
            .map(|e| EigenvalueOutput {
                value: e.value,
                kind: kind_name(e.kind),
            })
            .collect(),
    })
}

fn emit_scan(table: &ScanOutput, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, table)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for row in &table.rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        Format::Text => {
            let opt = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |v| format!("{v:.6}"));
            writeln!(out, "{:>10} {:>14} {:>12} {:>10}  flags", "lambda", "exact_ratio", "estimate", "std_error")?;
            for r in &table.rows {
                let mut flags = Vec::new();
                if r.sign_change {
                    flags.push("sign-change");
                }
                if r.ci_straddles_zero {
                    flags.push("ci-straddles-0");
                }
                writeln!(
                    out,
                    "{:>10.6} {:>14.6e} {:>12} {:>10}  {}",
                    r.lambda,
                    r.exact_ratio,
                    opt(r.estimate),
                    opt(r.std_error),
                    flags.join(",")
                )?;
            }
            writeln!(out)?;
            writeln!(out, "candidates (lambda interval, source):")?;
            for c in &table.candidates {
                writeln!(out, "  [{}, {}]  {}", c.lambda_lo, c.lambda_hi, c.source)?;
            }
            writeln!(out, "eigenvalues of D'^-1 D (lambda = -value):")?;
            for e in &table.eigenvalues {
                writeln!(out, "  {}  {}", e.value, e.kind)?;
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphVerdict {
    pub label: String,
    pub n: usize,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyOutput {
    pub schema: u32,
    pub pass: bool,
    pub graphs: Vec<GraphVerdict>,
}

pub fn verify_all(graphs: &[(String, WeightedGraph)]) -> Result<VerifyOutput, CliError> {
    let mut verdicts = Vec::with_capacity(graphs.len());
    for (label, g) in graphs {
        verdicts.push(GraphVerdict {
            label: label.clone(),
            n: g.n(),
            checks: verify::verify_graph(g)?,
        });
    }
    Ok(VerifyOutput {
        schema: SCHEMA,
        pass: verdicts.iter().all(|v| v.checks.iter().all(|c| c.pass)),
        graphs: verdicts,
    })
}

fn emit_verify(report: &VerifyOutput, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["graph", "check", "pass", "detail"])?;
            for g in &report.graphs {
                for c in &g.checks {
                    w.write_record([g.label.as_str(), &c.name, if c.pass { "true" } else { "false" }, &c.detail])?;
                }
            }
            w.flush()?;
        }
        Format::Text => {
            for g in &report.graphs {
                writeln!(out, "{} (n = {})", g.label, g.n)?;
                for c in &g.checks {
                    writeln!(out, "  {} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail)?;
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeOutput {
    pub schema: u32,
    pub mode: &'static str,
    pub lambda: Option<f64>,
    /// `[u, v, weight]`; vertex `n + 1` is ∞.
    pub edges: Vec<(usize, usize, f64)>,
    pub weight: f64,
    pub deg_infinity: Option<usize>,
}

pub fn sample_tree(
    g: &WeightedGraph,
    lambda: Option<f64>,
    start: usize,
    source: &RandomSource,
    step_cap: u64,
) -> Result<TreeOutput, CliError> {
    let mut rng = source.stream(0);
    let (mode, tree): (_, SpanningTree) = match lambda {
        Some(l) => ("augmented", walker::sample_augmented_tree(&g.augment(l)?, &mut rng, step_cap)?),
        None => ("plain", walker::sample_spanning_tree_ab(g, start, &mut rng, step_cap)?),
    };
    Ok(TreeOutput {
        schema: SCHEMA,
        mode,
        lambda,
        edges: tree.edges().iter().map(|e| (e.u, e.v, e.weight)).collect(),
        weight: tree.weight(),
        deg_infinity: lambda.map(|_| tree.deg_infinity()),
    })
}

/// Writes a single flat record as JSON, one-row CSV or `key value` lines.
fn emit_record<S: Serialize>(record: &S, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, record)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let value = serde_json::to_value(record)?;
            let map = value.as_object().expect("records serialize as objects");
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(map.keys())?;
            w.write_record(map.values().map(csv_cell))?;
            w.flush()?;
        }
        Format::Text => {
            let value = serde_json::to_value(record)?;
            for (key, v) in value.as_object().expect("records serialize as objects") {
                if key != "schema" {
                    writeln!(out, "{key:<16}{}", text_cell(v))?;
                }
            }
        }
    }
    Ok(())
}

fn csv_cell(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Null => String::new(),
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn text_cell(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Null => "-".into(),
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Array(items) => items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}
