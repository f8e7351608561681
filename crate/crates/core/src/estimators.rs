//! Monte Carlo estimators of `C(−λ)/C(λ)`, the coverage-bound check and the
//! λ-scan for Laplacian eigenvalues.
//!
//! Two estimators target the same ratio from opposite sides:
//!
//! * the product estimator averages `∏_{i<k} (2f_i − 1)` over batches of
//!   `k − 1` independent damped walks and targets `−C(−λ)/C(λ)` (its actual
//!   limit differs; see `oracle::exact_product_expectation`);
//! * the tree-sign estimator averages `(−1)^{deg_∞}` over Aldous-Broder
//!   trees of `G_λ` and targets `+C(−λ)/C(λ)`.
//!
//! Trial `i` always draws from substream `i` of the [`RandomSource`] and the
//! per-trial values are reduced in index order, so a report depends only on
//! the seed, never on how a [`TrialRunner`] schedules the work.

use alloc::vec::Vec;

use crate::graph::{GraphError, Vertex, WeightedGraph};
use crate::spectrum::{self, EigenConfig, EigenvalueList, RootKind, SpectrumError};
use crate::walker::{self, CoverageState, RandomSource, WalkError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EstimateError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error("c must be positive, got {0}")]
    InvalidC(f64),
    #[error("need at least two vertices")]
    TooFewVertices,
    #[error("k must be at least 2, got {0}")]
    InvalidK(u64),
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("invalid scan range: need 0 < lambda_min < lambda_max and steps >= 2")]
    InvalidScan,
}

/// Executes independent trials and returns their values in trial order.
pub trait TrialRunner {
    fn run(&self, trials: u64, trial: &(dyn Fn(u64) -> f64 + Sync)) -> Vec<f64>;
}

/// Runs trials one after another on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl TrialRunner for Sequential {
    fn run(&self, trials: u64, trial: &(dyn Fn(u64) -> f64 + Sync)) -> Vec<f64> {
        (0..trials).map(trial).collect()
    }
}

/// Sample mean and standard error (`s / √N`, with `s` the `N − 1` sample
/// deviation), accumulated in slice order.
pub fn summarize(values: &[f64]) -> (f64, f64) {
    let count = values.len();
    if count == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / count as f64;
    if count == 1 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|x| (x - mean) * (x - mean)).sum();
    let var = ss / (count - 1) as f64;
    (mean, libm::sqrt(var / count as f64))
}

/// Walk count from the coverage bound: `k = ⌈(c+1)·(d_avg/d_min)·n·ln n⌉`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremParameters {
    pub c: f64,
    pub n: usize,
    pub d_avg: f64,
    pub d_min: f64,
    pub k: u64,
}

impl TheoremParameters {
    /// `2 / n^c`.
    pub fn bound(&self) -> f64 {
        2.0 / libm::pow(self.n as f64, self.c)
    }
}

pub fn theorem_k(g: &WeightedGraph, c: f64) -> Result<TheoremParameters, EstimateError> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(EstimateError::InvalidC(c));
    }
    let n = g.n();
    if n < 2 {
        return Err(EstimateError::TooFewVertices);
    }
    let d_avg = g.mean_degree();
    let d_min = g.min_degree();
    let nf = n as f64;
    let raw = (c + 1.0) * (d_avg / d_min) * nf * libm::log(nf);
    let k = (libm::ceil(raw) as u64).max(1);
    Ok(TheoremParameters {
        c,
        n,
        d_avg,
        d_min,
        k,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Product,
    TreeSign,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Product => "product",
            Method::TreeSign => "tree-sign",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateReport {
    pub method: Method,
    pub lambda: f64,
    /// Walks per trial plus one; product method only.
    pub k: Option<u64>,
    pub trials: u64,
    pub mean: f64,
    pub std_error: f64,
    /// `C(−λ)/C(λ)`.
    pub exact_ratio: f64,
    /// `−exact_ratio` for the product method, `exact_ratio` for tree-sign.
    pub target: f64,
    /// `|mean − target|`.
    pub discrepancy: f64,
    pub seed: u64,
}

impl EstimateReport {
    /// Whether the estimate sits within `z` standard errors of its target.
    pub fn within(&self, z: f64) -> bool {
        self.discrepancy <= z * self.std_error
    }
}

/// One product-estimator trial: `∏_{i=1}^{k−1} (2f_i − 1)`.
pub fn product_trial(g: &WeightedGraph, lambda: f64, k: u64, rng: &mut walker::StreamRng) -> Result<f64, EstimateError> {
    let stop = walker::stop_probability(lambda)?;
    let mut coverage = CoverageState::new(g);
    let mut buf = Vec::new();
    Ok(product_trial_with(g, stop, k, rng, &mut coverage, &mut buf))
}

fn product_trial_with(
    g: &WeightedGraph,
    stop: f64,
    k: u64,
    rng: &mut walker::StreamRng,
    coverage: &mut CoverageState,
    buf: &mut Vec<Vertex>,
) -> f64 {
    let mut product = 1.0;
    for _ in 1..k {
        walker::fill_damped_walk(g, stop, rng, buf);
        let f = coverage.absorb(g, buf);
        if coverage.is_complete() {
            // every later factor is exactly 1
            break;
        }
        product *= 2.0 * f - 1.0;
    }
    product
}

pub fn product_estimator<T: TrialRunner + ?Sized>(
    g: &WeightedGraph,
    lambda: f64,
    k: u64,
    trials: u64,
    source: &RandomSource,
    runner: &T,
) -> Result<EstimateReport, EstimateError> {
    product_estimator_at(g, lambda, k, trials, source, 0, runner)
}

/// Product estimator whose trial `i` uses stream `offset + i`.
fn product_estimator_at<T: TrialRunner + ?Sized>(
    g: &WeightedGraph,
    lambda: f64,
    k: u64,
    trials: u64,
    source: &RandomSource,
    offset: u64,
    runner: &T,
) -> Result<EstimateReport, EstimateError> {
    if k < 2 {
        return Err(EstimateError::InvalidK(k));
    }
    if trials == 0 {
        return Err(EstimateError::NoTrials);
    }
    let stop = walker::stop_probability(lambda)?;
    let exact_ratio = spectrum::spectral_ratio(g, lambda)?;
    let values = runner.run(trials, &|i| {
        let mut rng = source.stream(offset + i);
        let mut coverage = CoverageState::new(g);
        let mut buf = Vec::new();
        product_trial_with(g, stop, k, &mut rng, &mut coverage, &mut buf)
    });
    Ok(report(Method::Product, lambda, Some(k), trials, &values, exact_ratio, source))
}

pub fn tree_sign_estimator<T: TrialRunner + ?Sized>(
    g: &WeightedGraph,
    lambda: f64,
    trials: u64,
    source: &RandomSource,
    step_cap: u64,
    runner: &T,
) -> Result<EstimateReport, EstimateError> {
    if trials == 0 {
        return Err(EstimateError::NoTrials);
    }
    let aug = g.augment(lambda)?;
    let exact_ratio = spectrum::spectral_ratio(g, lambda)?;
    let values = runner.run(trials, &|i| {
        let mut rng = source.stream(i);
        match walker::sample_augmented_tree(&aug, &mut rng, step_cap) {
            Ok(tree) => tree.sign(),
            Err(_) => f64::NAN,
        }
    });
    if values.iter().any(|v| v.is_nan()) {
        return Err(WalkError::StepCapExceeded { cap: step_cap }.into());
    }
    Ok(report(Method::TreeSign, lambda, None, trials, &values, exact_ratio, source))
}

fn report(
    method: Method,
    lambda: f64,
    k: Option<u64>,
    trials: u64,
    values: &[f64],
    exact_ratio: f64,
    source: &RandomSource,
) -> EstimateReport {
    let (mean, std_error) = summarize(values);
    let target = match method {
        Method::Product => -exact_ratio,
        Method::TreeSign => exact_ratio,
    };
    EstimateReport {
        method,
        lambda,
        k,
        trials,
        mean,
        std_error,
        exact_ratio,
        target,
        discrepancy: (mean - target).abs(),
        seed: source.seed(),
    }
}

/// Outcome of checking `|E[∏(2f_j − 1)] + C(−λ)/C(λ)| < 2/n^c` by simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremVerdict {
    pub params: TheoremParameters,
    pub report: EstimateReport,
    /// `2 / n^c`.
    pub bound: f64,
    /// `|mean + C(−λ)/C(λ)|`.
    pub gap: f64,
    /// Sampling allowance added to the bound: four standard errors.
    pub slack: f64,
    pub pass: bool,
}

/// Number of standard errors of sampling slack granted to Monte Carlo checks.
pub const SAMPLING_SLACK_Z: f64 = 4.0;

pub fn theorem_check<T: TrialRunner + ?Sized>(
    g: &WeightedGraph,
    lambda: f64,
    c: f64,
    trials: u64,
    source: &RandomSource,
    runner: &T,
) -> Result<TheoremVerdict, EstimateError> {
    let params = theorem_k(g, c)?;
    let k = params.k.max(2);
    let report = product_estimator(g, lambda, k, trials, source, runner)?;
    let bound = params.bound();
    let gap = (report.mean + report.exact_ratio).abs();
    let slack = SAMPLING_SLACK_Z * report.std_error;
    Ok(TheoremVerdict {
        params,
        report,
        bound,
        gap,
        slack,
        pass: gap < bound + slack,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig {
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// Number of grid points, endpoints included.
    pub steps: usize,
    pub trials: u64,
    /// Walk count for estimates is `theorem_k(g, c_scan)`.
    pub c_scan: f64,
    pub with_estimates: bool,
    /// Half-width of the estimate's confidence interval, in standard errors.
    pub ci_z: f64,
    pub eigen: EigenConfig,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            lambda_min: 0.05,
            lambda_max: 2.2,
            steps: 100,
            trials: 10_000,
            c_scan: 2.0,
            with_estimates: false,
            ci_z: 3.0,
            eigen: EigenConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub lambda: f64,
    pub exact_ratio: f64,
    /// Product-estimator mean and standard error. Estimates `−ratio`.
    pub estimate: Option<(f64, f64)>,
    /// The exact ratio is zero here or changes sign before the next row.
    pub sign_change: bool,
    /// The estimate's confidence interval contains 0.
    pub ci_straddles_zero: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateSource {
    /// Exact ratio changes sign (or vanishes) on the bracket.
    ExactSignChange,
    /// A root of `C` at `−λ` from the eigenvalue search.
    Eigenvalue(RootKind),
    /// A run of grid points whose estimate intervals contain 0.
    EstimateInterval,
}

/// A λ interval suspected to contain an eigenvalue `λ_i` (i.e. `C(−λ_i) = 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    pub source: CandidateSource,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanTable {
    pub rows: Vec<ScanRow>,
    pub candidates: Vec<Candidate>,
    /// All roots of `C` on `[−2, 0]`.
    pub eigenvalues: EigenvalueList,
    /// Walk count used for the estimates, when they were requested.
    pub k: Option<u64>,
}

/// Tabulates the exact ratio (and optionally the product estimate) over an
/// evenly spaced λ grid and collects eigenvalue candidates.
///
/// Estimates at grid point `j` use streams `j·trials .. (j+1)·trials`.
pub fn eigen_scan<T: TrialRunner + ?Sized>(
    g: &WeightedGraph,
    config: &ScanConfig,
    source: &RandomSource,
    runner: &T,
) -> Result<ScanTable, EstimateError> {
    let ScanConfig {
        lambda_min,
        lambda_max,
        steps,
        ..
    } = *config;
    if !(lambda_min > 0.0) || !(lambda_max > lambda_min) || !lambda_max.is_finite() || steps < 2 {
        return Err(EstimateError::InvalidScan);
    }
    let k = if config.with_estimates {
        if config.trials == 0 {
            return Err(EstimateError::NoTrials);
        }
        Some(theorem_k(g, config.c_scan)?.k.max(2))
    } else {
        None
    };
    let spacing = (lambda_max - lambda_min) / (steps - 1) as f64;
    let mut rows = Vec::with_capacity(steps);
    for j in 0..steps {
        let lambda = if j == steps - 1 {
            lambda_max
        } else {
            lambda_min + j as f64 * spacing
        };
        let exact_ratio = spectrum::spectral_ratio(g, lambda)?;
        let estimate = match k {
            Some(k) => {
                let offset = j as u64 * config.trials;
                let r = product_estimator_at(g, lambda, k, config.trials, source, offset, runner)?;
                Some((r.mean, r.std_error))
            }
            None => None,
        };
        let ci_straddles_zero = estimate
            .map(|(m, se)| m.abs() <= config.ci_z * se)
            .unwrap_or(false);
        rows.push(ScanRow {
            lambda,
            exact_ratio,
            estimate,
            sign_change: false,
            ci_straddles_zero,
        });
    }

    let mut candidates = Vec::new();
    for j in 0..steps {
        let here = rows[j].exact_ratio;
        if here == 0.0 {
            rows[j].sign_change = true;
            candidates.push(Candidate {
                lambda_lo: rows[j].lambda,
                lambda_hi: rows[j].lambda,
                source: CandidateSource::ExactSignChange,
            });
        } else if j + 1 < steps {
            let next = rows[j + 1].exact_ratio;
            if next != 0.0 && (here < 0.0) != (next < 0.0) {
                rows[j].sign_change = true;
                candidates.push(Candidate {
                    lambda_lo: rows[j].lambda,
                    lambda_hi: rows[j + 1].lambda,
                    source: CandidateSource::ExactSignChange,
                });
            }
        }
    }

    let eigenvalues = spectrum::laplacian_eigenvalues(g, &config.eigen)?;
    for root in eigenvalues.iter() {
        let lambda = -root.value;
        if root.kind != RootKind::Trivial && lambda >= lambda_min && lambda <= lambda_max {
            candidates.push(Candidate {
                lambda_lo: lambda - 0.5 * root.bracket_width,
                lambda_hi: lambda + 0.5 * root.bracket_width,
                source: CandidateSource::Eigenvalue(root.kind),
            });
        }
    }

    let mut j = 0;
    while j < steps {
        if !rows[j].ci_straddles_zero {
            j += 1;
            continue;
        }
        let start = j;
        while j + 1 < steps && rows[j + 1].ci_straddles_zero {
            j += 1;
        }
        candidates.push(Candidate {
            lambda_lo: rows[start].lambda,
            lambda_hi: rows[j].lambda,
            source: CandidateSource::EstimateInterval,
        });
        j += 1;
    }

    Ok(ScanTable {
        rows,
        candidates,
        eigenvalues,
        k,
    })
}
