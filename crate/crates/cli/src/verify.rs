//! Cross-checks between the fast paths and the exact oracles on one graph.

use dampwalk::graph::{random_connected_graph, RandomGraphSpec};
use dampwalk::oracle::{self, rational_from_f64, to_f64, OracleError, MAX_ENUMERATION_EDGES, MAX_SUBSET_VERTICES};
use dampwalk::spectrum::{self, EigenConfig, RootKind};
use dampwalk::{estimators, RandomSource, WeightedGraph};
use num_traits::Zero;
use serde::Serialize;

/// λ values every check is run at.
pub const LAMBDAS: [f64; 3] = [0.5, 1.0, 2.0];
/// Walk count used for the first-entrance sign limit.
const SIGN_LIMIT_K: u64 = 400;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Spectrum(#[from] spectrum::SpectrumError),
    #[error(transparent)]
    Estimate(#[from] estimators::EstimateError),
}

impl VerifyError {
    /// Guard-rail violations are input errors; anything else is internal.
    pub fn is_input_error(&self) -> bool {
        matches!(self, VerifyError::Oracle(OracleError::TooLarge { .. }))
    }
}

/// The graph used as entry `index` of a seeded random corpus: connected,
/// integer weights in `1..=5`, few enough edges for the enumeration oracles.
pub fn corpus_graph(n: usize, seed: u64, index: u64) -> WeightedGraph {
    let spec = RandomGraphSpec {
        n,
        max_weight: 5,
        extra_edge_probability: 0.4,
        max_edges: MAX_ENUMERATION_EDGES - n,
    };
    random_connected_graph(&spec, &mut RandomSource::new(seed).stream(index))
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn check(name: impl Into<String>, pass: bool, detail: String) -> Check {
    Check {
        name: name.into(),
        pass,
        detail,
    }
}

pub fn verify_graph(g: &WeightedGraph) -> Result<Vec<Check>, VerifyError> {
    let n = g.n();
    if g.edges().len() + n > MAX_ENUMERATION_EDGES {
        return Err(OracleError::TooLarge {
            what: "edge count of G_lambda",
            actual: g.edges().len() + n,
            limit: MAX_ENUMERATION_EDGES,
        }
        .into());
    }
    let mut checks = Vec::new();

    let trees = oracle::enumerate_spanning_trees(g)?;
    let exact_cofactor = oracle::exact_cofactor_tree_weight(g, 1)?;
    let float_cofactor = spectrum::cofactor_tree_weight(g, 1)?.value;
    let float_ok = if trees.exact_total.is_zero() {
        float_cofactor == 0.0
    } else {
        rel_close(trees.total_weight, float_cofactor, 1e-9)
    };
    checks.push(check(
        "matrix_tree",
        trees.exact_total == exact_cofactor && float_ok,
        format!("enumerated {} trees, total {}, cofactor {}", trees.trees.len(), trees.exact_total, exact_cofactor),
    ));
    let last = oracle::exact_cofactor_tree_weight(g, n)?;
    checks.push(check(
        "cofactor_rows",
        last == exact_cofactor,
        format!("row 1: {exact_cofactor}, row {n}: {last}"),
    ));

    for lambda in LAMBDAS {
        let aug = oracle::enumerate_augmented_trees(g, lambda)?;
        let c = oracle::exact_char_poly(g, &rational_from_f64(lambda)?)?;
        let signed = if n.is_multiple_of(2) { c } else { -c };
        let float_sum = spectrum::augmented_tree_weight_sum(g, lambda)?;
        checks.push(check(
            format!("augmented_tree_sum[lambda={lambda}]"),
            aug.exact_total == signed && rel_close(to_f64(&aug.exact_total), float_sum, 1e-9),
            format!("enumerated {}, (-1)^n C(lambda) {}", aug.exact_total, signed),
        ));

        let ratio = spectrum::spectral_ratio(g, lambda)?;
        let sign = to_f64(&oracle::exact_sign_expectation(g, lambda)?);
        checks.push(check(
            format!("sign_expectation[lambda={lambda}]"),
            (sign - ratio).abs() < 1e-9,
            format!("E[(-1)^deg] {sign}, ratio {ratio}"),
        ));

        if n <= MAX_SUBSET_VERTICES {
            let limit = oracle::exact_first_entrance_sign_expectation(g, lambda, SIGN_LIMIT_K)?;
            checks.push(check(
                format!("first_entrance_sign[lambda={lambda}]"),
                (limit - ratio).abs() < 1e-6,
                format!("k={SIGN_LIMIT_K}: {limit}, ratio {ratio}"),
            ));

            let params = estimators::theorem_k(g, 1.0)?;
            let k = params.k.max(2);
            let product = oracle::exact_product_expectation(g, lambda, k)?;
            let gap = (product + ratio).abs();
            checks.push(check(
                format!("product_expectation[lambda={lambda}]"),
                gap < params.bound(),
                format!("k={k}: E[prod] {product}, -ratio {}, gap {gap}, bound {}", -ratio, params.bound()),
            ));
        }
    }

    let roots = spectrum::laplacian_eigenvalues(g, &EigenConfig::default())?;
    let in_range = roots.iter().all(|r| (-2.0 - 1e-9..=0.0).contains(&r.value));
    let has_zero = roots.iter().any(|r| r.kind == RootKind::Trivial);
    checks.push(check(
        "eigenvalues",
        in_range && has_zero,
        format!("{:?}", roots.values()),
    ));
    Ok(checks)
}
