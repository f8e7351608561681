//! Slow, exact reference computations used to cross-check the fast paths.
//!
//! Nothing here shares sampling or elimination code with [`crate::spectrum`]
//! or [`crate::walker`]: the matrices are rebuilt from the edge list, the
//! determinants are computed in exact rational arithmetic, and the walk laws
//! are obtained by exhaustive dynamic programming over vertex subsets.

mod chi_square;
mod enumerate;
mod exact;
mod subsets;
mod union_find;

pub use chi_square::{chi_square_critical_value, chi_square_gof, Alpha, ChiSquareOutcome};
pub use enumerate::{
    enumerate_augmented_trees, enumerate_spanning_trees, exact_sign_expectation, exact_tree_distribution,
    EnumeratedTree, TreeEnumeration, TreeLaw,
};
pub use exact::{
    exact_char_poly, exact_char_poly_matrix, exact_cofactor_tree_weight, exact_det_rational, rational_from_f64,
    to_f64,
};
pub use subsets::{exact_first_entrance_sign_expectation, exact_product_expectation, single_walk_visited_set_law, SubsetDistribution};
pub use union_find::{is_spanning_tree, UnionFind};

use crate::graph::Vertex;

/// Largest vertex count accepted by tree enumeration.
pub const MAX_ENUMERATION_VERTICES: usize = 10;
/// Largest edge count accepted by tree enumeration.
pub const MAX_ENUMERATION_EDGES: usize = 24;
/// Largest matrix dimension for [`exact_det_rational`].
pub const MAX_EXACT_DIMENSION: usize = 12;
/// Largest vertex count for the subset dynamic programs.
pub const MAX_SUBSET_VERTICES: usize = 6;
/// Largest walk count for [`exact_product_expectation`].
pub const MAX_PRODUCT_K: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("{what} = {actual} exceeds the oracle limit {limit}")]
    TooLarge {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("lambda must be positive and finite, got {0}")]
    InvalidLambda(f64),
    #[error("k must be at least 2, got {0}")]
    InvalidK(u64),
    #[error("value {0} cannot be represented exactly")]
    NotFinite(f64),
    #[error("matrix is not square")]
    NotSquare,
    #[error("graph has no spanning tree")]
    NoSpanningTree,
    #[error("expected count {expected:.3} in cell {cell} is below 5")]
    SparseCell { cell: usize, expected: f64 },
    #[error("observed and expected have different lengths ({observed} vs {expected})")]
    LengthMismatch { observed: usize, expected: usize },
    #[error("unsupported significance level {0}; use 0.01 or 0.001")]
    UnsupportedAlpha(f64),
    #[error("{0} degrees of freedom not tabulated (1..=30)")]
    UnsupportedDegreesOfFreedom(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
}

fn guard(what: &'static str, actual: usize, limit: usize) -> Result<(), OracleError> {
    if actual > limit {
        Err(OracleError::TooLarge { what, actual, limit })
    } else {
        Ok(())
    }
}

fn check_lambda(lambda: f64) -> Result<(), OracleError> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(OracleError::InvalidLambda(lambda))
    }
}
