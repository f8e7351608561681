//! Damped random walks and the Laplacian characteristic polynomial.
//!
//! For a weighted graph with Laplacian characteristic polynomial
//! `C(μ) = det(D − μD')`, the ratio `C(−λ)/C(λ)` is the expected sign
//! `(−1)^{deg_∞}` of a weighted random spanning tree of the augmented graph
//! `G_λ`, and is also the limit of `−E[∏ (2f_i − 1)]` where `f_i` is the
//! stationary measure covered by `i` independent λ-damped walks. Its zeros in
//! `λ > 0` are the nonzero Laplacian eigenvalues `−λ_i`.
//!
//! * [`graph`]: graphs, `G_λ`, stationary and transition laws
//! * [`spectrum`]: `C(μ)`, the ratio, Matrix-Tree cofactors, root finding
//! * [`walker`]: seeded substreams, damped walks, Aldous-Broder samplers
//! * [`estimators`]: the two Monte Carlo estimators and the λ-scan
//! * [`oracle`]: exact enumeration / rational / subset-DP reference values
//!
//! The crate is `no_std` (with `alloc`); IO and parallel execution live in
//! the companion CLI crate.

#![cfg_attr(not(feature = "std"), no_std)]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod estimators;
pub mod graph;
pub mod oracle;
pub mod spectrum;
pub mod walker;

pub use estimators::{EstimateReport, Method, Sequential, TheoremParameters, TrialRunner};
pub use graph::{AugmentedGraph, Edge, GraphBuilder, GraphError, Vertex, WeightedGraph};
pub use spectrum::SignLogDet;
pub use walker::{RandomSource, SpanningTree};
