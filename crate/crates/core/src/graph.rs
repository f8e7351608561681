//! Weighted undirected graphs and the augmented graph `G_λ`.
//!
//! Vertices carry 1-based labels `1..=n`. The extra vertex `∞` of an
//! [`AugmentedGraph`] is labelled `n + 1`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

/// A 1-based vertex label.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: Vertex },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("edge ({u},{v}) has non-positive or non-finite weight {weight}")]
    InvalidWeight { u: Vertex, v: Vertex, weight: f64 },
    #[error("duplicate edge ({u},{v})")]
    DuplicateEdge { u: Vertex, v: Vertex },
    #[error("vertex {vertex} is isolated (d_{vertex} = 0)")]
    IsolatedVertex { vertex: Vertex },
    #[error("lambda must be positive and finite, got {0}")]
    InvalidLambda(f64),
}

/// An undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub weight: f64,
}

impl Edge {
    /// Builds an edge with its endpoints put in ascending order.
    pub fn new(a: Vertex, b: Vertex, weight: f64) -> Self {
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        Edge { u, v, weight }
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }
}

/// Incremental, validating constructor for [`WeightedGraph`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    n: usize,
    edges: BTreeMap<(Vertex, Vertex), f64>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            edges: BTreeMap::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex, weight: f64) -> Result<(), GraphError> {
        for vertex in [u, v] {
            if vertex == 0 || vertex > self.n {
                return Err(GraphError::VertexOutOfRange { vertex, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(GraphError::InvalidWeight { u, v, weight });
        }
        let key = if u < v { (u, v) } else { (v, u) };
        if self.edges.contains_key(&key) {
            return Err(GraphError::DuplicateEdge { u: key.0, v: key.1 });
        }
        self.edges.insert(key, weight);
        Ok(())
    }

    pub fn build(self) -> Result<WeightedGraph, GraphError> {
        if self.n == 0 {
            return Err(GraphError::NoVertices);
        }
        let edges: Vec<Edge> = self
            .edges
            .into_iter()
            .map(|((u, v), weight)| Edge { u, v, weight })
            .collect();
        WeightedGraph::from_validated(self.n, edges)
    }
}

/// An undirected graph with positive edge weights `d_ij` and no isolated
/// vertices. Immutable once built.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(Vertex, f64)>>,
    // Running sums of neighbor weights, parallel to `adjacency`.
    neighbor_cdf: Vec<Vec<f64>>,
    degrees: Vec<f64>,
    degree_cdf: Vec<f64>,
    total_weight: f64,
}

impl PartialEq for WeightedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl WeightedGraph {
    /// Validates and builds a graph from `(u, v, weight)` triples.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, f64)>,
    {
        let mut builder = GraphBuilder::new(n);
        for (u, v, w) in edges {
            builder.add_edge(u, v, w)?;
        }
        builder.build()
    }

    fn from_validated(n: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        for e in &edges {
            adjacency[e.u - 1].push((e.v, e.weight));
            adjacency[e.v - 1].push((e.u, e.weight));
        }
        for list in adjacency.iter_mut() {
            list.sort_by_key(|&(j, _)| j);
        }
        let mut neighbor_cdf = Vec::with_capacity(n);
        let mut degrees = Vec::with_capacity(n);
        for (i, list) in adjacency.iter().enumerate() {
            if list.is_empty() {
                return Err(GraphError::IsolatedVertex { vertex: i + 1 });
            }
            let mut acc = 0.0;
            let cdf: Vec<f64> = list
                .iter()
                .map(|&(_, w)| {
                    acc += w;
                    acc
                })
                .collect();
            degrees.push(acc);
            neighbor_cdf.push(cdf);
        }
        let mut acc = 0.0;
        let degree_cdf: Vec<f64> = degrees
            .iter()
            .map(|&d| {
                acc += d;
                acc
            })
            .collect();
        Ok(WeightedGraph {
            n,
            edges,
            adjacency,
            neighbor_cdf,
            degrees,
            degree_cdf,
            total_weight: acc,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in ascending `(u, v)` order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Weighted degree `d_v`.
    pub fn degree(&self, v: Vertex) -> f64 {
        self.degrees[v - 1]
    }

    /// Weighted degrees `d_1..d_n` in label order.
    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    /// `Σ_i d_i`, twice the total edge weight.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn min_degree(&self) -> f64 {
        self.degrees.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn mean_degree(&self) -> f64 {
        self.total_weight / self.n as f64
    }

    /// Neighbors of `v` with edge weights, ascending by label.
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, f64)] {
        &self.adjacency[v - 1]
    }

    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<f64> {
        let list = self.adjacency.get(u.checked_sub(1)?)?;
        list.binary_search_by_key(&v, |&(j, _)| j)
            .ok()
            .map(|idx| list[idx].1)
    }

    /// `π_i = d_i / Σ_j d_j`.
    pub fn stationary_distribution(&self) -> Vec<f64> {
        self.degrees
            .iter()
            .map(|&d| d / self.total_weight)
            .collect()
    }

    /// Row `v` of the transition matrix: `j ↦ d_vj / d_v` over the neighbors of `v`.
    pub fn transition_distribution(&self, v: Vertex) -> Vec<(Vertex, f64)> {
        let d = self.degree(v);
        self.neighbors(v).iter().map(|&(j, w)| (j, w / d)).collect()
    }

    /// Maps a uniform draw in `[0, 1)` to a vertex with probability `π_i`.
    pub fn sample_stationary(&self, uniform: f64) -> Vertex {
        invert_cdf(&self.degree_cdf, uniform * self.total_weight) + 1
    }

    /// Maps a uniform draw in `[0, 1)` to a neighbor of `v` with
    /// probability `d_vj / d_v`.
    pub fn sample_neighbor(&self, v: Vertex, uniform: f64) -> Vertex {
        let idx = v - 1;
        self.sample_neighbor_scaled(v, uniform * self.degrees[idx])
    }

    /// Like [`Self::sample_neighbor`], with the draw already scaled to `[0, d_v)`.
    pub(crate) fn sample_neighbor_scaled(&self, v: Vertex, x: f64) -> Vertex {
        let idx = v - 1;
        let slot = invert_cdf(&self.neighbor_cdf[idx], x);
        self.adjacency[idx][slot].0
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut stack = Vec::new();
        let mut components = 0;
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            stack.push(start);
            while let Some(i) = stack.pop() {
                for &(j, _) in &self.adjacency[i] {
                    if !seen[j - 1] {
                        seen[j - 1] = true;
                        stack.push(j - 1);
                    }
                }
            }
        }
        components
    }

    /// Builds `G_λ` over this graph.
    pub fn augment(&self, lambda: f64) -> Result<AugmentedGraph<'_>, GraphError> {
        AugmentedGraph::new(self, lambda)
    }
}

/// Index of the first cumulative entry strictly greater than `x`, clamped to
/// the last slot so rounding at the top end never runs off the table.
fn invert_cdf(cdf: &[f64], x: f64) -> usize {
    let idx = cdf.partition_point(|&c| c <= x);
    idx.min(cdf.len() - 1)
}

/// The base graph plus a vertex `∞` joined to every `i` by a spoke of weight
/// `d_i·λ`.
#[derive(Debug, Clone, Copy)]
pub struct AugmentedGraph<'g> {
    base: &'g WeightedGraph,
    lambda: f64,
}

impl<'g> AugmentedGraph<'g> {
    pub fn new(base: &'g WeightedGraph, lambda: f64) -> Result<Self, GraphError> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(GraphError::InvalidLambda(lambda));
        }
        Ok(AugmentedGraph { base, lambda })
    }

    pub fn base(&self) -> &'g WeightedGraph {
        self.base
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Label of the extra vertex, `n + 1`.
    pub fn infinity(&self) -> Vertex {
        self.base.n + 1
    }

    pub fn vertex_count(&self) -> usize {
        self.base.n + 1
    }

    pub fn spoke_weight(&self, i: Vertex) -> f64 {
        self.base.degree(i) * self.lambda
    }

    /// Weighted degree in `G_λ`: `d_i(1+λ)` for base vertices, `λ·Σ d_i` for `∞`.
    pub fn degree(&self, v: Vertex) -> f64 {
        if v == self.infinity() {
            self.lambda * self.base.total_weight
        } else {
            self.base.degree(v) * (1.0 + self.lambda)
        }
    }

    /// Probability of the transition `i → ∞`, which is `λ/(1+λ)` for every `i`.
    pub fn return_probability(&self, i: Vertex) -> f64 {
        self.spoke_weight(i) / self.degree(i)
    }

    /// Row `v` of the transition matrix of `G_λ`.
    pub fn transition_distribution(&self, v: Vertex) -> Vec<(Vertex, f64)> {
        let total = self.degree(v);
        if v == self.infinity() {
            (1..=self.base.n)
                .map(|i| (i, self.spoke_weight(i) / total))
                .collect()
        } else {
            let mut row: Vec<(Vertex, f64)> = self
                .base
                .neighbors(v)
                .iter()
                .map(|&(j, w)| (j, w / total))
                .collect();
            row.push((self.infinity(), self.spoke_weight(v) / total));
            row
        }
    }

    /// One step of the natural walk on `G_λ` driven by a single uniform draw.
    pub fn step(&self, v: Vertex, uniform: f64) -> Vertex {
        if v == self.infinity() {
            return self.base.sample_stationary(uniform);
        }
        let x = uniform * self.degree(v);
        let spoke = self.spoke_weight(v);
        if x < spoke {
            self.infinity()
        } else {
            self.base.sample_neighbor_scaled(v, x - spoke)
        }
    }

    /// Materializes `G_λ` as an ordinary graph on `n + 1` vertices.
    pub fn to_weighted_graph(&self) -> WeightedGraph {
        let inf = self.infinity();
        let mut builder = GraphBuilder::new(inf);
        for e in self.base.edges() {
            builder
                .add_edge(e.u, e.v, e.weight)
                .expect("base edges are valid");
        }
        for i in 1..=self.base.n {
            builder
                .add_edge(i, inf, self.spoke_weight(i))
                .expect("spokes are valid");
        }
        builder.build().expect("augmented graph has no isolated vertices")
    }
}

/// Parameters for [`random_connected_graph`].
#[derive(Debug, Clone, Copy)]
pub struct RandomGraphSpec {
    pub n: usize,
    /// Weights are drawn uniformly from `1..=max_weight`.
    pub max_weight: u32,
    /// Probability of adding each non-tree pair.
    pub extra_edge_probability: f64,
    /// Upper bound on the total edge count.
    pub max_edges: usize,
}

/// A random connected graph with integer weights: a random recursive tree
/// plus independently added extra edges.
pub fn random_connected_graph<R: Rng + ?Sized>(spec: &RandomGraphSpec, rng: &mut R) -> WeightedGraph {
    assert!(spec.n >= 2, "random graphs need at least two vertices");
    assert!(spec.max_weight >= 1);
    let n = spec.n;
    let mut order: Vec<Vertex> = (1..=n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        order.swap(i, j);
    }
    let mut builder = GraphBuilder::new(n);
    let mut count = 0;
    for pos in 1..n {
        let parent = order[rng.random_range(0..pos)];
        let w = rng.random_range(1..=spec.max_weight) as f64;
        builder.add_edge(order[pos], parent, w).expect("tree edges are distinct");
        count += 1;
    }
    for u in 1..=n {
        for v in (u + 1)..=n {
            if count >= spec.max_edges {
                break;
            }
            let present = builder.edges.contains_key(&(u, v));
            if !present && rng.random::<f64>() < spec.extra_edge_probability {
                let w = rng.random_range(1..=spec.max_weight) as f64;
                builder.add_edge(u, v, w).expect("pair checked absent");
                count += 1;
            }
        }
    }
    builder.build().expect("spanning tree covers every vertex")
}
