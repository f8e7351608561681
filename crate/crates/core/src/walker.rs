//! Everything random: seeded substreams, λ-damped walks, coverage tracking,
//! Aldous-Broder spanning trees on `G` and on `G_λ`.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{AugmentedGraph, Edge, GraphError, Vertex, WeightedGraph};

/// Default bound on walk steps before a sampler gives up.
pub const DEFAULT_STEP_CAP: u64 = 1_000_000_000;

/// The generator handed to samplers.
pub type StreamRng = ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WalkError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph is disconnected; the walk cannot cover it")]
    Disconnected,
    #[error("start vertex {vertex} out of range 1..={n}")]
    StartOutOfRange { vertex: Vertex, n: usize },
    #[error("walk did not cover the graph within {cap} steps")]
    StepCapExceeded { cap: u64 },
}

/// A master seed from which independent substreams are derived.
///
/// Stream `i` is ChaCha8 keyed by the seed with stream id `i`, so a given
/// `(seed, index)` pair always replays the same draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSource {
    seed: u64,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self, index: u64) -> StreamRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

/// A λ-damped walk: consecutive vertices are adjacent in `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DampedWalk {
    vertices: Vec<Vertex>,
}

impl DampedWalk {
    /// Wraps a vertex sequence, checking that it is non-empty and that every
    /// step follows an edge.
    pub fn new(g: &WeightedGraph, vertices: Vec<Vertex>) -> Option<Self> {
        if vertices.is_empty() || vertices.iter().any(|&v| v == 0 || v > g.n()) {
            return None;
        }
        if vertices.windows(2).any(|p| g.weight(p[0], p[1]).is_none()) {
            return None;
        }
        Some(DampedWalk { vertices })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }
}

/// Samples one λ-damped walk: start from `π`, then before every transition
/// stop with probability `λ/(1+λ)`.
pub fn sample_damped_walk<R: Rng + ?Sized>(
    g: &WeightedGraph,
    lambda: f64,
    rng: &mut R,
) -> Result<DampedWalk, WalkError> {
    let mut vertices = Vec::new();
    fill_damped_walk(g, stop_probability(lambda)?, rng, &mut vertices);
    Ok(DampedWalk { vertices })
}

pub(crate) fn stop_probability(lambda: f64) -> Result<f64, WalkError> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(GraphError::InvalidLambda(lambda).into());
    }
    Ok(lambda / (1.0 + lambda))
}

/// Clears `out` and fills it with a fresh damped walk.
pub(crate) fn fill_damped_walk<R: Rng + ?Sized>(
    g: &WeightedGraph,
    stop: f64,
    rng: &mut R,
    out: &mut Vec<Vertex>,
) {
    out.clear();
    let mut v = g.sample_stationary(rng.random::<f64>());
    out.push(v);
    while rng.random::<f64>() >= stop {
        v = g.sample_neighbor(v, rng.random::<f64>());
        out.push(v);
    }
}

/// The set of vertices visited so far and its stationary measure `f`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageState {
    covered: Vec<bool>,
    count: usize,
    covered_weight: f64,
    total_weight: f64,
}

impl CoverageState {
    pub fn new(g: &WeightedGraph) -> Self {
        CoverageState {
            covered: vec![false; g.n()],
            count: 0,
            covered_weight: 0.0,
            total_weight: g.total_weight(),
        }
    }

    pub fn is_covered(&self, v: Vertex) -> bool {
        self.covered[v - 1]
    }

    pub fn covered_count(&self) -> usize {
        self.count
    }

    pub fn covered_weight(&self) -> f64 {
        self.covered_weight
    }

    pub fn is_complete(&self) -> bool {
        self.count == self.covered.len()
    }

    /// `Σ_{j covered} d_j / Σ_j d_j`; exactly `1.0` once every vertex is covered.
    pub fn fraction(&self) -> f64 {
        if self.is_complete() {
            1.0
        } else {
            self.covered_weight / self.total_weight
        }
    }

    fn mark(&mut self, g: &WeightedGraph, v: Vertex) {
        let slot = &mut self.covered[v - 1];
        if !*slot {
            *slot = true;
            self.count += 1;
            self.covered_weight += g.degree(v);
        }
    }

    pub(crate) fn absorb(&mut self, g: &WeightedGraph, vertices: &[Vertex]) -> f64 {
        for &v in vertices {
            self.mark(g, v);
        }
        self.fraction()
    }

    /// Unions the walk's vertices in and returns the new fraction.
    pub fn extend(&mut self, g: &WeightedGraph, walk: &DampedWalk) -> f64 {
        self.absorb(g, &walk.vertices)
    }
}

/// Functional form of [`CoverageState::extend`].
pub fn extend_coverage(g: &WeightedGraph, state: &CoverageState, walk: &DampedWalk) -> (CoverageState, f64) {
    let mut next = state.clone();
    let f = next.extend(g, walk);
    (next, f)
}

/// A spanning tree of `G` or of `G_λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanningTree {
    vertex_count: usize,
    /// Sorted by `(u, v)`.
    edges: Vec<Edge>,
    deg_infinity: usize,
    weight: f64,
}

impl SpanningTree {
    fn from_edges(vertex_count: usize, mut edges: Vec<Edge>, infinity: Option<Vertex>) -> Self {
        edges.sort_by_key(|e| (e.u, e.v));
        let deg_infinity = infinity
            .map(|inf| edges.iter().filter(|e| e.v == inf).count())
            .unwrap_or(0);
        let weight = edges.iter().map(|e| e.weight).product();
        SpanningTree {
            vertex_count,
            edges,
            deg_infinity,
            weight,
        }
    }

    /// `n` for trees of `G`, `n + 1` for trees of `G_λ`.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Endpoint pairs in sorted order, handy as a map key.
    pub fn edge_pairs(&self) -> Vec<(Vertex, Vertex)> {
        self.edges.iter().map(|e| (e.u, e.v)).collect()
    }

    /// Number of tree edges at `∞`; 0 for trees of the plain graph.
    pub fn deg_infinity(&self) -> usize {
        self.deg_infinity
    }

    /// Product of edge weights.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// `(−1)^{deg_∞}`.
    pub fn sign(&self) -> f64 {
        if self.deg_infinity.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }
}

/// Aldous-Broder on `G`: walk from `start` until every vertex is seen and keep
/// the edge of each first entrance.
pub fn sample_spanning_tree_ab<R: Rng + ?Sized>(
    g: &WeightedGraph,
    start: Vertex,
    rng: &mut R,
    step_cap: u64,
) -> Result<SpanningTree, WalkError> {
    let n = g.n();
    if start == 0 || start > n {
        return Err(WalkError::StartOutOfRange { vertex: start, n });
    }
    if !g.is_connected() {
        return Err(WalkError::Disconnected);
    }
    let mut visited = vec![false; n];
    visited[start - 1] = true;
    let mut remaining = n - 1;
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut current = start;
    let mut steps = 0u64;
    while remaining > 0 {
        if steps == step_cap {
            return Err(WalkError::StepCapExceeded { cap: step_cap });
        }
        steps += 1;
        let next = g.sample_neighbor(current, rng.random::<f64>());
        if !visited[next - 1] {
            visited[next - 1] = true;
            remaining -= 1;
            let w = g.weight(current, next).expect("walk follows edges");
            edges.push(Edge::new(current, next, w));
        }
        current = next;
    }
    Ok(SpanningTree::from_edges(n, edges, None))
}

/// Options for [`sample_augmented_excursions`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExcursionOptions {
    /// Keep walking until at least this many excursions have returned to
    /// `∞`, even after the tree is complete. Excursion `i` for a fixed `i` is
    /// then an unconditioned damped walk.
    pub min_excursions: usize,
    pub step_cap: u64,
}

impl Default for ExcursionOptions {
    fn default() -> Self {
        ExcursionOptions {
            min_excursions: 0,
            step_cap: DEFAULT_STEP_CAP,
        }
    }
}

/// The walk on `G_λ` from `∞`, cut into excursions, with its Aldous-Broder tree.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcursionRecord {
    /// `w_1, w_2, …`; each is complete (ends with a return to `∞`).
    pub walks: Vec<DampedWalk>,
    /// `x_i = 1` iff the first vertex of `w_i` was not covered by earlier excursions.
    pub x_flags: Vec<u8>,
    pub tree: SpanningTree,
    /// Index (1-based count) of the excursion during which the last vertex was
    /// first reached.
    pub k_used: usize,
}

/// Runs the natural walk on `G_λ` starting at `∞` until all `n + 1` vertices
/// are visited, finishing the excursion in progress (and any further ones
/// required by `options.min_excursions`).
pub fn sample_augmented_excursions<R: Rng + ?Sized>(
    aug: &AugmentedGraph<'_>,
    rng: &mut R,
    options: &ExcursionOptions,
) -> Result<ExcursionRecord, WalkError> {
    let mut walks: Vec<Vec<Vertex>> = Vec::new();
    let mut x_flags = Vec::new();
    let (tree, k_used) = run_augmented_walk(aug, rng, options, Some((&mut walks, &mut x_flags)))?;
    let walks = walks
        .into_iter()
        .map(|vertices| DampedWalk { vertices })
        .collect();
    Ok(ExcursionRecord {
        walks,
        x_flags,
        tree,
        k_used,
    })
}

/// Aldous-Broder on `G_λ` from `∞`, stopping as soon as the tree is complete.
pub fn sample_augmented_tree<R: Rng + ?Sized>(
    aug: &AugmentedGraph<'_>,
    rng: &mut R,
    step_cap: u64,
) -> Result<SpanningTree, WalkError> {
    let options = ExcursionOptions {
        min_excursions: 0,
        step_cap,
    };
    run_augmented_walk(aug, rng, &options, None).map(|(tree, _)| tree)
}

type ExcursionSink<'a> = (&'a mut Vec<Vec<Vertex>>, &'a mut Vec<u8>);

fn run_augmented_walk<R: Rng + ?Sized>(
    aug: &AugmentedGraph<'_>,
    rng: &mut R,
    options: &ExcursionOptions,
    mut sink: Option<ExcursionSink<'_>>,
) -> Result<(SpanningTree, usize), WalkError> {
    let g = aug.base();
    let n = g.n();
    let inf = aug.infinity();
    let mut visited = vec![false; n];
    let mut remaining = n;
    let mut edges = Vec::with_capacity(n);
    let mut excursions = 0usize;
    let mut k_used = 0usize;
    let mut current = inf;
    let mut steps = 0u64;
    loop {
        if steps == options.step_cap {
            return Err(WalkError::StepCapExceeded {
                cap: options.step_cap,
            });
        }
        steps += 1;
        let next = aug.step(current, rng.random::<f64>());
        if next == inf {
            if remaining == 0 && excursions >= options.min_excursions {
                break;
            }
        } else {
            let fresh = !visited[next - 1];
            if current == inf {
                excursions += 1;
                if let Some((walks, flags)) = sink.as_mut() {
                    walks.push(vec![next]);
                    flags.push(u8::from(fresh));
                }
            } else if let Some((walks, _)) = sink.as_mut() {
                walks.last_mut().expect("inside an excursion").push(next);
            }
            if fresh {
                visited[next - 1] = true;
                remaining -= 1;
                let w = if current == inf {
                    aug.spoke_weight(next)
                } else {
                    g.weight(current, next).expect("walk follows edges")
                };
                edges.push(Edge::new(current, next, w));
                if remaining == 0 {
                    k_used = excursions;
                    if sink.is_none() {
                        break;
                    }
                }
            }
        }
        current = next;
    }
    Ok((SpanningTree::from_edges(n + 1, edges, Some(inf)), k_used))
}
