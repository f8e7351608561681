use alloc::vec;
use alloc::vec::Vec;

use super::{check_lambda, guard, OracleError, MAX_PRODUCT_K, MAX_SUBSET_VERTICES};
use crate::graph::{Vertex, WeightedGraph};

/// Mass attached to each subset of `[n]`, indexed by bitmask (bit `i − 1`
/// stands for vertex `i`).
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetDistribution {
    pub n: usize,
    pub mass: Vec<f64>,
}

impl SubsetDistribution {
    pub fn get(&self, vertices: &[Vertex]) -> f64 {
        self.mass[mask_of(vertices)]
    }

    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    /// `P[v ∈ S]`.
    pub fn marginal(&self, v: Vertex) -> f64 {
        let bit = 1usize << (v - 1);
        self.mass
            .iter()
            .enumerate()
            .filter(|(s, _)| s & bit != 0)
            .map(|(_, p)| p)
            .sum()
    }

    /// `P[|S| = size]`.
    pub fn size_mass(&self, size: u32) -> f64 {
        self.mass
            .iter()
            .enumerate()
            .filter(|(s, _)| s.count_ones() == size)
            .map(|(_, p)| p)
            .sum()
    }
}

pub(crate) fn mask_of(vertices: &[Vertex]) -> usize {
    vertices.iter().fold(0, |m, &v| m | (1 << (v - 1)))
}

/// Degrees and row-normalized transitions rebuilt from the edge list.
fn chain(g: &WeightedGraph) -> (Vec<f64>, Vec<Vec<(usize, f64)>>) {
    let n = g.n();
    let mut degree = vec![0.0; n];
    for e in g.edges() {
        degree[e.u - 1] += e.weight;
        degree[e.v - 1] += e.weight;
    }
    let mut rows = vec![Vec::new(); n];
    for e in g.edges() {
        let (a, b) = (e.u - 1, e.v - 1);
        rows[a].push((b, e.weight / degree[a]));
        rows[b].push((a, e.weight / degree[b]));
    }
    (degree, rows)
}

/// Law of the vertex set visited by one λ-damped walk, by iterating the
/// absorbing chain on `(current vertex, visited set)` until the live mass
/// drops below `1e−12`.
pub fn single_walk_visited_set_law(g: &WeightedGraph, lambda: f64) -> Result<SubsetDistribution, OracleError> {
    let by_start = visited_set_law_by_start(g, lambda)?;
    let n = g.n();
    let mut mass = vec![0.0; 1 << n];
    for law in &by_start {
        for (m, p) in mass.iter_mut().zip(law) {
            *m += p;
        }
    }
    Ok(SubsetDistribution { n, mass })
}

/// `P[first vertex = i, visited set = S]`, as one subset table per start `i`.
fn visited_set_law_by_start(g: &WeightedGraph, lambda: f64) -> Result<Vec<Vec<f64>>, OracleError> {
    check_lambda(lambda)?;
    let n = g.n();
    guard("vertex count", n, MAX_SUBSET_VERTICES)?;
    let (degree, rows) = chain(g);
    let total: f64 = degree.iter().sum();
    let subsets = 1usize << n;
    let stop = lambda / (1.0 + lambda);
    let go = 1.0 / (1.0 + lambda);
    let max_iterations = libm::ceil(libm::log(1e-12) / libm::log(go)) as usize + 2;

    let mut out = Vec::with_capacity(n);
    for start in 0..n {
        let mut live = vec![0.0; n * subsets];
        live[start * subsets + (1 << start)] = degree[start] / total;
        let mut law = vec![0.0; subsets];
        let mut remaining = 1.0;
        for _ in 0..max_iterations {
            if remaining < 1e-12 {
                break;
            }
            let mut next = vec![0.0; n * subsets];
            for v in 0..n {
                for s in 0..subsets {
                    let m = live[v * subsets + s];
                    if m == 0.0 {
                        continue;
                    }
                    law[s] += stop * m;
                    for &(u, p) in &rows[v] {
                        next[u * subsets + (s | (1 << u))] += go * m * p;
                    }
                }
            }
            live = next;
            remaining *= go;
        }
        out.push(law);
    }
    Ok(out)
}

/// `E[(−1)^{x_1 + … + x_k}]` over `k` independent damped walks, where
/// `x_i = 1` iff walk `i` starts at a vertex not covered by walks `1..i`.
/// Converges to `C(−λ)/C(λ)` as `k` grows.
pub fn exact_first_entrance_sign_expectation(g: &WeightedGraph, lambda: f64, k: u64) -> Result<f64, OracleError> {
    if k < 1 {
        return Err(OracleError::InvalidK(k));
    }
    if k > MAX_PRODUCT_K {
        return Err(OracleError::TooLarge {
            what: "k",
            actual: k as usize,
            limit: MAX_PRODUCT_K as usize,
        });
    }
    let by_start = visited_set_law_by_start(g, lambda)?;
    let subsets = 1usize << g.n();
    let support: Vec<(usize, usize, f64)> = by_start
        .iter()
        .enumerate()
        .flat_map(|(start, law)| {
            law.iter()
                .enumerate()
                .filter(|(_, &p)| p > 0.0)
                .map(move |(s, &p)| (start, s, p))
        })
        .collect();
    let mut mu = vec![0.0; subsets];
    mu[0] = 1.0;
    for _ in 0..k {
        let mut next = vec![0.0; subsets];
        for (s0, &m) in mu.iter().enumerate() {
            if m == 0.0 {
                continue;
            }
            for &(start, v, p) in &support {
                let signed = if s0 & (1 << start) != 0 { p } else { -p };
                next[s0 | v] += m * signed;
            }
        }
        mu = next;
    }
    Ok(mu.iter().sum())
}

/// `E[∏_{i=1}^{k−1} (2f_i − 1)]` exactly (up to float rounding), by dynamic
/// programming over the covered set:
/// `μ_i(S) = (2f(S) − 1) Σ_{S₀ ∪ V = S} μ_{i−1}(S₀) P[V]`.
///
/// The limit in `k` is not `−C(−λ)/C(λ)`: on a single edge the value is
/// `1/2` for every `k` while `−C(−1)/C(1) = 1/3`. The sign of the
/// first-entrance count does converge to `C(−λ)/C(λ)`; see
/// [`exact_first_entrance_sign_expectation`].
pub fn exact_product_expectation(g: &WeightedGraph, lambda: f64, k: u64) -> Result<f64, OracleError> {
    if k < 2 {
        return Err(OracleError::InvalidK(k));
    }
    if k > MAX_PRODUCT_K {
        return Err(OracleError::TooLarge {
            what: "k",
            actual: k as usize,
            limit: MAX_PRODUCT_K as usize,
        });
    }
    let law = single_walk_visited_set_law(g, lambda)?;
    let n = g.n();
    let subsets = 1usize << n;
    let (degree, _) = chain(g);
    let total: f64 = degree.iter().sum();
    let factor: Vec<f64> = (0..subsets)
        .map(|s| {
            let covered: f64 = (0..n).filter(|i| s & (1 << i) != 0).map(|i| degree[i]).sum();
            2.0 * (covered / total) - 1.0
        })
        .collect();
    let support: Vec<(usize, f64)> = law
        .mass
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 0.0)
        .map(|(s, &p)| (s, p))
        .collect();

    let mut mu = vec![0.0; subsets];
    mu[0] = 1.0;
    for _ in 1..k {
        let mut next = vec![0.0; subsets];
        for (s0, &m) in mu.iter().enumerate() {
            if m == 0.0 {
                continue;
            }
            for &(v, p) in &support {
                next[s0 | v] += m * p;
            }
        }
        for (x, f) in next.iter_mut().zip(&factor) {
            *x *= f;
        }
        mu = next;
    }
    Ok(mu.iter().sum())
}
