use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::exact::rational_from_f64;
use super::union_find::UnionFind;
use super::{check_lambda, guard, OracleError, MAX_ENUMERATION_EDGES, MAX_ENUMERATION_VERTICES};
use crate::graph::{Vertex, WeightedGraph};

#[derive(Debug, Clone, PartialEq)]
pub struct EnumeratedTree {
    /// Sorted endpoint pairs with `u < v`.
    pub edges: Vec<(Vertex, Vertex)>,
    pub weight: f64,
    pub exact_weight: BigRational,
    /// Edges at `∞`; 0 outside augmented enumerations.
    pub deg_infinity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreeEnumeration {
    pub vertex_count: usize,
    pub trees: Vec<EnumeratedTree>,
    pub total_weight: f64,
    pub exact_total: BigRational,
    /// Exact weight totals keyed by `deg_∞` (augmented enumerations only).
    pub deg_totals: BTreeMap<usize, BigRational>,
}

struct Candidate {
    u: Vertex,
    v: Vertex,
    weight: f64,
    exact: BigRational,
    spoke: bool,
}

/// Every spanning tree of `g`, by testing edge subsets of size `n − 1` for
/// acyclicity with a union-find (cyclic prefixes are cut early).
pub fn enumerate_spanning_trees(g: &WeightedGraph) -> Result<TreeEnumeration, OracleError> {
    guard("vertex count", g.n(), MAX_ENUMERATION_VERTICES)?;
    guard("edge count", g.edges().len(), MAX_ENUMERATION_EDGES)?;
    let candidates = base_candidates(g)?;
    Ok(enumerate(g.n(), &candidates))
}

/// Every spanning tree of `G_λ`, built here from the edge list with spokes
/// `(i, n+1)` of exact weight `d_i·λ`.
pub fn enumerate_augmented_trees(g: &WeightedGraph, lambda: f64) -> Result<TreeEnumeration, OracleError> {
    check_lambda(lambda)?;
    let n = g.n();
    guard("augmented vertex count", n + 1, MAX_ENUMERATION_VERTICES)?;
    guard("augmented edge count", g.edges().len() + n, MAX_ENUMERATION_EDGES)?;
    let mut candidates = base_candidates(g)?;
    let exact_lambda = rational_from_f64(lambda)?;
    let mut degrees = alloc::vec![BigRational::zero(); n];
    let mut float_degrees = alloc::vec![0.0; n];
    for c in &candidates {
        degrees[c.u - 1] += &c.exact;
        degrees[c.v - 1] += &c.exact;
        float_degrees[c.u - 1] += c.weight;
        float_degrees[c.v - 1] += c.weight;
    }
    for i in 1..=n {
        candidates.push(Candidate {
            u: i,
            v: n + 1,
            weight: float_degrees[i - 1] * lambda,
            exact: &degrees[i - 1] * &exact_lambda,
            spoke: true,
        });
    }
    Ok(enumerate(n + 1, &candidates))
}

fn base_candidates(g: &WeightedGraph) -> Result<Vec<Candidate>, OracleError> {
    g.edges()
        .iter()
        .map(|e| {
            Ok(Candidate {
                u: e.u,
                v: e.v,
                weight: e.weight,
                exact: rational_from_f64(e.weight)?,
                spoke: false,
            })
        })
        .collect()
}

fn enumerate(vertex_count: usize, candidates: &[Candidate]) -> TreeEnumeration {
    let mut out = TreeEnumeration {
        vertex_count,
        trees: Vec::new(),
        total_weight: 0.0,
        exact_total: BigRational::zero(),
        deg_totals: BTreeMap::new(),
    };
    let need = vertex_count.saturating_sub(1);
    let mut chosen = Vec::with_capacity(need);
    extend(candidates, 0, need, &UnionFind::new(vertex_count), &mut chosen, &mut out);
    out
}

fn extend(
    candidates: &[Candidate],
    from: usize,
    need: usize,
    uf: &UnionFind,
    chosen: &mut Vec<usize>,
    out: &mut TreeEnumeration,
) {
    if chosen.len() == need {
        record(candidates, chosen, out);
        return;
    }
    let missing = need - chosen.len();
    for idx in from..candidates.len() {
        if candidates.len() - idx < missing {
            break;
        }
        let c = &candidates[idx];
        let mut next = uf.clone();
        if !next.union(c.u - 1, c.v - 1) {
            continue;
        }
        chosen.push(idx);
        extend(candidates, idx + 1, need, &next, chosen, out);
        chosen.pop();
    }
}

fn record(candidates: &[Candidate], chosen: &[usize], out: &mut TreeEnumeration) {
    let mut edges: Vec<(Vertex, Vertex)> = chosen.iter().map(|&i| (candidates[i].u, candidates[i].v)).collect();
    edges.sort_unstable();
    let weight: f64 = chosen.iter().map(|&i| candidates[i].weight).product();
    let exact_weight = chosen
        .iter()
        .fold(BigRational::one(), |acc, &i| acc * &candidates[i].exact);
    let deg_infinity = chosen.iter().filter(|&&i| candidates[i].spoke).count();
    out.total_weight += weight;
    out.exact_total += &exact_weight;
    *out.deg_totals.entry(deg_infinity).or_insert_with(BigRational::zero) += &exact_weight;
    out.trees.push(EnumeratedTree {
        edges,
        weight,
        exact_weight,
        deg_infinity,
    });
}

/// Each spanning tree (sorted edge pairs) with its exact probability.
pub type TreeLaw = Vec<(Vec<(Vertex, Vertex)>, BigRational)>;

/// `P_𝕋`: each spanning tree with probability `|t| / Σ|t|`, exactly.
pub fn exact_tree_distribution(g: &WeightedGraph) -> Result<TreeLaw, OracleError> {
    let e = enumerate_spanning_trees(g)?;
    if e.exact_total.is_zero() {
        return Err(OracleError::NoSpanningTree);
    }
    Ok(e.trees
        .into_iter()
        .map(|t| (t.edges, t.exact_weight / &e.exact_total))
        .collect())
}

/// `E[(−1)^{deg_∞(t)}]` under `P_{𝕋_λ}`, exactly.
pub fn exact_sign_expectation(g: &WeightedGraph, lambda: f64) -> Result<BigRational, OracleError> {
    let e = enumerate_augmented_trees(g, lambda)?;
    let signed = e
        .deg_totals
        .iter()
        .fold(BigRational::zero(), |acc, (&deg, w)| if deg % 2 == 0 { acc + w } else { acc - w });
    Ok(signed / e.exact_total)
}


#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    fn unit_triangle() -> WeightedGraph {
        WeightedGraph::from_edges(3, [(1, 2, 1.0), (2, 3, 1.0), (1, 3, 1.0)]).unwrap()
    }

    #[test]
    fn triangle_trees() {
        let e = enumerate_spanning_trees(&unit_triangle()).unwrap();
        assert_eq!(e.trees.len(), 3);
        assert_eq!(e.exact_total, q(3, 1));
        let path = WeightedGraph::from_edges(3, [(1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        let e = enumerate_spanning_trees(&path).unwrap();
        assert_eq!(e.trees.len(), 1);
        assert_eq!(e.total_weight, 1.0);
    }

    #[test]
    fn augmented_triangle_trees() {
        let e = enumerate_augmented_trees(&unit_triangle(), 1.0).unwrap();
        assert_eq!(e.trees.len(), 16);
        assert_eq!(e.exact_total, q(50, 1));
        assert_eq!(e.deg_totals[&1], q(18, 1));
        assert_eq!(e.deg_totals[&2], q(24, 1));
        assert_eq!(e.deg_totals[&3], q(8, 1));
        assert_eq!(exact_sign_expectation(&unit_triangle(), 1.0).unwrap(), q(-1, 25));
    }

    #[test]
    fn single_edge_sign() {
        let g = WeightedGraph::from_edges(2, [(1, 2, 1.0)]).unwrap();
        assert_eq!(exact_sign_expectation(&g, 1.0).unwrap(), q(-1, 3));
    }

    #[test]
    fn weighted_triangle_law() {
        let g = WeightedGraph::from_edges(3, [(1, 2, 1.0), (2, 3, 2.0), (1, 3, 3.0)]).unwrap();
        let law = exact_tree_distribution(&g).unwrap();
        let lookup = |edges: &[(usize, usize)]| law.iter().find(|(e, _)| e == edges).unwrap().1.clone();
        assert_eq!(lookup(&[(1, 2), (1, 3)]), q(3, 11));
        assert_eq!(lookup(&[(1, 2), (2, 3)]), q(2, 11));
        assert_eq!(lookup(&[(1, 3), (2, 3)]), q(6, 11));
        let total = law.iter().fold(BigRational::zero(), |acc, (_, p)| acc + p);
        assert!(total.is_one());
    }

    #[test]
    fn guards() {
        let edges: Vec<(usize, usize, f64)> = (1..11).map(|i| (i, i + 1, 1.0)).collect();
        let g = WeightedGraph::from_edges(11, edges).unwrap();
        assert!(matches!(enumerate_spanning_trees(&g), Err(OracleError::TooLarge { .. })));
        let disconnected = WeightedGraph::from_edges(4, [(1, 2, 1.0), (3, 4, 1.0)]).unwrap();
        assert_eq!(exact_tree_distribution(&disconnected), Err(OracleError::NoSpanningTree));
    }
}
