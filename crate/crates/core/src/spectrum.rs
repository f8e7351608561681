//! The linear-algebra side: the characteristic polynomial
//! `C(μ) = det(D − μD')`, the ratio `C(−λ)/C(λ)`, Matrix-Tree cofactors and
//! the roots of `C` on `[−2, 0]`.
//!
//! Every determinant here goes through Gaussian elimination with partial
//! pivoting and is carried as a sign plus a log-magnitude, since `|C(μ)|`
//! grows like `∏ d_i(1+μ)`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Mul, Neg};

use crate::graph::{Vertex, WeightedGraph};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectrumError {
    #[error("lambda must be positive and finite, got {0}")]
    InvalidLambda(f64),
    #[error("C({0}) evaluated to zero")]
    Degenerate(f64),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("eigenvalue search needs positive tolerance and grid step")]
    InvalidConfig,
}

/// A real number stored as `sign · exp(log_magnitude)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignLogDet {
    /// One of `-1`, `0`, `1`.
    pub sign: i8,
    /// Ignored when `sign == 0`.
    pub log_magnitude: f64,
}

impl SignLogDet {
    pub const ZERO: SignLogDet = SignLogDet {
        sign: 0,
        log_magnitude: f64::NEG_INFINITY,
    };
    pub const ONE: SignLogDet = SignLogDet {
        sign: 1,
        log_magnitude: 0.0,
    };

    pub fn from_value(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            SignLogDet {
                sign: if x > 0.0 { 1 } else { -1 },
                log_magnitude: libm::log(x.abs()),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn value(&self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            f64::from(self.sign) * libm::exp(self.log_magnitude)
        }
    }

    /// `self / other`, or `None` when `other` is zero.
    pub fn checked_div(self, other: SignLogDet) -> Option<SignLogDet> {
        if other.sign == 0 {
            return None;
        }
        if self.sign == 0 {
            return Some(Self::ZERO);
        }
        Some(SignLogDet {
            sign: self.sign * other.sign,
            log_magnitude: self.log_magnitude - other.log_magnitude,
        })
    }
}

impl Mul for SignLogDet {
    type Output = SignLogDet;

    fn mul(self, rhs: SignLogDet) -> SignLogDet {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::ZERO;
        }
        SignLogDet {
            sign: self.sign * rhs.sign,
            log_magnitude: self.log_magnitude + rhs.log_magnitude,
        }
    }
}

impl Neg for SignLogDet {
    type Output = SignLogDet;

    fn neg(self) -> SignLogDet {
        SignLogDet {
            sign: -self.sign,
            ..self
        }
    }
}

/// Determinant of the row-major `n × n` matrix `a`, destroying it.
///
/// A pivot column that is exactly zero ends the elimination with sign 0.
pub fn sign_log_det(a: &mut [f64], n: usize) -> SignLogDet {
    assert_eq!(a.len(), n * n, "matrix is not n x n");
    let mut sign = 1i8;
    let mut log_magnitude = 0.0;
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_abs = a[col * n + col].abs();
        for r in (col + 1)..n {
            let v = a[r * n + col].abs();
            if v > pivot_abs {
                pivot_row = r;
                pivot_abs = v;
            }
        }
        if pivot_abs == 0.0 {
            return SignLogDet::ZERO;
        }
        if pivot_row != col {
            for c in 0..n {
                a.swap(col * n + c, pivot_row * n + c);
            }
            sign = -sign;
        }
        let pivot = a[col * n + col];
        if pivot < 0.0 {
            sign = -sign;
        }
        log_magnitude += libm::log(pivot_abs);
        for r in (col + 1)..n {
            let factor = a[r * n + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            a[r * n + col] = 0.0;
            for c in (col + 1)..n {
                a[r * n + c] -= factor * a[col * n + c];
            }
        }
    }
    SignLogDet {
        sign,
        log_magnitude,
    }
}

/// The matrix `D − μD'`: diagonal `−d_i(1+μ)`, off-diagonal `d_ij`.
pub fn char_poly_matrix(g: &WeightedGraph, mu: f64) -> Vec<f64> {
    let n = g.n();
    let mut a = vec![0.0; n * n];
    for (i, &d) in g.degrees().iter().enumerate() {
        a[i * n + i] = -d * (1.0 + mu);
    }
    for e in g.edges() {
        let (i, j) = (e.u - 1, e.v - 1);
        a[i * n + j] = e.weight;
        a[j * n + i] = e.weight;
    }
    a
}

/// `C(μ) = det(D − μD')`.
pub fn char_poly_eval(g: &WeightedGraph, mu: f64) -> SignLogDet {
    let mut a = char_poly_matrix(g, mu);
    sign_log_det(&mut a, g.n())
}

fn check_lambda(lambda: f64) -> Result<(), SpectrumError> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(SpectrumError::InvalidLambda(lambda))
    }
}

/// `C(−λ)/C(λ)`, which lies in `[−1, 1]` for `λ > 0`.
pub fn spectral_ratio(g: &WeightedGraph, lambda: f64) -> Result<f64, SpectrumError> {
    check_lambda(lambda)?;
    let num = char_poly_eval(g, -lambda);
    let den = char_poly_eval(g, lambda);
    num.checked_div(den)
        .map(|r| r.value())
        .ok_or(SpectrumError::Degenerate(lambda))
}

/// Result of a Matrix-Tree cofactor evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeWeight {
    /// Sum over spanning trees of the product of edge weights.
    pub value: f64,
    pub log_value: SignLogDet,
    /// Set when the graph is disconnected; `value` is then 0.
    pub disconnected: bool,
}

/// The `(1,1)` cofactor of the weighted Laplacian, i.e. the total weight of
/// all spanning trees.
pub fn matrix_tree_weight(g: &WeightedGraph) -> TreeWeight {
    cofactor_tree_weight(g, 1).expect("vertex 1 always exists")
}

/// The Laplacian cofactor obtained by deleting row and column `deleted`.
pub fn cofactor_tree_weight(g: &WeightedGraph, deleted: Vertex) -> Result<TreeWeight, SpectrumError> {
    let n = g.n();
    if deleted == 0 || deleted > n {
        return Err(SpectrumError::VertexOutOfRange { vertex: deleted, n });
    }
    if !g.is_connected() {
        return Ok(TreeWeight {
            value: 0.0,
            log_value: SignLogDet::ZERO,
            disconnected: true,
        });
    }
    let m = n - 1;
    // Index in the minor, or None for the deleted vertex.
    let slot = |v: Vertex| -> Option<usize> {
        match v.cmp(&deleted) {
            core::cmp::Ordering::Less => Some(v - 1),
            core::cmp::Ordering::Equal => None,
            core::cmp::Ordering::Greater => Some(v - 2),
        }
    };
    let mut a = vec![0.0; m * m];
    for v in 1..=n {
        if let Some(i) = slot(v) {
            a[i * m + i] = g.degree(v);
        }
    }
    for e in g.edges() {
        if let (Some(i), Some(j)) = (slot(e.u), slot(e.v)) {
            a[i * m + j] = -e.weight;
            a[j * m + i] = -e.weight;
        }
    }
    let log_value = sign_log_det(&mut a, m);
    Ok(TreeWeight {
        value: log_value.value(),
        log_value,
        disconnected: false,
    })
}

/// `(−1)^n·C(λ)` in sign/log form; its sign is `+1` for every `λ > 0`.
pub fn augmented_tree_weight_log(g: &WeightedGraph, lambda: f64) -> Result<SignLogDet, SpectrumError> {
    check_lambda(lambda)?;
    let c = char_poly_eval(g, lambda);
    Ok(if g.n() % 2 == 1 { -c } else { c })
}

/// `(−1)^n·C(λ)`, the total spanning-tree weight of `G_λ`.
pub fn augmented_tree_weight_sum(g: &WeightedGraph, lambda: f64) -> Result<f64, SpectrumError> {
    augmented_tree_weight_log(g, lambda).map(|s| s.value())
}

/// How a root of `C` was located.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootKind {
    /// `μ = 0`, a root for every graph.
    Trivial,
    /// Bracketed by a sign change and refined by bisection.
    SignChange,
    /// No sign change, but `|C|` dips to (numerically) zero inside a grid
    /// cell; refined by golden-section minimization. Best effort.
    EvenMultiplicity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    pub value: f64,
    pub kind: RootKind,
    /// Width of the final bracket around `value`.
    pub bracket_width: f64,
    /// `|C(value)|`.
    pub residual: f64,
    /// Largest `|C|` at the edges of the grid cell(s) the root was found in.
    pub reference: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EigenvalueList {
    /// Ascending by value; the last entry is always `0`.
    pub roots: Vec<Eigenvalue>,
}

impl EigenvalueList {
    pub fn values(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.value).collect()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Eigenvalue> {
        self.roots.iter()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenConfig {
    /// Final bracket width for refined roots.
    pub tol: f64,
    /// Spacing of the sign-change scan over `[−2−ε, 0]`.
    pub grid_step: f64,
}

impl Default for EigenConfig {
    fn default() -> Self {
        EigenConfig {
            tol: 1e-10,
            grid_step: 1e-3,
        }
    }
}

/// Slack below `−2` in the search domain.
const DOMAIN_MARGIN: f64 = 1e-9;

/// `C(μ)/(−μ)`. The factor `−μ` is the root at zero; dividing it out keeps
/// sign information meaningful right up to `μ = 0`.
struct Deflated<'g> {
    g: &'g WeightedGraph,
    at_zero: SignLogDet,
}

impl<'g> Deflated<'g> {
    fn new(g: &'g WeightedGraph) -> Self {
        // d/dμ C at 0 is −(Σ d_i)·(−1)^{n−1}·τ with τ the spanning-tree weight.
        let tree = matrix_tree_weight(g);
        let at_zero = if tree.disconnected || tree.log_value.is_zero() {
            SignLogDet::ZERO
        } else {
            SignLogDet {
                sign: if g.n() % 2 == 1 { 1 } else { -1 },
                log_magnitude: libm::log(g.total_weight()) + tree.log_value.log_magnitude,
            }
        };
        Deflated { g, at_zero }
    }

    fn eval(&self, mu: f64) -> SignLogDet {
        if mu == 0.0 {
            return self.at_zero;
        }
        let c = char_poly_eval(self.g, mu);
        if c.is_zero() {
            return c;
        }
        let s = if mu < 0.0 { c.sign } else { -c.sign };
        SignLogDet {
            sign: s,
            log_magnitude: c.log_magnitude - libm::log(mu.abs()),
        }
    }
}

/// Roots of `C` on `[−2, 0]`.
pub fn laplacian_eigenvalues(g: &WeightedGraph, config: &EigenConfig) -> Result<EigenvalueList, SpectrumError> {
    if !(config.tol > 0.0) || !(config.grid_step > 0.0) {
        return Err(SpectrumError::InvalidConfig);
    }
    let q = Deflated::new(g);
    let lower = -2.0 - DOMAIN_MARGIN;
    let cells = libm::ceil(-lower / config.grid_step).max(1.0) as usize;
    let step = -lower / cells as f64;
    let grid: Vec<f64> = (0..=cells)
        .map(|j| if j == cells { 0.0 } else { lower + j as f64 * step })
        .collect();
    let values: Vec<SignLogDet> = grid.iter().map(|&mu| q.eval(mu)).collect();
    let abs_c = |mu: f64| char_poly_eval(g, mu).value().abs();

    let mut roots = Vec::new();
    for j in 0..cells {
        let (a, b) = (grid[j], grid[j + 1]);
        let (qa, qb) = (values[j], values[j + 1]);
        if qa.is_zero() {
            let left = if j > 0 { values[j - 1].sign } else { 0 };
            let kind = if left * qb.sign < 0 {
                RootKind::SignChange
            } else {
                RootKind::EvenMultiplicity
            };
            let reference = abs_c(grid[j.saturating_sub(1)]).max(abs_c(b));
            roots.push(Eigenvalue {
                value: a,
                kind,
                bracket_width: 0.0,
                residual: abs_c(a),
                reference,
            });
            continue;
        }
        if qa.sign * qb.sign < 0 {
            let (value, width) = bisect(&q, a, b, qa.sign, config.tol);
            roots.push(Eigenvalue {
                value,
                kind: RootKind::SignChange,
                bracket_width: width,
                residual: abs_c(value),
                reference: abs_c(a).max(abs_c(b)),
            });
        }
    }

    // Local minima of |q| on the grid with no sign change on either side.
    // A guard point one step below the domain lets a minimum sitting on
    // the lower edge (a double root at −2) be seen as interior.
    let guard = (lower - step, q.eval(lower - step));
    let floor = 2.0 * libm::log(step);
    for j in 0..cells {
        let (a, l) = if j == 0 { guard } else { (grid[j - 1], values[j - 1]) };
        let (m, r) = (values[j], values[j + 1]);
        if m.is_zero() || l.sign != m.sign || r.sign != m.sign {
            continue;
        }
        if m.log_magnitude > l.log_magnitude || m.log_magnitude > r.log_magnitude {
            continue;
        }
        let b = grid[j + 1];
        let (value, width, best) = golden_section_min(&q, a, b, config.tol);
        if value < lower {
            continue;
        }
        let edge = l.log_magnitude.max(r.log_magnitude);
        if best.is_zero() || best.log_magnitude < floor + edge {
            roots.push(Eigenvalue {
                value,
                kind: RootKind::EvenMultiplicity,
                bracket_width: width,
                residual: abs_c(value),
                reference: abs_c(a).max(abs_c(b)),
            });
        }
    }

    roots.push(Eigenvalue {
        value: 0.0,
        kind: RootKind::Trivial,
        bracket_width: 0.0,
        residual: 0.0,
        reference: 0.0,
    });
    roots.sort_by(|x, y| x.value.total_cmp(&y.value));
    Ok(EigenvalueList { roots })
}

fn bisect(q: &Deflated<'_>, mut a: f64, mut b: f64, sign_a: i8, tol: f64) -> (f64, f64) {
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let s = q.eval(mid).sign;
        if s == 0 {
            return (mid, 0.0);
        }
        if s == sign_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    (0.5 * (a + b), b - a)
}

/// Minimizes `log|q|` on `[a, b]`; returns the point, the final bracket
/// width and the value there.
fn golden_section_min(q: &Deflated<'_>, mut a: f64, mut b: f64, tol: f64) -> (f64, f64, SignLogDet) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let score = |s: &SignLogDet| {
        if s.is_zero() {
            f64::NEG_INFINITY
        } else {
            s.log_magnitude
        }
    };
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = q.eval(x1);
    let mut f2 = q.eval(x2);
    while b - a > tol {
        if f1.is_zero() {
            return (x1, 0.0, f1);
        }
        if f2.is_zero() {
            return (x2, 0.0, f2);
        }
        if score(&f1) <= score(&f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = q.eval(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = q.eval(x2);
        }
    }
    let (x, f) = if score(&f1) <= score(&f2) { (x1, f1) } else { (x2, f2) };
    (x, b - a, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_triangle() -> WeightedGraph {
        WeightedGraph::from_edges(3, [(1, 2, 1.0), (2, 3, 1.0), (1, 3, 1.0)]).unwrap()
    }

    fn weighted_triangle() -> WeightedGraph {
        WeightedGraph::from_edges(3, [(1, 2, 1.0), (2, 3, 2.0), (1, 3, 3.0)]).unwrap()
    }

    fn path3() -> WeightedGraph {
        WeightedGraph::from_edges(3, [(1, 2, 1.0), (2, 3, 1.0)]).unwrap()
    }

    fn single_edge() -> WeightedGraph {
        WeightedGraph::from_edges(2, [(1, 2, 1.0)]).unwrap()
    }

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn triangle_char_poly() {
        let g = unit_triangle();
        let c1 = char_poly_eval(&g, 1.0);
        assert_eq!(c1.sign, -1);
        assert!(rel_close(c1.log_magnitude, libm::log(50.0), 1e-12));
        assert_eq!(char_poly_eval(&g, 0.0).sign, 0);
        assert!(rel_close(char_poly_eval(&g, -1.0).value(), 2.0, 1e-12));
    }

    #[test]
    fn ratio_examples() {
        assert!(rel_close(spectral_ratio(&unit_triangle(), 1.0).unwrap(), -0.04, 1e-12));
        assert!(spectral_ratio(&path3(), 1.0).unwrap().abs() < 1e-12);
        assert!(spectral_ratio(&path3(), 2.0).unwrap().abs() < 1e-12);
        assert!(rel_close(spectral_ratio(&single_edge(), 1.0).unwrap(), -1.0 / 3.0, 1e-12));
        assert_eq!(
            spectral_ratio(&path3(), -1.0),
            Err(SpectrumError::InvalidLambda(-1.0))
        );
    }

    #[test]
    fn tree_weight_examples() {
        assert!(rel_close(matrix_tree_weight(&unit_triangle()).value, 3.0, 1e-12));
        assert!(rel_close(matrix_tree_weight(&weighted_triangle()).value, 11.0, 1e-12));
        assert!(rel_close(matrix_tree_weight(&path3()).value, 1.0, 1e-12));
        let split = WeightedGraph::from_edges(4, [(1, 2, 1.0), (3, 4, 1.0)]).unwrap();
        let tw = matrix_tree_weight(&split);
        assert!(tw.disconnected);
        assert_eq!(tw.value, 0.0);
    }

    #[test]
    fn augmented_sum_examples() {
        assert!(rel_close(augmented_tree_weight_sum(&unit_triangle(), 1.0).unwrap(), 50.0, 1e-12));
        assert!(rel_close(augmented_tree_weight_sum(&path3(), 1.0).unwrap(), 12.0, 1e-12));
    }

    #[test]
    fn augmented_sum_matches_explicit_cofactor() {
        for lambda in [0.5, 1.0, 2.0] {
            let g = weighted_triangle();
            let aug = g.augment(lambda).unwrap().to_weighted_graph();
            let direct = augmented_tree_weight_sum(&g, lambda).unwrap();
            let cofactor = cofactor_tree_weight(&aug, aug.n()).unwrap().value;
            assert!(rel_close(direct, cofactor, 1e-9));
        }
    }

    #[test]
    fn path_eigenvalues() {
        let list = laplacian_eigenvalues(&path3(), &EigenConfig::default()).unwrap();
        let vals = list.values();
        assert_eq!(vals.len(), 3, "{vals:?}");
        for (got, want) in vals.iter().zip([-2.0, -1.0, 0.0]) {
            assert!((got - want).abs() < 1e-9, "{vals:?}");
        }
        assert_eq!(list.roots[2].kind, RootKind::Trivial);
        assert_eq!(list.roots[1].kind, RootKind::SignChange);
    }

    #[test]
    fn triangle_double_root_flagged() {
        let list = laplacian_eigenvalues(&unit_triangle(), &EigenConfig::default()).unwrap();
        assert_eq!(list.len(), 2, "{list:?}");
        let double = list.roots[0];
        assert_eq!(double.kind, RootKind::EvenMultiplicity);
        assert!((double.value + 1.5).abs() < 1e-6);
    }

    #[test]
    fn single_edge_eigenvalues() {
        let list = laplacian_eigenvalues(&single_edge(), &EigenConfig::default()).unwrap();
        let vals = list.values();
        assert_eq!(vals.len(), 2);
        assert!((vals[0] + 2.0).abs() < 1e-9);
        assert_eq!(vals[1], 0.0);
    }

    #[test]
    fn disconnected_zero_not_duplicated() {
        let g = WeightedGraph::from_edges(4, [(1, 2, 1.0), (3, 4, 1.0)]).unwrap();
        let vals = laplacian_eigenvalues(&g, &EigenConfig::default()).unwrap().values();
        // two components, each contributing {0, −2}
        assert!(vals.iter().filter(|v| **v == 0.0).count() == 1, "{vals:?}");
        assert!(vals.iter().any(|v| (v + 2.0).abs() < 1e-6), "{vals:?}");
    }

    #[test]
    fn sign_log_det_basics() {
        let mut a = [0.0, 1.0, 1.0, 0.0];
        let d = sign_log_det(&mut a, 2);
        assert_eq!(d.sign, -1);
        assert!(d.log_magnitude.abs() < 1e-15);
        let mut z = [1.0, 2.0, 2.0, 4.0];
        assert!(sign_log_det(&mut z, 2).value().abs() < 1e-12);
        let x = SignLogDet::from_value(-3.0) * SignLogDet::from_value(2.0);
        assert!(rel_close(x.value(), -6.0, 1e-12));
        assert_eq!(SignLogDet::ONE.checked_div(SignLogDet::ZERO), None);
    }
}
