use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{guard, OracleError, MAX_EXACT_DIMENSION};
use crate::graph::{Vertex, WeightedGraph};

/// The exact rational value of a finite float.
pub fn rational_from_f64(x: f64) -> Result<BigRational, OracleError> {
    BigRational::from_float(x).ok_or(OracleError::NotFinite(x))
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Each row is first scaled by the lcm of its denominators so the
/// elimination runs over integers; the scale factors are divided out at the end.
pub fn exact_det_rational(matrix: &[Vec<BigRational>]) -> Result<BigRational, OracleError> {
    let n = matrix.len();
    guard("matrix dimension", n, MAX_EXACT_DIMENSION)?;
    if matrix.iter().any(|row| row.len() != n) {
        return Err(OracleError::NotSquare);
    }
    if n == 0 {
        return Ok(BigRational::one());
    }
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in matrix {
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        m.push(
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect(),
        );
        scale *= lcm;
    }

    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(BigRational::zero()),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let mut det = m[n - 1][n - 1].clone();
    if negate {
        det = -det;
    }
    Ok(BigRational::new(det, scale))
}

fn exact_weights(g: &WeightedGraph) -> Result<Vec<(Vertex, Vertex, BigRational)>, OracleError> {
    g.edges()
        .iter()
        .map(|e| Ok((e.u, e.v, rational_from_f64(e.weight)?)))
        .collect()
}

fn exact_degrees(n: usize, weights: &[(Vertex, Vertex, BigRational)]) -> Vec<BigRational> {
    let mut d = vec![BigRational::zero(); n];
    for (u, v, w) in weights {
        d[u - 1] += w;
        d[v - 1] += w;
    }
    d
}

/// `D − μD'` with exact entries.
pub fn exact_char_poly_matrix(g: &WeightedGraph, mu: &BigRational) -> Result<Vec<Vec<BigRational>>, OracleError> {
    let n = g.n();
    let weights = exact_weights(g)?;
    let degrees = exact_degrees(n, &weights);
    let mut m = vec![vec![BigRational::zero(); n]; n];
    let one_plus_mu = BigRational::one() + mu;
    for (i, d) in degrees.iter().enumerate() {
        m[i][i] = -(d * &one_plus_mu);
    }
    for (u, v, w) in weights {
        m[u - 1][v - 1] = w.clone();
        m[v - 1][u - 1] = w;
    }
    Ok(m)
}

/// `C(μ)` exactly.
pub fn exact_char_poly(g: &WeightedGraph, mu: &BigRational) -> Result<BigRational, OracleError> {
    exact_det_rational(&exact_char_poly_matrix(g, mu)?)
}

/// The Laplacian cofactor deleting `deleted`, exactly.
pub fn exact_cofactor_tree_weight(g: &WeightedGraph, deleted: Vertex) -> Result<BigRational, OracleError> {
    let n = g.n();
    if deleted == 0 || deleted > n {
        return Err(OracleError::VertexOutOfRange(deleted));
    }
    let weights = exact_weights(g)?;
    let degrees = exact_degrees(n, &weights);
    let keep: Vec<Vertex> = (1..=n).filter(|&v| v != deleted).collect();
    let index = |v: Vertex| keep.iter().position(|&x| x == v);
    let mut m = vec![vec![BigRational::zero(); n - 1]; n - 1];
    for (i, &v) in keep.iter().enumerate() {
        m[i][i] = degrees[v - 1].clone();
    }
    for (u, v, w) in weights {
        if let (Some(i), Some(j)) = (index(u), index(v)) {
            m[i][j] = -w.clone();
            m[j][i] = -w;
        }
    }
    exact_det_rational(&m)
}
