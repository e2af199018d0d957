//! Exact adjacency and extended adjacency matrices, degree-based indices
//! and the bounds they give on the extended spectral radius.

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{self, Rational};

/// Dense symmetric matrix of exact rationals with zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalSymMatrix {
    order: usize,
    entries: Vec<Rational>,
}

/// Dense symmetric `f64` matrix, the input type of the eigensolvers.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatSymMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl RationalSymMatrix {
    pub fn zeros(order: usize) -> Self {
        RationalSymMatrix {
            order,
            entries: vec![Rational::zero(); order * order],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.order + j]
    }

    /// Sets `(i, j)` and `(j, i)`. Off-diagonal only.
    pub fn set_sym(&mut self, i: usize, j: usize, value: Rational) {
        assert_ne!(i, j, "diagonal entries stay zero");
        self.entries[j * self.order + i] = value.clone();
        self.entries[i * self.order + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        RationalSymMatrix {
            order: self.order,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    /// Principal submatrix on the given rows/columns (in the given order).
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        let k = indices.len();
        let mut out = RationalSymMatrix::zeros(k);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                out.entries[a * k + b] = self.get(i, j).clone();
            }
        }
        out
    }

    /// `trace(M^2)`, which for a symmetric matrix is the sum of squared entries.
    pub fn trace_of_square(&self) -> Rational {
        self.entries.iter().fold(Rational::zero(), |acc, e| acc + e * e)
    }

    /// Largest absolute row sum, an upper bound on every eigenvalue modulus.
    pub fn max_abs_row_sum(&self) -> Rational {
        (0..self.order)
            .map(|i| {
                self.row(i)
                    .iter()
                    .fold(Rational::zero(), |acc, e| acc + num_traits::Signed::abs(e))
            })
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Nearest-`f64` view.
    pub fn to_float(&self) -> FloatSymMatrix {
        FloatSymMatrix {
            order: self.order,
            entries: self.entries.iter().map(rational::to_f64).collect(),
        }
    }

    /// Entries as nested arrays of `p/q` strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("matrix serializes")
    }
}

impl Serialize for RationalSymMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.order))?;
        for i in 0..self.order {
            let row: Vec<String> = self.row(i).iter().map(rational::to_pq).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl FloatSymMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidArgument(format!("row {i} has length {}", row.len())));
            }
            entries.extend_from_slice(row);
        }
        let m = FloatSymMatrix { order, entries };
        for i in 0..order {
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::InvalidArgument(format!("not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(m)
    }

    /// 0/1 adjacency matrix.
    pub fn adjacency(g: &Graph) -> Self {
        let n = g.order();
        let mut entries = vec![0.0; n * n];
        for &(u, v) in g.edges() {
            entries[u * n + v] = 1.0;
            entries[v * n + u] = 1.0;
        }
        FloatSymMatrix { order: n, entries }
    }

    /// Extended adjacency matrix built directly in floating point. Each
    /// weight is one correctly rounded division of exact integers, so the
    /// result equals `extended_adjacency(g)?.to_float()`.
    pub fn extended_adjacency(g: &Graph) -> Result<Self> {
        if let Some(v) = g.isolated_vertex() {
            return Err(Error::IsolatedVertex(v));
        }
        let n = g.order();
        let d = g.degrees();
        let mut entries = vec![0.0; n * n];
        for &(u, v) in g.edges() {
            let (a, b) = (d[u] as u64, d[v] as u64);
            let w = (a * a + b * b) as f64 / (2 * a * b) as f64;
            entries[u * n + v] = w;
            entries[v * n + u] = w;
        }
        Ok(FloatSymMatrix { order: n, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace_of_square(&self) -> f64 {
        self.entries.iter().map(|e| e * e).sum()
    }

    /// `out = M x`.
    pub fn mul_vec(&self, x: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    /// Same matrix with rows and columns relabelled by `perm` (row `i` moves to `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.order;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[perm[i] * n + perm[j]] = self.get(i, j);
            }
        }
        FloatSymMatrix { order: n, entries }
    }
}

/// Edge weight `(d_u^2 + d_v^2) / (2 d_u d_v)` of the extended adjacency matrix.
pub fn weight(d_u: usize, d_v: usize) -> Result<Rational> {
    if d_u == 0 || d_v == 0 {
        return Err(Error::InvalidArgument(format!(
            "weight({d_u}, {d_v}) needs positive degrees"
        )));
    }
    let (a, b) = (d_u as i64, d_v as i64);
    Ok(rational::frac(a * a + b * b, 2 * a * b))
}

pub fn adjacency(g: &Graph) -> RationalSymMatrix {
    let mut m = RationalSymMatrix::zeros(g.order());
    for &(u, v) in g.edges() {
        m.set_sym(u, v, Rational::one());
    }
    m
}

pub fn extended_adjacency(g: &Graph) -> Result<RationalSymMatrix> {
    if let Some(v) = g.isolated_vertex() {
        return Err(Error::IsolatedVertex(v));
    }
    let mut m = RationalSymMatrix::zeros(g.order());
    for &(u, v) in g.edges() {
        m.set_sym(u, v, weight(g.degree(u), g.degree(v))?);
    }
    Ok(m)
}

/// `M_1 = sum of d_i^2`.
pub fn first_zagreb(g: &Graph) -> u64 {
    g.first_zagreb()
}

/// `F = sum of d_i^3`.
pub fn forgotten(g: &Graph) -> u64 {
    g.forgotten()
}

/// `F / M_1`, a lower bound on the extended spectral radius.
pub fn eta_lower_bound_fm1(g: &Graph) -> Result<Rational> {
    if let Some(v) = g.isolated_vertex() {
        return Err(Error::IsolatedVertex(v));
    }
    Ok(rational::frac(forgotten(g) as i64, first_zagreb(g) as i64))
}

/// `(lambda1, weight(max degree, min degree) * lambda1)`: the interval that
/// must contain the extended spectral radius.
pub fn eta_sandwich(g: &Graph, lambda1: f64) -> Result<(f64, f64)> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let ratio = rational::to_f64(&weight(g.max_degree(), g.min_degree())?);
    Ok((lambda1, ratio * lambda1))
}
