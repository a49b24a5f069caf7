//! Dense symmetric eigendecomposition by cyclic Jacobi rotations, and the
//! Perron weight vector of a connected graph.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphio::{is_connected, Graph};

const MAX_SWEEPS: usize = 100;
const FAIL_OFF_RATIO: f64 = 1e-10;
const DONE_OFF_RATIO: f64 = 1e-15;
const SYMMETRY_TOL: f64 = 1e-12;
/// Default grouping tolerance for [`distinct_eigenvalues`].
pub const DISTINCT_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EigenError {
    #[error("expected {expected} entries for an order-{n} matrix, got {found}")]
    DimensionMismatch { n: usize, expected: usize, found: usize },
    #[error("matrix is not symmetric at ({i}, {j}): difference {diff:e}")]
    Asymmetric { i: usize, j: usize, diff: f64 },
    #[error("empty matrix")]
    Empty,
    #[error("Jacobi did not converge: off-diagonal norm {off:e} after {sweeps} sweeps")]
    NoConvergence { off: f64, sweeps: usize },
    #[error("graph is disconnected; split it into components before computing Perron weights")]
    Disconnected,
    #[error("Perron eigenvector has an entry within 1e-10 of zero")]
    SignAmbiguity,
    #[error("largest eigenvalue is not simple (gap {gap:e})")]
    DegenerateTop { gap: f64 },
    #[error("spectrum has order {spectrum}, graph has {graph} vertices")]
    OrderMismatch { spectrum: usize, graph: usize },
}

/// Dense symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Checks symmetry up to `1e-12 * max(1, max |a_ij|)` and stores `(A + A^T)/2`.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self, EigenError> {
        if data.len() != n * n {
            return Err(EigenError::DimensionMismatch { n, expected: n * n, found: data.len() });
        }
        let scale = data.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        let mut m = SymMatrix { n, data };
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (m.data[i * n + j], m.data[j * n + i]);
                let diff = (a - b).abs();
                if diff > SYMMETRY_TOL * scale {
                    return Err(EigenError::Asymmetric { i, j, diff });
                }
                let avg = 0.5 * (a + b);
                m.data[i * n + j] = avg;
                m.data[j * n + i] = avg;
            }
        }
        Ok(m)
    }

    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn adjacency(g: &Graph) -> Self {
        let n = g.n();
        let mut m = Self::zeros(n);
        for (u, v) in g.edges() {
            m.data[u * n + v] = 1.0;
            m.data[v * n + u] = 1.0;
        }
        m
    }

    pub(crate) fn from_raw_symmetrized(n: usize, mut data: Vec<f64>) -> Self {
        for i in 0..n {
            for j in i + 1..n {
                let avg = 0.5 * (data[i * n + j] + data[j * n + i]);
                data[i * n + j] = avg;
                data[j * n + i] = avg;
            }
        }
        SymMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n).map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mat_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    /// `self * other` as a plain row-major buffer; symmetric only when the factors commute.
    pub(crate) fn mul_raw(&self, other: &SymMatrix) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }
}

/// Eigenvalues in descending order with an orthonormal eigenvector per value.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    /// Row-major `n x n`; column `i` is the eigenvector of `values[i]`.
    vectors: Vec<f64>,
    norm_inf: f64,
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn lambda1(&self) -> f64 {
        self.values[0]
    }

    pub fn lambda_min(&self) -> f64 {
        *self.values.last().expect("nonempty spectrum")
    }

    /// Infinity norm of the decomposed matrix; the scale for all tolerances.
    pub fn norm_inf(&self) -> f64 {
        self.norm_inf
    }

    pub fn scale(&self) -> f64 {
        self.norm_inf.max(1.0)
    }

    pub fn vector(&self, i: usize) -> Vec<f64> {
        let n = self.n();
        (0..n).map(|r| self.vectors[r * n + i]).collect()
    }

    #[inline]
    pub fn vector_entry(&self, row: usize, i: usize) -> f64 {
        self.vectors[row * self.n() + i]
    }
}

/// Cyclic Jacobi. Rotations are applied in a fixed order, so equal inputs give
/// bit-identical outputs.
pub fn eigendecompose(m: &SymMatrix) -> Result<Spectrum, EigenError> {
    let n = m.n();
    if n == 0 {
        return Err(EigenError::Empty);
    }
    let mut a = m.data.clone();
    let mut v = SymMatrix::identity(n).data;
    let norm_f = m.norm_frobenius();
    let off_norm = |a: &[f64]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    let mut off = off_norm(&a);
    let mut sweeps = 0;
    while off > DONE_OFF_RATIO * norm_f && sweeps < MAX_SWEEPS {
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        sweeps += 1;
        off = off_norm(&a);
    }
    if off > FAIL_OFF_RATIO * norm_f {
        return Err(EigenError::NoConvergence { off, sweeps });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (col, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[r * n + col] = v[r * n + src];
        }
    }
    Ok(Spectrum { values, vectors, norm_inf: m.norm_inf() })
}

/// Scaling applied to a Perron (or uniform) weight vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Normalization {
    /// Smallest entry equals one.
    #[default]
    #[serde(rename = "min1")]
    MinEntryOne,
    /// Euclidean norm one.
    #[serde(rename = "unit")]
    UnitNorm,
    /// Whatever scale the producer chose; no rescaling.
    #[serde(rename = "raw")]
    Raw,
}

/// Where a weight vector came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightSource {
    /// Positive eigenvector of the largest adjacency eigenvalue.
    Perron,
    /// Constant vector; an eigenvector only for regular graphs.
    Uniform,
}

/// Strictly positive vertex weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    entries: Vec<f64>,
    lambda1: f64,
    normalization: Normalization,
    source: WeightSource,
}

impl WeightVector {
    /// Constant weights over `n` vertices (`1`, or `1/sqrt(n)` under unit norm).
    pub fn uniform(n: usize, lambda1: f64, normalization: Normalization) -> Self {
        let w = WeightVector { entries: vec![1.0; n], lambda1, normalization: Normalization::Raw, source: WeightSource::Uniform };
        w.normalized(normalization)
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn source(&self) -> WeightSource {
        self.source
    }

    /// `||nu||^2`, the weight of the whole vertex set.
    pub fn norm_sq(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum()
    }

    /// Multiplies every entry by `c > 0`; the result is tagged `Raw`.
    pub fn scaled(&self, c: f64) -> Self {
        assert!(c > 0.0, "scale must be positive");
        WeightVector {
            entries: self.entries.iter().map(|x| x * c).collect(),
            normalization: Normalization::Raw,
            ..self.clone()
        }
    }

    pub fn normalized(&self, normalization: Normalization) -> Self {
        let c = match normalization {
            Normalization::Raw => 1.0,
            Normalization::MinEntryOne => 1.0 / self.entries.iter().copied().fold(f64::INFINITY, f64::min),
            Normalization::UnitNorm => 1.0 / self.norm_sq().sqrt(),
        };
        WeightVector {
            entries: self.entries.iter().map(|x| x * c).collect(),
            normalization,
            ..self.clone()
        }
    }
}

/// Positive eigenvector of `lambda1` for a connected graph, scaled per `normalization`.
///
/// `Raw` keeps the solver's unit-length vector (sign fixed to positive).
pub fn perron_vector(g: &Graph, s: &Spectrum, normalization: Normalization) -> Result<WeightVector, EigenError> {
    let n = g.n();
    if n != s.n() {
        return Err(EigenError::OrderMismatch { spectrum: s.n(), graph: n });
    }
    if !is_connected(g) {
        return Err(EigenError::Disconnected);
    }
    if n == 1 {
        return Ok(WeightVector { entries: vec![1.0], lambda1: 0.0, normalization, source: WeightSource::Perron });
    }
    let gap = s.values[0] - s.values[1];
    if gap <= 1e-10 {
        return Err(EigenError::DegenerateTop { gap });
    }
    let mut v = s.vector(0);
    if v.iter().sum::<f64>() < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    if v.iter().any(|&x| x <= 1e-10) {
        return Err(EigenError::SignAmbiguity);
    }
    let raw = WeightVector { entries: v, lambda1: s.lambda1(), normalization: Normalization::Raw, source: WeightSource::Perron };
    Ok(raw.normalized(normalization))
}

/// Distinct eigenvalue with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenGroup {
    pub value: f64,
    pub multiplicity: usize,
}

/// Groups consecutive eigenvalues closer than `tol * max(1, ||A||_inf)`;
/// each group is represented by its mean.
pub fn distinct_eigenvalues(s: &Spectrum, tol: f64) -> Vec<EigenGroup> {
    let eps = tol * s.scale();
    let mut groups: Vec<(f64, usize)> = Vec::new();
    let mut last = f64::NAN;
    for &x in s.values() {
        match groups.last_mut() {
            Some((sum, count)) if last - x <= eps => {
                *sum += x;
                *count += 1;
            }
            _ => groups.push((x, 1)),
        }
        last = x;
    }
    groups.into_iter().map(|(sum, count)| EigenGroup { value: sum / count as f64, multiplicity: count }).collect()
}
