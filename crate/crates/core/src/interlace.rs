//! Cauchy and quotient-matrix interlacing, weighted quotient matrices of
//! vertex partitions, and tight-interlacing certificates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eigen::{eigendecompose, EigenError, Spectrum, SymMatrix, WeightVector};

/// Relative tolerance for interlacing and tightness checks.
pub const INTERLACE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InterlaceError {
    #[error("values are not sorted in descending order")]
    NotSorted,
    #[error("cannot interlace {small} values into {big}")]
    SizeMismatch { big: usize, small: usize },
    #[error("empty subset")]
    EmptySubset,
    #[error("index {index} out of range for order {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("index {0} repeated in subset")]
    DuplicateIndex(usize),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("weights must be strictly positive and match the matrix order")]
    BadWeights,
    #[error("quotient eigenvalues violate interlacing (numerical breakdown): {0:?}")]
    InterlacingViolated(InterlacingReport),
    #[error(transparent)]
    Eigen(#[from] EigenError),
}

/// Ordered, disjoint, nonempty vertex classes covering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<Self, InterlaceError> {
        let bad = |s: String| Err(InterlaceError::BadPartition(s));
        let mut seen = vec![false; n];
        for (i, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return bad(format!("class {i} is empty"));
            }
            for &v in part {
                if v >= n {
                    return bad(format!("vertex {v} out of range for n = {n}"));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return bad(format!("vertex {v} appears twice"));
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return bad(format!("vertex {v} is not covered"));
        }
        Ok(Partition { parts })
    }

    /// Parses classes separated by `;`, vertices within a class by `,`,
    /// e.g. `0;1,4,5;2,3,6,7,8,9`.
    pub fn parse(text: &str, n: usize) -> Result<Self, InterlaceError> {
        let mut parts = Vec::new();
        for class in text.trim().split(';') {
            let mut part = Vec::new();
            for tok in class.split(',') {
                let tok = tok.trim();
                let v = tok
                    .parse::<usize>()
                    .map_err(|_| InterlaceError::BadPartition(format!("cannot parse vertex {tok:?}")))?;
                part.push(v);
            }
            parts.push(part);
        }
        Partition::new(n, parts)
    }

    pub fn single(n: usize) -> Self {
        Partition { parts: vec![(0..n).collect()] }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn order(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let classes: Vec<String> =
            self.parts.iter().map(|p| p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")).collect();
        f.write_str(&classes.join(";"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterlacingReport {
    pub holds: bool,
    /// `(lambda_i - mu_i, mu_i - lambda_{n-m+i})` for `i = 1..m`.
    pub per_index_slack: Vec<(f64, f64)>,
    /// Largest `k` with `mu_i = lambda_i` for all `i <= k`.
    pub tight_upper: usize,
    /// Largest `l` with `mu_{m-i+1} = lambda_{n-i+1}` for all `i <= l`.
    pub tight_lower: usize,
    /// Absolute tolerance used.
    pub tol: f64,
}

impl InterlacingReport {
    /// Tight interlacing: the upper and lower equality runs cover all of `mu`.
    pub fn is_tight(&self) -> bool {
        self.tight_upper + self.tight_lower >= self.per_index_slack.len()
    }
}

fn is_descending(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

/// Checks `lambda_i >= mu_i >= lambda_{n-m+i}` with absolute tolerance
/// `rel_tol * max(1, max |lambda|)`.
pub fn check_interlacing(big: &[f64], small: &[f64], rel_tol: f64) -> Result<InterlacingReport, InterlaceError> {
    let (n, m) = (big.len(), small.len());
    if m > n {
        return Err(InterlaceError::SizeMismatch { big: n, small: m });
    }
    if !is_descending(big) || !is_descending(small) {
        return Err(InterlaceError::NotSorted);
    }
    let tol = rel_tol * big.iter().fold(1.0f64, |a, x| a.max(x.abs()));
    let per_index_slack: Vec<(f64, f64)> = (0..m).map(|i| (big[i] - small[i], small[i] - big[n - m + i])).collect();
    let holds = per_index_slack.iter().all(|&(a, b)| a >= -tol && b >= -tol);
    let tight_upper = (0..m).take_while(|&i| (small[i] - big[i]).abs() <= tol).count();
    let tight_lower = (0..m).take_while(|&i| (small[m - 1 - i] - big[n - 1 - i]).abs() <= tol).count();
    Ok(InterlacingReport { holds, per_index_slack, tight_upper, tight_lower, tol })
}

/// Restriction of `m` to the rows and columns in `subset`, in the given order.
pub fn principal_submatrix(m: &SymMatrix, subset: &[usize]) -> Result<SymMatrix, InterlaceError> {
    if subset.is_empty() {
        return Err(InterlaceError::EmptySubset);
    }
    let mut seen = vec![false; m.n()];
    for &i in subset {
        if i >= m.n() {
            return Err(InterlaceError::IndexOutOfRange { index: i, n: m.n() });
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(InterlaceError::DuplicateIndex(i));
        }
    }
    let k = subset.len();
    let data = subset.iter().flat_map(|&i| subset.iter().map(move |&j| m.get(i, j))).collect();
    Ok(SymMatrix::from_raw_symmetrized(k, data))
}

/// Outcome of the two-sided tightness test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TightnessCertificate {
    /// Eigenvalue equalities hold AND the invariant-subspace residual confirms them.
    pub is_tight: bool,
    /// Eigenvalue equalities alone.
    pub eigen_tight: bool,
    /// `||AS - SB||_max`.
    pub residual: f64,
    pub tol: f64,
}

/// Quotient `B = S^T A S` of a partition, with `S` built from weighted,
/// normalized characteristic vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientResult {
    pub b: SymMatrix,
    /// Row-major `n x m`, orthonormal columns.
    pub s: Vec<f64>,
    /// `||rho_{V_i}||` for each class.
    pub class_norms: Vec<f64>,
    /// Eigenvalues of `B`, descending.
    pub mu: Vec<f64>,
    pub report: InterlacingReport,
    pub certificate: TightnessCertificate,
}

impl QuotientResult {
    pub fn order(&self) -> usize {
        self.b.n()
    }

    pub fn tight(&self) -> bool {
        self.certificate.is_tight
    }

    pub fn residual(&self) -> f64 {
        self.certificate.residual
    }

    /// `D^{-1} B D` with `D = diag(||rho_i||)`: entry `(i, j)` is
    /// `rho_i^T A rho_j / ||rho_i||^2`. With unit weights this is the familiar
    /// row-sum average `(1/|V_i|) sum a_uv`.
    pub fn row_average(&self) -> Vec<Vec<f64>> {
        let m = self.order();
        (0..m)
            .map(|i| (0..m).map(|j| self.b.get(i, j) * self.class_norms[j] / self.class_norms[i]).collect())
            .collect()
    }
}

pub fn weighted_quotient(
    a: &SymMatrix,
    spectrum: &Spectrum,
    partition: &Partition,
    nu: &WeightVector,
) -> Result<QuotientResult, InterlaceError> {
    let n = a.n();
    if partition.order() != n || spectrum.n() != n {
        return Err(InterlaceError::BadPartition(format!(
            "partition covers {} vertices, matrix has order {n}",
            partition.order()
        )));
    }
    if nu.len() != n || nu.entries().iter().any(|&x| !(x > 0.0)) {
        return Err(InterlaceError::BadWeights);
    }
    let m = partition.len();
    let w = nu.entries();
    let mut s = vec![0.0; n * m];
    let mut class_norms = Vec::with_capacity(m);
    for (j, part) in partition.parts().iter().enumerate() {
        let norm = part.iter().map(|&u| w[u] * w[u]).sum::<f64>().sqrt();
        for &u in part {
            s[u * m + j] = w[u] / norm;
        }
        class_norms.push(norm);
    }
    // AS, then B = S^T (AS)
    let mut as_ = vec![0.0; n * m];
    for u in 0..n {
        for v in 0..n {
            let auv = a.get(u, v);
            if auv == 0.0 {
                continue;
            }
            for j in 0..m {
                as_[u * m + j] += auv * s[v * m + j];
            }
        }
    }
    let mut bdata = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            bdata[i * m + j] = (0..n).map(|u| s[u * m + i] * as_[u * m + j]).sum();
        }
    }
    let b = SymMatrix::from_raw_symmetrized(m, bdata);
    let mu = eigendecompose(&b)?.values().to_vec();
    let report = check_interlacing(spectrum.values(), &mu, INTERLACE_TOL)?;
    if !report.holds {
        return Err(InterlaceError::InterlacingViolated(report));
    }
    let mut q = QuotientResult {
        b,
        s,
        class_norms,
        mu,
        report,
        certificate: TightnessCertificate { is_tight: false, eigen_tight: false, residual: f64::NAN, tol: 0.0 },
    };
    q.certificate = tightness_certificate(a, &q, INTERLACE_TOL);
    Ok(q)
}

/// Unweighted quotient (`nu = 1`).
pub fn standard_quotient(a: &SymMatrix, spectrum: &Spectrum, partition: &Partition) -> Result<QuotientResult, InterlaceError> {
    let ones = WeightVector::uniform(a.n(), spectrum.lambda1(), crate::eigen::Normalization::MinEntryOne);
    weighted_quotient(a, spectrum, partition, &ones)
}

/// `||AS - SB||_max`; zero exactly when the column span of `S` is `A`-invariant.
pub fn invariant_residual(a: &SymMatrix, q: &QuotientResult) -> f64 {
    let n = a.n();
    let m = q.order();
    let mut worst = 0.0f64;
    for u in 0..n {
        for j in 0..m {
            let as_uj: f64 = (0..n).map(|v| a.get(u, v) * q.s[v * m + j]).sum();
            let sb_uj: f64 = (0..m).map(|k| q.s[u * m + k] * q.b.get(k, j)).sum();
            worst = worst.max((as_uj - sb_uj).abs());
        }
    }
    worst
}

/// Detects tight interlacing from the eigenvalues, then confirms it
/// structurally through the `AS = SB` residual.
pub fn tightness_certificate(a: &SymMatrix, q: &QuotientResult, rel_tol: f64) -> TightnessCertificate {
    let tol = rel_tol * a.norm_inf().max(1.0);
    let residual = invariant_residual(a, q);
    let eigen_tight = q.report.is_tight();
    TightnessCertificate { is_tight: eigen_tight && residual <= tol, eigen_tight, residual, tol }
}
