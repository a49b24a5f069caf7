//! Polynomials for the distance-k ratio bound: the shifted Chebyshev
//! candidate and the LP-optimal alternating polynomial on the eigenvalue mesh.

use thiserror::Error;

use crate::eigen::{distinct_eigenvalues, Spectrum, SymMatrix, WeightVector, DISTINCT_TOL};
use crate::graphio::Graph;
use crate::weights::{polynomial_ratio_bound, BoundReport, WeightsError};

/// Feasibility slack accepted on `|P(theta_i)| <= 1`.
pub const FEASIBILITY_TOL: f64 = 1e-9;
const PIVOT_EPS: f64 = 1e-12;
const MAX_PIVOTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("mesh must be nonempty and lie strictly below the target")]
    BadMesh,
    #[error("mesh has a single point; the Chebyshev map is undefined")]
    DegenerateMesh,
    #[error("LP objective is unbounded: {mesh} mesh points cannot pin down degree {degree}")]
    UnboundedObjective { mesh: usize, degree: usize },
    #[error("simplex failed: {0}")]
    LpNumericalFailure(String),
    #[error(transparent)]
    Weights(#[from] WeightsError),
}

/// Real polynomial `c_0 + c_1 x + ... + c_k x^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs at least one coefficient");
        Polynomial { coeffs }
    }

    pub fn identity() -> Self {
        Polynomial::new(vec![0.0, 1.0])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Index of the highest nonzero coefficient (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0.0).unwrap_or(0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `P(A)` by Horner's scheme on matrices, symmetrized at every step.
    pub fn matrix_apply(&self, a: &SymMatrix) -> SymMatrix {
        let n = a.n();
        let mut acc = SymMatrix::zeros(n);
        for &c in self.coeffs.iter().rev() {
            let mut next = acc.mul_raw(a);
            for i in 0..n {
                next[i * n + i] += c;
            }
            acc = SymMatrix::from_raw_symmetrized(n, next);
        }
        acc
    }

    fn mul_linear(&self, c0: f64, c1: f64) -> Polynomial {
        let mut out = vec![0.0; self.coeffs.len() + 1];
        for (j, &c) in self.coeffs.iter().enumerate() {
            out[j] += c * c0;
            out[j + 1] += c * c1;
        }
        Polynomial { coeffs: out }
    }
}

/// Maximize `P(target)` subject to `|P(x)| <= 1` on every mesh point, over
/// polynomials of degree at most `degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimaxProblem {
    mesh: Vec<f64>,
    target: f64,
    degree: usize,
}

impl MinimaxProblem {
    pub fn new(mut mesh: Vec<f64>, target: f64, degree: usize) -> Result<Self, PolyError> {
        mesh.sort_by(|a, b| b.total_cmp(a));
        if mesh.is_empty() || !(target > mesh[0]) {
            return Err(PolyError::BadMesh);
        }
        Ok(MinimaxProblem { mesh, target, degree })
    }

    /// Distinct eigenvalues other than `lambda_1` as the mesh, `lambda_1` as the target.
    pub fn from_spectrum(s: &Spectrum, degree: usize) -> Result<Self, PolyError> {
        let groups = distinct_eigenvalues(s, DISTINCT_TOL);
        let mesh = groups.iter().skip(1).map(|g| g.value).collect();
        MinimaxProblem::new(mesh, groups[0].value, degree)
    }

    pub fn mesh(&self) -> &[f64] {
        &self.mesh
    }

    pub fn target(&self) -> f64 {
        self.target
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_feasible(&self, p: &Polynomial) -> bool {
        self.mesh.iter().all(|&x| p.eval(x).abs() <= 1.0 + FEASIBILITY_TOL)
    }
}

/// `T_k` mapped affinely from `[min mesh, max mesh]` onto `[-1, 1]`.
pub fn chebyshev_candidate(prob: &MinimaxProblem) -> Result<Polynomial, PolyError> {
    let (hi, lo) = (prob.mesh[0], *prob.mesh.last().unwrap());
    if prob.degree == 0 {
        return Ok(Polynomial::new(vec![1.0]));
    }
    if prob.mesh.len() < 2 {
        return Err(PolyError::DegenerateMesh);
    }
    // T_k in y by the three-term recurrence.
    let mut prev = vec![1.0];
    let mut cur = vec![0.0, 1.0];
    for _ in 1..prob.degree {
        let mut next = vec![0.0; cur.len() + 1];
        for (j, &c) in cur.iter().enumerate() {
            next[j + 1] += 2.0 * c;
        }
        for (j, &c) in prev.iter().enumerate() {
            next[j] -= c;
        }
        prev = cur;
        cur = next;
    }
    // Substitute y = (2x - (lo + hi)) / (hi - lo) via Horner on polynomials.
    let slope = 2.0 / (hi - lo);
    let shift = -(lo + hi) / (hi - lo);
    let mut acc = Polynomial::new(vec![0.0]);
    for &c in cur.iter().rev() {
        acc = acc.mul_linear(shift, slope);
        acc.coeffs[0] += c;
    }
    acc.coeffs.truncate(prob.degree + 1);
    Ok(acc)
}

/// `prod (x - theta_i)` over the mesh: the direction along which the LP is
/// unbounded when the mesh has at most `degree` points.
pub fn mesh_annihilator(prob: &MinimaxProblem) -> Polynomial {
    prob.mesh.iter().fold(Polynomial::new(vec![1.0]), |p, &theta| p.mul_linear(-theta, 1.0))
}

pub(crate) enum LpOutcome {
    Optimal { x: Vec<f64> },
    Unbounded,
}

/// Dense tableau simplex for `max c^T x  s.t.  A x <= b, x >= 0` with `b >= 0`,
/// started from the slack basis. Bland's rule for both entering and leaving
/// variables.
pub(crate) fn simplex_max(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<LpOutcome, PolyError> {
    let (rows, vars) = (a.len(), c.len());
    let width = vars + rows + 1;
    let mut t = vec![vec![0.0; width]; rows + 1];
    for i in 0..rows {
        if b[i] < 0.0 {
            return Err(PolyError::LpNumericalFailure("negative right-hand side".into()));
        }
        t[i][..vars].copy_from_slice(&a[i]);
        t[i][vars + i] = 1.0;
        t[i][width - 1] = b[i];
    }
    // Objective row holds reduced costs as -c; optimal when all >= 0.
    for j in 0..vars {
        t[rows][j] = -c[j];
    }
    let mut basis: Vec<usize> = (vars..vars + rows).collect();

    for _ in 0..MAX_PIVOTS {
        let Some(enter) = (0..width - 1).find(|&j| t[rows][j] < -PIVOT_EPS) else {
            let mut x = vec![0.0; vars];
            for (i, &bv) in basis.iter().enumerate() {
                if bv < vars {
                    x[bv] = t[i][width - 1];
                }
            }
            return Ok(LpOutcome::Optimal { x });
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..rows {
            let coef = t[i][enter];
            if coef > PIVOT_EPS {
                let ratio = t[i][width - 1] / coef;
                leave = match leave {
                    Some((li, lr)) if ratio > lr + PIVOT_EPS => Some((li, lr)),
                    Some((li, lr)) if (ratio - lr).abs() <= PIVOT_EPS && basis[li] < basis[i] => Some((li, lr)),
                    _ => Some((i, ratio)),
                };
            }
        }
        let Some((pr, _)) = leave else {
            return Ok(LpOutcome::Unbounded);
        };
        let pivot = t[pr][enter];
        t[pr].iter_mut().for_each(|x| *x /= pivot);
        let prow = t[pr].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != pr {
                let f = row[enter];
                if f != 0.0 {
                    row.iter_mut().zip(&prow).for_each(|(x, p)| *x -= f * p);
                }
            }
        }
        basis[pr] = enter;
    }
    Err(PolyError::LpNumericalFailure(format!("no optimum after {MAX_PIVOTS} pivots")))
}

/// Degree-`k` polynomial maximizing `P(lambda_1)` under `|P| <= 1` on the mesh,
/// solved as an LP over coefficients split into nonnegative pairs. The
/// abscissae are scaled by `max |x|` to keep the monomial columns balanced.
pub fn optimal_alternating_polynomial(prob: &MinimaxProblem) -> Result<Polynomial, PolyError> {
    let k = prob.degree;
    let d = prob.mesh.len();
    if d < k + 1 {
        return Err(PolyError::UnboundedObjective { mesh: d, degree: k });
    }
    let sigma = prob.mesh.iter().fold(prob.target.abs(), |m, x| m.max(x.abs())).max(1.0);
    let powers = |x: f64| -> Vec<f64> { (0..=k).map(|j| (x / sigma).powi(j as i32)).collect() };
    let split = |p: Vec<f64>| -> Vec<f64> { p.iter().copied().chain(p.iter().map(|x| -x)).collect() };
    let c = split(powers(prob.target));
    let mut rows = Vec::with_capacity(2 * d);
    for &x in &prob.mesh {
        let p = powers(x);
        rows.push(split(p.clone()));
        rows.push(split(p.into_iter().map(|v| -v).collect()));
    }
    let b = vec![1.0; rows.len()];
    match simplex_max(&c, &rows, &b)? {
        LpOutcome::Unbounded => Err(PolyError::UnboundedObjective { mesh: d, degree: k }),
        LpOutcome::Optimal { x } => {
            let mut scale = 1.0;
            let coeffs: Vec<f64> = (0..=k)
                .map(|j| {
                    let cj = (x[j] - x[j + k + 1]) / scale;
                    scale *= sigma;
                    cj
                })
                .collect();
            let p = Polynomial::new(coeffs);
            if !prob.is_feasible(&p) {
                return Err(PolyError::LpNumericalFailure("solution violates mesh constraints".into()));
            }
            Ok(p)
        }
    }
}

/// Smallest valid polynomial ratio bound among the candidate polynomials.
/// The report's `inputs.candidate` names the winner.
pub fn best_distance_k_bound(g: &Graph, s: &Spectrum, nu: &WeightVector, k: usize) -> Result<BoundReport, PolyError> {
    assert!(k >= 1, "distance parameter must be at least 1");
    if g.edge_count() == 0 {
        return Ok(polynomial_ratio_bound(g, s, nu, &Polynomial::identity(), k)?);
    }
    let prob = MinimaxProblem::from_spectrum(s, k)?;
    let mut candidates: Vec<(&str, Polynomial)> = Vec::new();
    match optimal_alternating_polynomial(&prob) {
        Ok(p) => candidates.push(("lp-optimal", p)),
        Err(PolyError::UnboundedObjective { .. }) => candidates.push(("mesh-annihilator", mesh_annihilator(&prob))),
        Err(PolyError::LpNumericalFailure(_)) => {}
        Err(e) => return Err(e),
    }
    if let Ok(p) = chebyshev_candidate(&prob) {
        candidates.push(("chebyshev", p));
    }
    let mut best: Option<BoundReport> = None;
    let mut last_err = None;
    for (name, p) in candidates {
        match polynomial_ratio_bound(g, s, nu, &p, k) {
            Ok(mut r) => {
                r.inputs.candidate = Some(name.to_string());
                if best.as_ref().is_none_or(|b| r.value < b.value) {
                    best = Some(r);
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    match best {
        Some(r) => Ok(r),
        None => Err(last_err
            .map(PolyError::from)
            .unwrap_or(PolyError::Weights(WeightsError::VacuousBound { at_lambda1: f64::NAN, min_other: f64::NAN }))),
    }
}
