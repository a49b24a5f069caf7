//! The analysis pipeline shared by the command-line driver and the browser
//! demo, and the JSON document it produces.
//!
//! Floating-point numbers are written with 12 significant digits.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::eigen::{
    distinct_eigenvalues, eigendecompose, perron_vector, EigenError, EigenGroup, Normalization, Spectrum, SymMatrix,
    WeightSource, WeightVector, DISTINCT_TOL,
};
use crate::graphio::{encode_graph6, Graph, GraphError};
use crate::interlace::{tightness_certificate, weighted_quotient, InterlaceError, InterlacingReport, Partition};
use crate::oracle::{
    chromatic_number, max_weight_clique, max_weight_distance_k_independent_set, max_weight_independent_set,
    OracleError, OracleResult, MAX_CHROMATIC_N, MAX_ORACLE_N,
};
use crate::polyopt::{best_distance_k_bound, PolyError};
use crate::weights::{
    chromatic_lower_bounds, clique_rayleigh_bound, ratio_bound_independence, BoundReport, Parameter, WeightsError,
    SOUNDNESS_TOL,
};

pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error(transparent)]
    Interlace(#[from] InterlaceError),
    #[error(transparent)]
    Weights(#[from] WeightsError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl Error {
    /// Numerical breakdown as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        let eigen_numeric = |e: &EigenError| {
            matches!(e, EigenError::NoConvergence { .. } | EigenError::SignAmbiguity | EigenError::DegenerateTop { .. })
        };
        match self {
            Error::Eigen(e) => eigen_numeric(e),
            Error::Interlace(InterlaceError::InterlacingViolated(_)) => true,
            Error::Interlace(InterlaceError::Eigen(e)) => eigen_numeric(e),
            Error::Poly(PolyError::LpNumericalFailure(_)) => true,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    Ones,
    #[default]
    Perron,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphInfo {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub graph6: Option<String>,
}

impl GraphInfo {
    pub fn new(name: &str, g: &Graph) -> Self {
        GraphInfo { name: name.to_string(), n: g.n(), m: g.edge_count(), graph6: encode_graph6(g).ok() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumInfo {
    pub eigenvalues: Vec<f64>,
    pub distinct: Vec<EigenGroup>,
    pub lambda1: f64,
    pub lambda_min: f64,
    /// `lambda_1 - lambda_2`; absent for a single vertex.
    pub gap: Option<f64>,
}

impl SpectrumInfo {
    pub fn new(s: &Spectrum) -> Self {
        SpectrumInfo {
            eigenvalues: s.values().to_vec(),
            distinct: distinct_eigenvalues(s, DISTINCT_TOL),
            lambda1: s.lambda1(),
            lambda_min: s.lambda_min(),
            gap: s.values().get(1).map(|l2| s.lambda1() - l2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightsInfo {
    pub mode: WeightMode,
    pub source: WeightSource,
    pub normalization: Normalization,
    pub entries: Vec<f64>,
    pub norm_sq: f64,
}

impl WeightsInfo {
    pub fn new(mode: WeightMode, nu: &WeightVector) -> Self {
        WeightsInfo {
            mode,
            source: nu.source(),
            normalization: nu.normalization(),
            entries: nu.entries().to_vec(),
            norm_sq: nu.norm_sq(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientCertificate {
    pub partition: String,
    /// `S^T A S` with orthonormal `S`.
    pub symmetric_quotient: Vec<Vec<f64>>,
    /// Row-average view, similar to the symmetric quotient.
    pub row_average_quotient: Vec<Vec<f64>>,
    pub quotient_eigenvalues: Vec<f64>,
    pub interlacing: InterlacingReport,
    pub eigen_tight: bool,
    pub is_tight: bool,
    pub residual: f64,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub graph: GraphInfo,
    pub spectrum: Option<SpectrumInfo>,
    pub weights: Option<WeightsInfo>,
    pub bounds: Vec<BoundReport>,
    pub certificates: Vec<QuotientCertificate>,
    pub oracles: Vec<OracleResult>,
}

impl Report {
    pub fn new(graph: GraphInfo) -> Self {
        Report { graph, spectrum: None, weights: None, bounds: vec![], certificates: vec![], oracles: vec![] }
    }

    pub fn soundness_violations(&self) -> usize {
        self.bounds.iter().filter(|b| b.violates(SOUNDNESS_TOL)).count()
    }
}

/// Adjacency matrix and its spectrum.
pub fn decompose(g: &Graph) -> Result<(SymMatrix, Spectrum), Error> {
    let a = SymMatrix::adjacency(g);
    let s = eigendecompose(&a)?;
    Ok((a, s))
}

pub fn weight_vector(
    g: &Graph,
    s: &Spectrum,
    mode: WeightMode,
    normalization: Normalization,
) -> Result<WeightVector, Error> {
    Ok(match mode {
        WeightMode::Perron => perron_vector(g, s, normalization)?,
        WeightMode::Ones => WeightVector::uniform(g.n(), s.lambda1(), normalization),
    })
}

/// Ratio bound, best distance-`k` bound for each `k`, clique bound and the
/// chromatic bounds (fed with the ratio bound).
pub fn compute_bounds(g: &Graph, s: &Spectrum, nu: &WeightVector, ks: &[usize]) -> Result<Vec<BoundReport>, Error> {
    let ratio = ratio_bound_independence(s, nu)?;
    let chromatic = chromatic_lower_bounds(s, nu, ratio.value)?;
    let mut out = vec![ratio];
    for &k in ks {
        out.push(best_distance_k_bound(g, s, nu, k)?);
    }
    out.push(clique_rayleigh_bound(s, nu));
    out.extend(chromatic);
    Ok(out)
}

/// Runs every oracle the graph size permits and attaches exact values to the
/// matching bounds.
pub fn attach_oracles(g: &Graph, nu: &WeightVector, bounds: &mut [BoundReport]) -> Result<Vec<OracleResult>, Error> {
    let mut results = Vec::new();
    if g.n() > MAX_ORACLE_N {
        return Ok(results);
    }
    let alpha = max_weight_independent_set(g, nu)?;
    let clique = max_weight_clique(g, nu)?;
    let chi = if g.n() <= MAX_CHROMATIC_N { Some(chromatic_number(g)?) } else { None };
    for b in bounds.iter_mut() {
        let exact = match b.bounds_what {
            Parameter::WeightIndependence => Some(alpha.exact_value),
            Parameter::DistanceWeightIndependence => {
                let k = b.inputs.k.unwrap_or(1);
                let r = max_weight_distance_k_independent_set(g, nu, k)?;
                let v = r.exact_value;
                if !results.iter().any(|x: &OracleResult| x.parameter == r.parameter) {
                    results.push(r);
                }
                Some(v)
            }
            Parameter::WeightClique => Some(clique.kappa.exact_value),
            Parameter::Chromatic => chi.as_ref().map(|c| c.exact_value),
        };
        if let Some(v) = exact {
            *b = b.clone().with_oracle(v);
        }
    }
    results.insert(0, alpha);
    results.push(clique.omega);
    results.push(clique.kappa);
    results.extend(chi);
    Ok(results)
}

pub fn quotient_certificate(
    a: &SymMatrix,
    s: &Spectrum,
    partition: &Partition,
    nu: &WeightVector,
    rel_tol: f64,
) -> Result<QuotientCertificate, Error> {
    let mut q = weighted_quotient(a, s, partition, nu)?;
    q.certificate = tightness_certificate(a, &q, rel_tol);
    let m = q.order();
    Ok(QuotientCertificate {
        partition: partition.to_string(),
        symmetric_quotient: (0..m).map(|i| q.b.row(i).to_vec()).collect(),
        row_average_quotient: q.row_average(),
        quotient_eigenvalues: q.mu.clone(),
        interlacing: q.report.clone(),
        eigen_tight: q.certificate.eigen_tight,
        is_tight: q.certificate.is_tight,
        residual: q.certificate.residual,
        tol: q.certificate.tol,
    })
}

/// Rounds to `SIGNIFICANT_DIGITS` significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            if let Some(x) = num.as_f64().and_then(|x| serde_json::Number::from_f64(round_sig(x))) {
                *num = x;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Serializes any value with every float rounded to 12 significant digits.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("report types serialize");
    round_floats(&mut v);
    serde_json::to_string_pretty(&v).expect("json values serialize")
}

pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
    serde_json::from_str(text)
}
