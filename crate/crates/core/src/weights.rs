//! Vertex-set weights from a positive weight vector, and the spectral bounds
//! on weight parameters: ratio bound, polynomial (distance-k) ratio bound,
//! Rayleigh clique bound and the chromatic corollaries.
//!
//! For a Perron weight vector `nu` the expansion coefficient of the
//! normalized characteristic vector `rho_U / ||rho_U||` along the top
//! eigenvector satisfies `a_1^2 = w(U) / ||nu||^2`. For any other positive
//! `nu` only `a_1^2 >= theta * w(U)` holds, with
//! `theta = min_u (phi_u / nu_u)^2` and `phi` the unit Perron vector; the
//! bounds below are written in terms of `theta`, which equals `1/||nu||^2`
//! in the Perron case.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eigen::{Spectrum, WeightSource, WeightVector};
use crate::graphio::Graph;
use crate::polyopt::Polynomial;

/// Relative slack allowed when comparing a bound with an exact value.
pub const SOUNDNESS_TOL: f64 = 1e-9;
/// `|slack|` at or below this marks a bound as tight.
pub const TIGHT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeightsError {
    #[error("vertex {index} out of range for {n} weights")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("polynomial of degree {degree} exceeds distance parameter k = {k}")]
    DegreeTooHigh { degree: usize, k: usize },
    #[error("vacuous bound: P(lambda_1) = {at_lambda1} does not exceed min P(lambda_i) = {min_other}")]
    VacuousBound { at_lambda1: f64, min_other: f64 },
    #[error("bound input must be positive, got {0}")]
    NonpositiveInput(f64),
    #[error("top eigenvector is not strictly positive (disconnected graph?)")]
    NotConnected,
    #[error("weights, spectrum and graph disagree on the vertex count")]
    OrderMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parameter {
    /// Largest `w(U)` over independent sets.
    WeightIndependence,
    /// Largest `w(U)` over sets with pairwise distance greater than `k`.
    DistanceWeightIndependence,
    /// Largest `sigma(U)^2 / w(U)` over cliques.
    WeightClique,
    /// Chromatic number.
    Chromatic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Upper,
    Lower,
}

/// Quantities a bound was computed from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct InputsDigest {
    pub lambda1: f64,
    pub lambda_min: f64,
    pub norm_sq: f64,
    /// `min_u (phi_u/nu_u)^2`; equals `1/||nu||^2` for Perron weights.
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    /// Coefficients `c_0..c_k` of the polynomial used.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub polynomial: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub candidate: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound_name: String,
    pub value: f64,
    pub bounds_what: Parameter,
    pub direction: Direction,
    pub inputs: InputsDigest,
    pub oracle_value: Option<f64>,
    /// `value - oracle` for upper bounds, `oracle - value` for lower bounds.
    pub slack: Option<f64>,
    pub tight: Option<bool>,
}

impl BoundReport {
    fn new(name: &str, value: f64, what: Parameter, direction: Direction, inputs: InputsDigest) -> Self {
        BoundReport {
            bound_name: name.to_string(),
            value,
            bounds_what: what,
            direction,
            inputs,
            oracle_value: None,
            slack: None,
            tight: None,
        }
    }

    pub fn with_oracle(mut self, exact: f64) -> Self {
        let slack = match self.direction {
            Direction::Upper => self.value - exact,
            Direction::Lower => exact - self.value,
        };
        self.oracle_value = Some(exact);
        self.slack = Some(slack);
        self.tight = Some(slack.abs() <= TIGHT_TOL);
        self
    }

    /// True when an attached exact value lies on the wrong side of the bound
    /// by more than `rel_tol * max(1, |value|)`.
    pub fn violates(&self, rel_tol: f64) -> bool {
        match self.slack {
            Some(slack) => slack < -rel_tol * self.value.abs().max(1.0),
            None => false,
        }
    }

    /// Floor of an upper bound or ceiling of a lower bound, with a small
    /// guard against values a rounding error away from an integer.
    pub fn rounded(&self) -> i64 {
        let guard = 1e-9 * self.value.abs().max(1.0);
        match self.direction {
            Direction::Upper => (self.value + guard).floor() as i64,
            Direction::Lower => (self.value - guard).ceil() as i64,
        }
    }
}

/// `w(U) = sum of nu_u^2 over U`.
pub fn set_weight(nu: &WeightVector, set: &[usize]) -> Result<f64, WeightsError> {
    let w = nu.entries();
    set.iter()
        .map(|&u| w.get(u).map(|x| x * x).ok_or(WeightsError::IndexOutOfRange { index: u, n: w.len() }))
        .sum()
}

/// `sigma(U) = sum of nu_u over U`.
pub fn set_sum(nu: &WeightVector, set: &[usize]) -> f64 {
    set.iter().map(|&u| nu.entries()[u]).sum()
}

/// Lower bound factor `theta` with `a_1^2 >= theta * w(U)` for every vertex set.
pub fn top_alignment(s: &Spectrum, nu: &WeightVector) -> Result<f64, WeightsError> {
    if s.n() != nu.len() {
        return Err(WeightsError::OrderMismatch);
    }
    if nu.source() == WeightSource::Perron {
        return Ok(1.0 / nu.norm_sq());
    }
    let mut phi = s.vector(0);
    if phi.iter().sum::<f64>() < 0.0 {
        phi.iter_mut().for_each(|x| *x = -*x);
    }
    if phi.iter().any(|&x| x <= 1e-10) {
        return Err(WeightsError::NotConnected);
    }
    let r = phi.iter().zip(nu.entries()).map(|(p, w)| p / w).fold(f64::INFINITY, f64::min);
    Ok(r * r)
}

fn has_edges(s: &Spectrum) -> bool {
    s.lambda_min() < -1e-9 * s.scale()
}

fn digest(s: &Spectrum, nu: &WeightVector, theta: Option<f64>) -> InputsDigest {
    InputsDigest {
        lambda1: s.lambda1(),
        lambda_min: s.lambda_min(),
        norm_sq: nu.norm_sq(),
        theta,
        ..Default::default()
    }
}

/// Weighted ratio bound `alpha* <= ||nu||^2 (-lambda_n) / (lambda_1 - lambda_n)`.
///
/// For an independent `U`, `s = rho_U/||rho_U||` has `s^T A s = 0`; expanding
/// `s` in the eigenbasis gives `0 >= a_1^2 lambda_1 + (1 - a_1^2) lambda_n`.
/// An edgeless graph reports the exact value `||nu||^2`.
pub fn ratio_bound_independence(s: &Spectrum, nu: &WeightVector) -> Result<BoundReport, WeightsError> {
    if !has_edges(s) {
        return Ok(BoundReport::new(
            "ratio (edgeless, exact)",
            nu.norm_sq(),
            Parameter::WeightIndependence,
            Direction::Upper,
            digest(s, nu, None),
        ));
    }
    let theta = top_alignment(s, nu)?;
    let (l1, ln) = (s.lambda1(), s.lambda_min());
    let value = -ln / ((l1 - ln) * theta);
    Ok(BoundReport::new("ratio", value, Parameter::WeightIndependence, Direction::Upper, digest(s, nu, Some(theta))))
}

/// Polynomial ratio bound on the distance-`k` weight independence number:
/// `||nu||^2 (M - m) / (P(lambda_1) - m)` with `M = max_u P(A)_uu` and
/// `m = min_{i>=2} P(lambda_i)`.
///
/// For a set at pairwise distance `> k` the off-diagonal entries of `P(A)`
/// inside the set vanish (`deg P <= k`), so `s^T P(A) s <= M`.
pub fn polynomial_ratio_bound(
    g: &Graph,
    s: &Spectrum,
    nu: &WeightVector,
    p: &Polynomial,
    k: usize,
) -> Result<BoundReport, WeightsError> {
    if g.n() != s.n() || nu.len() != s.n() {
        return Err(WeightsError::OrderMismatch);
    }
    if p.degree() > k {
        return Err(WeightsError::DegreeTooHigh { degree: p.degree(), k });
    }
    let mut inputs = digest(s, nu, None);
    inputs.k = Some(k);
    inputs.polynomial = Some(p.coeffs().to_vec());
    if g.edge_count() == 0 {
        return Ok(BoundReport::new(
            "polynomial ratio (edgeless, exact)",
            nu.norm_sq(),
            Parameter::DistanceWeightIndependence,
            Direction::Upper,
            inputs,
        ));
    }
    let theta = top_alignment(s, nu)?;
    inputs.theta = Some(theta);
    let pa = p.matrix_apply(&crate::eigen::SymMatrix::adjacency(g));
    let max_diag = pa.diagonal().into_iter().fold(f64::NEG_INFINITY, f64::max);
    let min_other = s.values()[1..].iter().map(|&x| p.eval(x)).fold(f64::INFINITY, f64::min);
    let at_lambda1 = p.eval(s.lambda1());
    let spread = at_lambda1.abs().max(min_other.abs()).max(1.0);
    if at_lambda1 - min_other <= 1e-12 * spread {
        return Err(WeightsError::VacuousBound { at_lambda1, min_other });
    }
    let value = (max_diag - min_other) / (at_lambda1 - min_other) / theta;
    Ok(BoundReport::new("polynomial ratio", value, Parameter::DistanceWeightIndependence, Direction::Upper, inputs))
}

/// `kappa* <= 1 + lambda_1`: for a clique `U`, `s^T A s = (sigma^2 - w)/w <= lambda_1`.
pub fn clique_rayleigh_bound(s: &Spectrum, nu: &WeightVector) -> BoundReport {
    BoundReport::new(
        "clique rayleigh",
        1.0 + s.lambda1(),
        Parameter::WeightClique,
        Direction::Upper,
        digest(s, nu, None),
    )
}

/// Two chromatic lower bounds: the weight-partition bound
/// `chi >= ||nu||^2 / alpha_star_upper` (color classes partition `V`) and
/// `chi >= 1 + lambda_1 / (-lambda_n)`.
pub fn chromatic_lower_bounds(
    s: &Spectrum,
    nu: &WeightVector,
    alpha_star_upper: f64,
) -> Result<Vec<BoundReport>, WeightsError> {
    if !(alpha_star_upper > 0.0) {
        return Err(WeightsError::NonpositiveInput(alpha_star_upper));
    }
    let partition = BoundReport::new(
        "chromatic weight-partition",
        nu.norm_sq() / alpha_star_upper,
        Parameter::Chromatic,
        Direction::Lower,
        digest(s, nu, None),
    );
    let hoffman_value = if has_edges(s) { 1.0 + s.lambda1() / -s.lambda_min() } else { 1.0 };
    let hoffman =
        BoundReport::new("chromatic ratio", hoffman_value, Parameter::Chromatic, Direction::Lower, digest(s, nu, None));
    Ok(vec![partition, hoffman])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{eigendecompose, perron_vector, Normalization, SymMatrix};
    use crate::graphio::{generate, Family};

    fn setup(f: Family) -> (Graph, Spectrum, WeightVector) {
        let g = generate(f).unwrap();
        let s = eigendecompose(&SymMatrix::adjacency(&g)).unwrap();
        let nu = perron_vector(&g, &s, Normalization::MinEntryOne).unwrap();
        (g, s, nu)
    }

    #[test]
    fn set_weights() {
        let (_, _, nu) = setup(Family::Petersen);
        assert!((set_weight(&nu, &[0, 2, 6, 8]).unwrap() - 4.0).abs() < 1e-10);
        let (_, _, nu) = setup(Family::Star(3));
        assert!((set_weight(&nu, &[1, 2, 3]).unwrap() - 3.0).abs() < 1e-10);
        assert!((set_weight(&nu, &[0]).unwrap() - 3.0).abs() < 1e-10);
        assert_eq!(set_weight(&nu, &[]).unwrap(), 0.0);
        assert!((set_weight(&nu, &[0, 1, 2, 3]).unwrap() - nu.norm_sq()).abs() < 1e-12);
        assert_eq!(set_weight(&nu, &[4]), Err(WeightsError::IndexOutOfRange { index: 4, n: 4 }));
    }

    #[test]
    fn ratio_examples() {
        let (_, s, nu) = setup(Family::Petersen);
        assert!((ratio_bound_independence(&s, &nu).unwrap().value - 4.0).abs() < 1e-9);
        let (_, s, nu) = setup(Family::Cycle(5));
        assert!((ratio_bound_independence(&s, &nu).unwrap().value - 5f64.sqrt()).abs() < 1e-9);
        let (_, s, nu) = setup(Family::Star(3));
        let r = ratio_bound_independence(&s, &nu).unwrap().with_oracle(3.0);
        assert!((r.value - 3.0).abs() < 1e-9);
        assert_eq!(r.tight, Some(true));
    }

    #[test]
    fn uniform_weights_on_irregular_graph_stay_sound() {
        // With nu = 1 the star has alpha = 3 while n(-l_n)/(l_1-l_n) = 2.
        let (g, s, _) = setup(Family::Star(3));
        let ones = WeightVector::uniform(g.n(), s.lambda1(), Normalization::MinEntryOne);
        let r = ratio_bound_independence(&s, &ones).unwrap();
        assert!(r.value >= 3.0 - 1e-9, "{}", r.value);
    }

    #[test]
    fn edgeless_is_exact() {
        let g = Graph::empty(3);
        let s = eigendecompose(&SymMatrix::adjacency(&g)).unwrap();
        let ones = WeightVector::uniform(3, 0.0, Normalization::MinEntryOne);
        let r = ratio_bound_independence(&s, &ones).unwrap();
        assert_eq!(r.value, 3.0);
        let p = Polynomial::new(vec![0.0, 1.0]);
        assert_eq!(polynomial_ratio_bound(&g, &s, &ones, &p, 1).unwrap().value, 3.0);
        let chi = chromatic_lower_bounds(&s, &ones, 3.0).unwrap();
        assert_eq!((chi[0].value, chi[1].value), (1.0, 1.0));
    }

    #[test]
    fn identity_polynomial_reduces_to_ratio() {
        for f in [Family::Petersen, Family::Cycle(5), Family::Star(3), Family::Path(5)] {
            let (g, s, nu) = setup(f);
            let a = ratio_bound_independence(&s, &nu).unwrap().value;
            let b = polynomial_ratio_bound(&g, &s, &nu, &Polynomial::new(vec![0.0, 1.0]), 1).unwrap().value;
            assert!((a - b).abs() <= 1e-12 * a.max(1.0));
        }
    }

    #[test]
    fn polynomial_errors() {
        let (g, s, nu) = setup(Family::Cycle(5));
        let quad = Polynomial::new(vec![0.0, 0.0, 1.0]);
        assert_eq!(
            polynomial_ratio_bound(&g, &s, &nu, &quad, 1),
            Err(WeightsError::DegreeTooHigh { degree: 2, k: 1 })
        );
        let neg = Polynomial::new(vec![0.0, -1.0]);
        assert!(matches!(polynomial_ratio_bound(&g, &s, &nu, &neg, 1), Err(WeightsError::VacuousBound { .. })));
    }

    #[test]
    fn clique_examples() {
        let (_, s, nu) = setup(Family::Petersen);
        assert!((clique_rayleigh_bound(&s, &nu).value - 4.0).abs() < 1e-9);
        let (_, s, nu) = setup(Family::Complete(5));
        let r = clique_rayleigh_bound(&s, &nu).with_oracle(5.0);
        assert_eq!(r.tight, Some(true));
        let (_, s, nu) = setup(Family::Star(3));
        let r = clique_rayleigh_bound(&s, &nu);
        assert!((r.value - (1.0 + 3f64.sqrt())).abs() < 1e-9);
    }

    #[test]
    fn chromatic_examples() {
        let (_, s, nu) = setup(Family::Petersen);
        let b = chromatic_lower_bounds(&s, &nu, 4.0).unwrap();
        assert!((b[0].value - 2.5).abs() < 1e-9);
        assert_eq!(b[0].rounded(), 3);
        let (_, s, nu) = setup(Family::Cycle(5));
        let b = chromatic_lower_bounds(&s, &nu, ratio_bound_independence(&s, &nu).unwrap().value).unwrap();
        assert!((b[1].value - 5f64.sqrt()).abs() < 1e-9);
        assert!((b[0].value - b[1].value).abs() < 1e-10);
        assert_eq!(b[1].rounded(), 3);
        for f in [Family::Star(3), Family::Cycle(6)] {
            let (_, s, nu) = setup(f);
            let b = chromatic_lower_bounds(&s, &nu, 1.0).unwrap();
            assert!((b[1].value - 2.0).abs() < 1e-9);
        }
        assert_eq!(chromatic_lower_bounds(&s, &nu, 0.0), Err(WeightsError::NonpositiveInput(0.0)));
    }

    #[test]
    fn oracle_attachment() {
        let (_, s, nu) = setup(Family::Cycle(5));
        let r = ratio_bound_independence(&s, &nu).unwrap().with_oracle(2.0);
        assert_eq!(r.tight, Some(false));
        assert!(!r.violates(SOUNDNESS_TOL));
        let bad = clique_rayleigh_bound(&s, &nu).with_oracle(10.0);
        assert!(bad.violates(SOUNDNESS_TOL));
        let low = chromatic_lower_bounds(&s, &nu, 2.0).unwrap().remove(0).with_oracle(3.0);
        assert!((low.slack.unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(low.rounded(), 3);
    }
}
