//! Exact values on small graphs: maximum-weight independent sets (plain and
//! distance-k), maximum-weight cliques, chromatic number.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eigen::WeightVector;
use crate::graphio::{distance_matrix, Graph};

/// Size cap for the independence and clique oracles.
pub const MAX_ORACLE_N: usize = 32;
/// Size cap for the chromatic oracle.
pub const MAX_CHROMATIC_N: usize = 12;
/// Largest maximal clique whose subsets are expanded for the weight-clique value.
pub const MAX_CLIQUE_EXPANSION: usize = 20;
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices; this oracle accepts at most {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("weights have length {weights}, graph has {n} vertices")]
    WeightMismatch { n: usize, weights: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Witness {
    Set(Vec<usize>),
    /// Color of each vertex.
    Coloring(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub parameter: String,
    pub exact_value: f64,
    pub witness: Witness,
    pub nodes: u64,
}

fn check_size(g: &Graph, limit: usize) -> Result<(), OracleError> {
    if g.n() > limit {
        Err(OracleError::TooLarge { n: g.n(), limit })
    } else {
        Ok(())
    }
}

fn squared_weights(g: &Graph, nu: &WeightVector) -> Result<Vec<f64>, OracleError> {
    if nu.len() != g.n() {
        return Err(OracleError::WeightMismatch { n: g.n(), weights: nu.len() });
    }
    Ok(nu.entries().iter().map(|x| x * x).collect())
}

fn mask_to_vec(mut m: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Lexicographic order of the sorted vertex lists of two sets.
fn lex_less(a: u64, b: u64) -> bool {
    let d = a ^ b;
    if d == 0 {
        return false;
    }
    let low = d & d.wrapping_neg();
    let above = !(low | (low - 1));
    if a & low != 0 {
        b & above != 0
    } else {
        a & above == 0
    }
}

struct Best {
    value: f64,
    set: u64,
}

impl Best {
    fn offer(&mut self, value: f64, set: u64) {
        let tol = TIE_TOL * self.value.abs().max(1.0);
        if value > self.value + tol || ((value - self.value).abs() <= tol && lex_less(set, self.set)) {
            self.value = value;
            self.set = set;
        }
    }
}

struct IndependentSearch<'a> {
    adj: &'a [u64],
    w: &'a [f64],
    best: Best,
    nodes: u64,
}

impl IndependentSearch<'_> {
    fn run(&mut self, cand: u64, chosen: u64, weight: f64) {
        self.nodes += 1;
        let remaining: f64 = mask_to_vec(cand).iter().map(|&v| self.w[v]).sum();
        if weight + remaining < self.best.value - TIE_TOL * self.best.value.abs().max(1.0) {
            return;
        }
        let mut pick = None;
        let mut pick_deg = 0;
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let deg = (self.adj[v] & cand).count_ones();
            if pick.is_none() || deg > pick_deg {
                pick = Some(v);
                pick_deg = deg;
            }
        }
        let Some(v) = pick else {
            self.best.offer(weight, chosen);
            return;
        };
        if pick_deg == 0 {
            self.best.offer(weight + remaining, chosen | cand);
            return;
        }
        let bit = 1u64 << v;
        self.run(cand & !self.adj[v] & !bit, chosen | bit, weight + self.w[v]);
        self.run(cand & !bit, chosen, weight);
    }
}

fn mwis_masks(n: usize, adj: &[u64], w: &[f64]) -> (f64, u64, u64) {
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut search = IndependentSearch { adj, w, best: Best { value: -1.0, set: 0 }, nodes: 0 };
    search.run(all, 0, 0.0);
    (search.best.value.max(0.0), search.best.set, search.nodes)
}

/// Branch and bound on bitsets, branching on a maximum-degree candidate and
/// pruning with the total remaining weight. Ties go to the lexicographically
/// smallest witness.
pub fn max_weight_independent_set(g: &Graph, nu: &WeightVector) -> Result<OracleResult, OracleError> {
    check_size(g, MAX_ORACLE_N)?;
    let w = squared_weights(g, nu)?;
    let adj: Vec<u64> = (0..g.n()).map(|u| g.row_mask(u)).collect();
    let (value, set, nodes) = mwis_masks(g.n(), &adj, &w);
    Ok(OracleResult {
        parameter: "weight-independence".into(),
        exact_value: value,
        witness: Witness::Set(mask_to_vec(set)),
        nodes,
    })
}

/// Same search on the conflict graph `u ~ v iff 0 < dist(u, v) <= k`.
pub fn max_weight_distance_k_independent_set(g: &Graph, nu: &WeightVector, k: usize) -> Result<OracleResult, OracleError> {
    check_size(g, MAX_ORACLE_N)?;
    let w = squared_weights(g, nu)?;
    let dist = distance_matrix(g);
    let n = g.n();
    let adj: Vec<u64> = (0..n)
        .map(|u| {
            (0..n)
                .filter(|&v| v != u && dist.get(u, v).is_some_and(|d| d <= k))
                .fold(0u64, |m, v| m | 1 << v)
        })
        .collect();
    let (value, set, nodes) = mwis_masks(n, &adj, &w);
    Ok(OracleResult {
        parameter: format!("distance-{k}-weight-independence"),
        exact_value: value,
        witness: Witness::Set(mask_to_vec(set)),
        nodes,
    })
}

/// Clique number and weight-clique value `max sigma(U)^2 / w(U)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CliqueOracle {
    pub omega: OracleResult,
    pub kappa: OracleResult,
}

struct CliqueSearch<'a> {
    adj: &'a [u64],
    maximal: Vec<u64>,
    nodes: u64,
}

impl CliqueSearch<'_> {
    /// Bron-Kerbosch with Tomita pivoting.
    fn run(&mut self, r: u64, mut p: u64, mut x: u64) {
        self.nodes += 1;
        if p == 0 {
            if x == 0 {
                self.maximal.push(r);
            }
            return;
        }
        let px = p | x;
        let pivot = mask_to_vec(px)
            .into_iter()
            .max_by_key(|&u| ((self.adj[u] & p).count_ones(), std::cmp::Reverse(u)))
            .unwrap();
        for v in mask_to_vec(p & !self.adj[pivot]) {
            let bit = 1u64 << v;
            self.run(r | bit, p & self.adj[v], x & self.adj[v]);
            p &= !bit;
            x |= bit;
        }
    }
}

/// Enumerates maximal cliques, then every subset of each to evaluate
/// `sigma^2 / w`, which is not monotone under inclusion.
pub fn max_weight_clique(g: &Graph, nu: &WeightVector) -> Result<CliqueOracle, OracleError> {
    check_size(g, MAX_ORACLE_N)?;
    if nu.len() != g.n() {
        return Err(OracleError::WeightMismatch { n: g.n(), weights: nu.len() });
    }
    let n = g.n();
    let adj: Vec<u64> = (0..n).map(|u| g.row_mask(u)).collect();
    let all = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut search = CliqueSearch { adj: &adj, maximal: Vec::new(), nodes: 0 };
    search.run(0, all, 0);
    let nodes = search.nodes;
    let mut omega = Best { value: 0.0, set: 0 };
    let mut kappa = Best { value: 0.0, set: 0 };
    let w = nu.entries();
    for &clique in &search.maximal {
        omega.offer(clique.count_ones() as f64, clique);
        let members = mask_to_vec(clique);
        if members.len() > MAX_CLIQUE_EXPANSION {
            return Err(OracleError::TooLarge { n: members.len(), limit: MAX_CLIQUE_EXPANSION });
        }
        for sub in 1u64..(1 << members.len()) {
            let (mut sigma, mut wsum, mut set) = (0.0, 0.0, 0u64);
            for (i, &v) in members.iter().enumerate() {
                if sub >> i & 1 == 1 {
                    sigma += w[v];
                    wsum += w[v] * w[v];
                    set |= 1 << v;
                }
            }
            kappa.offer(sigma * sigma / wsum, set);
        }
    }
    Ok(CliqueOracle {
        omega: OracleResult {
            parameter: "clique".into(),
            exact_value: omega.value,
            witness: Witness::Set(mask_to_vec(omega.set)),
            nodes,
        },
        kappa: OracleResult {
            parameter: "weight-clique".into(),
            exact_value: kappa.value,
            witness: Witness::Set(mask_to_vec(kappa.set)),
            nodes,
        },
    })
}

struct Colorer<'a> {
    adj: &'a [u64],
    order: Vec<usize>,
    colors: Vec<usize>,
    nodes: u64,
}

impl Colorer<'_> {
    const NONE: usize = usize::MAX;

    fn run(&mut self, idx: usize, used: usize, k: usize) -> bool {
        self.nodes += 1;
        if idx == self.order.len() {
            return true;
        }
        let v = self.order[idx];
        // A fresh color is interchangeable with any other fresh color.
        for c in 0..(used + 1).min(k) {
            let clash = mask_to_vec(self.adj[v]).into_iter().any(|u| self.colors[u] == c);
            if clash {
                continue;
            }
            self.colors[v] = c;
            if self.run(idx + 1, used.max(c + 1), k) {
                return true;
            }
        }
        self.colors[v] = Self::NONE;
        false
    }
}

/// Iterative deepening from the clique number upward. Vertices of a maximum
/// clique are colored first and receive distinct colors immediately.
pub fn chromatic_number(g: &Graph) -> Result<OracleResult, OracleError> {
    check_size(g, MAX_CHROMATIC_N)?;
    let n = g.n();
    if n == 0 {
        return Ok(OracleResult {
            parameter: "chromatic".into(),
            exact_value: 0.0,
            witness: Witness::Coloring(vec![]),
            nodes: 0,
        });
    }
    let ones = WeightVector::uniform(n, 0.0, crate::eigen::Normalization::MinEntryOne);
    let cliques = max_weight_clique(g, &ones)?;
    let Witness::Set(seed) = &cliques.omega.witness else { unreachable!() };
    let mut order = seed.clone();
    let mut rest: Vec<usize> = (0..n).filter(|v| !seed.contains(v)).collect();
    rest.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order.extend(rest);
    let adj: Vec<u64> = (0..n).map(|u| g.row_mask(u)).collect();
    let mut colorer = Colorer { adj: &adj, order, colors: vec![Colorer::NONE; n], nodes: 0 };
    let mut k = seed.len().max(1);
    loop {
        colorer.colors.fill(Colorer::NONE);
        if colorer.run(0, 0, k) {
            return Ok(OracleResult {
                parameter: "chromatic".into(),
                exact_value: k as f64,
                witness: Witness::Coloring(colorer.colors.clone()),
                nodes: colorer.nodes,
            });
        }
        k += 1;
    }
}

pub fn is_independent(g: &Graph, set: &[usize]) -> bool {
    set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !g.has_edge(u, v)))
}

pub fn is_clique(g: &Graph, set: &[usize]) -> bool {
    set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

pub fn is_proper_coloring(g: &Graph, colors: &[usize]) -> bool {
    colors.len() == g.n() && g.edges().iter().all(|&(u, v)| colors[u] != colors[v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{eigendecompose, perron_vector, Normalization, SymMatrix};
    use crate::graphio::{generate, Family};

    fn ones(n: usize) -> WeightVector {
        WeightVector::uniform(n, 0.0, Normalization::MinEntryOne)
    }

    fn perron(g: &Graph) -> WeightVector {
        let s = eigendecompose(&SymMatrix::adjacency(g)).unwrap();
        perron_vector(g, &s, Normalization::MinEntryOne).unwrap()
    }

    fn set_of(r: &OracleResult) -> Vec<usize> {
        match &r.witness {
            Witness::Set(s) => s.clone(),
            Witness::Coloring(_) => panic!("expected a set"),
        }
    }

    #[test]
    fn lex_order() {
        assert!(lex_less(0b0101, 0b0110)); // {0,2} < {1,2}
        assert!(lex_less(0b0011, 0b0101)); // {0,1} < {0,2}
        assert!(lex_less(0b0001, 0b0011)); // {0} < {0,1}
        assert!(!lex_less(0b0011, 0b0001));
        assert!(!lex_less(0b0110, 0b0110));
    }

    #[test]
    fn independence_cases() {
        let p = generate(Family::Petersen).unwrap();
        let r = max_weight_independent_set(&p, &ones(10)).unwrap();
        assert_eq!(r.exact_value, 4.0);
        let s = set_of(&r);
        assert!(is_independent(&p, &s) && s.len() == 4);
        assert_eq!(s, vec![0, 2, 8, 9]);

        let k5 = generate(Family::Complete(5)).unwrap();
        assert_eq!(max_weight_independent_set(&k5, &ones(5)).unwrap().exact_value, 1.0);

        let star = generate(Family::Star(3)).unwrap();
        let r = max_weight_independent_set(&star, &perron(&star)).unwrap();
        assert!((r.exact_value - 3.0).abs() < 1e-9);
        // The center alone also weighs 3; ties go to the lexicographically smallest set.
        assert_eq!(set_of(&r), vec![0]);
    }

    #[test]
    fn distance_k_cases() {
        let p = generate(Family::Petersen).unwrap();
        assert_eq!(max_weight_distance_k_independent_set(&p, &ones(10), 2).unwrap().exact_value, 1.0);
        let p4 = generate(Family::Path(4)).unwrap();
        let r = max_weight_distance_k_independent_set(&p4, &ones(4), 2).unwrap();
        assert_eq!(r.exact_value, 2.0);
        assert_eq!(set_of(&r), vec![0, 3]);
        let c6 = generate(Family::Cycle(6)).unwrap();
        assert_eq!(max_weight_distance_k_independent_set(&c6, &ones(6), 3).unwrap().exact_value, 1.0);
        let plain = max_weight_independent_set(&c6, &ones(6)).unwrap();
        let k1 = max_weight_distance_k_independent_set(&c6, &ones(6), 1).unwrap();
        assert_eq!((plain.exact_value, &plain.witness), (k1.exact_value, &k1.witness));
    }

    #[test]
    fn clique_cases() {
        let p = generate(Family::Petersen).unwrap();
        let c = max_weight_clique(&p, &ones(10)).unwrap();
        assert_eq!((c.omega.exact_value, c.kappa.exact_value), (2.0, 2.0));
        let k4 = generate(Family::Complete(4)).unwrap();
        assert_eq!(max_weight_clique(&k4, &ones(4)).unwrap().omega.exact_value, 4.0);
        let star = generate(Family::Star(3)).unwrap();
        let c = max_weight_clique(&star, &perron(&star)).unwrap();
        let r3 = 3f64.sqrt();
        assert!((c.kappa.exact_value - (r3 + 1.0).powi(2) / 4.0).abs() < 1e-12);
        assert!(is_clique(&star, &set_of(&c.kappa)));
        let empty = Graph::empty(3);
        let c = max_weight_clique(&empty, &ones(3)).unwrap();
        assert_eq!((c.omega.exact_value, c.kappa.exact_value), (1.0, 1.0));
    }

    #[test]
    fn chromatic_cases() {
        let cases = [
            (Family::Petersen, 3.0),
            (Family::Cycle(5), 3.0),
            (Family::Cycle(6), 2.0),
            (Family::Complete(6), 6.0),
            (Family::Star(3), 2.0),
        ];
        for (f, chi) in cases {
            let g = generate(f).unwrap();
            let r = chromatic_number(&g).unwrap();
            assert_eq!(r.exact_value, chi, "{f:?}");
            let Witness::Coloring(c) = &r.witness else { panic!() };
            assert!(is_proper_coloring(&g, c));
            assert_eq!(c.iter().max().map(|m| m + 1), Some(chi as usize));
        }
        assert_eq!(chromatic_number(&Graph::empty(3)).unwrap().exact_value, 1.0);
        assert_eq!(
            chromatic_number(&Graph::empty(13)),
            Err(OracleError::TooLarge { n: 13, limit: MAX_CHROMATIC_N })
        );
    }

    #[test]
    fn size_caps() {
        let g = Graph::empty(33);
        assert!(matches!(max_weight_independent_set(&g, &ones(33)), Err(OracleError::TooLarge { .. })));
        assert!(matches!(max_weight_independent_set(&Graph::empty(3), &ones(4)), Err(OracleError::WeightMismatch { .. })));
    }
}
