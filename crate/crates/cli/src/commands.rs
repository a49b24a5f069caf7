//! Single-graph subcommands. Each builds a `Report` and renders it.

use perron_bounds::graphio::distance_partition;
use perron_bounds::interlace::{Partition, INTERLACE_TOL};
use perron_bounds::oracle::{
    chromatic_number, max_weight_clique, max_weight_distance_k_independent_set, max_weight_independent_set,
    MAX_CHROMATIC_N, MAX_ORACLE_N,
};
use perron_bounds::report::{
    attach_oracles, compute_bounds, decompose, quotient_certificate, weight_vector, GraphInfo, Report, SpectrumInfo,
    WeightsInfo,
};
use perron_bounds::weights::{BoundReport, SOUNDNESS_TOL};

use crate::input::Loaded;
use crate::render::{self, View};
use crate::{Failure, Outcome, RunConfig};

pub fn core<E: Into<perron_bounds::Error>>(e: E) -> Failure {
    Failure::from(e.into())
}

pub fn violations(bounds: &[BoundReport], cfg: &RunConfig) -> usize {
    let tol = cfg.tol.unwrap_or(SOUNDNESS_TOL);
    bounds.iter().filter(|b| b.violates(tol)).count()
}

fn outcome(view: View, r: &Report, cfg: &RunConfig, violations: usize) -> Outcome {
    Outcome { text: render::report(view, r, cfg.format), violations }
}

pub fn spectrum(cfg: &RunConfig, g: &Loaded) -> Result<Outcome, Failure> {
    let (_, s) = decompose(&g.graph)?;
    let mut r = Report::new(GraphInfo::new(&g.name, &g.graph));
    r.spectrum = Some(SpectrumInfo::new(&s));
    match weight_vector(&g.graph, &s, cfg.weights, cfg.norm) {
        Ok(nu) => r.weights = Some(WeightsInfo::new(cfg.weights, &nu)),
        Err(e) => eprintln!("warning: no weight vector: {e}"),
    }
    Ok(outcome(View::Spectrum, &r, cfg, 0))
}

/// Bounds for one graph, with oracle values when requested and feasible.
pub fn bounds_report(cfg: &RunConfig, g: &Loaded) -> Result<Report, Failure> {
    let (_, s) = decompose(&g.graph)?;
    let nu = weight_vector(&g.graph, &s, cfg.weights, cfg.norm)?;
    let mut bounds = compute_bounds(&g.graph, &s, &nu, &cfg.ks)?;
    let mut r = Report::new(GraphInfo::new(&g.name, &g.graph));
    if cfg.oracle {
        r.oracles = attach_oracles(&g.graph, &nu, &mut bounds)?;
    }
    r.spectrum = Some(SpectrumInfo::new(&s));
    r.weights = Some(WeightsInfo::new(cfg.weights, &nu));
    r.bounds = bounds;
    Ok(r)
}

pub fn bounds(cfg: &RunConfig, g: &Loaded) -> Result<Outcome, Failure> {
    if cfg.oracle && g.graph.n() > MAX_ORACLE_N {
        eprintln!("warning: oracles skipped above {MAX_ORACLE_N} vertices");
    }
    let r = bounds_report(cfg, g)?;
    let bad = violations(&r.bounds, cfg);
    Ok(outcome(View::Bounds, &r, cfg, bad))
}

/// `quotient` and `certify`; without a partition string the distance
/// partition from `root` is used.
pub fn quotient(cfg: &RunConfig, g: &Loaded, partition: Option<&str>, root: usize) -> Result<Outcome, Failure> {
    let n = g.graph.n();
    let p = match partition {
        Some(text) => Partition::parse(text, n).map_err(core)?,
        None => {
            if root >= n {
                return Err(Failure::Input(format!("root {root} out of range for {n} vertices")));
            }
            Partition::new(n, distance_partition(&g.graph, root)).map_err(core)?
        }
    };
    let (a, s) = decompose(&g.graph)?;
    let nu = weight_vector(&g.graph, &s, cfg.weights, cfg.norm)?;
    let cert = quotient_certificate(&a, &s, &p, &nu, cfg.tol.unwrap_or(INTERLACE_TOL))?;
    let mut r = Report::new(GraphInfo::new(&g.name, &g.graph));
    r.spectrum = Some(SpectrumInfo::new(&s));
    r.weights = Some(WeightsInfo::new(cfg.weights, &nu));
    r.certificates.push(cert);
    Ok(outcome(View::Quotient, &r, cfg, 0))
}

pub fn oracle(cfg: &RunConfig, g: &Loaded) -> Result<Outcome, Failure> {
    let graph = &g.graph;
    let (_, s) = decompose(graph)?;
    let nu = weight_vector(graph, &s, cfg.weights, cfg.norm)?;
    let mut results = vec![max_weight_independent_set(graph, &nu).map_err(core)?];
    for &k in cfg.ks.iter().filter(|&&k| k > 1) {
        results.push(max_weight_distance_k_independent_set(graph, &nu, k).map_err(core)?);
    }
    let clique = max_weight_clique(graph, &nu).map_err(core)?;
    results.push(clique.omega);
    results.push(clique.kappa);
    if graph.n() <= MAX_CHROMATIC_N {
        results.push(chromatic_number(graph).map_err(core)?);
    } else {
        eprintln!("warning: chromatic oracle skipped above {MAX_CHROMATIC_N} vertices");
    }
    let mut r = Report::new(GraphInfo::new(&g.name, graph));
    r.weights = Some(WeightsInfo::new(cfg.weights, &nu));
    r.oracles = results;
    Ok(outcome(View::Oracle, &r, cfg, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use perron_bounds::report::WeightMode;
    use perron_bounds::weights::ratio_bound_independence;
    use perron_bounds::graphio::generate;
    use perron_bounds::{Family, Normalization};

    #[test]
    fn contradicted_bound_counts_as_violation() {
        let g = generate(Family::Cycle(5)).unwrap();
        let (_, s) = decompose(&g).unwrap();
        let nu = weight_vector(&g, &s, WeightMode::Ones, Normalization::MinEntryOne).unwrap();
        let ratio = ratio_bound_independence(&s, &nu).unwrap();
        let cfg = RunConfig {
            weights: WeightMode::Ones,
            norm: Normalization::MinEntryOne,
            ks: vec![1],
            oracle: true,
            format: crate::Format::Json,
            tol: None,
        };
        assert_eq!(violations(&[ratio.clone().with_oracle(2.0)], &cfg), 0);
        assert_eq!(violations(&[ratio.with_oracle(3.0)], &cfg), 1);
    }
}
