//! Browser bindings: three analyses over a graph typed into the page, each
//! returning the same JSON document the command-line tool prints.
//!
//! Graphs are given as graph6 or as an edge list (`u v` per line, 0-based),
//! or as a family name such as `petersen`, `cycle 7` or `star 3`.

use perron_bounds::graphio::{distance_partition, generate, parse_edge_list, parse_graph6};
use perron_bounds::interlace::{Partition, INTERLACE_TOL};
use perron_bounds::report::{
    attach_oracles, compute_bounds, decompose, quotient_certificate, to_json, weight_vector, GraphInfo, Report,
    SpectrumInfo, WeightMode, WeightsInfo,
};
use perron_bounds::{Family, Graph, Normalization};
use wasm_bindgen::prelude::*;

/// Largest graph the page accepts; keeps the oracles interactive.
pub const MAX_DEMO_N: usize = 24;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn parse_family(text: &str) -> Option<Result<(String, Graph), String>> {
    let mut words = text.split_whitespace();
    let name = words.next()?;
    let params: Result<Vec<usize>, _> = words.map(str::parse).collect();
    let params = params.ok()?;
    match Family::from_name(name, &params) {
        Ok(f) => Some(generate(f).map(|g| (f.name(), g)).map_err(err)),
        Err(perron_bounds::graphio::GraphError::UnknownFamily(_)) => None,
        Err(e) => Some(Err(err(e))),
    }
}

fn parse_input(text: &str) -> Result<(String, Graph), String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("enter a graph".into());
    }
    let (name, g) = if let Some(fam) = parse_family(text) {
        fam?
    } else if text.lines().next().is_some_and(|l| l.split_whitespace().count() == 2) {
        ("edge list".to_string(), parse_edge_list(text).map_err(err)?)
    } else {
        (text.to_string(), parse_graph6(text).map_err(err)?)
    };
    if g.n() > MAX_DEMO_N {
        return Err(format!("the demo accepts up to {MAX_DEMO_N} vertices, got {}", g.n()));
    }
    Ok((name, g))
}

fn mode(weights: &str) -> Result<WeightMode, String> {
    match weights {
        "ones" => Ok(WeightMode::Ones),
        "perron" => Ok(WeightMode::Perron),
        other => Err(format!("unknown weight mode `{other}`")),
    }
}

/// Vertex count and edge list, for drawing.
#[wasm_bindgen]
pub fn graph_edges(text: &str) -> Result<String, String> {
    let (name, g) = parse_input(text)?;
    let edges: Vec<[usize; 2]> = g.edges().into_iter().map(|(u, v)| [u, v]).collect();
    Ok(serde_json::json!({ "name": name, "n": g.n(), "edges": edges }).to_string())
}

/// Eigenvalues, distinct groups, gap and weight vector.
#[wasm_bindgen]
pub fn spectrum(text: &str, weights: &str) -> Result<String, String> {
    let (name, g) = parse_input(text)?;
    let (_, s) = decompose(&g).map_err(err)?;
    let mut r = Report::new(GraphInfo::new(&name, &g));
    r.spectrum = Some(SpectrumInfo::new(&s));
    if let Ok(nu) = weight_vector(&g, &s, mode(weights)?, Normalization::MinEntryOne) {
        r.weights = Some(WeightsInfo::new(mode(weights)?, &nu));
    }
    Ok(to_json(&r))
}

/// All bounds with exact oracle values attached.
#[wasm_bindgen]
pub fn bounds(text: &str, weights: &str, max_k: usize) -> Result<String, String> {
    let (name, g) = parse_input(text)?;
    let mode = mode(weights)?;
    let (_, s) = decompose(&g).map_err(err)?;
    let nu = weight_vector(&g, &s, mode, Normalization::MinEntryOne).map_err(err)?;
    let ks: Vec<usize> = (1..=max_k.clamp(1, 4)).collect();
    let mut b = compute_bounds(&g, &s, &nu, &ks).map_err(err)?;
    let mut r = Report::new(GraphInfo::new(&name, &g));
    r.oracles = attach_oracles(&g, &nu, &mut b).map_err(err)?;
    r.spectrum = Some(SpectrumInfo::new(&s));
    r.weights = Some(WeightsInfo::new(mode, &nu));
    r.bounds = b;
    Ok(to_json(&r))
}

/// Quotient matrix and tightness certificate; an empty partition means the
/// distance partition from vertex 0.
#[wasm_bindgen]
pub fn quotient(text: &str, weights: &str, partition: &str) -> Result<String, String> {
    let (name, g) = parse_input(text)?;
    let mode = mode(weights)?;
    let p = if partition.trim().is_empty() {
        if g.n() == 0 {
            return Err("empty graph".into());
        }
        Partition::new(g.n(), distance_partition(&g, 0)).map_err(err)?
    } else {
        Partition::parse(partition.trim(), g.n()).map_err(err)?
    };
    let (a, s) = decompose(&g).map_err(err)?;
    let nu = weight_vector(&g, &s, mode, Normalization::MinEntryOne).map_err(err)?;
    let cert = quotient_certificate(&a, &s, &p, &nu, INTERLACE_TOL).map_err(err)?;
    let mut r = Report::new(GraphInfo::new(&name, &g));
    r.spectrum = Some(SpectrumInfo::new(&s));
    r.weights = Some(WeightsInfo::new(mode, &nu));
    r.certificates.push(cert);
    Ok(to_json(&r))
}
