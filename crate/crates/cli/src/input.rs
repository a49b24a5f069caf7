//! Graph sources: inline graph6, DIMACS and edge-list files, named families,
//! and stdin with format detection.

use std::io::Read;
use std::path::{Path, PathBuf};

use perron_bounds::graphio::{generate, parse_dimacs, parse_edge_list, parse_graph6, DimacsGraph, GraphError};
use perron_bounds::{Family, Graph};

use crate::Failure;

pub enum Source {
    Graph6(String),
    Dimacs(PathBuf),
    EdgeList(PathBuf),
    Family { name: String, params: Vec<usize> },
    Stdin,
}

pub struct Loaded {
    pub name: String,
    pub graph: Graph,
}

fn bad(e: GraphError) -> Failure {
    Failure::Input(e.to_string())
}

pub fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn read_stdin() -> Result<String, Failure> {
    let mut text = String::new();
    std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
    Ok(text)
}

fn dimacs(text: &str, label: &str) -> Result<Graph, Failure> {
    let DimacsGraph { graph, duplicate_edges, edge_count_mismatch } = parse_dimacs(text).map_err(bad)?;
    if duplicate_edges > 0 {
        eprintln!("warning: {label}: {duplicate_edges} duplicate edge(s) ignored");
    }
    if edge_count_mismatch {
        eprintln!("warning: {label}: header edge count differs from the {} distinct edges read", graph.edge_count());
    }
    Ok(graph)
}

#[derive(Debug, PartialEq, Eq)]
enum Detected {
    Graph6,
    Dimacs,
    EdgeList,
}

fn detect(text: &str) -> Detected {
    let significant = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let mut first = None;
    for line in significant {
        if line.starts_with("p ") {
            return Detected::Dimacs;
        }
        if first.is_none() && !line.starts_with('#') {
            first = Some(line);
        }
    }
    match first {
        Some(line) => {
            let body = line.split('#').next().unwrap_or("");
            let fields: Vec<&str> = body.split_whitespace().collect();
            if fields.len() == 2 && fields.iter().all(|f| f.parse::<usize>().is_ok()) {
                Detected::EdgeList
            } else {
                Detected::Graph6
            }
        }
        None => Detected::Graph6,
    }
}

fn from_text(text: &str, label: &str) -> Result<Graph, Failure> {
    match detect(text) {
        Detected::Dimacs => dimacs(text, label),
        Detected::EdgeList => parse_edge_list(text).map_err(bad),
        Detected::Graph6 => {
            let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
            match lines.as_slice() {
                [] => Err(bad(GraphError::Empty)),
                [one] => parse_graph6(one).map_err(bad),
                _ => Err(Failure::Input(format!("{label}: several graph6 lines; use `batch` for corpora"))),
            }
        }
    }
}

pub fn load(source: &Source) -> Result<Loaded, Failure> {
    Ok(match source {
        Source::Graph6(s) => Loaded { name: s.clone(), graph: parse_graph6(s).map_err(bad)? },
        Source::Dimacs(p) => {
            let label = p.display().to_string();
            Loaded { graph: dimacs(&read_file(p)?, &label)?, name: label }
        }
        Source::EdgeList(p) => {
            Loaded { graph: parse_edge_list(&read_file(p)?).map_err(bad)?, name: p.display().to_string() }
        }
        Source::Family { name, params } => {
            let fam = Family::from_name(name, params).map_err(bad)?;
            Loaded { name: fam.name(), graph: generate(fam).map_err(bad)? }
        }
        Source::Stdin => Loaded { graph: from_text(&read_stdin()?, "stdin")?, name: "stdin".into() },
    })
}
