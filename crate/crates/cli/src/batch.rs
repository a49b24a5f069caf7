//! Corpus sweeps: one graph6 string per line, processed in parallel, reported
//! in input order.

use std::path::Path;

use perron_bounds::graphio::parse_graph6;
use perron_bounds::report::{to_json, Report};
use perron_bounds::weights::Parameter;
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::{bounds_report, violations};
use crate::input::{read_file, read_stdin, Loaded};
use crate::render::{num, opt_bool, opt_num, Table};
use crate::{Failure, Format, Outcome, RunConfig};

#[derive(Debug, Default, Serialize)]
pub struct Summary {
    pub lines: usize,
    pub graphs: usize,
    pub errors: usize,
    pub tight_ratio_bounds: usize,
    pub max_slack: Option<f64>,
    pub soundness_violations: usize,
}

#[derive(Debug, Serialize)]
pub struct Entry {
    pub line: usize,
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    violations: usize,
}

#[derive(Debug, Serialize)]
pub struct BatchDocument {
    pub summary: Summary,
    pub results: Vec<Entry>,
}

fn message(f: Failure) -> String {
    match f {
        Failure::Usage(m) | Failure::Input(m) | Failure::Numerical(m) => m,
        Failure::Unsound(k) => format!("{k} unsound bounds"),
    }
}

fn process(cfg: &RunConfig, line: usize, text: &str) -> Entry {
    let result = parse_graph6(text)
        .map_err(|e| Failure::Input(e.to_string()))
        .and_then(|graph| bounds_report(cfg, &Loaded { name: text.to_string(), graph }));
    match result {
        Ok(r) => {
            let bad = violations(&r.bounds, cfg);
            Entry { line, input: text.to_string(), report: Some(r), error: None, violations: bad }
        }
        Err(f) => Entry { line, input: text.to_string(), report: None, error: Some(message(f)), violations: 0 },
    }
}

fn summarize(results: &[Entry]) -> Summary {
    let mut s = Summary { lines: results.len(), ..Summary::default() };
    for e in results {
        s.soundness_violations += e.violations;
        let Some(r) = &e.report else {
            s.errors += 1;
            continue;
        };
        s.graphs += 1;
        for b in &r.bounds {
            if b.bounds_what == Parameter::WeightIndependence && b.tight == Some(true) {
                s.tight_ratio_bounds += 1;
            }
            if let Some(slack) = b.slack {
                s.max_slack = Some(s.max_slack.map_or(slack, |m: f64| m.max(slack)));
            }
        }
    }
    s
}

/// Analyzes every nonblank line of `text`; `threads` fixes the pool size.
pub fn analyze(cfg: &RunConfig, text: &str, threads: Option<usize>) -> Result<BatchDocument, Failure> {
    let lines: Vec<(usize, &str)> =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty()).collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| Failure::Input(format!("thread pool: {e}")))?;
    let results: Vec<Entry> = pool.install(|| lines.par_iter().map(|&(i, l)| process(cfg, i, l)).collect());
    Ok(BatchDocument { summary: summarize(&results), results })
}

fn render(doc: &BatchDocument, format: Format) -> String {
    let mut t = Table::new(&[
        "line",
        "input",
        "status",
        "n",
        "m",
        "ratio_bound",
        "alpha_oracle",
        "ratio_tight",
        "max_slack",
        "violations",
        "error",
    ]);
    for e in &doc.results {
        let mut row = vec![e.line.to_string(), e.input.clone()];
        match &e.report {
            Some(r) => {
                let ratio = r.bounds.iter().find(|b| b.bounds_what == Parameter::WeightIndependence);
                let slack = r.bounds.iter().filter_map(|b| b.slack).fold(None, |m: Option<f64>, s| {
                    Some(m.map_or(s, |m| m.max(s)))
                });
                row.extend([
                    "ok".to_string(),
                    r.graph.n.to_string(),
                    r.graph.m.to_string(),
                    ratio.map(|b| num(b.value)).unwrap_or_default(),
                    opt_num(ratio.and_then(|b| b.oracle_value)),
                    opt_bool(ratio.and_then(|b| b.tight)),
                    opt_num(slack),
                    e.violations.to_string(),
                    String::new(),
                ]);
            }
            None => {
                row.extend(["error".to_string(), String::new(), String::new(), String::new(), String::new()]);
                row.extend([String::new(), String::new(), "0".into(), e.error.clone().unwrap_or_default()]);
            }
        }
        t.rows.push(row);
    }
    match format {
        Format::Json => to_json(doc) + "\n",
        Format::Csv => t.csv(),
        Format::Md => {
            let s = &doc.summary;
            format!(
                "## batch: {} lines, {} graphs, {} errors\n\ntight ratio bounds: {}, max slack: {}, soundness violations: {}\n\n{}",
                s.lines,
                s.graphs,
                s.errors,
                s.tight_ratio_bounds,
                opt_num(s.max_slack),
                s.soundness_violations,
                t.markdown()
            )
        }
    }
}

pub fn run(cfg: &RunConfig, path: &Path, threads: Option<usize>) -> Result<Outcome, Failure> {
    let text = if path.as_os_str() == "-" { read_stdin()? } else { read_file(path)? };
    let doc = analyze(cfg, &text, threads)?;
    let out = render(&doc, cfg.format);
    if doc.summary.lines > 0 && doc.summary.graphs == 0 {
        print!("{out}");
        return Err(Failure::Input(format!("all {} lines failed", doc.summary.lines)));
    }
    Ok(Outcome { text: out, violations: doc.summary.soundness_violations })
}
