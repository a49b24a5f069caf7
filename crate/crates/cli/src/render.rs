//! JSON, CSV and Markdown renderings of a report.

use perron_bounds::oracle::Witness;
use perron_bounds::report::{round_sig, to_json, Report};
use serde::Serialize;

use crate::Format;

#[derive(Clone, Copy)]
pub enum View {
    Spectrum,
    Bounds,
    Quotient,
    Oracle,
}

pub fn num(x: f64) -> String {
    let r = round_sig(x);
    if r != 0.0 && r.is_finite() && !(1e-4..1e15).contains(&r.abs()) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn opt_bool(x: Option<bool>) -> String {
    x.map(|b| b.to_string()).unwrap_or_default()
}

/// The serde name of a unit enum variant.
pub fn tag<T: Serialize>(t: &T) -> String {
    match serde_json::to_value(t) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => String::new(),
    }
}

pub fn witness(w: &Witness) -> String {
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    match w {
        Witness::Set(v) => format!("{{{}}}", join(v)),
        Witness::Coloring(c) => format!("colors [{}]", join(c)),
    }
}

/// Header plus rows, shared by the CSV and Markdown writers.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    pub fn markdown(&self) -> String {
        let line = |cells: &[String]| format!("| {} |\n", cells.iter().map(|c| c.replace('|', "\\|")).collect::<Vec<_>>().join(" | "));
        let mut out = line(&self.header);
        out += &line(&vec!["---".to_string(); self.header.len()]);
        for r in &self.rows {
            out += &line(r);
        }
        out
    }
}

fn table(view: View, r: &Report) -> Table {
    match view {
        View::Spectrum => {
            let mut t = Table::new(&["index", "eigenvalue", "weight"]);
            let values = r.spectrum.as_ref().map(|s| s.eigenvalues.as_slice()).unwrap_or(&[]);
            let weights = r.weights.as_ref().map(|w| w.entries.as_slice()).unwrap_or(&[]);
            for (i, v) in values.iter().enumerate() {
                t.rows.push(vec![i.to_string(), num(*v), opt_num(weights.get(i).copied())]);
            }
            t
        }
        View::Bounds => {
            let mut t =
                Table::new(&["bound_name", "bounds_what", "direction", "k", "value", "oracle_value", "slack", "tight"]);
            for b in &r.bounds {
                t.rows.push(vec![
                    b.bound_name.clone(),
                    tag(&b.bounds_what),
                    tag(&b.direction),
                    b.inputs.k.map(|k| k.to_string()).unwrap_or_default(),
                    num(b.value),
                    opt_num(b.oracle_value),
                    opt_num(b.slack),
                    opt_bool(b.tight),
                ]);
            }
            t
        }
        View::Quotient => {
            let m = r.certificates.first().map(|c| c.quotient_eigenvalues.len()).unwrap_or(0);
            let mut header = vec!["class".to_string(), "vertices".into(), "quotient_eigenvalue".into()];
            header.extend((0..m).map(|j| format!("b{j}")));
            header.extend(["is_tight".to_string(), "residual".into()]);
            let mut t = Table { header, rows: Vec::new() };
            for c in &r.certificates {
                for (i, vertices) in c.partition.split(';').enumerate() {
                    let mut row = vec![i.to_string(), vertices.replace(',', " "), num(c.quotient_eigenvalues[i])];
                    row.extend(c.symmetric_quotient[i].iter().map(|x| num(*x)));
                    row.extend([c.is_tight.to_string(), num(c.residual)]);
                    t.rows.push(row);
                }
            }
            t
        }
        View::Oracle => {
            let mut t = Table::new(&["parameter", "exact_value", "witness", "nodes"]);
            for o in &r.oracles {
                t.rows.push(vec![o.parameter.clone(), num(o.exact_value), witness(&o.witness), o.nodes.to_string()]);
            }
            t
        }
    }
}

fn matrix_md(m: &[Vec<f64>]) -> String {
    let mut t = Table::new(&[]);
    t.header = (0..m.len()).map(|j| j.to_string()).collect();
    t.rows = m.iter().map(|row| row.iter().map(|x| num(*x)).collect()).collect();
    t.markdown()
}

fn markdown(view: View, r: &Report) -> String {
    let g = &r.graph;
    let mut out = format!("## {} (n = {}, m = {})\n\n", g.name, g.n, g.m);
    if let Some(s) = &r.spectrum {
        let groups: Vec<String> = s.distinct.iter().map(|e| format!("{}^{}", num(e.value), e.multiplicity)).collect();
        out += &format!(
            "lambda_1 = {}, lambda_n = {}, gap = {}, distinct: {}\n\n",
            num(s.lambda1),
            num(s.lambda_min),
            s.gap.map(num).unwrap_or_else(|| "-".into()),
            groups.join(", ")
        );
    }
    if let Some(w) = &r.weights {
        out += &format!("weights: {} ({}), ||nu||^2 = {}\n\n", tag(&w.mode), tag(&w.normalization), num(w.norm_sq));
    }
    out += &table(view, r).markdown();
    if let View::Quotient = view {
        for c in &r.certificates {
            out += &format!("\nsymmetric quotient for `{}`:\n\n{}", c.partition, matrix_md(&c.symmetric_quotient));
            out += &format!("\nrow-average quotient:\n\n{}", matrix_md(&c.row_average_quotient));
            out += &format!(
                "\ninterlacing holds: {}, eigenvalue-tight: {}, certified tight: {}, residual {} (tol {})\n",
                c.interlacing.holds,
                c.eigen_tight,
                c.is_tight,
                num(c.residual),
                num(c.tol)
            );
        }
    }
    if let (View::Bounds, false) = (view, r.oracles.is_empty()) {
        out += "\n";
        out += &table(View::Oracle, r).markdown();
    }
    out
}

pub fn report(view: View, r: &Report, format: Format) -> String {
    match format {
        Format::Json => to_json(r) + "\n",
        Format::Csv => table(view, r).csv(),
        Format::Md => markdown(view, r),
    }
}
