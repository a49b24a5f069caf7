//! `perron-bounds`: spectral bounds on Perron-weighted graph parameters,
//! checked against exact oracles.
//!
//! Exit codes: 0 success, 1 usage, 2 input, 3 numerical failure,
//! 4 a bound contradicted its oracle.

mod batch;
mod commands;
mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use perron_bounds::report::WeightMode;
use perron_bounds::Normalization;

use crate::input::Source;

#[derive(Parser)]
#[command(name = "perron-bounds", version, about = "Spectral bounds on Perron-weighted graph parameters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues, distinct eigenvalue groups, weight vector and spectral gap.
    Spectrum(Single),
    /// Ratio, distance-k, clique and chromatic bounds.
    Bounds(Single),
    /// Weighted quotient matrix of a vertex partition with its interlacing report.
    Quotient {
        #[command(flatten)]
        single: Single,
        /// Classes separated by `;`, vertices by `,`, e.g. `0;1,4,5;2,3,6,7,8,9`.
        #[arg(long)]
        partition: String,
    },
    /// Tightness certificate; defaults to the distance partition from `--root`.
    Certify {
        #[command(flatten)]
        single: Single,
        #[arg(long)]
        partition: Option<String>,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Exact parameter values from the branch-and-bound oracles.
    Oracle(Single),
    /// Bounds for every graph6 line of a file, processed in parallel.
    Batch {
        /// One graph6 string per line; `-` reads stdin.
        file: PathBuf,
        #[command(flatten)]
        opts: Options,
        /// Worker threads (default: all cores).
        #[arg(long, value_parser = parse_positive_int)]
        threads: Option<usize>,
    },
}

#[derive(Args)]
struct Single {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    opts: Options,
}

/// Exactly one of `--graph6`, `--dimacs`, `--edgelist`, `--family`; stdin otherwise.
#[derive(Args)]
struct InputArgs {
    #[arg(long, value_name = "STRING")]
    graph6: Option<String>,
    #[arg(long, value_name = "FILE")]
    dimacs: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    edgelist: Option<PathBuf>,
    /// complete | cycle | path | star | complete_bipartite | petersen
    #[arg(long, value_name = "NAME")]
    family: Option<String>,
    /// Order for complete, cycle and path.
    #[arg(long)]
    n: Option<usize>,
    /// Leaves of a star; first side of complete_bipartite.
    #[arg(long)]
    k1: Option<usize>,
    /// Second side of complete_bipartite.
    #[arg(long)]
    k2: Option<usize>,
}

#[derive(Args)]
struct Options {
    #[arg(long, value_enum, default_value_t = WeightArg::Perron)]
    weights: WeightArg,
    #[arg(long, value_enum, default_value_t = NormArg::Min1)]
    norm: NormArg,
    /// Attach exact oracle values (graphs up to 32 vertices; chromatic up to 12).
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Relative tolerance for soundness checks and tightness certificates.
    #[arg(long, value_parser = parse_tol)]
    tol: Option<f64>,
    /// Distances k for the distance-k bounds, comma separated.
    #[arg(long = "dist-k", value_delimiter = ',', default_value = "1,2", value_parser = parse_positive_int)]
    dist_k: Vec<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightArg {
    Ones,
    Perron,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    Min1,
    Unit,
    Raw,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[value(alias = "markdown")]
    Md,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
        _ => Err(format!("`{s}` is not a positive real")),
    }
}

fn parse_positive_int(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

/// Settings shared by every subcommand.
pub struct RunConfig {
    pub weights: WeightMode,
    pub norm: Normalization,
    pub ks: Vec<usize>,
    pub oracle: bool,
    pub format: Format,
    pub tol: Option<f64>,
}

impl From<Options> for RunConfig {
    fn from(o: Options) -> Self {
        RunConfig {
            weights: match o.weights {
                WeightArg::Ones => WeightMode::Ones,
                WeightArg::Perron => WeightMode::Perron,
            },
            norm: match o.norm {
                NormArg::Min1 => Normalization::MinEntryOne,
                NormArg::Unit => Normalization::UnitNorm,
                NormArg::Raw => Normalization::Raw,
            },
            ks: o.dist_k,
            oracle: o.oracle,
            format: o.format,
            tol: o.tol,
        }
    }
}

/// Why a run stopped; each variant owns one exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Input(String),
    Numerical(String),
    Unsound(usize),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Numerical(_) => 3,
            Failure::Unsound(_) => 4,
        }
    }
}

impl From<perron_bounds::Error> for Failure {
    fn from(e: perron_bounds::Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

/// Text for stdout plus the number of bounds that contradicted an oracle.
pub struct Outcome {
    pub text: String,
    pub violations: usize,
}

fn source(i: InputArgs) -> Result<Source, Failure> {
    let given = [i.graph6.is_some(), i.dimacs.is_some(), i.edgelist.is_some(), i.family.is_some()];
    if given.iter().filter(|&&b| b).count() > 1 {
        return Err(Failure::Usage("give at most one of --graph6, --dimacs, --edgelist, --family".into()));
    }
    if i.family.is_none() && (i.n.is_some() || i.k1.is_some() || i.k2.is_some()) {
        return Err(Failure::Usage("--n, --k1 and --k2 only apply with --family".into()));
    }
    Ok(if let Some(s) = i.graph6 {
        Source::Graph6(s)
    } else if let Some(p) = i.dimacs {
        Source::Dimacs(p)
    } else if let Some(p) = i.edgelist {
        Source::EdgeList(p)
    } else if let Some(name) = i.family {
        let params: Vec<usize> = match name.as_str() {
            "petersen" => vec![],
            "star" => i.k1.or(i.n).into_iter().collect(),
            "complete_bipartite" => i.k1.into_iter().chain(i.k2).collect(),
            _ => i.n.into_iter().collect(),
        };
        Source::Family { name, params }
    } else {
        Source::Stdin
    })
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Spectrum(s) => {
            let g = input::load(&source(s.input)?)?;
            commands::spectrum(&s.opts.into(), &g)
        }
        Command::Bounds(s) => {
            let g = input::load(&source(s.input)?)?;
            commands::bounds(&s.opts.into(), &g)
        }
        Command::Quotient { single, partition } => {
            let g = input::load(&source(single.input)?)?;
            commands::quotient(&single.opts.into(), &g, Some(&partition), 0)
        }
        Command::Certify { single, partition, root } => {
            let g = input::load(&source(single.input)?)?;
            commands::quotient(&single.opts.into(), &g, partition.as_deref(), root)
        }
        Command::Oracle(s) => {
            let g = input::load(&source(s.input)?)?;
            commands::oracle(&s.opts.into(), &g)
        }
        Command::Batch { file, opts, threads } => batch::run(&opts.into(), &file, threads),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.violations > 0 {
                let f = Failure::Unsound(out.violations);
                eprintln!("error: {} bound(s) contradicted their exact value", out.violations);
                return ExitCode::from(f.code());
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Usage(m) | Failure::Input(m) | Failure::Numerical(m) => eprintln!("error: {m}"),
                Failure::Unsound(k) => eprintln!("error: {k} bound(s) contradicted their exact value"),
            }
            ExitCode::from(f.code())
        }
    }
}
