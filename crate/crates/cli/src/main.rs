//! Command-line front end. Reads a graph in edge-list format (header `n m`,
//! then one 1-indexed `u v` line per edge), runs the requested pipeline, and
//! prints either plain values, a JSON report, or CSV rows.
//!
//! Exit codes: 0 success, 1 validation failure, 2 input error, 3 size cap.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use heisenspec::diameter::{upper_bound_lambda, ExponentRule};
use heisenspec::graph::Graph;
use heisenspec::iso::{eip_bruteforce, family_constant, iso_fit, FamilyMode};
use heisenspec::lower::lower_bound_lambda_lk;
use heisenspec::report::{graph_meta, lower_cell, BoundReport, BoundRow};
use heisenspec::sympow::laplacian_lk;
use heisenspec::validate::{run_all, ValidateOptions};
use heisenspec::{Error, Result};

const EIGEN_TOL: f64 = 1e-12;

#[derive(Parser)]
#[command(
    name = "heisenspec",
    version,
    about = "Eigenvalue bounds for ferromagnetic Heisenberg operators from interaction-graph geometry"
)]
struct Cli {
    /// Worker threads for parallel scans. Defaults to all available cores.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the sorted eigenvalues of the k-token Laplacian, space separated
    Spectrum {
        /// Graph file in edge-list format
        graph: PathBuf,
        /// Number of tokens
        #[arg(long)]
        k: usize,
    },

    /// Upper-bound the j-th token Laplacian eigenvalue via generalized diameters
    Upper {
        /// Graph file in edge-list format
        graph: PathBuf,
        /// Number of tokens, at most n/2
        #[arg(long)]
        k: usize,
        /// Eigenvalue index, counting from zero
        #[arg(long)]
        j: usize,
        /// Independent sampling rounds for the diameter estimate
        #[arg(long, default_value_t = 16)]
        trials: usize,
        /// Master seed; every random draw derives from it
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use the looser 1/d exponent instead of the certified 1/(d-1)
        #[arg(long)]
        pseudocode_exponent: bool,
        /// Also diagonalize the token Laplacian and report the exact value
        #[arg(long)]
        with_exact: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },

    /// Lower-bound the j-th token Laplacian eigenvalue via isoperimetric profiles
    Lower {
        /// Graph file in edge-list format
        graph: PathBuf,
        /// Number of tokens, at most n/2
        #[arg(long)]
        k: usize,
        /// Eigenvalue index, counting from zero
        #[arg(long)]
        j: usize,
        /// Comma-separated isoperimetric dimensions to try; "inf" is allowed
        #[arg(long, default_value = "3,4")]
        delta_grid: String,
        /// Sample this many deleted-vertex subgraphs instead of enumerating all
        #[arg(long)]
        sample: Option<usize>,
        /// Master seed, used when sampling
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also diagonalize the token Laplacian and report the exact value
        #[arg(long)]
        with_exact: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },

    /// Run every internal consistency suite on the graph; exit 0 iff all pass
    Validate {
        /// Graph file in edge-list format
        graph: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // The library ignores a malformed cap override; the CLI refuses it so a
    // typo cannot silently run with the default budgets.
    if let Ok(raw) = std::env::var("HEISENSPEC_CAP") {
        if raw.trim().parse::<u128>().is_err() {
            eprintln!("error: HEISENSPEC_CAP {raw:?} is not a nonnegative integer");
            return ExitCode::from(2);
        }
    }
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: cannot size the thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::SizeCap { .. } => 3,
                Error::NoConvergence { .. } => 1,
                _ => 2,
            })
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Spectrum { graph, k } => cmd_spectrum(&graph, k),
        Command::Upper {
            graph,
            k,
            j,
            trials,
            seed,
            pseudocode_exponent,
            with_exact,
            format,
        } => cmd_upper(
            &graph,
            k,
            j,
            trials,
            seed,
            pseudocode_exponent,
            with_exact,
            format,
        ),
        Command::Lower {
            graph,
            k,
            j,
            delta_grid,
            sample,
            seed,
            with_exact,
            format,
        } => cmd_lower(&graph, k, j, &delta_grid, sample, seed, with_exact, format),
        Command::Validate { graph } => cmd_validate(&graph),
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    Graph::parse(&text)
}

/// Trims a fixed-precision rendering so desk-exact eigenvalues print as
/// plain integers.
fn fmt_value(v: f64) -> String {
    let mut s = format!("{v:.10}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

// A consumer closing the pipe early (head, tail) is a normal way to stop us.
fn out(text: std::fmt::Arguments) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_fmt(text) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(2);
    }
}

fn cmd_spectrum(path: &Path, k: usize) -> Result<ExitCode> {
    let g = load_graph(path)?;
    let spectrum = laplacian_lk(&g, k)?.eigenvalues(EIGEN_TOL)?;
    let line: Vec<String> = spectrum
        .eigenvalues()
        .iter()
        .map(|&v| fmt_value(v))
        .collect();
    out(format_args!("{}\n", line.join(" ")));
    Ok(ExitCode::SUCCESS)
}

fn exact_lambda(g: &Graph, k: usize, j: usize) -> Result<f64> {
    let spectrum = laplacian_lk(g, k)?.eigenvalues(EIGEN_TOL)?;
    if j >= spectrum.len() {
        return Err(Error::invalid(format!(
            "eigenvalue index {j} out of range, the token Laplacian has {} eigenvalues",
            spectrum.len()
        )));
    }
    Ok(spectrum.lambda(j))
}

#[allow(clippy::too_many_arguments)]
fn cmd_upper(
    path: &Path,
    k: usize,
    j: usize,
    trials: usize,
    seed: u64,
    pseudocode_exponent: bool,
    with_exact: bool,
    format: Format,
) -> Result<ExitCode> {
    let g = load_graph(path)?;
    let rule = if pseudocode_exponent {
        ExponentRule::D
    } else {
        ExponentRule::DMinusOne
    };
    let record = upper_bound_lambda(&g, k, j, trials, seed, rule)?;
    let exact = if with_exact {
        Some(exact_lambda(&g, k, j)?)
    } else {
        None
    };
    let report = BoundReport {
        graph: graph_meta(&g),
        seed,
        rows: vec![BoundRow {
            k,
            j,
            upper: Some((&record).into()),
            lower: None,
            exact,
        }],
    };
    emit(&report, format)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_delta_grid(grid: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for part in grid.split(',') {
        let part = part.trim();
        if part.eq_ignore_ascii_case("inf") || part.eq_ignore_ascii_case("infinity") {
            out.push(f64::INFINITY);
            continue;
        }
        let v: f64 = part
            .parse()
            .map_err(|_| Error::invalid(format!("bad dimension {part:?} in the delta grid")))?;
        out.push(v);
    }
    if out.is_empty() {
        return Err(Error::invalid("the delta grid is empty"));
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_lower(
    path: &Path,
    k: usize,
    j: usize,
    delta_grid: &str,
    sample: Option<usize>,
    seed: u64,
    with_exact: bool,
    format: Format,
) -> Result<ExitCode> {
    let g = load_graph(path)?;
    let grid = parse_delta_grid(delta_grid)?;
    let mode = match sample {
        Some(count) => FamilyMode::Sample { count, seed },
        None => FamilyMode::Exhaustive,
    };
    let profile = eip_bruteforce(&g)?;
    let exact = if with_exact {
        Some(exact_lambda(&g, k, j)?)
    } else {
        None
    };
    let mut rows = Vec::with_capacity(grid.len());
    for &delta in &grid {
        let fit = iso_fit(&profile, delta)?;
        let family = family_constant(&g, k, delta, mode)?;
        let record = lower_bound_lambda_lk(&g, k, j, family.a, delta, &fit)?;
        rows.push(BoundRow {
            k,
            j,
            upper: None,
            lower: Some(lower_cell(&record, family.certified)),
            exact,
        });
    }
    let report = BoundReport {
        graph: graph_meta(&g),
        seed,
        rows,
    };
    emit(&report, format)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_validate(path: &Path) -> Result<ExitCode> {
    let g = load_graph(path)?;
    let corrupt = std::env::var("HEISENSPEC_TEST_CORRUPT")
        .map(|v| !v.is_empty() && v != "0")
        .unwrap_or(false);
    let opts = ValidateOptions {
        corrupt,
        ..ValidateOptions::default()
    };
    let results = run_all(&g, &opts)?;
    let mut all_pass = true;
    for r in &results {
        let tag = if r.pass { "PASS" } else { "FAIL" };
        out(format_args!("suite {}: {tag} - {}\n", r.name, r.detail));
        all_pass &= r.pass;
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn emit(report: &BoundReport, format: Format) -> Result<()> {
    match format {
        Format::Json => out(format_args!("{}\n", report.to_json())),
        Format::Csv => out(format_args!("{}", csv_string(report)?)),
    }
    Ok(())
}

fn opt_str<T: Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

fn csv_string(report: &BoundReport) -> Result<String> {
    let bad = |e: csv::Error| Error::invalid(format!("csv writer: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "n",
        "m",
        "min_degree",
        "max_degree",
        "components",
        "seed",
        "k",
        "j",
        "exact",
        "upper_bound",
        "upper_diameter",
        "upper_mu",
        "upper_set_count",
        "upper_exponent",
        "upper_certified",
        "upper_trials",
        "upper_seed",
        "upper_witness",
        "upper_note",
        "lower_bound",
        "lower_delta",
        "lower_c",
        "lower_delta_k",
        "lower_a_k",
        "lower_certified",
        "lower_edge_count",
        "lower_edge_count_source",
        "lower_reason",
    ])
    .map_err(bad)?;

    let meta = &report.graph;
    for row in &report.rows {
        let mut fields: Vec<String> = vec![
            meta.n.to_string(),
            meta.m.to_string(),
            meta.min_degree.to_string(),
            meta.max_degree.to_string(),
            meta.components.to_string(),
            report.seed.to_string(),
            row.k.to_string(),
            row.j.to_string(),
            opt_str(&row.exact),
        ];
        match &row.upper {
            Some(u) => {
                let witness: Vec<String> = u
                    .witness
                    .iter()
                    .map(|set| {
                        set.iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                fields.extend([
                    u.bound.to_string(),
                    u.diameter.to_string(),
                    u.mu.to_string(),
                    u.set_count.to_string(),
                    u.exponent.clone(),
                    u.certified.to_string(),
                    u.trials.to_string(),
                    u.seed.to_string(),
                    witness.join(";"),
                    opt_str(&u.note),
                ]);
            }
            None => fields.extend(std::iter::repeat_n(String::new(), 10)),
        }
        match &row.lower {
            Some(l) => fields.extend([
                opt_str(&l.bound),
                l.delta.to_string(),
                l.c.to_string(),
                l.delta_k.to_string(),
                l.a_k.to_string(),
                l.certified.to_string(),
                l.edge_count.to_string(),
                l.edge_count_source.clone(),
                opt_str(&l.reason),
            ]),
            None => fields.extend(std::iter::repeat_n(String::new(), 9)),
        }
        w.write_record(&fields).map_err(bad)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::invalid(format!("csv writer: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::invalid(format!("csv writer: {e}")))
}
