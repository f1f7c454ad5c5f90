//! `laprank` — edge centrality for flight networks (or any weighted graph).
//!
//! Three subcommands cover the full pipeline:
//!
//! ```text
//! laprank ingest flights.csv --output airports.tsv       # CSV -> edge list
//! laprank line-graph airports.tsv --output lg.tsv \
//!         --map-output lg_map.tsv                        # edges -> line-graph nodes
//! laprank rank lg.tsv --method plaplacian --p 1.5 \
//!         --output scores.tsv                            # centrality scores
//! ```
//!
//! Every command writes its primary artifact plus a `<output>.manifest.json`
//! describing the run (inputs, solver configuration, convergence data, wall
//! time).  Score files are byte-deterministic for a given input and
//! configuration; the manifest isolates the only nondeterministic value
//! (wall time) so artifacts can be diffed across runs.
//!
//! Exit codes: 0 on success, 2 on usage or data errors, 3 when the solver
//! ran out of iterations (results are still written, `converged` is false).

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use laprank::{
    aggregate_to_graph, pagerank, parse_flight_csv, read_edge_list, solve_p_iterative, top_k,
    uniform_prior, Graph, NodeFunction, RankResult, SolveError, SolverConfig, DEFAULT_EPSILON,
};

/// Exit code for solver non-convergence.  The artifacts are still written so
/// a long run is never wasted; the caller can inspect `converged` in the
/// manifest and decide whether the partial result is usable.
const EXIT_NOT_CONVERGED: u8 = 3;
const EXIT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(
    name = "laprank",
    version,
    about = "Edge centrality via line graphs and p-Laplacian ranking"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a flight-segment CSV into an undirected weighted edge list.
    Ingest(IngestArgs),
    /// Convert an edge list to its line graph (edges become nodes).
    LineGraph(LineGraphArgs),
    /// Score graph nodes with PageRank or the p-Laplacian ranker.
    Rank(RankArgs),
}

#[derive(Args)]
struct IngestArgs {
    /// Flight CSV with one row per operated segment.
    input: PathBuf,
    /// Where to write the aggregated edge list (TSV).
    #[arg(long)]
    output: PathBuf,
    /// Column holding the origin city name.
    #[arg(long, default_value = "ORIGIN_CITY_NAME")]
    origin_column: String,
    /// Column holding the destination city name.
    #[arg(long, default_value = "DEST_CITY_NAME")]
    dest_column: String,
    /// Give every city pair weight 1 instead of its flight count.
    #[arg(long)]
    unweighted: bool,
}

#[derive(Args)]
struct LineGraphArgs {
    /// Edge list (TSV: label_a, label_b, weight).
    input: PathBuf,
    /// Where to write the line-graph edge list (TSV).
    #[arg(long)]
    output: PathBuf,
    /// Where to write the node mapping (TSV: line_node_id, label_a, label_b).
    #[arg(long)]
    map_output: PathBuf,
}

#[derive(Args)]
struct RankArgs {
    /// Edge list (TSV: label_a, label_b, weight).
    input: PathBuf,
    /// Where to write the scores (TSV: label, score; one row per node).
    #[arg(long)]
    output: PathBuf,
    /// Ranking method.
    #[arg(long, value_enum)]
    method: Method,
    /// Variation exponent p >= 1 (required for --method plaplacian).
    #[arg(long)]
    p: Option<f64>,
    /// Fidelity weight mu > 0 tying scores to the prior.
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    /// Convergence tolerance (defaults: 1e-9 plaplacian, 1e-12 pagerank).
    #[arg(long)]
    tol: Option<f64>,
    /// Iteration budget.
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    /// Variation smoothing epsilon.
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// PageRank damping factor.
    #[arg(long, default_value_t = 0.85)]
    damping: f64,
    /// How many top-scoring nodes to echo on stdout.
    #[arg(long, default_value_t = 10)]
    top_k: usize,
    /// Prior file (TSV: label, value) overriding the uniform prior.  Must
    /// assign a value to every node of the graph, each exactly once.
    #[arg(long)]
    prior_file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Pagerank,
    Plaplacian,
}

impl Method {
    fn as_str(self) -> &'static str {
        match self {
            Method::Pagerank => "pagerank",
            Method::Plaplacian => "plaplacian",
        }
    }
}

/// Solver configuration as it is echoed into the manifest.  Mirrors
/// `SolverConfig` field for field; kept separate so the library does not
/// need a serialization dependency.
#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct ConfigEcho {
    p: f64,
    mu: f64,
    eps: f64,
    tol: f64,
    max_iter: usize,
    damping: f64,
}

impl From<&SolverConfig> for ConfigEcho {
    fn from(cfg: &SolverConfig) -> Self {
        ConfigEcho {
            p: cfg.p,
            mu: cfg.mu,
            eps: cfg.eps,
            tol: cfg.tol,
            max_iter: cfg.max_iter,
            damping: cfg.damping,
        }
    }
}

/// Run record written next to every artifact as `<output>.manifest.json`.
///
/// Solver fields are `None` for commands that do not solve anything
/// (`ingest`, `line-graph`).  Wall time lives here and nowhere else: the
/// primary artifacts stay byte-identical across runs.
#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct RunManifest {
    command: String,
    inputs: Vec<String>,
    method: Option<String>,
    config: Option<ConfigEcho>,
    graph_nodes: usize,
    graph_edges: usize,
    iterations: Option<usize>,
    residual_inf_norm: Option<f64>,
    converged: Option<bool>,
    wall_time_ms: f64,
}

fn main() -> ExitCode {
    // Thread count is pinned through the environment rather than a flag so
    // that wrapper scripts can force reproducible parallelism without
    // plumbing an option through every call site.  Results are identical
    // for any thread count; this is purely an operational knob.
    if let Err(err) = configure_threads() {
        eprintln!("error: {err:#}");
        return ExitCode::from(EXIT_ERROR);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("LAPRANK_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| anyhow!("LAPRANK_THREADS must be a positive integer, got {raw:?}"))?;
    if threads == 0 {
        bail!("LAPRANK_THREADS must be a positive integer, got 0");
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("failed to configure the rayon thread pool")?;
    Ok(())
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Ingest(args) => run_ingest(args),
        Command::LineGraph(args) => run_line_graph(args),
        Command::Rank(args) => run_rank(args),
    }
}

fn run_ingest(args: IngestArgs) -> Result<u8> {
    let started = Instant::now();
    let outcome = parse_flight_csv(&args.input, &args.origin_column, &args.dest_column)?;
    let graph = aggregate_to_graph(&outcome.records, !args.unweighted)?;

    write_edge_list_file(&graph, &args.output)?;
    let manifest = RunManifest {
        command: "ingest".to_string(),
        inputs: vec![display_path(&args.input)],
        method: None,
        config: None,
        graph_nodes: graph.node_count(),
        graph_edges: graph.edge_count(),
        iterations: None,
        residual_inf_norm: None,
        converged: None,
        wall_time_ms: elapsed_ms(started),
    };
    write_manifest(&args.output, &manifest)?;

    println!(
        "rows={} used={} dropped_malformed={} dropped_self_loops={}",
        outcome.total_data_rows,
        outcome.records.len(),
        outcome.dropped_malformed,
        outcome.dropped_self_loops
    );
    println!("nodes={} edges={}", graph.node_count(), graph.edge_count());
    Ok(0)
}

fn run_line_graph(args: LineGraphArgs) -> Result<u8> {
    let started = Instant::now();
    let records = read_edge_list(&args.input)?;
    let graph = Graph::build(&records)?;
    let (line, map) = graph.line_graph()?;

    write_edge_list_file(&line, &args.output)?;

    let map_file = File::create(&args.map_output)
        .with_context(|| format!("failed to create {}", display_path(&args.map_output)))?;
    let mut map_writer = BufWriter::new(map_file);
    for (id, &(u, v)) in map.entries().iter().enumerate() {
        writeln!(map_writer, "{}\t{}\t{}", id, graph.label(u), graph.label(v))?;
    }
    map_writer.flush()?;

    let manifest = RunManifest {
        command: "line-graph".to_string(),
        inputs: vec![display_path(&args.input)],
        method: None,
        config: None,
        graph_nodes: line.node_count(),
        graph_edges: line.edge_count(),
        iterations: None,
        residual_inf_norm: None,
        converged: None,
        wall_time_ms: elapsed_ms(started),
    };
    write_manifest(&args.output, &manifest)?;

    println!("nodes={} edges={}", line.node_count(), line.edge_count());
    Ok(0)
}

fn run_rank(args: RankArgs) -> Result<u8> {
    let started = Instant::now();
    let records = read_edge_list(&args.input)?;
    let graph = Graph::build(&records)?;
    if graph.node_count() == 0 {
        bail!("the input graph has no nodes; nothing to rank");
    }

    let config = build_config(&args)?;
    let prior = match &args.prior_file {
        Some(path) => read_prior_file(path, &graph)?,
        None => uniform_prior(graph.node_count()),
    };

    let (result, exit) = match args.method {
        Method::Pagerank => match pagerank(&graph, &config) {
            Ok(result) => (result, 0),
            Err(SolveError::NotConverged { result, .. }) => (*result, EXIT_NOT_CONVERGED),
            Err(err) => return Err(err.into()),
        },
        Method::Plaplacian => match solve_p_iterative(&graph, &prior, &config) {
            Ok(result) => {
                let exit = if result.converged {
                    0
                } else {
                    EXIT_NOT_CONVERGED
                };
                (result, exit)
            }
            Err(SolveError::NotConverged { result, .. }) => (*result, EXIT_NOT_CONVERGED),
            Err(err) => return Err(err.into()),
        },
    };

    write_scores_file(&graph, &result, &args.output)?;
    let manifest = RunManifest {
        command: "rank".to_string(),
        inputs: vec![display_path(&args.input)],
        method: Some(args.method.as_str().to_string()),
        config: Some(ConfigEcho::from(&config)),
        graph_nodes: graph.node_count(),
        graph_edges: graph.edge_count(),
        iterations: Some(result.iterations),
        residual_inf_norm: Some(result.residual_inf_norm),
        converged: Some(result.converged),
        wall_time_ms: elapsed_ms(started),
    };
    write_manifest(&args.output, &manifest)?;

    println!(
        "method={} nodes={} edges={} iterations={} residual={} converged={}",
        args.method.as_str(),
        graph.node_count(),
        graph.edge_count(),
        result.iterations,
        result.residual_inf_norm,
        result.converged
    );
    for (label, score) in top_k(&result, graph.labels(), args.top_k) {
        println!("('{label}', {score})");
    }

    if exit == EXIT_NOT_CONVERGED {
        eprintln!(
            "warning: solver stopped after {} iterations with residual {} (results written anyway)",
            result.iterations, result.residual_inf_norm
        );
    }
    Ok(exit)
}

fn build_config(args: &RankArgs) -> Result<SolverConfig> {
    let p = match args.method {
        Method::Plaplacian => args
            .p
            .ok_or_else(|| anyhow!("--p is required for --method plaplacian"))?,
        // PageRank never reads p; keep the default so the config validates.
        Method::Pagerank => args.p.unwrap_or(2.0),
    };
    // PageRank iterates a contraction with factor `damping`, so a much
    // tighter default tolerance is still cheap; the p-Laplacian sweeps are
    // not, hence the looser default there.
    let tol = args.tol.unwrap_or(match args.method {
        Method::Pagerank => 1e-12,
        Method::Plaplacian => 1e-9,
    });
    Ok(SolverConfig {
        p,
        mu: args.mu,
        eps: args.epsilon,
        tol,
        max_iter: args.max_iter,
        damping: args.damping,
    })
}

/// Read a prior from a TSV of `label<TAB>value` lines.  Blank lines and
/// `#` comments are skipped.  The file must cover every node of the graph
/// exactly once; unknown labels and missing nodes are both errors, since a
/// silently defaulted prior would be indistinguishable from a typo.
fn read_prior_file(path: &Path, graph: &Graph) -> Result<NodeFunction> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("failed to read {}", display_path(path)))?;
    let mut values = vec![None; graph.node_count()];
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t');
        let (Some(label), Some(raw), None) = (fields.next(), fields.next(), fields.next()) else {
            bail!(
                "{}:{}: expected label<TAB>value, got {line:?}",
                display_path(path),
                lineno + 1
            );
        };
        let value: f64 = raw.trim().parse().with_context(|| {
            format!(
                "{}:{}: invalid prior value {raw:?}",
                display_path(path),
                lineno + 1
            )
        })?;
        let Some(index) = graph.node_index(label) else {
            bail!(
                "{}:{}: label {label:?} is not a node of the graph",
                display_path(path),
                lineno + 1
            );
        };
        if values[index].is_some() {
            bail!(
                "{}:{}: duplicate prior entry for {label:?}",
                display_path(path),
                lineno + 1
            );
        }
        values[index] = Some(value);
    }
    let mut prior = Vec::with_capacity(values.len());
    for (index, value) in values.into_iter().enumerate() {
        let Some(value) = value else {
            bail!(
                "{}: no prior value for node {:?}",
                display_path(path),
                graph.label(index)
            );
        };
        prior.push(value);
    }
    Ok(NodeFunction::from(prior))
}

fn write_edge_list_file(graph: &Graph, path: &Path) -> Result<()> {
    let file =
        File::create(path).with_context(|| format!("failed to create {}", display_path(path)))?;
    let mut writer = BufWriter::new(file);
    graph
        .write_edge_list(&mut writer)
        .with_context(|| format!("failed to write {}", display_path(path)))?;
    writer.flush()?;
    Ok(())
}

fn write_scores_file(graph: &Graph, result: &RankResult, path: &Path) -> Result<()> {
    let file =
        File::create(path).with_context(|| format!("failed to create {}", display_path(path)))?;
    let mut writer = BufWriter::new(file);
    for index in 0..graph.node_count() {
        // `{}` on f64 prints the shortest string that parses back exactly,
        // so the file is a faithful, byte-deterministic dump of the scores.
        writeln!(writer, "{}\t{}", graph.label(index), result.scores[index])?;
    }
    writer.flush()?;
    Ok(())
}

fn write_manifest(primary_output: &Path, manifest: &RunManifest) -> Result<()> {
    let mut path = primary_output.as_os_str().to_owned();
    path.push(".manifest.json");
    let path = PathBuf::from(path);
    let body = serde_json::to_string_pretty(manifest)?;
    std::fs::write(&path, body + "\n")
        .with_context(|| format!("failed to write {}", display_path(&path)))?;
    Ok(())
}

fn display_path(path: &Path) -> String {
    path.display().to_string()
}

fn elapsed_ms(started: Instant) -> f64 {
    started.elapsed().as_secs_f64() * 1e3
}
