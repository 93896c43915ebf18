//! Command-line driver: family generation, criticality verification,
//! critical-pair analysis, the hypergraph pipeline, exhaustive search, and
//! the degree-square / disjoint-pair conjecture checks.
//!
//! Exit codes: 0 success, 1 a verified property is false (non-critical
//! graph, violated inequality), 2 usage or I/O errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;

use diamcrit::criticality::{
    check_furedi, default_t, is_diameter_k_critical, Analysis, AnalysisConfig, AnalysisOptions,
};
use diamcrit::families::{
    a1_star, gen_complete_bipartite, gen_elementary, gen_g3m, gen_gk, random_matching, Elementary,
    GkParams, Matching,
};
use diamcrit::formats::{read_edge_list, read_graph6, write_edge_list, write_graph6};
use diamcrit::graph::Graph;
use diamcrit::hypergraph::pipeline_from_analysis;
use diamcrit::report::report_from_analysis;
use diamcrit::search::{degree_square_check, extremal_search_with, SearchOptions};

#[derive(Parser)]
#[command(
    name = "diamcrit",
    version,
    about = "Diameter-critical graph families, criticality analysis, and extremal search"
)]
struct Cli {
    /// Cap the worker thread count (default: one per CPU).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph family instance.
    Gen(GenArgs),
    /// Verify that a graph is diameter-k-critical.
    Verify(VerifyArgs),
    /// Run the critical-pair analysis and emit the JSON report.
    Analyze(AnalyzeArgs),
    /// Run the 3-uniform hypergraph reduction pipeline.
    Hyper(HyperArgs),
    /// Exhaustively search small diameter-k-critical graphs.
    Search(SearchArgs),
    /// Check the degree-square and edge-plus-disjoint-pairs inequalities.
    Conjecture(ConjectureArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Gk,
    G30,
    G3m,
    Bipartite,
    Cycle,
    Path,
    Complete,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Edgelist,
    Graph6,
}

#[derive(Args)]
struct GenArgs {
    /// Which family to generate.
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Vertex count (for gk, a shorthand for a0=1, a1=a1*(k,n), a2=rest).
    #[arg(long)]
    n: Option<u32>,
    /// Target diameter for the gk family.
    #[arg(long)]
    k: Option<u32>,
    /// Left hub size of gk, or the first part of bipartite.
    #[arg(long)]
    a0: Option<u32>,
    /// Internal path count of gk.
    #[arg(long)]
    a1: Option<u32>,
    /// Right hub size of gk, or the second part of bipartite.
    #[arg(long)]
    a2: Option<u32>,
    /// Matching over the clique side for g3m, as `u-v,u-v,...`.
    #[arg(long)]
    matching: Option<String>,
    /// Sample a random matching for g3m with this seed (when --matching is
    /// not given; without either, the matching is empty).
    #[arg(long)]
    seed: Option<u64>,
    /// Output format; defaults to the output extension, then to edgelist.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Output path; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// The diameter the graph must critically attain.
    #[arg(short)]
    k: u32,
    /// Input graph (.g6 or .el; see --format).
    input: PathBuf,
    /// Override the input format detection.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Also write the full analysis report (with default t) to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(short)]
    k: u32,
    /// Multiplicity threshold; defaults to ceil(sqrt(n)).
    #[arg(short)]
    t: Option<u32>,
    /// Qualify paths by every incident edge, not only the path end edges.
    #[arg(long)]
    strict_p_membership: bool,
    input: PathBuf,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct HyperArgs {
    #[arg(short)]
    k: u32,
    /// Multiplicity threshold; defaults to ceil(sqrt(n)).
    #[arg(short)]
    t: Option<u32>,
    /// Pipeline level; defaults to k.
    #[arg(short)]
    i: Option<u32>,
    /// Qualify paths by every incident edge, not only the path end edges.
    #[arg(long)]
    strict_p_membership: bool,
    input: PathBuf,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Write the final hypergraph here (text format, plus a `.json`
    /// sidecar with handle/center annotations and the partition).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Write the pipeline report here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: u32,
    /// Allow the n = 7 scan over 2^21 labeled graphs (progress on stderr).
    #[arg(long)]
    exhaustive: bool,
    /// Write the result JSON here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the extremal witnesses as graph6 lines to this path.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ConjectureArgs {
    input: PathBuf,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // ignore the error if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Gen(args) => gen(args),
        Command::Verify(args) => verify(args),
        Command::Analyze(args) => analyze(args),
        Command::Hyper(args) => hyper(args),
        Command::Search(args) => search(args),
        Command::Conjecture(args) => conjecture(args),
    }
}

fn parse_matching_spec(spec: &str, half_n: u32) -> Result<Matching> {
    let mut pairs = Vec::new();
    for token in spec.split(',').filter(|s| !s.is_empty()) {
        let (a, b) = token
            .split_once('-')
            .ok_or_else(|| anyhow!("matching pair `{token}` is not of the form u-v"))?;
        pairs.push((
            a.trim().parse::<u32>().context("matching endpoint")?,
            b.trim().parse::<u32>().context("matching endpoint")?,
        ));
    }
    Ok(Matching::new(&pairs, half_n)?)
}

fn gen(args: GenArgs) -> Result<ExitCode> {
    let need_n = || {
        args.n
            .ok_or_else(|| anyhow!("--n is required for this family"))
    };
    let graph = match args.family {
        FamilyArg::Cycle => gen_elementary(Elementary::Cycle, need_n()?)?,
        FamilyArg::Path => gen_elementary(Elementary::Path, need_n()?)?,
        FamilyArg::Complete => gen_elementary(Elementary::Complete, need_n()?)?,
        FamilyArg::Bipartite => match (args.a0, args.a2) {
            (Some(a), Some(b)) => gen_complete_bipartite(a, b)?,
            (None, None) => {
                let n = need_n()?;
                gen_complete_bipartite(n / 2, n.div_ceil(2))?
            }
            _ => bail!("bipartite takes either --n or both --a0 and --a2"),
        },
        FamilyArg::Gk => {
            let k = args.k.ok_or_else(|| anyhow!("--k is required for gk"))?;
            let params = match (args.a0, args.a1, args.a2) {
                (Some(a0), Some(a1), Some(a2)) => GkParams::new(k, a0, a1, a2)?,
                (None, None, None) => {
                    let n = need_n()?;
                    if k < 3 {
                        bail!("gk requires k >= 3");
                    }
                    let a1 = a1_star(k, n);
                    let used = 1 + a1 * (k - 1);
                    if a1 < 1 || n <= used {
                        bail!("n = {n} is too small for k = {k} with a1 = {a1}");
                    }
                    GkParams::new(k, 1, a1, n - used)?
                }
                _ => bail!("gk takes either --n or all of --a0 --a1 --a2"),
            };
            gen_gk(params)?
        }
        FamilyArg::G30 => gen_g3m(need_n()?, &Matching::empty())?,
        FamilyArg::G3m => {
            let n = need_n()?;
            let matching = match (&args.matching, args.seed) {
                (Some(spec), _) => parse_matching_spec(spec, n / 2)?,
                (None, Some(seed)) => {
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                    random_matching(n / 2, &mut rng)
                }
                (None, None) => Matching::empty(),
            };
            gen_g3m(n, &matching)?
        }
    };

    let format = args.format.unwrap_or_else(|| {
        args.output
            .as_deref()
            .and_then(detect_format)
            .unwrap_or(FormatArg::Edgelist)
    });
    let text = match format {
        FormatArg::Edgelist => write_edge_list(&graph),
        FormatArg::Graph6 => format!("{}\n", write_graph6(&graph)?),
    };
    match &args.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {path:?}"))?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn detect_format(path: &Path) -> Option<FormatArg> {
    match path.extension()?.to_str()? {
        "g6" | "graph6" => Some(FormatArg::Graph6),
        "el" | "edgelist" | "txt" => Some(FormatArg::Edgelist),
        _ => None,
    }
}

fn load_graph(path: &Path, format: Option<FormatArg>) -> Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path:?}"))?;
    let format = format
        .or_else(|| detect_format(path))
        .ok_or_else(|| anyhow!("cannot detect format of {path:?}; pass --format"))?;
    let graph = match format {
        FormatArg::Graph6 => {
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or_else(|| anyhow!("{path:?} is empty"))?;
            read_graph6(line)?
        }
        FormatArg::Edgelist => read_edge_list(&text)?,
    };
    Ok(graph)
}

fn write_json<T: serde::Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    let json = serde_json::to_string_pretty(value)?;
    match path {
        Some(path) => std::fs::write(path, format!("{json}\n"))
            .with_context(|| format!("writing {path:?}"))?,
        None => println!("{json}"),
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let graph = load_graph(&args.input, args.format)?;
    let verdict = is_diameter_k_critical(&graph, args.k);
    println!("diameter-{}-critical: {verdict}", args.k);
    if let Some(json) = &args.json {
        let cfg = AnalysisConfig::new(args.k.max(2), default_t(graph.vertex_count()))?;
        let analysis = Analysis::new(&graph, cfg);
        write_json(&report_from_analysis(&analysis), Some(json))?;
    }
    Ok(if verdict.is_yes() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn analyze(args: AnalyzeArgs) -> Result<ExitCode> {
    let graph = load_graph(&args.input, args.format)?;
    let t = args.t.unwrap_or_else(|| default_t(graph.vertex_count()));
    let cfg = AnalysisConfig::new(args.k, t)?;
    let options = AnalysisOptions {
        strict_p_membership: args.strict_p_membership,
    };
    let analysis = Analysis::with_options(&graph, cfg, options);
    let report = report_from_analysis(&analysis);
    write_json(&report, args.json.as_deref())?;
    if args.json.is_some() {
        println!(
            "n={} m={} k={} t={} critical={} critical_pairs={} g0_edges={}",
            report.n,
            report.m,
            report.k,
            report.t,
            report.is_critical,
            report.critical_pair_count,
            report.g0_edge_count
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn hyper(args: HyperArgs) -> Result<ExitCode> {
    let graph = load_graph(&args.input, args.format)?;
    let t = args.t.unwrap_or_else(|| default_t(graph.vertex_count()));
    let cfg = AnalysisConfig::new(args.k, t)?;
    let level = args.i.unwrap_or(args.k);
    let options = AnalysisOptions {
        strict_p_membership: args.strict_p_membership,
    };
    let analysis = Analysis::with_options(&graph, cfg, options);
    let run = pipeline_from_analysis(&analysis, level)?;
    write_json(&run.report, args.json.as_deref())?;
    if let Some(path) = &args.output {
        std::fs::write(path, run.h4.to_text()).with_context(|| format!("writing {path:?}"))?;
        let sidecar_path = path.with_extension(match path.extension() {
            Some(ext) => format!("{}.json", ext.to_string_lossy()),
            None => "json".to_string(),
        });
        write_json(&run.h4.sidecar(), Some(&sidecar_path))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn search(args: SearchArgs) -> Result<ExitCode> {
    let progress = |done: u64, total: u64| {
        eprint!("\rscanned {done}/{total} labeled graphs");
        if done == total {
            eprintln!();
        }
    };
    let options = SearchOptions {
        exhaustive: args.exhaustive,
        progress: args
            .exhaustive
            .then_some(&progress as &(dyn Fn(u64, u64) + Sync)),
    };
    let result = extremal_search_with(args.n, args.k, &options)?;
    write_json(&result, args.json.as_deref())?;
    if let Some(path) = &args.output {
        let mut lines = result.extremal_graph6.join("\n");
        if !lines.is_empty() {
            lines.push('\n');
        }
        std::fs::write(path, lines).with_context(|| format!("writing {path:?}"))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn conjecture(args: ConjectureArgs) -> Result<ExitCode> {
    let graph = load_graph(&args.input, args.format)?;
    let ds = degree_square_check(&graph);
    let fu = check_furedi(&graph);
    println!(
        "degree_square: lhs={} rhs={} ratio={} holds={}",
        ds.lhs,
        ds.rhs,
        ds.ratio.map_or("n/a".into(), |r| format!("{r:.6}")),
        ds.holds
    );
    let fu_ratio = if fu.bound > 0.0 {
        format!("{:.6}", fu.lhs as f64 / fu.bound)
    } else {
        "n/a".into()
    };
    println!(
        "furedi: lhs={} bound={} ratio={fu_ratio} holds={}",
        fu.lhs, fu.bound, fu.holds
    );
    Ok(if ds.holds && fu.holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
