mod input;
mod report;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use misx::generators::expand_family_spec_seeded;
use misx::mis::for_each_mis;
use misx::verifier::{
    graph6_catalog, labeled_catalog, parse_tags, sweep, CatalogEntry, Engine, SweepOptions,
    SweepReport,
};
use misx::{to_graph6, MisConfig, MisError};

use input::Format;
use report::AnalysisReport;

/// Above this order counting may blow up; analyze and enumerate warn.
const LARGE_N: usize = 30;

#[derive(Parser)]
#[command(
    name = "misx",
    version,
    about = "Maximal independent sets, coverings and matchings"
)]
struct Cli {
    /// Enumeration budget in sets per call; overrides MISX_BUDGET.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants, certificates and theorem verdicts for one graph.
    Analyze(AnalyzeArgs),
    /// Check theorems across a catalog of graphs.
    Sweep(SweepArgs),
    /// Write graph6 records for a family spec.
    Generate(GenerateArgs),
    /// List the maximal independent sets of one graph.
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
struct GraphInput {
    /// Path to a graph file, or the graph text itself (e.g. "Bw").
    input: String,
    #[arg(long, value_enum, default_value = "auto")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Reductions,
    Enumeration,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Reductions => Engine::Reductions,
            EngineArg::Enumeration => Engine::Enumeration,
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    graph: GraphInput,
    /// Write the JSON report to PATH, or to standard output with "-".
    #[arg(long, value_name = "PATH")]
    json: Option<String>,
    #[arg(long, value_enum, default_value = "reductions")]
    engine: EngineArg,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).multiple(false)))]
struct SweepArgs {
    /// Every labeled graph on N vertices.
    #[arg(long, value_name = "N", group = "source")]
    all_labeled: Option<usize>,
    /// One graph6 record per line.
    #[arg(long, value_name = "PATH", group = "source")]
    graph6_file: Option<PathBuf>,
    /// Family spec; ranges like n=3..6 expand to several graphs.
    #[arg(long, value_name = "SPEC", group = "source")]
    family: Option<String>,
    /// Comma-separated theorem tags, or "all".
    #[arg(long, default_value = "all")]
    theorems: String,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write the JSON report to PATH, or to standard output with "-".
    #[arg(long, value_name = "PATH")]
    json: Option<String>,
    /// Refuse --all-labeled above this order.
    #[arg(long, default_value_t = misx::generators::DEFAULT_LABELED_LIMIT)]
    max_labeled_n: usize,
    /// Seed for random families whose spec has none.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "reductions")]
    engine: EngineArg,
}

#[derive(Args)]
struct GenerateArgs {
    /// Family spec, e.g. "star:m=4" or "cw-bipartite:a=2,b=2,leaves=2,seed=1".
    spec: String,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Seed for random families whose spec has none.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    graph: GraphInput,
    /// Stop with exit code 3 once more than L sets exist.
    #[arg(long, value_name = "L")]
    limit: Option<u64>,
}

/// Exit codes: 0 ok, 2 input or flag error, 3 budget exceeded, 4 counterexample.
enum Failure {
    Input(anyhow::Error),
    Budget(String),
    Counterexample(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Counterexample(_) => 4,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<MisError> for Failure {
    fn from(e: MisError) -> Self {
        match e {
            MisError::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            MisError::Graph(g) => Failure::Input(g.into()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match cli.budget {
        Some(b) => MisConfig::with_budget(b),
        None => MisConfig::from_env(),
    };
    let result = match cli.command {
        Command::Analyze(a) => analyze(a, &config),
        Command::Sweep(a) => run_sweep(a, &config),
        Command::Generate(a) => generate(a),
        Command::Enumerate(a) => enumerate(a, &config),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Input(e) => eprintln!("error: {e:#}"),
                Failure::Budget(msg) => eprintln!("error: {msg}"),
                Failure::Counterexample(msg) => eprintln!("counterexample: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn warn_if_large(n: usize) {
    if n > LARGE_N {
        eprintln!(
            "warning: n = {n} > {LARGE_N}; maximal independent sets may number up to 3^(n/3)"
        );
    }
}

/// Writes to `dest` ("-" is standard output).
fn write_to(dest: &str, text: &str) -> anyhow::Result<()> {
    if dest == "-" {
        io::stdout().write_all(text.as_bytes())?;
        Ok(())
    } else {
        fs::write(dest, text).with_context(|| format!("writing {dest}"))
    }
}

fn analyze(args: AnalyzeArgs, config: &MisConfig) -> Result<(), Failure> {
    let loaded = input::load(&args.graph.input, args.graph.format)?;
    warn_if_large(loaded.graph.n());
    let format = match loaded.format {
        Format::Edges => "edges",
        _ => "graph6",
    };
    let report = AnalysisReport::build(
        &loaded.graph,
        loaded.source,
        format.to_string(),
        config,
        args.engine.into(),
    )?;
    let to_stdout = args.json.as_deref() == Some("-");
    if let Some(dest) = &args.json {
        let json = serde_json::to_string_pretty(&report).map_err(anyhow::Error::from)? + "\n";
        write_to(dest, &json)?;
    }
    if !to_stdout {
        print!("{}", report.human());
    }
    if report.is_sound() {
        Ok(())
    } else {
        Err(Failure::Counterexample(format!(
            "{} violates a checked statement",
            report.input.graph6
        )))
    }
}

type Entries = Box<dyn Iterator<Item = CatalogEntry>>;

fn catalog_entries(args: &SweepArgs) -> anyhow::Result<(String, Entries)> {
    if let Some(n) = args.all_labeled {
        let entries = labeled_catalog(n, args.max_labeled_n)
            .map_err(|e| anyhow!("{e}; raise --max-labeled-n to allow it"))?;
        return Ok((format!("labeled:n={n}"), Box::new(entries)));
    }
    if let Some(path) = &args.graph6_file {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let entries: Vec<_> = graph6_catalog(&text).collect();
        return Ok((
            format!("graph6:{}", path.display()),
            Box::new(entries.into_iter()),
        ));
    }
    let spec = args.family.as_deref().expect("clap enforces one source");
    let families = expand_family_spec_seeded(spec, args.seed)?;
    let entries = families.into_iter().enumerate().map(|(i, f)| CatalogEntry {
        index: i as u64,
        graph: f.generate().map_err(|e| format!("{f}: {e}")),
    });
    Ok((format!("family:{spec}"), Box::new(entries)))
}

fn sweep_summary(r: &SweepReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "catalog   {}", r.catalog);
    let _ = writeln!(s, "records   {} (processed {})", r.records, r.processed);
    for t in &r.tallies {
        let _ = writeln!(
            s,
            "{:<18} checked={} held={} extremal={} consistent={} n/a={}",
            t.tag.as_str(),
            t.checked,
            t.held,
            t.extremal,
            t.consistent,
            t.not_applicable
        );
    }
    for e in &r.parse_errors {
        let _ = writeln!(s, "parse error at {}: {}", e.index, e.message);
    }
    for e in &r.skipped {
        let _ = writeln!(s, "skipped {}: {}", e.index, e.message);
    }
    for c in &r.counterexamples {
        let _ = writeln!(
            s,
            "COUNTEREXAMPLE {} #{} {}: {}",
            c.tag.as_str(),
            c.index,
            c.graph6,
            c.detail
        );
    }
    if r.aborted {
        let _ = writeln!(s, "stopped early at the counterexample cap");
    }
    if let Some(ms) = r.wall_time_ms {
        let _ = writeln!(s, "time      {ms} ms");
    }
    s
}

fn run_sweep(args: SweepArgs, config: &MisConfig) -> Result<(), Failure> {
    let tags = parse_tags(&args.theorems).map_err(|e| anyhow!(e))?;
    if args.jobs == 0 {
        return Err(anyhow!("--jobs must be at least 1").into());
    }
    let (name, entries) = catalog_entries(&args)?;
    let opts = SweepOptions {
        tags,
        jobs: args.jobs,
        engine: args.engine.into(),
        mis: *config,
        ..SweepOptions::default()
    };
    let report = sweep(&name, entries, &opts);
    let to_stdout = args.json.as_deref() == Some("-");
    if let Some(dest) = &args.json {
        // Wall time is the only nondeterministic field; keep it out of the file.
        let stable = SweepReport {
            wall_time_ms: None,
            ..report.clone()
        };
        let json = serde_json::to_string_pretty(&stable).map_err(anyhow::Error::from)? + "\n";
        write_to(dest, &json)?;
    }
    if to_stdout {
        eprint!("{}", sweep_summary(&report));
    } else {
        print!("{}", sweep_summary(&report));
    }
    if report.is_clean() {
        Ok(())
    } else {
        Err(Failure::Counterexample(format!(
            "{} counterexample(s) in {name}",
            report.counterexamples.len()
        )))
    }
}

fn generate(args: GenerateArgs) -> Result<(), Failure> {
    let families = expand_family_spec_seeded(&args.spec, args.seed).map_err(anyhow::Error::from)?;
    let mut out = String::new();
    for f in &families {
        let g = f.generate().map_err(anyhow::Error::from)?;
        out += &to_graph6(&g).map_err(anyhow::Error::from)?;
        out.push('\n');
    }
    match &args.out {
        Some(path) => {
            fs::write(path, out).with_context(|| format!("writing {}", path.display()))?
        }
        None => io::stdout()
            .write_all(out.as_bytes())
            .map_err(anyhow::Error::from)?,
    }
    Ok(())
}

fn enumerate(args: EnumerateArgs, config: &MisConfig) -> Result<(), Failure> {
    let loaded = input::load(&args.graph.input, args.graph.format)?;
    warn_if_large(loaded.graph.n());
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut printed = 0u64;
    let mut over_limit = false;
    let mut io_error = None;
    for_each_mis(&loaded.graph, config, |s| {
        if args.limit.is_some_and(|l| printed >= l) {
            over_limit = true;
            return ControlFlow::Break(());
        }
        let line = if s.is_empty() {
            "()".to_string()
        } else {
            s.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        if let Err(e) = writeln!(out, "{line}") {
            io_error = Some(e);
            return ControlFlow::Break(());
        }
        printed += 1;
        ControlFlow::Continue(())
    })?;
    if let Some(e) = io_error {
        return Err(anyhow::Error::from(e).into());
    }
    out.flush().map_err(anyhow::Error::from)?;
    if over_limit {
        return Err(Failure::Budget(format!(
            "more than {printed} maximal independent sets; stopped at --limit"
        )));
    }
    Ok(())
}
