//! The `irrtree` command line.
//!
//! [`run`] parses arguments and returns the process exit code; [`run_with`]
//! does the same against caller-supplied streams so tests can drive it
//! without spawning a process.
//!
//! Exit codes: 0 success, 1 usage error, 2 I/O or input-format error,
//! 3 when `check-claims --fail-on-counterexample` sees a failing claim.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use irrtree::claims::{ClaimSelection, ClaimVerdict, ClaimsError, EvaluationConfig, EvaluationContext, EvaluationReport};
use irrtree::construct::{self, ConstructError};
use irrtree::degseq::DegSeqError;
use irrtree::enumerate::{self, EnumerateError, IndexName, Objective, SearchConfig, TreeClassFilter};
use irrtree::format::{self, FormatError};
use irrtree::{compute_bundle, DegreeSequence, FibonacciConvention, Graph, IndexBundle};

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "IRRTREE_WORKERS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Format(#[from] FormatError),
    #[error("{0}")]
    Input(String),
    #[error("{0} claim(s) have counterexamples")]
    Counterexamples(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) | CliError::Format(_) | CliError::Input(_) => 2,
            CliError::Counterexamples(_) => 3,
        }
    }
}

macro_rules! input_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        }
    )*};
}
input_error!(DegSeqError, ConstructError, EnumerateError, serde_json::Error, csv::Error);

impl From<ClaimsError> for CliError {
    fn from(e: ClaimsError) -> Self {
        match e {
            ClaimsError::InvalidRange { .. } | ClaimsError::UnknownClaim(_) => CliError::Usage(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "irrtree",
    version,
    about = "Irregularity indices of trees: compute, generate, enumerate, search and check published bounds",
    after_help = "Worker count precedence: --workers, then $IRRTREE_WORKERS, then the number of available cores."
)]
struct Cli {
    /// Worker threads for parallel work [default: $IRRTREE_WORKERS, else all cores].
    #[arg(long, global = true, value_parser = parse_workers)]
    workers: Option<u16>,
    /// Force machine-readable JSON on standard output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute every index for each input graph (one JSON object per graph).
    Indices(IndicesArgs),
    /// Generate a named tree.
    Gen(GenArgs),
    /// Write every free tree of an order as graph6 lines.
    Enumerate(EnumerateArgs),
    /// Find an extremal tree for an index.
    Extremal(ExtremalArgs),
    /// Degree-sequence utilities.
    Degseq {
        #[command(subcommand)]
        command: DegseqCommand,
    },
    /// Evaluate the registered claims over all trees of a range of orders.
    CheckClaims(CheckClaimsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Auto,
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Graph6,
    Edgelist,
}

#[derive(Debug, Args)]
struct IndicesArgs {
    /// Input file; standard input when omitted or `-`.
    input: Option<PathBuf>,
    /// Input format; `auto` treats input containing digits or `#` as an edge list.
    #[arg(long, value_enum, default_value = "auto")]
    format: InputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Star,
    Path,
    Cat,
    Fib,
    Random,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(value_enum)]
    family: Family,
    /// Order (star, path, random) or last Fibonacci index (fib).
    #[arg(long)]
    n: Option<usize>,
    /// Spine degrees for `cat`, e.g. 2,3,2.
    #[arg(long, value_delimiter = ',')]
    spine: Vec<usize>,
    #[arg(long, value_enum, default_value = "paper")]
    fib_convention: FibConvention,
    /// Seed for `random`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `graph6`, `edgelist`, `-` (standard output) or a file path.
    #[arg(long, default_value = "-")]
    out: String,
    /// Output format when `--out` names a destination.
    #[arg(long, value_enum)]
    format: Option<GraphFormat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FibConvention {
    Paper,
    Standard,
}

impl From<FibConvention> for FibonacciConvention {
    fn from(c: FibConvention) -> Self {
        match c {
            FibConvention::Paper => FibonacciConvention::Paper,
            FibConvention::Standard => FibonacciConvention::Standard,
        }
    }
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    max_degree: Option<usize>,
    /// Output path or `-` for standard output.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum IndexArg {
    Irr,
    Sigma,
    IrrT,
    SigmaT,
}

impl From<IndexArg> for IndexName {
    fn from(i: IndexArg) -> Self {
        match i {
            IndexArg::Irr => IndexName::Irr,
            IndexArg::Sigma => IndexName::Sigma,
            IndexArg::IrrT => IndexName::IrrT,
            IndexArg::SigmaT => IndexName::SigmaT,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ObjectiveArg {
    Min,
    Max,
}

#[derive(Debug, Args)]
struct ExtremalArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    index: IndexArg,
    #[arg(long, value_enum)]
    objective: ObjectiveArg,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum DegseqCommand {
    /// Report whether a sequence is graphical and tree-realizable.
    Check { sequence: DegreeSequence },
    /// Print a realization (a graph, or a tree with `--tree`).
    Realize {
        sequence: DegreeSequence,
        #[arg(long)]
        tree: bool,
        #[arg(long, value_enum, default_value = "graph6")]
        format: GraphFormat,
    },
    /// Report whether `first` majorizes `second`.
    Majorize { first: DegreeSequence, second: DegreeSequence },
}

#[derive(Debug, Args)]
struct CheckClaimsArgs {
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    #[arg(long, default_value_t = 9)]
    n_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated claim ids; all claims when omitted.
    #[arg(long)]
    claims: Option<ClaimSelection>,
    /// Write the JSON report to a path, or `-` for standard output.
    #[arg(long)]
    report: Option<String>,
    /// Write per-claim counts as CSV to a path, or `-` for standard output.
    #[arg(long)]
    csv: Option<String>,
    /// Exit with status 3 if any claim has a counterexample.
    #[arg(long)]
    fail_on_counterexample: bool,
    /// Include the wall time in the report (makes it non-reproducible).
    #[arg(long)]
    timing: bool,
}

/// Parses `args` (including the program name) and runs against the
/// process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with injected streams.
pub fn run_with<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = resolve_workers(cli.workers)
        .and_then(worker_pool).and_then(|pool| dispatch(&cli, &pool, stdin, stdout, stderr));
    match result.and_then(|()| stdout.flush().map_err(CliError::from)) {
        Ok(()) => 0,
        Err(e) => {
            if !matches!(e, CliError::Counterexamples(_)) {
                let _ = writeln!(stderr, "irrtree: {e}");
            }
            e.exit_code()
        }
    }
}

fn parse_workers(text: &str) -> Result<u16, String> {
    match text.trim().parse::<u16>() {
        Ok(w) if w >= 1 => Ok(w),
        _ => Err(format!("expected a worker count between 1 and {}, got {text:?}", u16::MAX)),
    }
}

/// The flag wins; the environment is consulted only when it is absent.
fn resolve_workers(flag: Option<u16>) -> Result<Option<u16>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(WORKERS_ENV) {
        Ok(text) if !text.trim().is_empty() => parse_workers(&text)
            .map(Some)
            .map_err(|e| CliError::Usage(format!("${WORKERS_ENV}: {e}"))),
        _ => Ok(None),
    }
}

fn worker_pool(workers: Option<u16>) -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        builder = builder.num_threads(w as usize);
    }
    builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}

fn dispatch(
    cli: &Cli,
    pool: &rayon::ThreadPool,
    stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Indices(args) => indices(args, stdin, stdout),
        Command::Gen(args) => gen(args, stdout),
        Command::Enumerate(args) => enumerate_trees(args, stdout),
        Command::Extremal(args) => extremal(args, pool, stdout),
        Command::Degseq { command } => degseq(command, stdout),
        Command::CheckClaims(args) => check_claims(args, cli.json, pool, stdout, stderr),
    }
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Runs `f` against standard output for `-`, otherwise a created file.
fn with_destination(
    target: &str,
    stdout: &mut dyn Write,
    f: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    if target == "-" {
        f(stdout)
    } else {
        let mut file = BufWriter::new(File::create(target)?);
        f(&mut file)?;
        file.flush()?;
        Ok(())
    }
}

// ------------------------------------------------------------------ indices

#[derive(Serialize)]
struct IndicesRecord<'a> {
    graph6: String,
    #[serde(flatten)]
    bundle: &'a IndexBundle,
}

fn looks_like_edgelist(text: &str) -> bool {
    // graph6 uses bytes 63..=126 only, so digits and '#' never occur in it
    // (apart from the optional header).
    text.lines()
        .map(|l| l.trim().trim_start_matches(">>graph6<<"))
        .any(|l| l.bytes().any(|b| b.is_ascii_digit() || b == b'#'))
}

fn indices(args: &IndicesArgs, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut text = String::new();
    match &args.input {
        Some(p) if p.as_os_str() != "-" => {
            File::open(p)?.read_to_string(&mut text)?;
        }
        _ => {
            stdin.read_to_string(&mut text)?;
        }
    }
    let format = match args.format {
        InputFormat::Auto if looks_like_edgelist(&text) => InputFormat::Edgelist,
        InputFormat::Auto => InputFormat::Graph6,
        f => f,
    };
    let graphs: Vec<Graph> = match format {
        InputFormat::Edgelist => vec![format::parse_edgelist(&text)?],
        _ => text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(format::parse_graph6)
            .collect::<Result<_, _>>()?,
    };
    if graphs.is_empty() {
        return Err(CliError::Input("no graph in input".into()));
    }
    for g in &graphs {
        let bundle = compute_bundle(g);
        json_line(
            stdout,
            &IndicesRecord {
                graph6: format::write_graph6(g),
                bundle: &bundle,
            },
        )?;
    }
    Ok(())
}

// ---------------------------------------------------------------------- gen

fn require_n(args: &GenArgs) -> Result<usize, CliError> {
    args.n
        .ok_or_else(|| CliError::Usage(format!("gen {:?} needs --n", args.family).to_lowercase()))
}

fn gen(args: &GenArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let tree = match args.family {
        Family::Star => construct::star(require_n(args)?)?,
        Family::Path => construct::path(require_n(args)?)?,
        Family::Fib => construct::fibonacci_caterpillar(require_n(args)?, args.fib_convention.into())?,
        Family::Random => construct::random_tree(require_n(args)?, args.seed)?,
        Family::Cat => {
            if args.spine.is_empty() {
                return Err(CliError::Usage("gen cat needs --spine, e.g. --spine 2,3,2".into()));
            }
            construct::caterpillar(&args.spine)?
        }
    };
    let (format, target) = match args.out.as_str() {
        "graph6" => (GraphFormat::Graph6, "-"),
        "edgelist" => (GraphFormat::Edgelist, "-"),
        other => (args.format.unwrap_or(GraphFormat::Graph6), other),
    };
    with_destination(target, stdout, |out| {
        match format {
            GraphFormat::Graph6 => writeln!(out, "{}", format::write_graph6(&tree))?,
            GraphFormat::Edgelist => out.write_all(format::write_edgelist(&tree).as_bytes())?,
        }
        Ok(())
    })
}

// ---------------------------------------------------------------- enumerate

fn filter_for(n: usize, max_degree: Option<usize>) -> TreeClassFilter {
    match max_degree {
        Some(d) => TreeClassFilter::with_max_degree(n, d),
        None => TreeClassFilter::order(n),
    }
}

fn enumerate_trees(args: &EnumerateArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let trees = enumerate::free_trees(filter_for(args.n, args.max_degree))?;
    with_destination(&args.out, stdout, |out| {
        for t in trees {
            writeln!(out, "{}", format::write_graph6(&t))?;
        }
        Ok(())
    })
}

// ----------------------------------------------------------------- extremal

#[derive(Serialize)]
struct ExtremalOutput {
    n: usize,
    index: &'static str,
    objective: &'static str,
    max_degree: Option<usize>,
    value: u64,
    witness_graph6: String,
    exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    optimum_count: Option<usize>,
}

fn extremal(args: &ExtremalArgs, pool: &rayon::ThreadPool, stdout: &mut dyn Write) -> Result<(), CliError> {
    let config = SearchConfig {
        seed: args.seed,
        ..SearchConfig::default()
    };
    let objective = match args.objective {
        ObjectiveArg::Min => Objective::Min,
        ObjectiveArg::Max => Objective::Max,
    };
    let index: IndexName = args.index.into();
    let filter = filter_for(args.n, args.max_degree);
    let result = pool.install(|| enumerate::extremal(filter, index, objective, &config))?;
    json_line(
        stdout,
        &ExtremalOutput {
            n: args.n,
            index: index.name(),
            objective: if objective == Objective::Min { "min" } else { "max" },
            max_degree: args.max_degree,
            value: result.value,
            witness_graph6: format::write_graph6(&result.witness),
            exhaustive: result.exhaustive,
            optimum_count: result.optimum_count,
        },
    )
}

// ------------------------------------------------------------------- degseq

#[derive(Serialize)]
struct DegseqReport {
    sequence: String,
    length: usize,
    sum: usize,
    graphical: bool,
    tree_realizable: bool,
}

fn degseq(command: &DegseqCommand, stdout: &mut dyn Write) -> Result<(), CliError> {
    match command {
        DegseqCommand::Check { sequence } => json_line(
            stdout,
            &DegseqReport {
                sequence: sequence.to_string(),
                length: sequence.len(),
                sum: sequence.sum(),
                graphical: sequence.is_graphical(),
                tree_realizable: sequence.is_tree_realizable(),
            },
        ),
        DegseqCommand::Realize { sequence, tree, format } => {
            let graph = if *tree {
                sequence.realize_tree()?.into_graph()
            } else {
                sequence.realize_graph()?
            };
            match format {
                GraphFormat::Graph6 => writeln!(stdout, "{}", format::write_graph6(&graph))?,
                GraphFormat::Edgelist => stdout.write_all(format::write_edgelist(&graph).as_bytes())?,
            }
            Ok(())
        }
        DegseqCommand::Majorize { first, second } => {
            #[derive(Serialize)]
            struct Out {
                first: String,
                second: String,
                majorizes: bool,
            }
            let majorizes = first.majorizes(second)?;
            json_line(
                stdout,
                &Out {
                    first: first.to_string(),
                    second: second.to_string(),
                    majorizes,
                },
            )
        }
    }
}

// ------------------------------------------------------------- check-claims

#[derive(Serialize)]
struct CsvRow<'a> {
    id: &'a str,
    domain_size: u64,
    holds: u64,
    fails: u64,
    vacuous: u64,
    first_witness: String,
}

fn csv_row(v: &ClaimVerdict) -> CsvRow<'_> {
    let first_witness = v
        .first_counterexample
        .as_ref()
        .and_then(|c| c.witness_g6.clone().or_else(|| c.witness_pair_g6.as_ref().map(|p| p.join(" "))))
        .unwrap_or_default();
    CsvRow {
        id: &v.id,
        domain_size: v.domain_size,
        holds: v.holds,
        fails: v.fails,
        vacuous: v.vacuous,
        first_witness,
    }
}

fn write_table(out: &mut dyn Write, report: &EvaluationReport) -> io::Result<()> {
    writeln!(out, "orders {}..={}, seed {}", report.n_min, report.n_max, report.seed)?;
    writeln!(out, "{:<4} {:>8} {:>8} {:>8} {:>8}", "id", "domain", "holds", "fails", "vacuous")?;
    for v in &report.claims {
        writeln!(out, "{:<4} {:>8} {:>8} {:>8} {:>8}", v.id, v.domain_size, v.holds, v.fails, v.vacuous)?;
    }
    Ok(())
}

fn check_claims(
    args: &CheckClaimsArgs,
    json: bool,
    pool: &rayon::ThreadPool,
    stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let config = EvaluationConfig::new(args.n_min, args.n_max, args.seed);
    let claims = match &args.claims {
        Some(sel) => sel.claims(),
        None => irrtree::claims::registry(),
    };
    let mut report = pool.install(|| EvaluationContext::build(config).map(|ctx| ctx.evaluate_claims(&claims)))?;
    if !args.timing {
        report = report.body();
    }

    let report_to_stdout = args.report.as_deref() == Some("-");
    let csv_to_stdout = args.csv.as_deref() == Some("-");
    if let Some(target) = &args.report {
        with_destination(target, stdout, |out| {
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)?;
            Ok(())
        })?;
    }
    if let Some(target) = &args.csv {
        with_destination(target, stdout, |out| {
            let mut w = csv::Writer::from_writer(out);
            for v in &report.claims {
                w.serialize(csv_row(v))?;
            }
            w.flush()?;
            Ok(())
        })?;
    }
    if !report_to_stdout && !csv_to_stdout {
        if json {
            json_line(stdout, &report)?;
        } else {
            write_table(stdout, &report)?;
        }
    }

    let failing = report.claims.iter().filter(|v| v.fails > 0).count();
    if args.fail_on_counterexample && failing > 0 {
        writeln!(stderr, "irrtree: {failing} claim(s) have counterexamples")?;
        return Err(CliError::Counterexamples(failing));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str], input: &str) -> (i32, String, String) {
        let mut stdin = input.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("irrtree").chain(args.iter().copied());
        let code = run_with(argv, &mut stdin, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_capture(&["frobnicate"], "").0, 1);
        assert_eq!(run_capture(&["indices", "--bogus"], "").0, 1);
        assert_eq!(run_capture(&["gen", "star"], "").0, 1);
        assert_eq!(run_capture(&["check-claims", "--n-min", "9", "--n-max", "4"], "").0, 1);
        assert_eq!(run_capture(&["check-claims", "--claims", "C99"], "").0, 1);
        assert_eq!(run_capture(&["--workers", "0", "gen", "star", "--n", "3"], "").0, 1);
    }

    #[test]
    fn help_and_version_exit_zero() {
        let (code, out, _) = run_capture(&["--help"], "");
        assert_eq!(code, 0);
        assert!(out.contains("check-claims"));
        assert_eq!(run_capture(&["--version"], "").0, 0);
    }

    #[test]
    fn format_errors_exit_two() {
        let (code, _, err) = run_capture(&["indices", "--format", "graph6"], "not graph6!\n");
        assert_eq!(code, 2);
        assert!(err.starts_with("irrtree:"));
        assert_eq!(run_capture(&["indices"], "").0, 2);
        assert_eq!(run_capture(&["degseq", "realize", "3,3"], "").0, 2);
    }

    #[test]
    fn edgelist_detection() {
        assert!(looks_like_edgelist("0 1\n1 2\n"));
        assert!(looks_like_edgelist("# order 1\n"));
        assert!(!looks_like_edgelist("Ch\n"));
        assert!(!looks_like_edgelist(">>graph6<<Ch\nEsa?\n"));
    }
}
