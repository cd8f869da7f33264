use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use lpgst_core::{
    classify_path, cross_verify, fidelity_sweep, laplacian, laplacian_spectrum, parse_graph, path_spectrum, VertexPair,
};

mod output;
mod range;
mod records;

use range::{EdgeSelection, Span};
use records::*;

const EXIT_INPUT: u8 = 2;
const EXIT_CROSS_CHECK: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "lpgst",
    version,
    about = "Pair-state transfer on graph Laplacians: path edge classification and fidelity sweeps"
)]
struct Cli {
    /// Report wall-clock time on stderr.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify mirror edge pairs {a,a+1} -> {n-a,n-a+1} on paths.
    #[command(after_help = CLASSIFY_HELP)]
    Classify(ClassifyArgs),
    /// Decide one path instance with both pipelines and report agreement.
    #[command(after_help = DECIDE_HELP)]
    Decide(DecideArgs),
    /// Sample the pair fidelity over a time window.
    #[command(after_help = SWEEP_HELP)]
    Sweep(SweepArgs),
}

const CLASSIFY_HELP: &str = "\
CSV columns: n,a,verdict,rule (plus lattice,agree with --cross-check).
verdict is yes, no or invalid; invalid rows have 2a = n and rule same-pair.
The first line is a comment carrying the schema version.
Exit status 3 if --cross-check finds a disagreement.";

const DECIDE_HELP: &str = "\
Prints one JSON record (schema in docs/output-schema.json).
Exit status 2 for invalid input (including 2a = n), 3 if the pipelines disagree.";

const SWEEP_HELP: &str = "\
CSV output: comment lines with schema_version, sup_estimate and argmax_time,
then columns t,fidelity. Pairs are written as a,b with 1-based labels.
Graph files list `n <count>` followed by `e <u> <v>` lines; `#` starts a comment.";

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Path sizes: N, LO..HI or LO..=HI (inclusive).
    #[arg(long)]
    n: Span,
    /// Edge indices: all, A or LO..HI; values outside 1..n-1 are skipped.
    #[arg(long, default_value = "all")]
    a: EdgeSelection,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Also run the lattice pipeline and witness checks on every instance.
    #[arg(long)]
    cross_check: bool,
}

#[derive(Args, Debug)]
struct DecideArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    a: usize,
    /// Include the odd-parity relation for negative verdicts.
    #[arg(long)]
    certificate: bool,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["path", "graph"])))]
struct SweepArgs {
    /// Use the path on N vertices.
    #[arg(long, value_name = "N")]
    path: Option<usize>,
    /// Read the graph from an edge-list file.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Source pair, e.g. 1,2.
    #[arg(long)]
    from: VertexPair,
    /// Target pair, e.g. 2,3.
    #[arg(long)]
    to: VertexPair,
    #[arg(long)]
    tmax: f64,
    /// Number of grid points, both ends included.
    #[arg(long, default_value_t = 10_000)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Omit the sampled trace.
    #[arg(long)]
    summary: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match &cli.command {
        Command::Classify(args) => run_classify(args, &mut out),
        Command::Decide(args) => run_decide(args, &mut out),
        Command::Sweep(args) => run_sweep(args, &mut out),
    }
    .and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    if cli.timing {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("lpgst: error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run_classify(args: &ClassifyArgs, out: &mut impl Write) -> Result<u8> {
    let mut rows = Vec::new();
    for n in args.n.iter() {
        for a in args.a.for_n(n) {
            rows.push(classify_row(n, a, args.cross_check)?);
        }
    }
    if rows.is_empty() {
        bail!("no instances with 1 <= a < n for --n {} --a", args.n);
    }
    match args.format {
        Format::Csv => write_classify_csv(&rows, args.cross_check, out)?,
        Format::Json => writeln!(out, "{}", output::to_json_pretty(&ClassifyRecord::new(rows.clone())))?,
    }
    let disagreements: Vec<_> = rows.iter().filter(|r| r.agree == Some(false)).collect();
    if disagreements.is_empty() {
        Ok(0)
    } else {
        for r in &disagreements {
            eprintln!("lpgst: cross-check failed for n={} a={}", r.n, r.a);
        }
        Ok(EXIT_CROSS_CHECK)
    }
}

fn classify_row(n: usize, a: usize, cross_check: bool) -> Result<ClassifyRow> {
    if 2 * a == n {
        return Ok(ClassifyRow::same_pair(n, a, cross_check));
    }
    let v = classify_path(n, a)?;
    let (lattice, agree) = if cross_check {
        let cv = cross_verify(n, a)?;
        (Some(yes_no(cv.lattice.has_lpgst).to_string()), Some(cv.agree()))
    } else {
        (None, None)
    };
    Ok(ClassifyRow {
        n,
        a,
        verdict: yes_no(v.has_lpgst).to_string(),
        rule: rule_id(&v).to_string(),
        lattice,
        agree,
    })
}

fn write_classify_csv(rows: &[ClassifyRow], cross_check: bool, out: &mut impl Write) -> Result<()> {
    writeln!(out, "# lpgst classify schema_version={}", output::SCHEMA_VERSION)?;
    if cross_check {
        writeln!(out, "n,a,verdict,rule,lattice,agree")?;
    } else {
        writeln!(out, "n,a,verdict,rule")?;
    }
    for r in rows {
        write!(out, "{},{},{},{}", r.n, r.a, r.verdict, r.rule)?;
        if cross_check {
            let agree = r.agree.map_or("n/a".to_string(), |b| b.to_string());
            write!(out, ",{},{}", r.lattice.as_deref().unwrap_or("n/a"), agree)?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn run_decide(args: &DecideArgs, out: &mut impl Write) -> Result<u8> {
    let cv = cross_verify(args.n, args.a)?;
    let record = DecideRecord::new(args.n, args.a, &cv, args.certificate);
    writeln!(out, "{}", output::to_json_pretty(&record))?;
    if record.agree {
        Ok(0)
    } else {
        eprintln!(
            "lpgst: closed form and lattice pipelines disagree for n={} a={}",
            args.n, args.a
        );
        Ok(EXIT_CROSS_CHECK)
    }
}

fn run_sweep(args: &SweepArgs, out: &mut impl Write) -> Result<u8> {
    let (spectrum, source) = match (&args.path, &args.graph) {
        (Some(n), _) => (path_spectrum(*n)?, SweepSource::Path { n: *n }),
        (None, Some(file)) => {
            let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let g = parse_graph(&text).with_context(|| format!("parsing {}", file.display()))?;
            let s = laplacian_spectrum(&laplacian(&g))?;
            (
                s,
                SweepSource::Graph {
                    file: file.display().to_string(),
                    n: g.vertex_count(),
                },
            )
        }
        (None, None) => bail!("one of --path or --graph is required"),
    };
    let trace = fidelity_sweep(&spectrum, args.from, args.to, args.tmax, args.steps)?;
    match args.format {
        Format::Csv => {
            writeln!(out, "# lpgst sweep schema_version={}", output::SCHEMA_VERSION)?;
            writeln!(out, "# sup_estimate={}", output::fmt_float(trace.sup_estimate))?;
            writeln!(out, "# argmax_time={}", output::fmt_float(trace.argmax_time))?;
            if !args.summary {
                writeln!(out, "t,fidelity")?;
                for (t, p) in trace.times.iter().zip(&trace.fidelities) {
                    writeln!(out, "{},{}", output::fmt_float(*t), output::fmt_float(*p))?;
                }
            }
        }
        Format::Json => {
            let record = SweepRecord::new(
                source,
                (args.from, args.to),
                (args.tmax, args.steps),
                &trace,
                args.summary,
            );
            writeln!(out, "{}", output::to_json_line(&record))?;
        }
    }
    Ok(0)
}
