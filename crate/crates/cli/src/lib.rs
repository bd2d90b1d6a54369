//! Argument parsing and dispatch for the `chainzero` binary.
//!
//! Exit status: 0 on success, 1 on usage or operational errors, 2 when the
//! methods of `analyze` or `verify` disagree.

use std::ffi::OsString;
use std::io::Write;

use chainzero::verify::{CrossCheckOptions, DEFAULT_CAP, DEFAULT_TRUNCATION};
use chainzero::{
    components, cross_check, diagram_from_rising, diagram_increasing_case, enumerate_partitions,
    enumerate_sigma_partitions, orbit_codimension, partition_from_rank, partition_of_diagram,
    rank_pattern, render, ComponentReport, CrossCheckReport, DimensionVector, LaceDiagram, Method,
    RenderFormat, RenderOptions, RisingVector,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "chainzero",
    version,
    about = "Components of zero-product chains of matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute (C, theta) by several methods and report agreement
    Analyze(AnalyzeArgs),
    /// List every maximal-dimensional component with its data
    Components(ComponentsArgs),
    /// Stream Kostant partitions as JSON Lines with their codimension
    Enumerate(EnumerateArgs),
    /// Draw a lace diagram from a rising vector or an increasing-case vector
    Draw(DrawArgs),
    /// Cross-check all methods, including exhaustive enumeration
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct DimArg {
    /// Dimension vector, comma separated
    #[arg(short = 'd', long = "dims", value_name = "D")]
    d: DimensionVector,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[command(flatten)]
    dim: DimArg,
    /// Comma-separated subset of qip,qseries,closedform,bruteforce
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<Method>>,
    /// First series truncation order; widened until a non-zero term appears
    #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
    truncation: usize,
    /// Maximum number of partitions brute force may enumerate
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Use exhaustive search instead of branch and bound for qip
    #[arg(long)]
    no_prune: bool,
    /// Placeholder position for the component pipeline
    #[arg(short = 'k')]
    k: Option<usize>,
    /// Include wall-clock time per method
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    check: CheckArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    check: CheckArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct ComponentsArgs {
    #[command(flatten)]
    dim: DimArg,
    #[arg(short = 'k')]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[command(flatten)]
    dim: DimArg,
    /// Only partitions with m[0,n] = 0
    #[arg(long)]
    sigma_only: bool,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DrawFormat {
    Ascii,
    Svg,
    Tikz,
    Json,
}

#[derive(Debug, Args)]
struct DrawArgs {
    #[command(flatten)]
    dim: DimArg,
    /// Rising vector with '*' at the placeholder, or n entries: an
    /// increasing-case vector when D is weakly increasing, otherwise a
    /// rising vector with the placeholder at the first minimum
    #[arg(short = 'e', value_name = "E", allow_hyphen_values = true)]
    e: String,
    #[arg(long, value_enum, default_value_t = DrawFormat::Ascii)]
    format: DrawFormat,
    /// Characters between columns in ASCII output
    #[arg(long, default_value_t = 3)]
    cell_width: usize,
}

type Failure = Box<dyn std::error::Error>;

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_ERROR
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Analyze(a) => check(
            &a.check,
            &[Method::Qip, Method::Qseries, Method::ClosedForm],
            false,
            out,
        ),
        Command::Verify(a) => check(&a.check, &Method::ALL, true, out),
        Command::Components(a) => {
            let report = components(&a.dim.d, a.k)?;
            match a.format {
                ReportFormat::Json => write_json(out, &report)?,
                ReportFormat::Text => out.write_all(components_text(&report).as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Enumerate(a) => enumerate(&a, out),
        Command::Draw(a) => draw(&a, out),
    }
}

fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn check(
    args: &CheckArgs,
    defaults: &[Method],
    full: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let methods = args.methods.clone().unwrap_or_else(|| defaults.to_vec());
    let options = CrossCheckOptions {
        cap: args.cap,
        truncation: args.truncation,
        prune: !args.no_prune,
        k: args.k,
    };
    let report = cross_check(&args.dim.d, &methods, &options)?;
    write_json(out, &check_document(&report, args.timing, full))?;
    Ok(exit_code(&report))
}

fn exit_code(report: &CrossCheckReport) -> i32 {
    if report.consistent() {
        EXIT_OK
    } else {
        EXIT_DISAGREE
    }
}

fn check_document(report: &CrossCheckReport, timing: bool, full: bool) -> Value {
    let results: Vec<Value> = report
        .results
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(r).expect("method results serialize");
            if timing {
                v["elapsed_ms"] = json!(r.elapsed.as_secs_f64() * 1e3);
            }
            v
        })
        .collect();
    let (c, theta) = match (report.agree, report.results.first()) {
        (true, Some(r)) => (json!(r.c), json!(r.theta)),
        _ => (Value::Null, Value::Null),
    };
    let mut doc = json!({
        "d": report.d,
        "C": c,
        "theta": theta,
        "methods": results,
        "agree": report.agree,
    });
    if full {
        doc["partitions_match"] = json!(report.partitions_match);
    }
    doc
}

fn components_text(report: &ComponentReport) -> String {
    let mut s = format!(
        "d = {}  k = {}  C = {}  theta = {}\n",
        report.d, report.k, report.c, report.theta
    );
    for (i, c) in report.components.iter().enumerate() {
        s += &format!("\ncomponent {}: rising vector {}\n", i + 1, c.rising_vector);
        s += &format!("  kostant partition: {}\n", c.kostant_partition);
        let eqs: Vec<String> = c.equations.iter().map(ToString::to_string).collect();
        s += &format!(
            "  equations: {}\n",
            if eqs.is_empty() {
                "none".into()
            } else {
                eqs.join(", ")
            }
        );
        for (x, a) in c.representative.matrices().iter().enumerate() {
            s += &format!("  A{}:\n", x + 1);
            for line in a.to_string().lines() {
                s += &format!("    {line}\n");
            }
        }
        s += "  diagram:\n";
        for line in render(&c.diagram, RenderFormat::Ascii, &RenderOptions::default()).lines() {
            s += &format!("    {line}\n");
        }
    }
    s
}

fn enumerate(args: &EnumerateArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let d = &args.dim.d;
    let iter = if args.sigma_only {
        enumerate_sigma_partitions(d)
    } else {
        enumerate_partitions(d)
    };
    for (count, m) in iter.enumerate() {
        if count as u64 >= args.cap {
            return Err(chainzero::Error::SearchSpaceTooLarge { cap: args.cap }.into());
        }
        let line = json!({ "kostant_partition": m, "codim": orbit_codimension(&m)? });
        serde_json::to_writer(&mut *out, &line)?;
        writeln!(out)?;
    }
    Ok(EXIT_OK)
}

fn parse_entries(text: &str) -> Result<Vec<u64>, Failure> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad entry {t:?}: {e}").into())
        })
        .collect()
}

fn draw(args: &DrawArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let d = &args.dim.d;
    let (label, diagram): (Value, LaceDiagram) = if args.e.contains('*') {
        let v: RisingVector = args.e.parse()?;
        (json!(v), diagram_from_rising(d, &v)?)
    } else {
        let e = parse_entries(&args.e)?;
        if e.len() != d.order() {
            return Err(format!("expected {} entries, got {}", d.order(), e.len()).into());
        }
        if d.is_weakly_increasing() {
            (json!(e), diagram_increasing_case(d, &e)?)
        } else {
            let v = RisingVector::from_parts(d.default_star(), &e);
            (json!(v), diagram_from_rising(d, &v)?)
        }
    };
    let opts = RenderOptions {
        cell_width: args.cell_width.max(1),
        standalone: true,
        ..RenderOptions::default()
    };
    match args.format {
        DrawFormat::Ascii => {
            out.write_all(render(&diagram, RenderFormat::Ascii, &opts).as_bytes())?
        }
        DrawFormat::Svg => out.write_all(render(&diagram, RenderFormat::Svg, &opts).as_bytes())?,
        DrawFormat::Tikz => {
            out.write_all(render(&diagram, RenderFormat::Tikz, &opts).as_bytes())?
        }
        DrawFormat::Json => {
            let m = partition_of_diagram(&diagram)?;
            let r = rank_pattern(&m);
            debug_assert_eq!(partition_from_rank(&r).ok().as_ref(), Some(&m));
            write_json(
                out,
                &json!({
                    "d": d,
                    "e": label,
                    "kostant_partition": m,
                    "rank_pattern": r,
                    "codim": orbit_codimension(&m)?,
                    "diagram": diagram,
                }),
            )?;
        }
    }
    Ok(EXIT_OK)
}
