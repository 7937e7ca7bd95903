//! Command-line front end: construct the shipped graph families or ingest a
//! graph from JSON, analyze the association scheme, enumerate descendents,
//! fit and transform Leonard parameter arrays, run the quantum-matroid
//! suite, and run the full verification report.
//!
//! Exit codes: 0 = success / all checks pass, 1 = check failure,
//! 2 = invalid configuration, 3 = size or budget exceeded.

use clap::{Args, Parser, Subcommand};
use drgdesc::analysis::{analyze, Analyzed};
use drgdesc::graphs::{
    bilinear_forms, doob, grassmann, halved_cube, hamming, johnson, DistanceRegularGraph,
    GraphError,
};
use drgdesc::jsonio::{
    analyze_to_json, descendents_to_json, drg_from_json, expanded_to_json, graph_to_json,
    parameter_array_from_json, parameter_array_to_json, qmatroid_to_json, GraphJson,
    ParameterArrayJson,
};
use drgdesc::leonard::{expand, rho_descendent};
use drgdesc::qmatroid::full_report;
use drgdesc::report::{default_mode, enumerate, render_text, verify_all, EnumMode, VerifyOptions};
use drgdesc::subsets::{SubsetError, DEFAULT_SEARCH_BUDGET};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "drgdesc", version, about = "Width, dual width and descendents of Q-polynomial distance-regular graphs, over exact rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GraphSource {
    /// Family constructor: hamming, johnson, doob, halved_cube, grassmann,
    /// bilinear_forms
    #[arg(long)]
    family: Option<String>,
    /// Comma-separated integer parameters for the family
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    params: Vec<i64>,
    /// Ingest a graph from the JSON exchange format instead; it is fully
    /// re-verified for distance-regularity
    #[arg(long)]
    graph_json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OutputOpts {
    /// json or text
    #[arg(long, default_value = "json")]
    format: String,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EnumOpts {
    /// exhaustive, known, or search (default: chosen by size and family)
    #[arg(long)]
    mode: Option<String>,
    /// Closure-operation budget for search mode
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
    /// Worker threads; output is identical for any value
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family graph and emit it in the JSON exchange format
    Construct {
        #[command(flatten)]
        src: GraphSource,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Eigenvalues, multiplicities, Krein parameters, Q-polynomial orderings
    Analyze {
        #[command(flatten)]
        src: GraphSource,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Enumerate descendents and profile each one
    Descendents {
        #[command(flatten)]
        src: GraphSource,
        #[command(flatten)]
        opts: EnumOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Leonard parameter arrays: fit from a graph, expand, or transform
    Leonard {
        #[command(subcommand)]
        cmd: LeonardCmd,
    },
    /// Quantum-matroid report over the descendent family
    Qmatroid {
        #[command(flatten)]
        src: GraphSource,
        #[command(flatten)]
        opts: EnumOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Run every theorem check and emit the verification report
    VerifyAll {
        #[command(flatten)]
        src: GraphSource,
        #[command(flatten)]
        opts: EnumOpts,
        /// Random subsets sampled for the width inequality
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(Subcommand)]
enum LeonardCmd {
    /// Fit the parameter array of a graph (case + scalars + expansion)
    Fit {
        #[command(flatten)]
        src: GraphSource,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Expand a parameter array into its four scalar sequences
    Expand {
        /// Parameter-array JSON file
        #[arg(long = "in", visible_alias = "input")]
        input: PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Transform an array into the array of its rho-descendent
    Descend {
        #[arg(long = "in", visible_alias = "input")]
        input: PathBuf,
        /// Diameter of the descendent
        #[arg(long)]
        dprime: usize,
        #[arg(long, default_value_t = 0)]
        rho: usize,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(Debug)]
enum CliError {
    Invalid(String),
    Budget(String),
    CheckFailure(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailure(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::Budget(m) | CliError::CheckFailure(m) => m,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<SubsetError> for CliError {
    fn from(e: SubsetError) -> Self {
        match e {
            SubsetError::CapExceeded { .. } => CliError::Budget(e.to_string()),
            SubsetError::Internal(_) => CliError::CheckFailure(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

fn build_graph(src: &GraphSource) -> Result<DistanceRegularGraph, CliError> {
    if let Some(path) = &src.graph_json {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
        let gj: GraphJson = serde_json::from_str(&text)
            .map_err(|e| CliError::Invalid(format!("bad graph json: {e}")))?;
        return Ok(drg_from_json(&gj)?);
    }
    let family = src
        .family
        .as_deref()
        .ok_or_else(|| CliError::Invalid("need --family or --graph-json".to_string()))?;
    let p = &src.params;
    let want = |k: usize| -> Result<(), CliError> {
        if p.len() != k {
            return Err(CliError::Invalid(format!(
                "{family} takes {k} parameters, got {}",
                p.len()
            )));
        }
        Ok(())
    };
    let nonneg = |x: i64| -> Result<usize, CliError> {
        usize::try_from(x).map_err(|_| CliError::Invalid(format!("negative parameter {x}")))
    };
    let graph = match family {
        "hamming" => {
            want(2)?;
            hamming(nonneg(p[0])?, nonneg(p[1])?)?
        }
        "johnson" => {
            want(2)?;
            johnson(nonneg(p[0])?, nonneg(p[1])?)?
        }
        "doob" => {
            want(2)?;
            doob(nonneg(p[0])?, nonneg(p[1])?)?
        }
        "halved_cube" => {
            want(1)?;
            halved_cube(nonneg(p[0])?)?
        }
        "grassmann" => {
            want(3)?;
            grassmann(
                u8::try_from(p[0]).map_err(|_| CliError::Invalid("bad q".into()))?,
                nonneg(p[1])?,
                nonneg(p[2])?,
            )?
        }
        "bilinear_forms" | "bilinear" => {
            want(3)?;
            bilinear_forms(
                u8::try_from(p[0]).map_err(|_| CliError::Invalid("bad q".into()))?,
                nonneg(p[1])?,
                nonneg(p[2])?,
            )?
        }
        other => {
            return Err(CliError::Invalid(format!("unknown family {other}")));
        }
    };
    Ok(graph)
}

fn analyzed(src: &GraphSource) -> Result<Analyzed, CliError> {
    analyze(build_graph(src)?).map_err(|e| CliError::CheckFailure(e.to_string()))
}

fn parse_mode(opts: &EnumOpts, a: &Analyzed) -> Result<EnumMode, CliError> {
    match &opts.mode {
        None => Ok(default_mode(a)),
        Some(m) => EnumMode::parse(m)
            .ok_or_else(|| CliError::Invalid(format!("unknown mode {m} (exhaustive|known|search)"))),
    }
}

fn emit(out: &OutputOpts, json: String, text: Option<String>) -> Result<(), CliError> {
    let body = match out.format.as_str() {
        "json" => json,
        "text" => text.unwrap_or(json),
        other => return Err(CliError::Invalid(format!("unknown format {other}"))),
    };
    match &out.out {
        Some(path) => std::fs::write(path, body.as_bytes())
            .map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serialization cannot fail")
}

fn read_array(path: &PathBuf) -> Result<drgdesc::leonard::ParameterArray, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let j: ParameterArrayJson =
        serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("bad array json: {e}")))?;
    parameter_array_from_json(&j).map_err(|e| CliError::Invalid(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Construct { src, out } => {
            let g = build_graph(&src)?;
            let gj = graph_to_json(&g.graph);
            let text = format!(
                "{}  n = {}  d = {}  iota = {}\n",
                g.id(),
                g.n(),
                g.d,
                g.intersection_array_string()
            );
            emit(&out, pretty(&gj), Some(text))
        }
        Command::Analyze { src, out } => {
            let a = analyzed(&src)?;
            emit(&out, pretty(&analyze_to_json(&a)), None)
        }
        Command::Descendents { src, opts, out } => {
            let a = analyzed(&src)?;
            let mode = parse_mode(&opts, &a)?;
            let (records, complete, exhausted) = enumerate(&a, mode, opts.budget, opts.threads)?;
            let j = descendents_to_json(&a, mode.label(), complete, exhausted, &records);
            let mut text = format!(
                "{}: {} descendents ({} mode, complete = {})\n",
                a.g.id(),
                records.len(),
                mode.label(),
                complete
            );
            for r in &records {
                text.push_str(&format!(
                    "  w = {}  w* = {}  |Y| = {:<4} {}\n",
                    r.profile.w,
                    r.profile.w_star,
                    r.profile.vertices.len(),
                    r.generator.label()
                ));
            }
            emit(&out, pretty(&j), Some(text))
        }
        Command::Leonard { cmd } => match cmd {
            LeonardCmd::Fit { src, out } => {
                let a = analyzed(&src)?;
                #[derive(serde::Serialize)]
                struct FitJson {
                    schema: String,
                    graph: String,
                    array: ParameterArrayJson,
                    expanded: drgdesc::jsonio::ExpandedArrayJson,
                }
                let j = FitJson {
                    schema: drgdesc::jsonio::SCHEMA.to_string(),
                    graph: a.g.id(),
                    array: parameter_array_to_json(&a.parray),
                    expanded: expanded_to_json(&a.expanded),
                };
                emit(&out, pretty(&j), None)
            }
            LeonardCmd::Expand { input, out } => {
                let pa = read_array(&input)?;
                let ea = expand(&pa).map_err(|e| CliError::Invalid(e.to_string()))?;
                emit(&out, pretty(&expanded_to_json(&ea)), None)
            }
            LeonardCmd::Descend { input, dprime, rho, out } => {
                let pa = read_array(&input)?;
                let sub = rho_descendent(&pa, dprime, rho)
                    .map_err(|e| CliError::Invalid(e.to_string()))?;
                emit(&out, pretty(&parameter_array_to_json(&sub)), None)
            }
        },
        Command::Qmatroid { src, opts, out } => {
            let a = analyzed(&src)?;
            let mode = parse_mode(&opts, &a)?;
            let (records, complete, _) = enumerate(&a, mode, opts.budget, opts.threads)?;
            let report = full_report(&a, &records)
                .map_err(|e| CliError::CheckFailure(e.to_string()))?;
            let j = qmatroid_to_json(&a, mode.label(), complete, records.len(), &report);
            emit(&out, pretty(&j), None)
        }
        Command::VerifyAll { src, opts, samples, out } => {
            let a = analyzed(&src)?;
            let mode = Some(parse_mode(&opts, &a)?);
            let vo = VerifyOptions { mode, budget: opts.budget, threads: opts.threads, samples };
            let (report, timings) = verify_all(&a, &vo);
            for (name, ms) in &timings {
                eprintln!("timing {name}: {ms} ms");
            }
            emit(&out, pretty(&report), Some(render_text(&report)))?;
            if report.passed {
                Ok(())
            } else {
                Err(CliError::CheckFailure("verification checks failed".to_string()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
