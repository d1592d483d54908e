//! Command-line front end: load a scenario or a JSON config, run the
//! analyses, and emit deterministic text or JSON reports.
//!
//! Exit codes: 0 success, 1 result mismatch or internal error, 2 config
//! error, 3 budget exhaustion, 4 construction failure.

use clap::{Args, Parser, Subcommand, ValueEnum};
use gact_cli::config::{parse_range, ConfigError, RunConfig};
use gact_cli::output;
use gact_core::catalog::{build_scenario, run_expectations, scenario_names, ScenarioParams};
use gact_core::filtertop::{is_open, separate, tail_filter, OpennessReport};
use gact_core::sets::KSetSpec;
use gact_core::special::build_special;
use gact_core::zariski::build_subbase;
use gact_core::Error as CoreError;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gact",
    version,
    about = "Exact topology analyses for monoid acts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-point isolation and pseudocharacter report over the probe
    Analyze(JobArgs),
    /// Build, verify, and emit a special sequence
    Special(JobArgs),
    /// Test a set for openness in the tail-filter topology
    Open(OpenArgs),
    /// Grow the two-sided separation chains from two disjoint seeds
    Separate(SeparateArgs),
    /// Run every built-in scenario against its expected verdicts
    Catalog(OutputArgs),
}

#[derive(Args)]
struct SourceArgs {
    /// Built-in scenario name (see `catalog`)
    #[arg(long, conflicts_with = "config")]
    scenario: Option<String>,
    /// Path to a JSON run configuration
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct OverrideArgs {
    /// Probe range lo..hi
    #[arg(long, allow_hyphen_values = true)]
    probe: Option<String>,
    /// Closure word-length bound
    #[arg(long)]
    max_word_len: Option<usize>,
    /// Closure element budget
    #[arg(long)]
    max_elements: Option<usize>,
    /// Constant window lo..hi
    #[arg(long, allow_hyphen_values = true)]
    const_window: Option<String>,
    /// Special-sequence length
    #[arg(long)]
    length: Option<usize>,
    /// Search window lo..hi for sequence points
    #[arg(long, allow_hyphen_values = true)]
    search_window: Option<String>,
    /// Recursion depth for chains and separation
    #[arg(long)]
    depth: Option<usize>,
    /// Seed echoed into reports
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct JobArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    overrides: OverrideArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OpenArgs {
    /// The set to test: inline JSON `{"kind":...,"points":[...]}` or @file
    #[arg(long)]
    set: String,
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    overrides: OverrideArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SeparateArgs {
    /// First seed set: inline JSON or @file
    #[arg(long = "a")]
    seed_a: String,
    /// Second seed set: inline JSON or @file
    #[arg(long = "b")]
    seed_b: String,
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    overrides: OverrideArgs,
    #[command(flatten)]
    output: OutputArgs,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::config(e.to_string())
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match &e {
            CoreError::BudgetExceeded { .. } => 3,
            CoreError::WindowTooSmall { .. } => 4,
            CoreError::UnknownScenario(_)
            | CoreError::InvalidCarrier(_)
            | CoreError::InvalidMap(_)
            | CoreError::PointOutsideCarrier(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 2,
            message: format!("io: {e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Special(args) => cmd_special(args),
        Command::Open(args) => cmd_open(args),
        Command::Separate(args) => cmd_separate(args),
        Command::Catalog(args) => cmd_catalog(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn load_config(source: &SourceArgs, overrides: &OverrideArgs) -> Result<RunConfig, Failure> {
    let mut config = match (&source.scenario, &source.config) {
        (Some(name), None) => RunConfig::from_scenario(name)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str(&text)
                .map_err(|e| Failure::config(format!("{}: {e}", path.display())))?
        }
        (None, None) => {
            return Err(Failure::config("pass --scenario NAME or --config FILE"));
        }
        (Some(_), Some(_)) => unreachable!("clap enforces the conflict"),
    };
    if let Some(range) = &overrides.probe {
        config.probe = parse_range(range)?;
    }
    if let Some(range) = &overrides.const_window {
        config.const_window = parse_range(range)?;
    }
    if let Some(range) = &overrides.search_window {
        config.search_window = parse_range(range)?;
    }
    if let Some(n) = overrides.max_word_len {
        config.max_word_len = n;
    }
    if let Some(n) = overrides.max_elements {
        config.max_elements = n;
    }
    if let Some(n) = overrides.length {
        config.length = n;
    }
    if let Some(n) = overrides.depth {
        config.depth = n;
    }
    if let Some(n) = overrides.seed {
        config.seed = n;
    }
    config.validate()?;
    Ok(config)
}

fn emit(output: &OutputArgs, text: String, json: String) -> Result<(), Failure> {
    let body = match output.format {
        Format::Text => text,
        Format::Json => json,
    };
    match &output.out {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn cmd_analyze(args: JobArgs) -> Result<u8, Failure> {
    let config = load_config(&args.source, &args.overrides)?;
    let closure = config.closure()?;
    let subbase = build_subbase(
        &closure,
        &config.const_points(),
        gact_core::zariski::DEFAULT_RAW_SET_BUDGET,
    )?;
    let report = subbase.discreteness_report(&config.probe_points())?;
    let out = output::AnalyzeOutput {
        command: "analyze",
        scenario: config.scenario.clone(),
        seed: config.seed,
        report,
    };
    emit(&args.output, output::analyze_text(&out), to_json(&out))?;
    Ok(0)
}

fn build_sequence(
    config: &RunConfig,
) -> Result<(gact_core::MonoidClosure, gact_core::SpecialSequence), Failure> {
    let closure = config.closure()?;
    let sequence = build_special(
        &closure,
        config.probe.0,
        config.length,
        config.search_window,
    )?;
    Ok((closure, sequence))
}

fn cmd_special(args: JobArgs) -> Result<u8, Failure> {
    let config = load_config(&args.source, &args.overrides)?;
    let (_, sequence) = build_sequence(&config)?;
    let out = output::SpecialOutput {
        command: "special",
        scenario: config.scenario.clone(),
        seed: config.seed,
        base_point: config.probe.0,
        search_window: config.search_window,
        sequence: sequence.to_file(),
    };
    emit(&args.output, output::special_text(&out), to_json(&out))?;
    Ok(0)
}

fn parse_set(text: &str) -> Result<KSetSpec, Failure> {
    let body = match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)?,
        None => text.to_string(),
    };
    serde_json::from_str(&body).map_err(|e| Failure::config(format!("set: {e}")))
}

fn cmd_open(args: OpenArgs) -> Result<u8, Failure> {
    let config = load_config(&args.source, &args.overrides)?;
    let spec = parse_set(&args.set)?;
    let (closure, sequence) = build_sequence(&config)?;
    let set = spec.bind(closure.carrier())?;
    let fb = tail_filter(&sequence)?;
    let verdict = is_open(&set, &fb, &closure)?;
    let out = output::OpenOutput {
        command: "open",
        scenario: config.scenario.clone(),
        seed: config.seed,
        set: spec,
        sequence_points: sequence.points().to_vec(),
        report: OpennessReport::new(&fb, &closure, verdict),
    };
    emit(&args.output, output::open_text(&out), to_json(&out))?;
    Ok(0)
}

fn cmd_separate(args: SeparateArgs) -> Result<u8, Failure> {
    let config = load_config(&args.source, &args.overrides)?;
    let spec_a = parse_set(&args.seed_a)?;
    let spec_b = parse_set(&args.seed_b)?;
    let (closure, sequence) = build_sequence(&config)?;
    let seed_a = spec_a.bind(closure.carrier())?;
    let seed_b = spec_b.bind(closure.carrier())?;
    let fb = tail_filter(&sequence)?;
    let report = separate(&seed_a, &seed_b, &fb, &closure, config.depth)?;
    let out = output::SeparateOutput {
        command: "separate",
        scenario: config.scenario.clone(),
        seed: config.seed,
        depth: config.depth,
        seeds: (spec_a, spec_b),
        sequence_points: sequence.points().to_vec(),
        report,
    };
    emit(&args.output, output::separate_text(&out), to_json(&out))?;
    Ok(0)
}

fn cmd_catalog(args: OutputArgs) -> Result<u8, Failure> {
    let mut scenarios = Vec::new();
    for name in scenario_names() {
        let scenario = build_scenario(name, &ScenarioParams::default())?;
        scenarios.push(run_expectations(&scenario)?);
    }
    let all_pass = scenarios.iter().all(|r| r.all_pass);
    let out = output::CatalogOutput {
        command: "catalog",
        scenarios,
        all_pass,
    };
    emit(&args, output::catalog_text(&out), to_json(&out))?;
    Ok(if all_pass { 0 } else { 1 })
}
