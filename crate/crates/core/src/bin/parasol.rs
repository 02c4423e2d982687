use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use parasol_core::golden::{golden_instance, paper_check_report};
use parasol_core::manifest::Instance;
use parasol_core::pipeline::{analysis_report, analyze, debug_evaluation, validate, Analysis};
use parasol_core::report::Report;
use parasol_core::scalar::{parse_rational, Rational};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "parasol", version, about = "Exact curvature and soliton checks for left-invariant structures on Lie groups")]
struct Cli {
    /// Print approximate values of the potential data under NAME=VALUE
    /// assignments (e.g. c1=1,x3=1/2). Never affects the exit status.
    #[arg(long, global = true, value_name = "ASSIGNMENTS")]
    debug_eval: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Lie algebra and structure axioms of a manifest.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the full pipeline on a manifest.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Analyze the built-in reference instance against its exact value table.
    PaperCheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn load(path: &Path) -> anyhow::Result<Instance> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Instance::from_json(&text).with_context(|| format!("in {}", path.display()))
}

fn parse_assignments(src: &str) -> anyhow::Result<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    for part in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let Some((name, value)) = part.split_once('=') else {
            bail!("expected NAME=VALUE, got `{part}`");
        };
        out.insert(name.trim().to_string(), parse_rational(value)?);
    }
    Ok(out)
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
}

fn debug(analysis: &Analysis, assignments: &BTreeMap<String, Rational>) {
    eprintln!("approximate evaluation (debug only):");
    for line in debug_evaluation(analysis, assignments) {
        eprintln!("  {line}");
    }
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let assignments = cli.debug_eval.as_deref().map(parse_assignments).transpose()?;
    let (report, analysis, format) = match cli.command {
        Command::Validate { file, format } => (validate(&load(&file)?), None, format),
        Command::Analyze { file, seed, format } => {
            let a = analyze(&load(&file)?, seed);
            (analysis_report(&a, "analyze"), Some(a), format)
        }
        Command::PaperCheck { seed, format } => {
            let a = analyze(&golden_instance(), seed);
            (paper_check_report(&a), Some(a), format)
        }
    };
    emit(&report, format);
    if let (Some(values), Some(a)) = (assignments, analysis.as_ref()) {
        debug(a, &values);
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
