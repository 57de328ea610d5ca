use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gapforge::machine::{Mode, Polarity};
use gapforge::pipeline::{self, PipelineConfig, PipelineError, SizeSpec};

#[derive(Parser)]
#[command(name = "gapforge", version, about = "Self-referential spin Hamiltonians and finite-size gap evidence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// TOML configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    system: Option<String>,
    /// 1d or 2d
    #[arg(long)]
    mode: Option<Mode>,
    /// g or c
    #[arg(long)]
    polarity: Option<Polarity>,
    /// Inclusive range `a..b` or list `a,b,c`.
    #[arg(long)]
    sizes: Option<String>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: searcher, fixed point, terms, scan and verdict.
    Demo(Common),
    /// Run a machine with a step budget.
    Run {
        #[command(flatten)]
        common: Common,
        /// JSON file, built-in name or canonical description.
        #[arg(long)]
        machine: String,
        #[arg(long, default_value = "")]
        input: String,
    },
    /// Compile a machine to local terms.
    Compile {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        machine: String,
        #[arg(long, default_value = "")]
        input: String,
    },
    /// Gap scan of a term set.
    Scan {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        terms: PathBuf,
    },
    /// Classify a gap report.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        report: PathBuf,
    },
}

fn config(c: &Common) -> Result<PipelineConfig, PipelineError> {
    let mut cfg = match &c.config {
        Some(p) => PipelineConfig::load(p)?,
        None => PipelineConfig::default(),
    };
    if let Some(s) = &c.system {
        cfg.system = s.clone();
    }
    if let Some(m) = c.mode {
        cfg.mode = m;
    }
    if let Some(p) = c.polarity {
        cfg.polarity = p;
    }
    if let Some(s) = &c.sizes {
        cfg.sizes = Some(SizeSpec::Range(s.clone()));
    }
    if let Some(b) = c.budget {
        cfg.budget = b;
    }
    if let Some(o) = &c.out {
        cfg.output.report = Some(o.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(cfg: &PipelineConfig, text: &str) -> Result<(), PipelineError> {
    match &cfg.output.report {
        Some(p) => pipeline::write_output(p, text),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("outputs serialize")
}

fn main_inner(cli: Cli) -> Result<(), PipelineError> {
    match cli.command {
        Command::Demo(c) => {
            let cfg = config(&c)?;
            let out = pipeline::cmd_demo(&cfg)?;
            if let Some(p) = &cfg.output.terms {
                pipeline::write_output(p, &out.terms.describe())?;
            }
            eprintln!("verdict: {}", out.report.verdict.kind);
            emit(&cfg, &out.report.to_json())
        }
        Command::Run { common, machine, input } => {
            let cfg = config(&common)?;
            let m = pipeline::load_machine(&machine)?;
            emit(&cfg, &json(&pipeline::cmd_run(&m, &input, cfg.budget)?))
        }
        Command::Compile { common, machine, input } => {
            let cfg = config(&common)?;
            let m = pipeline::load_machine(&machine)?;
            let polarity = common.polarity;
            let terms = pipeline::cmd_compile(&m, &input, cfg.mode, polarity, cfg.budget)?;
            emit(&cfg, &terms.describe())
        }
        Command::Scan { common, terms } => {
            let cfg = config(&common)?;
            let terms = pipeline::load_terms(&terms)?;
            let sizes = cfg.sizes()?;
            emit(&cfg, &pipeline::cmd_scan(&terms, &sizes, &cfg.scan)?.to_json())
        }
        Command::Classify { common, report } => {
            let cfg = config(&common)?;
            let report = pipeline::load_gap_report(&report)?;
            let verdict = pipeline::cmd_classify(&report, &cfg.classifier)?;
            eprintln!("verdict: {}", verdict.kind);
            emit(&cfg, &json(&verdict))
        }
    }
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
