//! End-to-end orchestration: formal system → searcher → fixed point →
//! local terms → gap scan → verdict, with reproducible JSON reports.
//!
//! Reports carry no timestamps or paths, so equal configurations give
//! byte-identical output.

mod config;

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use config::{parse_sizes, OutputPaths, PipelineConfig, SizeSpec};

use crate::hamc::{
    audit, compile_with, self_referential_hamiltonian, sha256_hex, with_polarity, Audit, CompileError, CompileOptions,
    LocalTermSet, NormCertificate,
};
use crate::machine::{self, Machine, MachineError, Mode, Polarity, RunOptions, RunOutcome};
use crate::spectral::{
    classify, gap_scan, ClassifierConfig, Clauses, GapReport, ScanOptions, SizeStatus, SpectralError, Verdict,
    VerdictKind,
};

/// Flag recorded when the searcher exhausts its budget.
pub const FLAG_NOT_HALTED: &str = "searcher did not halt within budget";
/// Flag recorded when the searcher rejected its own input.
pub const FLAG_REJECTED: &str = "searcher rejected its input and looped";

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("convergence error: {0}")]
    Convergence(String),
    #[error("size error: {0}")]
    Size(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("{0}")]
    Machine(MachineError),
    #[error("input error: {0}")]
    Input(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl PipelineError {
    /// Process exit code for the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Config(_) => 2,
            PipelineError::Capacity(_) => 3,
            PipelineError::Convergence(_) => 4,
            PipelineError::Size(_) => 5,
            PipelineError::InsufficientData(_) => 6,
            PipelineError::Machine(_) | PipelineError::Input(_) | PipelineError::Io { .. } => 1,
        }
    }
}

impl From<MachineError> for PipelineError {
    fn from(e: MachineError) -> Self {
        match e {
            MachineError::UnknownSystem(_) => PipelineError::Config(e.to_string()),
            e => PipelineError::Machine(e),
        }
    }
}

impl From<CompileError> for PipelineError {
    fn from(e: CompileError) -> Self {
        match e {
            CompileError::Capacity(m) => PipelineError::Capacity(m),
            CompileError::Machine(m) => m.into(),
        }
    }
}

impl From<SpectralError> for PipelineError {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::Size(m) => PipelineError::Size(m),
            SpectralError::Convergence { .. } => PipelineError::Convergence(e.to_string()),
            SpectralError::InsufficientData(m) => PipelineError::InsufficientData(m),
            SpectralError::Invalid(m) => PipelineError::Config(m),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifacts {
    pub searcher: String,
    pub searcher_sha256: String,
    pub fixed_point: String,
    pub fixed_point_sha256: String,
    /// The term set's own hash field.
    pub terms_hash: String,
    /// SHA-256 of the full term-set description.
    pub terms_sha256: String,
    pub gap_report_sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemoReport {
    pub tool: String,
    pub version: String,
    pub config: PipelineConfig,
    pub sizes: Vec<usize>,
    pub step_capacity: u64,
    pub run: RunOutcome,
    pub flags: Vec<String>,
    pub artifacts: Artifacts,
    pub certificate: NormCertificate,
    pub audit: Audit,
    pub gap_report: GapReport,
    pub verdict: Verdict,
}

impl DemoReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[derive(Debug, Clone)]
pub struct DemoOutput {
    pub report: DemoReport,
    pub terms: LocalTermSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub machine: String,
    pub input: String,
    pub max_steps: u64,
    pub outcome: RunOutcome,
}

/// A machine given as a JSON file path, a built-in name or a canonical
/// description.
pub fn load_machine(source: &str) -> Result<Machine, PipelineError> {
    let path = Path::new(source);
    if path.is_file() {
        return Ok(machine::file::load_machine_file(path)?);
    }
    machine::resolve(source).ok_or_else(|| PipelineError::Input(format!("{source:?} is neither a file, a built-in nor a description")))
}

fn read(path: &Path) -> Result<String, PipelineError> {
    std::fs::read_to_string(path).map_err(|source| PipelineError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_terms(path: &Path) -> Result<LocalTermSet, PipelineError> {
    crate::hamc::parse_terms(&read(path)?).map_err(|e| PipelineError::Input(e.to_string()))
}

pub fn load_gap_report(path: &Path) -> Result<GapReport, PipelineError> {
    serde_json::from_str(&read(path)?).map_err(|e| PipelineError::Input(e.to_string()))
}

/// Writes through a temporary sibling so a failed write leaves no partial
/// file behind.
pub fn write_output(path: &Path, text: &str) -> Result<(), PipelineError> {
    let io = |source| PipelineError::Io {
        path: path.display().to_string(),
        source,
    };
    let tmp = path.with_extension("partial");
    std::fs::write(&tmp, text).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

pub fn cmd_run(m: &Machine, input: &str, max_steps: u64) -> Result<RunReport, PipelineError> {
    let outcome = machine::run_with(m, input, RunOptions::new(max_steps))?;
    Ok(RunReport {
        machine: m.encode(),
        input: input.to_string(),
        max_steps,
        outcome,
    })
}

pub fn cmd_compile(
    m: &Machine,
    input: &str,
    mode: Mode,
    polarity: Option<Polarity>,
    step_capacity: u64,
) -> Result<LocalTermSet, PipelineError> {
    let opts = CompileOptions {
        step_capacity,
        ..Default::default()
    };
    let terms = compile_with(m, input, mode, opts)?;
    Ok(match polarity {
        Some(p) => with_polarity(terms, p),
        None => terms,
    })
}

/// Gap scan that fails only when no size could be solved.
pub fn cmd_scan(terms: &LocalTermSet, sizes: &[usize], opts: &ScanOptions) -> Result<GapReport, PipelineError> {
    let report = gap_scan(terms, sizes, opts)?;
    if report.ok_sizes().next().is_none() {
        return Err(match report.sizes[0].status.clone() {
            SizeStatus::SizeError { message } => PipelineError::Size(message),
            SizeStatus::ConvergenceError { message, residual } => {
                PipelineError::Convergence(format!("{message} (worst residual {residual:e})"))
            }
            SizeStatus::Invalid { message } => PipelineError::Config(message),
            SizeStatus::Ok => unreachable!(),
        });
    }
    Ok(report)
}

pub fn cmd_classify(report: &GapReport, cfg: &ClassifierConfig) -> Result<Verdict, PipelineError> {
    Ok(classify(report, cfg)?)
}

/// Like [`classify`], but too few usable sizes is itself an inconclusive
/// outcome rather than an error.
fn classify_or_inconclusive(report: &GapReport, cfg: &ClassifierConfig) -> Result<Verdict, PipelineError> {
    match classify(report, cfg) {
        Err(SpectralError::InsufficientData(m)) => Ok(Verdict {
            kind: VerdictKind::Inconclusive,
            clauses: Clauses {
                gapped: false,
                cover: false,
                decay: false,
                fit: None,
            },
            rationale: vec![format!("insufficient data: {m}")],
            config: *cfg,
            sizes_used: Vec::new(),
        }),
        other => Ok(other?),
    }
}

pub fn cmd_demo(cfg: &PipelineConfig) -> Result<DemoOutput, PipelineError> {
    cfg.validate()?;
    let sizes = cfg.sizes()?;
    let searcher = machine::build_gap_proof_searcher_for(&cfg.system, cfg.polarity, cfg.mode)?;
    let setup = machine::fix_point(&searcher).encode().len() as u64 + 1;
    // one step to parse the input, then one candidate per step
    let step_capacity = setup + 1 + cfg.budget;
    let opts = CompileOptions {
        step_capacity,
        ..Default::default()
    };
    let s = self_referential_hamiltonian(&cfg.system, cfg.polarity, cfg.mode, opts)?;
    let run = s.terms.run.expect("compiled terms record their run");
    let mut flags = Vec::new();
    match run {
        RunOutcome::BudgetExhausted { .. } => flags.push(FLAG_NOT_HALTED.to_string()),
        RunOutcome::LoopDetected { .. } => flags.push(FLAG_REJECTED.to_string()),
        RunOutcome::Halted { .. } => {}
    }
    let gap_report = cmd_scan(&s.terms, &sizes, &cfg.scan)?;
    let verdict = classify_or_inconclusive(&gap_report, &cfg.classifier)?;
    let description = s.terms.describe();
    let artifacts = Artifacts {
        searcher: s.searcher.encode(),
        searcher_sha256: sha256_hex(&s.searcher.encode()),
        fixed_point: s.machine.encode(),
        fixed_point_sha256: sha256_hex(&s.machine.encode()),
        terms_hash: s.terms.hash.clone(),
        terms_sha256: sha256_hex(&description),
        gap_report_sha256: sha256_hex(&gap_report.to_json()),
    };
    let report = DemoReport {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        sizes,
        step_capacity,
        run,
        flags,
        artifacts,
        certificate: s.terms.certify(),
        audit: audit(&s),
        gap_report,
        verdict,
    };
    Ok(DemoOutput { report, terms: s.terms })
}

/// Runs the demo and writes the configured outputs, only after every stage
/// has succeeded.
pub fn cmd_demo_to_files(cfg: &PipelineConfig) -> Result<DemoOutput, PipelineError> {
    let out = cmd_demo(cfg)?;
    let report = out.report.to_json();
    if let Some(p) = &cfg.output.terms {
        write_output(p, &out.terms.describe())?;
    }
    if let Some(p) = &cfg.output.report {
        write_output(p, &report)?;
    }
    Ok(out)
}
