//! Pipeline configuration (TOML).

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::machine::{Mode, Polarity};
use crate::spectral::{ClassifierConfig, ScanOptions};

/// Sizes as a list (`[4, 6, 8]`) or an inclusive range string (`"4..12"`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SizeSpec {
    List(Vec<usize>),
    Range(String),
}

impl SizeSpec {
    pub fn resolve(&self) -> Result<Vec<usize>, PipelineError> {
        match self {
            SizeSpec::List(v) if !v.is_empty() => Ok(v.clone()),
            SizeSpec::List(_) => Err(PipelineError::Config("empty size list".into())),
            SizeSpec::Range(s) => parse_sizes(s),
        }
    }
}

/// Parses `a..b` (inclusive) or a comma-separated list.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>, PipelineError> {
    let bad = || PipelineError::Config(format!("bad size range {s:?} (expected a..b or a,b,c)"));
    let s = s.trim();
    let out: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
        (a..=b).collect()
    } else {
        s.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad())?
    };
    if out.is_empty() || out.contains(&0) {
        return Err(bad());
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputPaths {
    pub report: Option<PathBuf>,
    pub terms: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub system: String,
    pub polarity: Polarity,
    pub mode: Mode,
    /// Candidate proofs the searcher may examine.
    pub budget: u64,
    /// Sizes to scan; defaults depend on the mode.
    pub sizes: Option<SizeSpec>,
    pub classifier: ClassifierConfig,
    pub scan: ScanOptions,
    #[serde(skip_serializing)]
    pub output: OutputPaths,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            system: "INCONSISTENT-F".into(),
            polarity: Polarity::G,
            mode: Mode::OneD,
            budget: 1_000_000,
            sizes: None,
            classifier: ClassifierConfig::default(),
            scan: ScanOptions::default(),
            output: OutputPaths::default(),
        }
    }
}

impl PipelineConfig {
    pub fn from_toml(text: &str) -> Result<Self, PipelineError> {
        let cfg: PipelineConfig = toml::from_str(text).map_err(|e| PipelineError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, PipelineError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PipelineError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if crate::formal::system_by_id(&self.system).is_none() {
            return Err(PipelineError::Config(format!(
                "unknown system {:?} (known: {})",
                self.system,
                crate::formal::SYSTEM_IDS.join(", ")
            )));
        }
        if self.budget == 0 {
            return Err(PipelineError::Config("budget must be positive".into()));
        }
        self.classifier
            .validate()
            .map_err(|e| PipelineError::Config(e.to_string()))?;
        self.sizes()?;
        Ok(())
    }

    /// Configured sizes, or `4..12` on chains and `2..3` on lattices.
    pub fn sizes(&self) -> Result<Vec<usize>, PipelineError> {
        match (&self.sizes, self.mode) {
            (Some(s), _) => s.resolve(),
            (None, Mode::OneD) => Ok((4..=12).collect()),
            (None, Mode::TwoD) => Ok(vec![2, 3]),
        }
    }
}
