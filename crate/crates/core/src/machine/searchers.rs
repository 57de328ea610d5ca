//! Machines that enumerate proofs: the contradiction searcher and the
//! gap-proof searcher.
//!
//! Step accounting. The contradiction searcher examines candidate `c` at
//! step `c + 1` and checks for a completed pair at the head of its loop, so
//! it halts one step later. The gap searcher parses its input at step 1,
//! examines candidate `c` at step `c + 2` and halts on that same step. Both
//! therefore report `Halted(c + 2)` for a hit at candidate index `c`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{resolve, AbstractMachine, AbstractProcess, Machine, MachineError};
use crate::formal::{system_by_id, ContradictionScan, FormalSystem, Statement, TargetScan};

/// Which spectral claim a gap searcher hunts for: `G` (gapped) or `C`
/// (gapless).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarity {
    #[serde(alias = "g")]
    G,
    #[serde(alias = "c")]
    C,
}

impl Polarity {
    pub fn code(self) -> char {
        match self {
            Polarity::G => 'g',
            Polarity::C => 'c',
        }
    }
}

impl FromStr for Polarity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "G" | "g" => Ok(Polarity::G),
            "C" | "c" => Ok(Polarity::C),
            _ => Err(format!("unknown polarity {s:?} (expected G or C)")),
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::G => "G",
            Polarity::C => "C",
        })
    }
}

/// Lattice dimension of the compiled Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "1D", alias = "1d")]
    OneD,
    #[serde(rename = "2D", alias = "2d")]
    TwoD,
}

impl Mode {
    pub fn code(self) -> &'static str {
        match self {
            Mode::OneD => "1d",
            Mode::TwoD => "2d",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1D" | "1d" => Ok(Mode::OneD),
            "2D" | "2d" => Ok(Mode::TwoD),
            _ => Err(format!("unknown mode {s:?} (expected 1D or 2D)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::OneD => "1D",
            Mode::TwoD => "2D",
        })
    }
}

fn system(id: &str) -> Result<FormalSystem, MachineError> {
    system_by_id(id).ok_or_else(|| MachineError::UnknownSystem(id.to_string()))
}

/// Halts iff the system proves some statement and its negation.
#[derive(Debug, Clone)]
pub struct ContradictionSearcher {
    pub system: FormalSystem,
}

impl AbstractMachine for ContradictionSearcher {
    fn encode(&self) -> String {
        format!("cs_{}", self.system.code)
    }

    fn boot(&self, _input: &str) -> Box<dyn AbstractProcess> {
        Box::new(ContradictionProcess {
            scan: ContradictionScan::new(&self.system),
            phase: Phase::Searching,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    Setup,
    Searching,
    Found,
    Halted,
    Rejected,
}

impl Phase {
    fn tag(self) -> u8 {
        self as u8
    }
}

struct ContradictionProcess {
    scan: ContradictionScan,
    phase: Phase,
}

impl AbstractProcess for ContradictionProcess {
    fn step(&mut self) {
        self.phase = match self.phase {
            Phase::Searching if self.scan.step().is_some() => Phase::Found,
            Phase::Found => Phase::Halted,
            p => p,
        };
    }

    fn is_halted(&self) -> bool {
        self.phase == Phase::Halted
    }

    fn snapshot(&self) -> Vec<u8> {
        let mut s = vec![self.phase.tag()];
        s.extend(self.scan.position().to_le_bytes());
        s
    }
}

/// Halts iff the system proves the statement matching its polarity about the
/// machine described by its input.
#[derive(Debug, Clone)]
pub struct GapProofSearcher {
    pub system: FormalSystem,
    pub polarity: Polarity,
    pub mode: Mode,
}

impl GapProofSearcher {
    /// The statement searched for on input `x`.
    ///
    /// In 1D the gapped claim is `NOT_HALTS(x, "")`; the 2D construction
    /// inverts the halting/gap correspondence, so the targets swap.
    pub fn target(&self, x: &str) -> Statement {
        match (self.polarity, self.mode) {
            (Polarity::G, Mode::OneD) | (Polarity::C, Mode::TwoD) => Statement::not_halts(x, ""),
            (Polarity::C, Mode::OneD) | (Polarity::G, Mode::TwoD) => Statement::halts(x, ""),
        }
    }
}

impl AbstractMachine for GapProofSearcher {
    fn encode(&self) -> String {
        format!(
            "gs_{}_{}_{}",
            self.system.code,
            self.polarity.code(),
            self.mode.code()
        )
    }

    fn boot(&self, input: &str) -> Box<dyn AbstractProcess> {
        Box::new(GapProcess {
            searcher: self.clone(),
            input: input.to_string(),
            scan: None,
            phase: Phase::Setup,
        })
    }
}

struct GapProcess {
    searcher: GapProofSearcher,
    input: String,
    scan: Option<TargetScan>,
    phase: Phase,
}

impl AbstractProcess for GapProcess {
    fn step(&mut self) {
        match self.phase {
            Phase::Setup => {
                if resolve(&self.input).is_some() {
                    let target = self.searcher.target(&self.input);
                    self.scan = Some(TargetScan::new(&self.searcher.system, target));
                    self.phase = Phase::Searching;
                } else {
                    self.phase = Phase::Rejected;
                }
            }
            Phase::Searching => {
                if let Some(scan) = &mut self.scan {
                    if scan.step().is_some() {
                        self.phase = Phase::Halted;
                    }
                }
            }
            _ => {}
        }
    }

    fn is_halted(&self) -> bool {
        self.phase == Phase::Halted
    }

    fn snapshot(&self) -> Vec<u8> {
        let mut s = vec![self.phase.tag()];
        if let Some(scan) = &self.scan {
            s.extend(scan.position().to_le_bytes());
        }
        s
    }
}

pub fn build_contradiction_searcher(system_id: &str) -> Result<Machine, MachineError> {
    Ok(Machine::Abstract(Arc::new(ContradictionSearcher {
        system: system(system_id)?,
    })))
}

/// The 1D gap-proof searcher.
pub fn build_gap_proof_searcher(system_id: &str, polarity: Polarity) -> Result<Machine, MachineError> {
    build_gap_proof_searcher_for(system_id, polarity, Mode::OneD)
}

pub fn build_gap_proof_searcher_for(
    system_id: &str,
    polarity: Polarity,
    mode: Mode,
) -> Result<Machine, MachineError> {
    Ok(Machine::Abstract(Arc::new(GapProofSearcher {
        system: system(system_id)?,
        polarity,
        mode,
    })))
}

fn unknown(s: &str, at: usize) -> MachineError {
    MachineError::Decode {
        offset: at,
        reason: format!("unknown formal system code {s:?}"),
    }
}

/// Decodes `cs_<system>` and `gs_<system>_<g|c>_<1d|2d>`; `Ok(None)` for
/// other prefixes.
pub(super) fn decode_searcher(s: &str) -> Result<Option<Machine>, MachineError> {
    if let Some(code) = s.strip_prefix("cs_") {
        let system = system_by_id(code)
            .filter(|sys| sys.code == code)
            .ok_or_else(|| unknown(code, 3))?;
        return Ok(Some(Machine::Abstract(Arc::new(ContradictionSearcher { system }))));
    }
    let Some(rest) = s.strip_prefix("gs_") else {
        return Ok(None);
    };
    let parts: Vec<&str> = rest.split('_').collect();
    let &[code, pol, mode] = parts.as_slice() else {
        return Err(MachineError::Decode {
            offset: 3,
            reason: "expected gs_<system>_<g|c>_<1d|2d>".into(),
        });
    };
    let system = system_by_id(code)
        .filter(|sys| sys.code == code)
        .ok_or_else(|| unknown(code, 3))?;
    let pol_at = 3 + code.len() + 1;
    let polarity = match pol {
        "g" => Polarity::G,
        "c" => Polarity::C,
        _ => {
            return Err(MachineError::Decode {
                offset: pol_at,
                reason: "expected polarity g or c".into(),
            })
        }
    };
    let mode = match mode {
        "1d" => Mode::OneD,
        "2d" => Mode::TwoD,
        _ => {
            return Err(MachineError::Decode {
                offset: pol_at + pol.len() + 1,
                reason: "expected mode 1d or 2d".into(),
            })
        }
    };
    Ok(Some(Machine::Abstract(Arc::new(GapProofSearcher {
        system,
        polarity,
        mode,
    }))))
}
