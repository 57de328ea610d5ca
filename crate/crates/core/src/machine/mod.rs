//! Deterministic machines: tape-level Turing machines and abstract step
//! machines behind one interface, exact bounded simulation with loop
//! detection, the two proof-searching machines and the input-duplication
//! fixed point.

pub mod builtin;
mod encode;
pub mod file;
mod fixpoint;
mod run;
mod searchers;
mod tape;
pub mod templates;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use encode::{decode_tape, encode_tape, TAPE_PREFIX};
pub use fixpoint::{fix_point, inner_snapshot, FixedPoint, FIXED_POINT_PREFIX};
pub use run::{
    halts_in_exactly, run, run_with, trace, verify_loop_certificate, RunOptions, RunOutcome,
};
pub use searchers::{
    build_contradiction_searcher, build_gap_proof_searcher, build_gap_proof_searcher_for,
    ContradictionSearcher, GapProofSearcher, Mode, Polarity,
};
pub use tape::{Configuration, Move, State, Symbol, TapeMachine, Transition, SYMBOL_CHARS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MachineError {
    #[error("decode error at byte {offset}: {reason}")]
    Decode { offset: usize, reason: String },
    #[error("invalid machine: {0}")]
    Invalid(String),
    #[error("input symbol {found:?} at offset {offset} is not in the tape alphabet")]
    BadInput { offset: usize, found: char },
    #[error("unknown formal system {0:?}")]
    UnknownSystem(String),
    #[error("machine file: {0}")]
    File(String),
}

/// A deterministic machine described by a canonical string, run by stepping
/// a process started from an input string.
///
/// Implementations must be pure: two processes booted from the same input
/// produce identical snapshot sequences.
pub trait AbstractMachine: Send + Sync + fmt::Debug {
    /// Canonical description over `[a-z0-9_]`. [`decode`] inverts it.
    fn encode(&self) -> String;
    fn boot(&self, input: &str) -> Box<dyn AbstractProcess>;
}

pub trait AbstractProcess: Send {
    /// Advances one step. Must be a no-op once halted.
    fn step(&mut self);
    fn is_halted(&self) -> bool;
    /// Canonical byte form of the current configuration.
    fn snapshot(&self) -> Vec<u8>;
    /// Hash of the current configuration, used for loop detection. Must
    /// agree on equal snapshots; override when snapshots are expensive.
    fn fingerprint(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.snapshot().hash(&mut h);
        h.finish()
    }
}

#[derive(Debug, Clone)]
pub enum Machine {
    Tape(TapeMachine),
    Abstract(Arc<dyn AbstractMachine>),
}

impl Machine {
    pub fn encode(&self) -> String {
        match self {
            Machine::Tape(m) => encode_tape(m),
            Machine::Abstract(m) => m.encode(),
        }
    }

    pub fn as_tape(&self) -> Option<&TapeMachine> {
        match self {
            Machine::Tape(m) => Some(m),
            Machine::Abstract(_) => None,
        }
    }

    pub fn is_tape(&self) -> bool {
        matches!(self, Machine::Tape(_))
    }

    pub fn start(&self, input: &str) -> Result<Process<'_>, MachineError> {
        Ok(match self {
            Machine::Tape(m) => Process::Tape {
                machine: m,
                config: m.initial_configuration(input)?,
            },
            Machine::Abstract(m) => Process::Abstract(m.boot(input)),
        })
    }
}

impl PartialEq for Machine {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Machine::Tape(a), Machine::Tape(b)) => a == b,
            _ => self.encode() == other.encode(),
        }
    }
}

impl Eq for Machine {}

impl From<TapeMachine> for Machine {
    fn from(m: TapeMachine) -> Self {
        Machine::Tape(m)
    }
}

/// A running machine.
pub enum Process<'m> {
    Tape {
        machine: &'m TapeMachine,
        config: Configuration,
    },
    Abstract(Box<dyn AbstractProcess>),
}

impl Process<'_> {
    pub fn step(&mut self) {
        match self {
            Process::Tape { machine, config } => machine.step(config),
            Process::Abstract(p) => p.step(),
        }
    }

    pub fn is_halted(&self) -> bool {
        match self {
            Process::Tape { machine, config } => machine.is_halted(config),
            Process::Abstract(p) => p.is_halted(),
        }
    }

    pub fn snapshot(&self) -> Vec<u8> {
        match self {
            Process::Tape { config, .. } => config.canonical().into_bytes(),
            Process::Abstract(p) => p.snapshot(),
        }
    }

    pub fn fingerprint(&self) -> u64 {
        match self {
            Process::Tape { config, .. } => config.fingerprint(),
            Process::Abstract(p) => p.fingerprint(),
        }
    }
}

/// Decodes any canonical machine description: tape machines (`tm_`),
/// contradiction searchers (`cs_`), gap-proof searchers (`gs_`), fixed points
/// (`fx_`) and the abstract templates (`ab_`).
pub fn decode(s: &str) -> Result<Machine, MachineError> {
    if s.starts_with(TAPE_PREFIX) {
        return decode_tape(s).map(Machine::Tape);
    }
    if let Some(m) = searchers::decode_searcher(s)? {
        return Ok(m);
    }
    if let Some(m) = fixpoint::decode_fixed_point(s)? {
        return Ok(m);
    }
    if let Some(m) = templates::decode_template(s) {
        return Ok(m);
    }
    Err(MachineError::Decode {
        offset: 0,
        reason: "unrecognised machine description".into(),
    })
}

pub fn encode(m: &Machine) -> String {
    m.encode()
}

/// Resolves a statement's machine field: a built-in name, else a canonical
/// description.
pub fn resolve(desc: &str) -> Option<Machine> {
    builtin::by_name(desc).or_else(|| decode(desc).ok())
}
