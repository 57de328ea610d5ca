//! JSON machine files, the import path for externally supplied machines.
//!
//! ```json
//! {
//!   "states": ["scan", "back", "done"],
//!   "alphabet": ["_", "1"],
//!   "start": "scan",
//!   "halt": "done",
//!   "transitions": [
//!     {"state": "scan", "read": "_", "next": "back", "write": "1", "move": "R"},
//!     ...
//!   ]
//! }
//! ```
//!
//! State `i` of the canonical machine is `states[i]`; symbol `i` is
//! `alphabet[i]`, and `alphabet[0]` is the blank. Input characters are read
//! through [`SYMBOL_CHARS`](super::SYMBOL_CHARS) regardless of the names
//! chosen here. Every non-halting `(state, symbol)` pair needs exactly one
//! transition; their order in the file does not matter.
//!
//! A file may instead carry a bare description: `{"description": "cs_trace"}`.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{decode, Machine, MachineError, Move, TapeMachine, Transition, SYMBOL_CHARS};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionEntry {
    pub state: String,
    pub read: String,
    pub next: String,
    pub write: String,
    #[serde(rename = "move")]
    pub movement: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TapeFile {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub start: String,
    pub halt: String,
    pub transitions: Vec<TransitionEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MachineFile {
    Tape(TapeFile),
    Description { description: String },
}

fn err(msg: impl Into<String>) -> MachineError {
    MachineError::File(msg.into())
}

fn index_of(names: &[String], name: &str, what: &str) -> Result<u32, MachineError> {
    names
        .iter()
        .position(|n| n == name)
        .map(|i| i as u32)
        .ok_or_else(|| err(format!("unknown {what} {name:?}")))
}

impl TapeFile {
    pub fn to_machine(&self) -> Result<TapeMachine, MachineError> {
        for (what, names) in [("state", &self.states), ("symbol", &self.alphabet)] {
            let mut seen = std::collections::HashSet::new();
            if let Some(dup) = names.iter().find(|n| !seen.insert(*n)) {
                return Err(err(format!("duplicate {what} {dup:?}")));
            }
        }
        let start = index_of(&self.states, &self.start, "state")?;
        let halt = index_of(&self.states, &self.halt, "state")?;
        let mut table: HashMap<(u32, u32), Transition> = HashMap::new();
        for t in &self.transitions {
            let q = index_of(&self.states, &t.state, "state")?;
            let a = index_of(&self.alphabet, &t.read, "symbol")?;
            if q == halt {
                return Err(err(format!("halting state {:?} has a transition", t.state)));
            }
            let movement = match t.movement.as_str() {
                "L" | "l" => Move::Left,
                "R" | "r" => Move::Right,
                "S" | "s" | "N" | "n" => Move::Stay,
                other => return Err(err(format!("bad move {other:?}"))),
            };
            let tr = Transition {
                next: index_of(&self.states, &t.next, "state")?,
                write: index_of(&self.alphabet, &t.write, "symbol")?,
                movement,
            };
            if table.insert((q, a), tr).is_some() {
                return Err(err(format!("two transitions for ({:?}, {:?})", t.state, t.read)));
            }
        }
        let mut missing = None;
        let m = TapeMachine::from_fn(
            self.states.len() as u32,
            self.alphabet.len() as u32,
            start,
            halt,
            |q, a| {
                table.get(&(q, a)).copied().unwrap_or_else(|| {
                    missing.get_or_insert((q, a));
                    Transition {
                        next: halt,
                        write: 0,
                        movement: Move::Stay,
                    }
                })
            },
        )?;
        if let Some((q, a)) = missing {
            return Err(err(format!(
                "no transition for ({:?}, {:?})",
                self.states[q as usize], self.alphabet[a as usize]
            )));
        }
        Ok(m)
    }

    /// File form with states `q0, q1, ...` and the standard symbol characters.
    pub fn from_machine(m: &TapeMachine) -> TapeFile {
        let state = |q: u32| format!("q{q}");
        let symbol = |a: u32| SYMBOL_CHARS[a as usize..=a as usize].to_string();
        let mut transitions = Vec::new();
        for q in 0..m.num_states() {
            for a in 0..m.num_symbols() {
                if let Some(t) = m.transition(q, a) {
                    transitions.push(TransitionEntry {
                        state: state(q),
                        read: symbol(a),
                        next: state(t.next),
                        write: symbol(t.write),
                        movement: t.movement.code().to_ascii_uppercase().to_string(),
                    });
                }
            }
        }
        TapeFile {
            states: (0..m.num_states()).map(state).collect(),
            alphabet: (0..m.num_symbols()).map(symbol).collect(),
            start: state(m.start()),
            halt: state(m.halt()),
            transitions,
        }
    }
}

impl MachineFile {
    pub fn to_machine(&self) -> Result<Machine, MachineError> {
        match self {
            MachineFile::Tape(t) => t.to_machine().map(Machine::Tape),
            MachineFile::Description { description } => decode(description),
        }
    }
}

pub fn parse_machine_file(text: &str) -> Result<Machine, MachineError> {
    let file: MachineFile = serde_json::from_str(text).map_err(|e| err(e.to_string()))?;
    file.to_machine()
}

pub fn load_machine_file(path: &Path) -> Result<Machine, MachineError> {
    let text = std::fs::read_to_string(path).map_err(|e| err(format!("{}: {e}", path.display())))?;
    parse_machine_file(&text)
}

/// JSON for a machine: the full table for tape machines, the description
/// otherwise.
pub fn to_machine_file(m: &Machine) -> String {
    let file = match m {
        Machine::Tape(t) => MachineFile::Tape(TapeFile::from_machine(t)),
        Machine::Abstract(a) => MachineFile::Description {
            description: a.encode(),
        },
    };
    serde_json::to_string_pretty(&file).expect("machine files serialize")
}
