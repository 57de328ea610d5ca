//! Tape-level deterministic Turing machines and their configurations.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::MachineError;

/// Characters used to write tape symbols in inputs and canonical renderings.
/// Index 0 (`_`) is the blank.
pub const SYMBOL_CHARS: &str = "_0123456789abcdefghijklmnopqrstuvwxyz";

pub type State = u32;
pub type Symbol = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Move {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
    #[serde(rename = "S")]
    Stay,
}

impl Move {
    pub fn code(self) -> char {
        match self {
            Move::Left => 'l',
            Move::Right => 'r',
            Move::Stay => 's',
        }
    }

    pub fn from_code(c: char) -> Option<Move> {
        match c {
            'l' => Some(Move::Left),
            'r' => Some(Move::Right),
            's' => Some(Move::Stay),
            _ => None,
        }
    }

    fn offset(self) -> i64 {
        match self {
            Move::Left => -1,
            Move::Right => 1,
            Move::Stay => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transition {
    pub next: State,
    pub write: Symbol,
    pub movement: Move,
}

/// A single-tape machine over states `0..num_states` and symbols
/// `0..num_symbols` (symbol 0 is blank).
///
/// The transition table is total on every non-halting state. The halting
/// state has no outgoing transitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TapeMachine {
    num_states: u32,
    num_symbols: u32,
    start: State,
    halt: State,
    /// Row-major over (non-halt state ascending, symbol ascending).
    table: Vec<Transition>,
}

impl TapeMachine {
    /// Builds a machine from a closure giving the transition of every
    /// non-halting `(state, symbol)` pair.
    pub fn from_fn(
        num_states: u32,
        num_symbols: u32,
        start: State,
        halt: State,
        mut delta: impl FnMut(State, Symbol) -> Transition,
    ) -> Result<Self, MachineError> {
        let mut table = Vec::new();
        for q in 0..num_states {
            if q == halt {
                continue;
            }
            for a in 0..num_symbols {
                table.push(delta(q, a));
            }
        }
        Self::from_table(num_states, num_symbols, start, halt, table)
    }

    pub fn from_table(
        num_states: u32,
        num_symbols: u32,
        start: State,
        halt: State,
        table: Vec<Transition>,
    ) -> Result<Self, MachineError> {
        if num_states == 0 || num_symbols == 0 {
            return Err(MachineError::Invalid("machine needs at least one state and one symbol".into()));
        }
        if num_symbols as usize > SYMBOL_CHARS.len() {
            return Err(MachineError::Invalid(format!(
                "at most {} tape symbols are supported",
                SYMBOL_CHARS.len()
            )));
        }
        if start >= num_states || halt >= num_states {
            return Err(MachineError::Invalid("start/halt state out of range".into()));
        }
        let expected = (num_states as usize - 1) * num_symbols as usize;
        if table.len() != expected {
            return Err(MachineError::Invalid(format!(
                "transition table has {} rows, expected {expected}",
                table.len()
            )));
        }
        for t in &table {
            if t.next >= num_states || t.write >= num_symbols {
                return Err(MachineError::Invalid("transition target out of range".into()));
            }
        }
        Ok(TapeMachine {
            num_states,
            num_symbols,
            start,
            halt,
            table,
        })
    }

    pub fn num_states(&self) -> u32 {
        self.num_states
    }

    pub fn num_symbols(&self) -> u32 {
        self.num_symbols
    }

    pub fn start(&self) -> State {
        self.start
    }

    pub fn halt(&self) -> State {
        self.halt
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.table
    }

    pub fn transition(&self, q: State, a: Symbol) -> Option<Transition> {
        if q == self.halt {
            return None;
        }
        let row = if q > self.halt { q - 1 } else { q };
        Some(self.table[(row * self.num_symbols + a) as usize])
    }

    /// Parses an input string into tape symbols via [`SYMBOL_CHARS`].
    pub fn input_symbols(&self, input: &str) -> Result<Vec<Symbol>, MachineError> {
        input
            .chars()
            .enumerate()
            .map(|(i, c)| match SYMBOL_CHARS.find(c) {
                Some(s) if (s as u32) < self.num_symbols => Ok(s as u32),
                _ => Err(MachineError::BadInput { offset: i, found: c }),
            })
            .collect()
    }

    pub fn initial_configuration(&self, input: &str) -> Result<Configuration, MachineError> {
        let symbols = self.input_symbols(input)?;
        let mut tape = BTreeMap::new();
        for (i, s) in symbols.into_iter().enumerate() {
            if s != 0 {
                tape.insert(i as i64, s);
            }
        }
        let cells = tape.iter().map(|(&p, &s)| cell_hash(p, s)).fold(0, u64::wrapping_add);
        Ok(Configuration {
            state: self.start,
            head: 0,
            tape,
            cells,
        })
    }

    /// Advances one step. Halted configurations are left unchanged.
    pub fn step(&self, config: &mut Configuration) {
        let Some(t) = self.transition(config.state, config.read()) else {
            return;
        };
        config.write(t.write);
        config.state = t.next;
        config.head += t.movement.offset();
    }

    pub fn is_halted(&self, config: &Configuration) -> bool {
        config.state == self.halt
    }
}

/// Machine state, head offset and the non-blank tape cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub state: State,
    pub head: i64,
    pub tape: BTreeMap<i64, Symbol>,
    /// Wrapping sum of per-cell hashes, kept in step with `tape` so that
    /// [`fingerprint`](Self::fingerprint) is O(1).
    cells: u64,
}

fn mix(mut x: u64) -> u64 {
    // splitmix64 finaliser
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

fn cell_hash(pos: i64, sym: Symbol) -> u64 {
    mix((pos as u64).wrapping_mul(0x9e3779b97f4a7c15) ^ mix(sym as u64 + 1))
}

impl Configuration {
    pub fn read(&self) -> Symbol {
        self.tape.get(&self.head).copied().unwrap_or(0)
    }

    fn write(&mut self, s: Symbol) {
        let old = if s == 0 {
            self.tape.remove(&self.head)
        } else {
            self.tape.insert(self.head, s)
        };
        if let Some(o) = old {
            self.cells = self.cells.wrapping_sub(cell_hash(self.head, o));
        }
        if s != 0 {
            self.cells = self.cells.wrapping_add(cell_hash(self.head, s));
        }
    }

    /// Constant-time hash of the configuration. Equal configurations have
    /// equal fingerprints.
    pub fn fingerprint(&self) -> u64 {
        mix(self.cells ^ mix(self.state as u64) ^ mix((self.head as u64).rotate_left(17) ^ 0x5555))
    }

    /// Canonical text form, e.g. `q1@0[0:a,3:1]`. Unique per configuration.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}@{}[", self.state, self.head)?;
        for (i, (pos, sym)) in self.tape.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let c = SYMBOL_CHARS.as_bytes()[*sym as usize] as char;
            write!(f, "{pos}:{c}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flipper() -> TapeMachine {
        // toggles the cell under the head forever
        TapeMachine::from_fn(2, 2, 0, 1, |_, a| Transition {
            next: 0,
            write: 1 - a,
            movement: Move::Stay,
        })
        .unwrap()
    }

    #[test]
    fn blank_cells_are_not_stored() {
        let m = flipper();
        let mut c = m.initial_configuration("").unwrap();
        m.step(&mut c);
        assert_eq!(c.tape.len(), 1);
        m.step(&mut c);
        assert!(c.tape.is_empty());
        assert_eq!(c, m.initial_configuration("").unwrap());
    }

    #[test]
    fn rejects_out_of_alphabet_input() {
        let m = flipper();
        assert!(matches!(
            m.initial_configuration("02"),
            Err(MachineError::BadInput { offset: 1, .. })
        ));
    }

    #[test]
    fn table_size_is_checked() {
        assert!(TapeMachine::from_table(2, 1, 0, 1, vec![]).is_err());
    }

    #[test]
    fn canonical_rendering() {
        let m = flipper();
        let mut c = m.initial_configuration("").unwrap();
        assert_eq!(c.canonical(), "q0@0[]");
        m.step(&mut c);
        assert_eq!(c.canonical(), "q0@0[0:0]");
        let c = m.initial_configuration("00").unwrap();
        assert_eq!(c.canonical(), "q0@0[0:0,1:0]");
    }
}
