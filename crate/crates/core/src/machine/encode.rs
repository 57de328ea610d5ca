//! Canonical description strings for tape machines.
//!
//! Layout (all numbers in decimal, fields joined by `_`):
//!
//! ```text
//! tm_<states>_<symbols>_<start>_<halt>{_<next>_<write>_<move>}*
//! ```
//!
//! One `<next>_<write>_<move>` triple per non-halting state (ascending) and
//! symbol (ascending); `<move>` is one of `l`, `r`, `s`. The string only uses
//! `[a-z0-9_]`, so it can appear verbatim inside statements.

use super::tape::{Move, TapeMachine, Transition};
use super::MachineError;

pub const TAPE_PREFIX: &str = "tm_";

pub fn encode_tape(m: &TapeMachine) -> String {
    let mut out = format!(
        "tm_{}_{}_{}_{}",
        m.num_states(),
        m.num_symbols(),
        m.start(),
        m.halt()
    );
    for t in m.transitions() {
        out.push_str(&format!("_{}_{}_{}", t.next, t.write, t.movement.code()));
    }
    out
}

/// Splits `s` on `_`, remembering each field's byte offset.
fn fields(s: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut offset = 0;
    s.split('_').map(move |f| {
        let start = offset;
        offset += f.len() + 1;
        (start, f)
    })
}

fn number(offset: usize, field: &str) -> Result<u32, MachineError> {
    let canonical = !field.is_empty() && (field == "0" || !field.starts_with('0'));
    if !canonical || !field.bytes().all(|b| b.is_ascii_digit()) {
        return Err(MachineError::Decode {
            offset,
            reason: format!("expected a decimal number, found {field:?}"),
        });
    }
    field.parse().map_err(|_| MachineError::Decode {
        offset,
        reason: "number out of range".into(),
    })
}

pub fn decode_tape(s: &str) -> Result<TapeMachine, MachineError> {
    let Some(rest) = s.strip_prefix(TAPE_PREFIX) else {
        return Err(MachineError::Decode {
            offset: 0,
            reason: "missing `tm_` prefix".into(),
        });
    };
    let base = TAPE_PREFIX.len();
    let mut it = fields(rest).map(|(o, f)| (o + base, f));
    let mut header = [0u32; 4];
    for slot in header.iter_mut() {
        let (o, f) = it.next().ok_or(MachineError::Decode {
            offset: s.len(),
            reason: "truncated header".into(),
        })?;
        *slot = number(o, f)?;
    }
    let [states, symbols, start, halt] = header;
    if states == 0 || symbols == 0 || start >= states || halt >= states {
        return Err(MachineError::Decode {
            offset: base,
            reason: "inconsistent header".into(),
        });
    }
    let rows = (states as usize - 1)
        .checked_mul(symbols as usize)
        .filter(|&r| r <= 1 << 20)
        .ok_or(MachineError::Decode {
            offset: base,
            reason: "machine too large".into(),
        })?;
    let mut table = Vec::with_capacity(rows);
    for _ in 0..rows {
        let mut triple = [(0usize, ""); 3];
        for slot in triple.iter_mut() {
            *slot = it.next().ok_or(MachineError::Decode {
                offset: s.len(),
                reason: "truncated transition table".into(),
            })?;
        }
        let next = number(triple[0].0, triple[0].1)?;
        let write = number(triple[1].0, triple[1].1)?;
        let (mo, mf) = triple[2];
        let mut chars = mf.chars();
        let movement = match (chars.next().and_then(Move::from_code), chars.next()) {
            (Some(m), None) => m,
            _ => {
                return Err(MachineError::Decode {
                    offset: mo,
                    reason: format!("expected a move l/r/s, found {mf:?}"),
                })
            }
        };
        table.push(Transition { next, write, movement });
    }
    if let Some((o, _)) = it.next() {
        return Err(MachineError::Decode {
            offset: o,
            reason: "trailing fields".into(),
        });
    }
    TapeMachine::from_table(states, symbols, start, halt, table).map_err(|e| MachineError::Decode {
        offset: base,
        reason: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::builtin;

    #[test]
    fn halt_now_has_a_fixed_encoding() {
        assert_eq!(encode_tape(&builtin::halt_now()), "tm_2_1_0_1_1_0_s");
        assert_eq!(decode_tape("tm_2_1_0_1_1_0_s").unwrap(), builtin::halt_now());
    }

    #[test]
    fn loop2_round_trips() {
        let m = builtin::loop2();
        assert_eq!(decode_tape(&encode_tape(&m)).unwrap(), m);
    }

    #[test]
    fn garbage_is_rejected_with_offset() {
        match decode_tape("garbage") {
            Err(MachineError::Decode { offset, .. }) => assert_eq!(offset, 0),
            other => panic!("unexpected {other:?}"),
        }
        match decode_tape("tm_2_1_0_1_1_0_x") {
            Err(MachineError::Decode { offset, .. }) => assert_eq!(offset, 15),
            other => panic!("unexpected {other:?}"),
        }
        assert!(decode_tape("tm_2_1_0_1_1_0_s_0").is_err());
        assert!(decode_tape("tm_02_1_0_1_1_0_s").is_err());
        assert!(decode_tape("tm_2_1_0_1_1_0").is_err());
    }
}
