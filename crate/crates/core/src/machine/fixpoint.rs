//! Input-duplication fixed point.
//!
//! `fix_point(T)` is a machine `M*` that ignores its input, writes its own
//! description `e = encode(M*)` one character per step, spends one step
//! duplicating it into `T`'s input, and from then on runs `T` on `e`. So
//! `M*` behaves on any input exactly as `T` behaves on `encode(M*)`, after a
//! setup of `|e| + 1` steps.

use std::sync::Arc;

use super::{decode, AbstractMachine, AbstractProcess, Machine, MachineError};

pub const FIXED_POINT_PREFIX: &str = "fx_";

#[derive(Debug, Clone)]
pub struct FixedPoint {
    pub inner: Machine,
}

impl FixedPoint {
    /// Number of steps before the inner machine's step 0.
    pub fn setup_len(&self) -> u64 {
        self.encode().len() as u64 + 1
    }
}

const TAG_SETUP: u8 = 0;
const TAG_RUN: u8 = 1;
const TAG_REJECT: u8 = 2;

enum Stage {
    Writing(usize),
    Running(Box<dyn AbstractProcess>),
    /// The inner machine cannot read `e` (tape alphabet too small).
    Rejected,
}

/// Tape processes borrow their machine; wrap them so the fixed point can own
/// the running inner process.
struct OwnedTape {
    machine: super::TapeMachine,
    config: super::Configuration,
}

impl AbstractProcess for OwnedTape {
    fn step(&mut self) {
        self.machine.step(&mut self.config);
    }

    fn is_halted(&self) -> bool {
        self.machine.is_halted(&self.config)
    }

    fn snapshot(&self) -> Vec<u8> {
        self.config.canonical().into_bytes()
    }

    fn fingerprint(&self) -> u64 {
        self.config.fingerprint()
    }
}

pub(crate) fn boot_owned(m: &Machine, input: &str) -> Result<Box<dyn AbstractProcess>, MachineError> {
    Ok(match m {
        Machine::Tape(t) => Box::new(OwnedTape {
            machine: t.clone(),
            config: t.initial_configuration(input)?,
        }),
        Machine::Abstract(a) => a.boot(input),
    })
}

struct FixedPointProcess {
    inner: Machine,
    e: String,
    stage: Stage,
}

impl AbstractProcess for FixedPointProcess {
    fn step(&mut self) {
        match &mut self.stage {
            Stage::Writing(n) if *n < self.e.len() => *n += 1,
            Stage::Writing(_) => {
                self.stage = match boot_owned(&self.inner, &self.e) {
                    Ok(p) => Stage::Running(p),
                    Err(_) => Stage::Rejected,
                }
            }
            Stage::Running(p) => p.step(),
            Stage::Rejected => {}
        }
    }

    fn is_halted(&self) -> bool {
        matches!(&self.stage, Stage::Running(p) if p.is_halted())
    }

    fn snapshot(&self) -> Vec<u8> {
        match &self.stage {
            Stage::Writing(n) => {
                let mut s = vec![TAG_SETUP];
                s.extend_from_slice(&self.e.as_bytes()[..*n]);
                s
            }
            Stage::Running(p) => {
                let mut s = vec![TAG_RUN];
                s.extend(p.snapshot());
                s
            }
            Stage::Rejected => vec![TAG_REJECT],
        }
    }

    fn fingerprint(&self) -> u64 {
        match &self.stage {
            Stage::Writing(n) => *n as u64,
            Stage::Running(p) => p.fingerprint().rotate_left(1) ^ 0xa5a5_a5a5_a5a5_a5a5,
            Stage::Rejected => u64::MAX,
        }
    }
}

impl AbstractMachine for FixedPoint {
    fn encode(&self) -> String {
        format!("{FIXED_POINT_PREFIX}{}", self.inner.encode())
    }

    fn boot(&self, _input: &str) -> Box<dyn AbstractProcess> {
        Box::new(FixedPointProcess {
            inner: self.inner.clone(),
            e: self.encode(),
            stage: Stage::Writing(0),
        })
    }
}

pub fn fix_point(template: &Machine) -> Machine {
    Machine::Abstract(Arc::new(FixedPoint {
        inner: template.clone(),
    }))
}

/// Strips the tag byte from a fixed-point snapshot taken after setup.
pub fn inner_snapshot(snapshot: &[u8]) -> Option<&[u8]> {
    match snapshot.split_first() {
        Some((&TAG_RUN, rest)) => Some(rest),
        _ => None,
    }
}

pub(super) fn decode_fixed_point(s: &str) -> Result<Option<Machine>, MachineError> {
    let Some(rest) = s.strip_prefix(FIXED_POINT_PREFIX) else {
        return Ok(None);
    };
    let inner = decode(rest).map_err(|e| match e {
        MachineError::Decode { offset, reason } => MachineError::Decode {
            offset: offset + FIXED_POINT_PREFIX.len(),
            reason,
        },
        other => other,
    })?;
    Ok(Some(fix_point(&inner)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{builtin, run, templates, trace, RunOutcome};

    fn check_trace_equivalence(t: &Machine, steps: u64) {
        let m = fix_point(t);
        let e = m.encode();
        let setup = e.len() as u64 + 1;
        let outer = trace(&m, "ignored", setup + steps).unwrap();
        let inner = trace(t, &e, steps).unwrap();
        assert_eq!(outer.len() as u64 - setup, inner.len() as u64, "{e}");
        for (k, snap) in inner.iter().enumerate() {
            assert_eq!(inner_snapshot(&outer[setup as usize + k]), Some(&snap[..]), "{e} step {k}");
        }
    }

    #[test]
    fn trace_equivalent_after_setup() {
        for name in templates::NAMES {
            check_trace_equivalence(&templates::by_name(name).unwrap(), 40);
        }
    }

    #[test]
    fn halting_shifts_by_setup() {
        let t = templates::by_name("ab_halt").unwrap();
        let m = fix_point(&t);
        let e = m.encode();
        let inner = run(&t, &e, 100).unwrap();
        let RunOutcome::Halted { steps } = inner else { panic!() };
        assert_eq!(
            run(&m, "", 1000).unwrap(),
            RunOutcome::Halted { steps: steps + e.len() as u64 + 1 }
        );
    }

    #[test]
    fn small_alphabet_inner_is_rejected() {
        let m = fix_point(&builtin::by_name("halt_now").unwrap());
        assert!(matches!(run(&m, "", 100).unwrap(), RunOutcome::LoopDetected { .. }));
    }

    #[test]
    fn decodes_nested() {
        let t = templates::by_name("ab_scan").unwrap();
        let m = fix_point(&fix_point(&t));
        assert_eq!(decode(&m.encode()).unwrap().encode(), m.encode());
        match decode("fx_tm_x") {
            Err(MachineError::Decode { offset, .. }) => assert!(offset >= 3),
            other => panic!("{other:?}"),
        }
    }
}
