//! Bounded exact simulation with repeated-configuration detection.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Machine, MachineError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum RunOutcome {
    Halted { steps: u64 },
    BudgetExhausted { steps: u64 },
    /// The configuration at `prefix` reappears at `prefix + period`.
    LoopDetected { prefix: u64, period: u64 },
}

impl std::fmt::Display for RunOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunOutcome::Halted { steps } => write!(f, "Halted({steps})"),
            RunOutcome::BudgetExhausted { steps } => write!(f, "BudgetExhausted({steps})"),
            RunOutcome::LoopDetected { prefix, period } => write!(f, "LoopDetected({prefix}, {period})"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub max_steps: u64,
    /// Maximum number of configuration fingerprints kept for loop detection.
    /// Past this, the run continues without recording new configurations.
    pub loop_memory: usize,
}

impl RunOptions {
    pub fn new(max_steps: u64) -> Self {
        RunOptions {
            max_steps,
            loop_memory: 1 << 22,
        }
    }
}

pub fn run(m: &Machine, input: &str, max_steps: u64) -> Result<RunOutcome, MachineError> {
    run_with(m, input, RunOptions::new(max_steps))
}

pub fn run_with(m: &Machine, input: &str, opts: RunOptions) -> Result<RunOutcome, MachineError> {
    let mut p = m.start(input)?;
    if p.is_halted() {
        return Ok(RunOutcome::Halted { steps: 0 });
    }
    let mut seen: HashMap<u64, Vec<u64>> = HashMap::new();
    let mut stored = 0usize;
    seen.insert(p.fingerprint(), vec![0]);
    stored += 1;
    for t in 1..=opts.max_steps {
        p.step();
        if p.is_halted() {
            return Ok(RunOutcome::Halted { steps: t });
        }
        if opts.loop_memory == 0 {
            continue;
        }
        let key = p.fingerprint();
        if let Some(earlier) = seen.get(&key) {
            // fingerprints can collide; confirm by replaying
            let snap = p.snapshot();
            for &s in earlier {
                if snapshot_at(m, input, s)?.as_deref() == Some(&snap[..]) {
                    return Ok(RunOutcome::LoopDetected { prefix: s, period: t - s });
                }
            }
        }
        if stored < opts.loop_memory {
            seen.entry(key).or_default().push(t);
            stored += 1;
        }
    }
    Ok(RunOutcome::BudgetExhausted {
        steps: opts.max_steps,
    })
}

/// Snapshot at step `t`, or `None` if the machine halts before reaching it.
fn snapshot_at(m: &Machine, input: &str, t: u64) -> Result<Option<Vec<u8>>, MachineError> {
    let mut p = m.start(input)?;
    for _ in 0..t {
        if p.is_halted() {
            return Ok(None);
        }
        p.step();
    }
    Ok(Some(p.snapshot()))
}

/// Snapshots at steps `0..=steps`, stopping early at the halting step.
pub fn trace(m: &Machine, input: &str, steps: u64) -> Result<Vec<Vec<u8>>, MachineError> {
    let mut p = m.start(input)?;
    let mut out = vec![p.snapshot()];
    for _ in 0..steps {
        if p.is_halted() {
            break;
        }
        p.step();
        out.push(p.snapshot());
    }
    Ok(out)
}

/// True iff the machine reaches its halting configuration at exactly step
/// `steps`.
pub fn halts_in_exactly(m: &Machine, input: &str, steps: u64) -> bool {
    let Ok(mut p) = m.start(input) else {
        return false;
    };
    for _ in 0..steps {
        if p.is_halted() {
            return false;
        }
        p.step();
    }
    p.is_halted()
}

/// Checks a non-halting certificate: the machine has not halted by
/// `prefix + period` and its configurations at `prefix` and
/// `prefix + period` coincide. `period` must be positive.
pub fn verify_loop_certificate(m: &Machine, input: &str, prefix: u64, period: u64) -> bool {
    if period == 0 {
        return false;
    }
    let Ok(mut p) = m.start(input) else {
        return false;
    };
    for _ in 0..prefix {
        if p.is_halted() {
            return false;
        }
        p.step();
    }
    if p.is_halted() {
        return false;
    }
    let at_prefix = p.snapshot();
    for _ in 0..period {
        if p.is_halted() {
            return false;
        }
        p.step();
    }
    !p.is_halted() && p.snapshot() == at_prefix
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::builtin;

    fn tm(name: &str) -> Machine {
        builtin::by_name(name).unwrap()
    }

    /// Independent oracle: keep every configuration verbatim.
    fn naive(m: &Machine, input: &str, max: u64) -> RunOutcome {
        let mut p = m.start(input).unwrap();
        let mut history = vec![p.snapshot()];
        if p.is_halted() {
            return RunOutcome::Halted { steps: 0 };
        }
        for t in 1..=max {
            p.step();
            if p.is_halted() {
                return RunOutcome::Halted { steps: t };
            }
            let s = p.snapshot();
            if let Some(i) = history.iter().position(|h| *h == s) {
                return RunOutcome::LoopDetected {
                    prefix: i as u64,
                    period: t - i as u64,
                };
            }
            history.push(s);
        }
        RunOutcome::BudgetExhausted { steps: max }
    }

    #[test]
    fn halt_now_halts_in_one_step() {
        assert_eq!(run(&tm("halt_now"), "", 10).unwrap(), RunOutcome::Halted { steps: 1 });
    }

    #[test]
    fn loop2_cycles_with_period_two() {
        assert_eq!(
            run(&tm("loop2"), "", 10).unwrap(),
            RunOutcome::LoopDetected { prefix: 0, period: 2 }
        );
    }

    #[test]
    fn zero_budget() {
        assert_eq!(
            run(&tm("loop2"), "", 0).unwrap(),
            RunOutcome::BudgetExhausted { steps: 0 }
        );
        let already_halted = Machine::Tape(
            crate::machine::TapeMachine::from_table(2, 1, 1, 1, vec![crate::machine::Transition {
                next: 1,
                write: 0,
                movement: crate::machine::Move::Stay,
            }])
            .unwrap(),
        );
        assert_eq!(run(&already_halted, "", 0).unwrap(), RunOutcome::Halted { steps: 0 });
    }

    #[test]
    fn agrees_with_naive_simulation_on_builtins() {
        for name in builtin::NAMES {
            let m = tm(name);
            for input in ["", "0", "00", "000"] {
                if m.start(input).is_err() {
                    continue;
                }
                assert_eq!(run(&m, input, 50).unwrap(), naive(&m, input, 50), "{name} {input:?}");
            }
        }
    }

    #[test]
    fn loop_certificates_replay() {
        for name in builtin::NAMES {
            let m = tm(name);
            if let RunOutcome::LoopDetected { prefix, period } = run(&m, "", 100).unwrap() {
                assert!(verify_loop_certificate(&m, "", prefix, period), "{name}");
                assert!(verify_loop_certificate(&m, "", prefix + 1, period), "{name}");
                assert!(!verify_loop_certificate(&m, "", prefix, 0));
            }
        }
        assert_eq!(
            run(&tm("late_loop"), "", 20).unwrap(),
            RunOutcome::LoopDetected { prefix: 1, period: 2 }
        );
        assert!(!verify_loop_certificate(&tm("late_loop"), "", 0, 2));
    }

    #[test]
    fn halting_machines_have_no_loop_certificate() {
        // a halted machine's configuration is frozen; that must not count
        let m = tm("halt_now");
        assert!(!verify_loop_certificate(&m, "", 1, 1));
        assert!(!verify_loop_certificate(&m, "", 0, 1));
        assert!(halts_in_exactly(&m, "", 1));
        assert!(!halts_in_exactly(&m, "", 0));
        assert!(!halts_in_exactly(&m, "", 2));
    }

    #[test]
    fn eat_input_depends_on_input() {
        let m = tm("eat_input");
        assert_eq!(run(&m, "000", 10).unwrap(), RunOutcome::Halted { steps: 4 });
        assert!(matches!(run(&m, "9", 10), Err(MachineError::BadInput { .. })));
    }

    #[test]
    fn memory_cap_falls_back_to_budget() {
        let opts = RunOptions {
            max_steps: 10,
            loop_memory: 0,
        };
        assert_eq!(
            run_with(&tm("loop2"), "", opts).unwrap(),
            RunOutcome::BudgetExhausted { steps: 10 }
        );
    }
}
