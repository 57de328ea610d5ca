//! Small named tape machines used across tests, examples and the
//! formal systems' vocabularies.

use super::tape::{Move, TapeMachine, Transition};
use super::Machine;

fn t(next: u32, write: u32, movement: Move) -> Transition {
    Transition { next, write, movement }
}

/// Start state steps straight into the halting state.
pub fn halt_now() -> TapeMachine {
    TapeMachine::from_table(2, 1, 0, 1, vec![t(1, 0, Move::Stay)]).unwrap()
}

/// Two states swapping in place forever.
pub fn loop2() -> TapeMachine {
    TapeMachine::from_table(3, 1, 0, 2, vec![t(1, 0, Move::Stay), t(0, 0, Move::Stay)]).unwrap()
}

/// Halts after three steps without touching the tape.
pub fn count3() -> TapeMachine {
    TapeMachine::from_table(
        4,
        1,
        0,
        3,
        vec![t(1, 0, Move::Stay), t(2, 0, Move::Stay), t(3, 0, Move::Stay)],
    )
    .unwrap()
}

/// Writes a mark, steps right, then halts.
pub fn walk_halt() -> TapeMachine {
    TapeMachine::from_fn(3, 2, 0, 2, |q, _| match q {
        0 => t(1, 1, Move::Right),
        _ => t(2, 1, Move::Stay),
    })
    .unwrap()
}

/// Toggles the cell under the head forever.
pub fn flip_loop() -> TapeMachine {
    TapeMachine::from_fn(2, 2, 0, 1, |_, a| t(0, 1 - a, Move::Stay)).unwrap()
}

/// Spends one step in a lead-in state, then cycles with period two.
pub fn late_loop() -> TapeMachine {
    TapeMachine::from_table(
        4,
        1,
        0,
        3,
        vec![t(1, 0, Move::Stay), t(2, 0, Move::Stay), t(1, 0, Move::Stay)],
    )
    .unwrap()
}

/// Oscillates between two cells forever.
pub fn bounce() -> TapeMachine {
    TapeMachine::from_table(3, 1, 0, 2, vec![t(1, 0, Move::Right), t(0, 0, Move::Left)]).unwrap()
}

/// Moves right over non-blank input and halts on the first blank.
pub fn eat_input() -> TapeMachine {
    TapeMachine::from_fn(2, 2, 0, 1, |_, a| match a {
        0 => t(1, 0, Move::Stay),
        _ => t(0, a, Move::Right),
    })
    .unwrap()
}

/// Marches right writing marks; never repeats a configuration.
pub fn runaway() -> TapeMachine {
    TapeMachine::from_fn(2, 2, 0, 1, |_, _| t(0, 1, Move::Right)).unwrap()
}

pub const NAMES: [&str; 9] = [
    "halt_now",
    "loop2",
    "count3",
    "walk_halt",
    "flip_loop",
    "late_loop",
    "bounce",
    "eat_input",
    "runaway",
];

pub fn tape_by_name(name: &str) -> Option<TapeMachine> {
    Some(match name {
        "halt_now" => halt_now(),
        "loop2" => loop2(),
        "count3" => count3(),
        "walk_halt" => walk_halt(),
        "flip_loop" => flip_loop(),
        "late_loop" => late_loop(),
        "bounce" => bounce(),
        "eat_input" => eat_input(),
        "runaway" => runaway(),
        _ => return None,
    })
}

pub fn by_name(name: &str) -> Option<Machine> {
    tape_by_name(name).map(Machine::Tape)
}
