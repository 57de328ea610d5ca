//! Machine → local terms.
//!
//! Each site holds a tile (one step of the machine's run) and a qubit, so
//! `d = 2·tiles` with local index `2·tile + qubit`.
//!
//! **1D.** The chain must spell out the run: site 0 is pinned to the
//! initial tile and every bond whose right tile is not the successor of its
//! left tile costs 1. Qubits on `Run` tiles feel a field `|1⟩⟨1|`; bonds
//! touching a `Halt` tile carry the singlet projector instead, a
//! ferromagnetic Heisenberg coupling. A run that never halts therefore
//! freezes every qubit (`λ0 = 0`, unique ground state, gap exactly 1), while
//! a run that halts inside the chain leaves a pinned Heisenberg segment whose
//! magnon spectrum closes polynomially in `L`.
//!
//! **2D.** Every row repeats one tile and row `y + 1` holds the successor
//! of row `y`; the bottom row is pinned to the initial tile with its qubits
//! held at `|0⟩`. The roles swap: `Halt` tiles carry the field and `Run`
//! tiles the Heisenberg couplings, so non-halting runs leave a gapless
//! pinned ferromagnet and halting runs freeze above the bottom row.
//!
//! `Pending` tiles (the run outlasted the budget) get neither field nor
//! coupling; their free qubits make the ground space degenerate.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::matrix::ExactMatrix;
use super::scalar::AlgebraicScalar;
use super::terms::{BoundarySites, BoundaryTerm, LocalTermSet, Provenance, Tile, TileKind};
use crate::machine::{Machine, MachineError, Mode, Polarity, RunOptions, RunOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompileOptions {
    /// Largest local dimension accepted.
    pub max_d: usize,
    /// Simulation budget used to find the run's tiles.
    pub step_capacity: u64,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions {
            max_d: 12,
            step_capacity: 1_000_000,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompileError {
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error(transparent)]
    Machine(#[from] MachineError),
}

fn tape_tiles(m: &Machine, input: &str, outcome: RunOutcome) -> Result<Vec<Tile>, CompileError> {
    let count = match outcome {
        RunOutcome::Halted { steps } => steps + 1,
        RunOutcome::LoopDetected { prefix, period } => prefix + period,
        RunOutcome::BudgetExhausted { steps } => {
            return Err(CompileError::Capacity(format!(
                "run neither halted nor repeated within {steps} steps"
            )))
        }
    };
    let snaps = crate::machine::trace(m, input, count - 1)?;
    let last = count as usize - 1;
    Ok(snaps
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            let (kind, successor) = match outcome {
                RunOutcome::Halted { .. } if i == last => (TileKind::Halt, i),
                RunOutcome::LoopDetected { prefix, .. } if i == last => (TileKind::Run, prefix as usize),
                _ => (TileKind::Run, i + 1),
            };
            Tile {
                label: String::from_utf8_lossy(&s).into_owned(),
                kind,
                successor,
            }
        })
        .collect())
}

/// Abstract machines compile to a two-tile summary of their bounded run.
fn summary_tiles(outcome: RunOutcome) -> Vec<Tile> {
    let (label, kind) = match outcome {
        RunOutcome::Halted { steps } => (format!("halt@{steps}"), TileKind::Halt),
        RunOutcome::LoopDetected { prefix, period } => (format!("cycle@{prefix}+{period}"), TileKind::Run),
        RunOutcome::BudgetExhausted { steps } => (format!("pending@{steps}"), TileKind::Pending),
    };
    vec![
        Tile {
            label: "boot".into(),
            kind: TileKind::Run,
            successor: 1,
        },
        Tile {
            label,
            kind,
            successor: 1,
        },
    ]
}

fn one() -> AlgebraicScalar {
    AlgebraicScalar::ONE
}

/// Singlet projector `(|01⟩ − |10⟩)(⟨01| − ⟨10|)/2` on two qubits.
pub fn singlet_projector() -> ExactMatrix {
    let h = AlgebraicScalar::rational(1, 2);
    ExactMatrix::from_entries(4, [(1, 1, h), (2, 2, h), (1, 2, -h), (2, 1, -h)])
}

/// Sum over tile pairs `(a, b)` of `|a⟩⟨a| ⊗ |b⟩⟨b| ⊗ X(a, b)`, reordered to
/// the site-major index `(2a + qa)·d + (2b + qb)`.
fn bond(tiles: &[Tile], mut x: impl FnMut(usize, usize) -> Option<ExactMatrix>) -> ExactMatrix {
    let n = tiles.len();
    let d = 2 * n;
    let mut out = ExactMatrix::zeros(d * d);
    for a in 0..n {
        for b in 0..n {
            let Some(m) = x(a, b) else { continue };
            for (i, j, v) in m.iter() {
                let (qa, qb, ra, rb) = (i >> 1, i & 1, j >> 1, j & 1);
                let row = (2 * a + qa) * d + 2 * b + qb;
                let col = (2 * a + ra) * d + 2 * b + rb;
                out.add_at(row, col, v);
            }
        }
    }
    out
}

fn field(tiles: &[Tile], on: TileKind) -> ExactMatrix {
    let mut out = ExactMatrix::zeros(2 * tiles.len());
    for (t, tile) in tiles.iter().enumerate() {
        if tile.kind == on {
            out.set(2 * t + 1, 2 * t + 1, one());
        }
    }
    out
}

/// Penalises every tile except `start`; optionally also `start`'s `|1⟩`.
fn pin(tiles: &[Tile], start: usize, pin_qubit: bool) -> ExactMatrix {
    let mut out = ExactMatrix::zeros(2 * tiles.len());
    for t in 0..tiles.len() {
        if t != start {
            out.set(2 * t, 2 * t, one());
            out.set(2 * t + 1, 2 * t + 1, one());
        } else if pin_qubit {
            out.set(2 * t + 1, 2 * t + 1, one());
        }
    }
    out
}

/// Assembles the terms for a given tile layer.
pub fn terms_from_tiles(tiles: Vec<Tile>, mode: Mode, provenance: Provenance, run: Option<RunOutcome>) -> LocalTermSet {
    let d = 2 * tiles.len();
    let halt = |t: usize| tiles[t].kind == TileKind::Halt;
    let running = |t: usize| tiles[t].kind == TileKind::Run;
    let succ = |a: usize, b: usize| tiles[a].successor == b;
    let (h1, h, h_row, h_col, boundary) = match mode {
        Mode::OneD => {
            let h = bond(&tiles, |a, b| {
                if !succ(a, b) {
                    Some(ExactMatrix::identity(4))
                } else if halt(a) || halt(b) {
                    Some(singlet_projector())
                } else {
                    None
                }
            });
            let b = BoundaryTerm {
                sites: BoundarySites::FirstSite,
                term: pin(&tiles, 0, false),
            };
            (field(&tiles, TileKind::Run), Some(h), None, None, b)
        }
        Mode::TwoD => {
            let h_row = bond(&tiles, |a, b| {
                if a != b {
                    Some(ExactMatrix::identity(4))
                } else if running(a) {
                    Some(singlet_projector())
                } else {
                    None
                }
            });
            let h_col = bond(&tiles, |a, b| {
                if !succ(a, b) {
                    Some(ExactMatrix::identity(4))
                } else if running(a) && running(b) {
                    Some(singlet_projector())
                } else {
                    None
                }
            });
            let b = BoundaryTerm {
                sites: BoundarySites::BottomRow,
                term: pin(&tiles, 0, true),
            };
            (field(&tiles, TileKind::Halt), None, Some(h_row), Some(h_col), b)
        }
    };
    debug_assert_eq!(h1.dim(), d);
    LocalTermSet {
        d,
        mode,
        polarity: None,
        provenance,
        run,
        tiles,
        h1,
        h,
        h_row,
        h_col,
        boundary: Some(boundary),
        hash: String::new(),
    }
    .seal()
}

pub fn compile(m: &Machine, input: &str, mode: Mode) -> Result<LocalTermSet, CompileError> {
    compile_with(m, input, mode, CompileOptions::default())
}

pub fn compile_with(m: &Machine, input: &str, mode: Mode, opts: CompileOptions) -> Result<LocalTermSet, CompileError> {
    let outcome = crate::machine::run_with(m, input, RunOptions::new(opts.step_capacity))?;
    let tiles = match m {
        Machine::Tape(_) => tape_tiles(m, input, outcome)?,
        Machine::Abstract(_) => summary_tiles(outcome),
    };
    if 2 * tiles.len() > opts.max_d {
        return Err(CompileError::Capacity(format!(
            "{} tiles need d = {}, above the cap of {}",
            tiles.len(),
            2 * tiles.len(),
            opts.max_d
        )));
    }
    let provenance = Provenance {
        machine: m.encode(),
        input: input.to_string(),
    };
    Ok(terms_from_tiles(tiles, mode, provenance, Some(outcome)))
}

/// Marks a compiled set with the polarity it was built for.
pub fn with_polarity(terms: LocalTermSet, polarity: Polarity) -> LocalTermSet {
    LocalTermSet {
        polarity: Some(polarity),
        ..terms
    }
    .seal()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamc::terms::parse_terms;
    use crate::machine::builtin;

    fn tm(name: &str) -> Machine {
        builtin::by_name(name).unwrap()
    }

    #[test]
    fn dimensions_follow_the_run() {
        let t = compile(&tm("halt_now"), "", Mode::OneD).unwrap();
        assert_eq!(t.d, 4);
        assert!(t.has_halt_tile());
        let t = compile(&tm("loop2"), "", Mode::OneD).unwrap();
        assert_eq!(t.d, 4);
        assert!(!t.has_halt_tile());
        assert_eq!(t.tiles[1].successor, 0);
        let t = compile(&tm("count3"), "", Mode::TwoD).unwrap();
        assert_eq!(t.d, 8);
    }

    #[test]
    fn capacity_errors() {
        assert!(matches!(
            compile(&tm("runaway"), "", Mode::OneD),
            Err(CompileError::Capacity(_))
        ));
        let tight = CompileOptions { max_d: 6, ..Default::default() };
        assert!(matches!(
            compile_with(&tm("count3"), "", Mode::OneD, tight),
            Err(CompileError::Capacity(_))
        ));
    }

    #[test]
    fn every_compiled_term_is_certified() {
        for name in builtin::NAMES {
            for mode in [Mode::OneD, Mode::TwoD] {
                if let Ok(t) = compile(&tm(name), "", mode) {
                    let c = t.certify();
                    assert!(c.hermitian && c.bounded, "{name} {mode}: {c:?}");
                }
            }
        }
    }

    #[test]
    fn deterministic_and_round_trips() {
        let a = compile(&tm("loop2"), "", Mode::OneD).unwrap();
        let b = compile(&tm("loop2"), "", Mode::OneD).unwrap();
        assert_eq!(a.describe(), b.describe());
        assert_eq!(parse_terms(&a.describe()).unwrap(), a);
    }

    #[test]
    fn loop_terms_are_diagonal() {
        let t = compile(&tm("loop2"), "", Mode::OneD).unwrap();
        assert!(t.named_terms().iter().all(|(_, m)| m.is_diagonal()));
        let t = compile(&tm("halt_now"), "", Mode::OneD).unwrap();
        assert!(!t.h.as_ref().unwrap().is_diagonal());
    }
}
