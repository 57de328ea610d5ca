//! The self-referential Hamiltonian: a gap-proof searcher, closed under the
//! duplication fixed point, compiled to local terms.
//!
//! The compiled machine `M* = fix_point(searcher)` runs the searcher on its
//! own description `encode(M*)`. That string is recorded verbatim as the
//! provenance machine of the output terms, so the searcher's duplicated
//! input is exactly the machine part of the output's description; [`audit`]
//! checks this by replaying `M*`'s setup phase.

use serde::{Deserialize, Serialize};

use super::compile::{compile_with, with_polarity, CompileError, CompileOptions};
use super::terms::LocalTermSet;
use crate::machine::{build_gap_proof_searcher_for, fix_point, trace, Machine, Mode, Polarity};

#[derive(Debug, Clone)]
pub struct SelfReferential {
    pub terms: LocalTermSet,
    /// `fix_point(searcher)`, the machine the terms were compiled from.
    pub machine: Machine,
    pub searcher: Machine,
}

pub fn self_referential_hamiltonian(
    system_id: &str,
    polarity: Polarity,
    mode: Mode,
    opts: CompileOptions,
) -> Result<SelfReferential, CompileError> {
    let searcher = build_gap_proof_searcher_for(system_id, polarity, mode)?;
    let machine = fix_point(&searcher);
    let terms = with_polarity(compile_with(&machine, "", mode, opts)?, polarity);
    Ok(SelfReferential {
        terms,
        machine,
        searcher,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Audit {
    /// The string `M*` writes during setup and hands to the searcher.
    pub duplicated_input: String,
    /// The machine field of the output's description.
    pub described_machine: String,
    pub description_hash: String,
    pub hash_valid: bool,
    pub ok: bool,
}

/// Replays the setup phase and checks the searcher's input against the
/// output terms' own description.
pub fn audit(s: &SelfReferential) -> Audit {
    let e = s.machine.encode();
    let n = e.len() as u64;
    // snapshot n of the setup phase is the tag byte followed by the
    // characters written so far
    let duplicated_input = trace(&s.machine, "", n)
        .ok()
        .and_then(|t| t.get(n as usize).cloned())
        .and_then(|snap| snap.split_first().map(|(_, rest)| String::from_utf8_lossy(rest).into_owned()))
        .unwrap_or_default();
    let described: LocalTermSet = serde_json::from_str(&s.terms.describe()).expect("own description parses");
    let hash_valid = described.compute_hash() == described.hash;
    let ok = hash_valid
        && duplicated_input == described.provenance.machine
        && described.provenance.machine == e
        && s.machine.encode() == format!("fx_{}", s.searcher.encode());
    Audit {
        duplicated_input,
        described_machine: described.provenance.machine,
        description_hash: described.hash,
        hash_valid,
        ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamc::terms::TileKind;
    use crate::machine::RunOutcome;

    #[test]
    fn inconsistent_searcher_halts_into_a_halt_tile() {
        let s = self_referential_hamiltonian("INCONSISTENT-F", Polarity::G, Mode::OneD, CompileOptions::default()).unwrap();
        assert!(matches!(s.terms.run, Some(RunOutcome::Halted { .. })));
        assert_eq!(s.terms.tiles[1].kind, TileKind::Halt);
        assert!(audit(&s).ok);
    }

    #[test]
    fn trace_searcher_stays_pending() {
        let opts = CompileOptions {
            step_capacity: 20_000,
            ..Default::default()
        };
        let s = self_referential_hamiltonian("TRACE-F", Polarity::G, Mode::OneD, opts).unwrap();
        assert_eq!(s.terms.run, Some(RunOutcome::BudgetExhausted { steps: 20_000 }));
        assert_eq!(s.terms.tiles[1].kind, TileKind::Pending);
        let a = audit(&s);
        assert!(a.ok, "{a:?}");
        assert_eq!(a.duplicated_input, "fx_gs_trace_g_1d");
    }
}
