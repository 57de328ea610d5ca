//! Statements about halting, proofs, the built-in formal systems and
//! exhaustive proof search.

pub mod code;
mod proof;
mod search;
mod statement;
mod system;

pub use code::{candidate, candidate_index, decode_proof, encode_proof, Vocabulary};
pub use proof::{parse_proof, Justification, Proof, ProofLine};
pub use search::{
    enumerate_proofs, find_contradiction, search_proof, Contradiction, ContradictionScan,
    ProofEnumerator, TargetScan,
};
pub use statement::{parse_statement, Kind, Statement, SyntaxError};
pub use system::{
    check_proof, inconsistent_f, loopcert_f, system_by_id, trace_f, AxiomSchemes, FormalSystem,
    ProofCheck, Rule, MAX_WITNESS, SYSTEM_IDS,
};
