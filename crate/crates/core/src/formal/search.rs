//! Exhaustive proof enumeration in candidate order.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::code::{candidate, decode_proof, Vocabulary};
use super::proof::Proof;
use super::statement::Statement;
use super::system::FormalSystem;

/// Walks candidates `0, 1, 2, ...` and reports the valid proofs among them.
#[derive(Debug, Clone)]
pub struct ProofEnumerator {
    system: FormalSystem,
    vocab: Vocabulary,
    next: u64,
}

impl ProofEnumerator {
    pub fn new(system: FormalSystem, vocab: Vocabulary) -> Self {
        ProofEnumerator {
            system,
            vocab,
            next: 0,
        }
    }

    pub fn for_system(system: &FormalSystem) -> Self {
        Self::new(system.clone(), Vocabulary::of(system))
    }

    /// Index of the candidate the next call to [`step`](Self::step) examines.
    pub fn position(&self) -> u64 {
        self.next
    }

    pub fn system(&self) -> &FormalSystem {
        &self.system
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    /// Examines one candidate. Returns its index and, if it decodes to a
    /// valid proof, that proof.
    pub fn step(&mut self) -> (u64, Option<Proof>) {
        let index = self.next;
        self.next += 1;
        let proof = decode_proof(&candidate(index), &self.system, &self.vocab)
            .filter(|p| self.system.check_proof(p).valid);
        (index, proof)
    }
}

impl Iterator for ProofEnumerator {
    type Item = (u64, Proof);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let (i, Some(p)) = self.step() {
                return Some((i, p));
            }
        }
    }
}

/// Valid proofs among the first `max_candidates` candidates.
pub fn enumerate_proofs(system: &FormalSystem, max_candidates: u64) -> Vec<(u64, Proof)> {
    let mut e = ProofEnumerator::for_system(system);
    let mut out = Vec::new();
    while e.position() < max_candidates {
        if let (i, Some(p)) = e.step() {
            out.push((i, p));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contradiction {
    /// The statement proved first; its negation was proved at `candidate`.
    pub statement: Statement,
    pub proof: Proof,
    pub negation_proof: Proof,
    /// Candidate index that completed the pair.
    pub candidate: u64,
}

/// Stepwise contradiction search: remembers the first proof of every
/// statement and stops when a new proof concludes the negation of a
/// remembered one.
#[derive(Debug, Clone)]
pub struct ContradictionScan {
    enumerator: ProofEnumerator,
    proved: HashMap<Statement, Proof>,
}

impl ContradictionScan {
    pub fn new(system: &FormalSystem) -> Self {
        ContradictionScan {
            enumerator: ProofEnumerator::for_system(system),
            proved: HashMap::new(),
        }
    }

    pub fn position(&self) -> u64 {
        self.enumerator.position()
    }

    pub fn proved(&self) -> usize {
        self.proved.len()
    }

    pub fn step(&mut self) -> Option<Contradiction> {
        let (index, proof) = self.enumerator.step();
        let proof = proof?;
        let conclusion = proof.conclusion()?.clone();
        if let Some(earlier) = self.proved.get(&conclusion.negate()) {
            return Some(Contradiction {
                statement: conclusion.negate(),
                proof: earlier.clone(),
                negation_proof: proof,
                candidate: index,
            });
        }
        self.proved.entry(conclusion).or_insert(proof);
        None
    }
}

pub fn find_contradiction(system: &FormalSystem, max_candidates: u64) -> Option<Contradiction> {
    let mut scan = ContradictionScan::new(system);
    while scan.position() < max_candidates {
        if let Some(c) = scan.step() {
            return Some(c);
        }
    }
    None
}

/// Stepwise search for a proof of one fixed statement. The target's machine
/// and input are added to the vocabulary if missing.
#[derive(Debug, Clone)]
pub struct TargetScan {
    enumerator: ProofEnumerator,
    target: Statement,
}

impl TargetScan {
    pub fn new(system: &FormalSystem, target: Statement) -> Self {
        let vocab = Vocabulary::of(system).with_statement(&target);
        TargetScan {
            enumerator: ProofEnumerator::new(system.clone(), vocab),
            target,
        }
    }

    pub fn target(&self) -> &Statement {
        &self.target
    }

    pub fn position(&self) -> u64 {
        self.enumerator.position()
    }

    pub fn step(&mut self) -> Option<(u64, Proof)> {
        match self.enumerator.step() {
            (i, Some(p)) if p.conclusion() == Some(&self.target) => Some((i, p)),
            _ => None,
        }
    }
}

/// First proof of `target` within `max_candidates` candidates, with its index.
pub fn search_proof(system: &FormalSystem, target: &Statement, max_candidates: u64) -> Option<(u64, Proof)> {
    let mut scan = TargetScan::new(system, target.clone());
    while scan.position() < max_candidates {
        if let Some(hit) = scan.step() {
            return Some(hit);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::code::{candidate_index, encode_proof};
    use crate::formal::system::{inconsistent_f, loopcert_f, trace_f};

    #[test]
    fn first_valid_proof_is_the_halt_now_axiom() {
        let found = enumerate_proofs(&trace_f(), 64);
        assert_eq!(found.len(), 1);
        let (i, p) = &found[0];
        assert_eq!(p.conclusion(), Some(&Statement::halts("halt_now", "")));
        assert_eq!(*i, candidate_index(&[true, false, false, true, false]));
    }

    #[test]
    fn consistent_systems_have_no_early_contradiction() {
        assert!(find_contradiction(&trace_f(), 1 << 16).is_none());
        assert!(find_contradiction(&loopcert_f(), 1 << 16).is_none());
    }

    #[test]
    fn planted_pair_is_found() {
        let sys = inconsistent_f();
        let c = find_contradiction(&sys, 1 << 16).expect("contradiction");
        assert_eq!(c.statement.machine, "loop2");
        assert!(sys.check_proof(&c.proof).valid);
        assert!(sys.check_proof(&c.negation_proof).valid);
        assert_eq!(c.negation_proof.conclusion(), Some(&c.statement.negate()));
        // oracle: the two one-line planted proofs, in whichever order their
        // shortest codes come
        let v = Vocabulary::of(&sys);
        let h = Proof::new().axiom(Statement::halts("loop2", ""), &[0]);
        let n = Proof::new().axiom(Statement::not_halts("loop2", ""), &[0, 1]);
        let ih = candidate_index(&encode_proof(&h, &sys, &v).unwrap());
        let ineg = candidate_index(&encode_proof(&n, &sys, &v).unwrap());
        assert_eq!(c.candidate, ih.max(ineg));
    }

    #[test]
    fn loop_certificate_proof_is_found() {
        let (_, p) = search_proof(&loopcert_f(), &Statement::not_halts("loop2", ""), 1 << 12).unwrap();
        assert_eq!(p.len(), 1);
        assert!(search_proof(&trace_f(), &Statement::not_halts("loop2", ""), 1 << 12).is_none());
    }

    #[test]
    fn target_names_extend_the_vocabulary() {
        let target = Statement::halts("count3", "");
        let (_, p) = search_proof(&trace_f(), &target, 1 << 12).unwrap();
        assert_eq!(p.conclusion(), Some(&target));
    }
}
