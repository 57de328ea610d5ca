//! Recursive formal systems: decidable axiom schemes plus a finite rule list.

use serde::{Deserialize, Serialize};

use super::proof::{Justification, Proof};
use super::statement::{Kind, Statement};
use crate::machine::{self, halts_in_exactly, verify_loop_certificate};

/// Axiom witnesses above this are rejected outright, which keeps every
/// axiom check bounded.
pub const MAX_WITNESS: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// From `T` (first premise) and `¬T` (second premise), infer any statement.
    Explode,
}

impl Rule {
    pub fn arity(self) -> usize {
        match self {
            Rule::Explode => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AxiomSchemes {
    /// `HALTS(m, n)` with witness `[t]`, accepted iff `m` halts on `n` at
    /// exactly step `t`.
    pub halting_traces: bool,
    /// `NOT_HALTS(m, n)` with witness `[p, q]`, accepted iff the
    /// configurations at `p` and `p + q` coincide before any halt.
    pub loop_certificates: bool,
    /// Statements accepted unconditionally, whatever the witness.
    pub planted: Vec<Statement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalSystem {
    pub id: String,
    /// Short `[a-z]` name used inside machine descriptions.
    pub code: String,
    pub axioms: AxiomSchemes,
    pub rules: Vec<Rule>,
    /// Machine descriptions the proof enumeration can name.
    pub machine_vocab: Vec<String>,
    /// Input strings the proof enumeration can name.
    pub input_vocab: Vec<String>,
}

pub const SYSTEM_IDS: [&str; 3] = ["TRACE-F", "LOOPCERT-F", "INCONSISTENT-F"];

fn base(id: &str, code: &str, axioms: AxiomSchemes) -> FormalSystem {
    FormalSystem {
        id: id.into(),
        code: code.into(),
        axioms,
        rules: vec![Rule::Explode],
        machine_vocab: vec!["halt_now".into(), "loop2".into()],
        input_vocab: vec![String::new()],
    }
}

/// Halting facts witnessed by direct simulation.
pub fn trace_f() -> FormalSystem {
    base(
        "TRACE-F",
        "trace",
        AxiomSchemes {
            halting_traces: true,
            ..Default::default()
        },
    )
}

/// [`trace_f`] plus repeated-configuration certificates for non-halting.
pub fn loopcert_f() -> FormalSystem {
    base(
        "LOOPCERT-F",
        "loopcert",
        AxiomSchemes {
            halting_traces: true,
            loop_certificates: true,
            ..Default::default()
        },
    )
}

/// [`trace_f`] plus the planted pair `HALTS(loop2,"")`, `NOT_HALTS(loop2,"")`.
pub fn inconsistent_f() -> FormalSystem {
    base(
        "INCONSISTENT-F",
        "inconsistent",
        AxiomSchemes {
            halting_traces: true,
            loop_certificates: false,
            planted: vec![Statement::halts("loop2", ""), Statement::not_halts("loop2", "")],
        },
    )
}

/// Looks a built-in system up by id (`TRACE-F`) or code (`trace`).
pub fn system_by_id(id: &str) -> Option<FormalSystem> {
    [trace_f(), loopcert_f(), inconsistent_f()]
        .into_iter()
        .find(|s| s.id.eq_ignore_ascii_case(id) || s.code == id)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofCheck {
    pub valid: bool,
    pub conclusion: Option<Statement>,
    /// First offending line of an invalid proof (0 for an empty proof).
    pub failing_line: Option<usize>,
}

impl FormalSystem {
    /// Decidable axiom membership.
    pub fn is_axiom(&self, statement: &Statement, witness: &[u64]) -> bool {
        if !statement.is_well_formed() {
            return false;
        }
        if self.axioms.planted.contains(statement) {
            return true;
        }
        if witness.iter().any(|&w| w > MAX_WITNESS) {
            return false;
        }
        let resolve = || machine::resolve(&statement.machine);
        match (statement.kind, witness) {
            (Kind::Halts, &[steps]) if self.axioms.halting_traces => {
                resolve().is_some_and(|m| halts_in_exactly(&m, &statement.input, steps))
            }
            (Kind::NotHalts, &[prefix, period]) if self.axioms.loop_certificates => {
                resolve().is_some_and(|m| verify_loop_certificate(&m, &statement.input, prefix, period))
            }
            _ => false,
        }
    }

    fn line_ok(&self, proof: &Proof, k: usize) -> bool {
        let line = &proof.lines[k];
        match &line.justification {
            Justification::Axiom(w) => self.is_axiom(&line.statement, w),
            Justification::Rule { rule, premises } => {
                let Some(&rule) = self.rules.get(*rule) else {
                    return false;
                };
                if premises.len() != rule.arity() || premises.iter().any(|&p| p >= k) {
                    return false;
                }
                if !line.statement.is_well_formed() {
                    return false;
                }
                match rule {
                    Rule::Explode => {
                        let a = &proof.lines[premises[0]].statement;
                        let b = &proof.lines[premises[1]].statement;
                        *b == a.negate()
                    }
                }
            }
        }
    }

    pub fn check_proof(&self, proof: &Proof) -> ProofCheck {
        if proof.is_empty() {
            return ProofCheck {
                valid: false,
                conclusion: None,
                failing_line: Some(0),
            };
        }
        for k in 0..proof.len() {
            if !self.line_ok(proof, k) {
                return ProofCheck {
                    valid: false,
                    conclusion: None,
                    failing_line: Some(k),
                };
            }
        }
        ProofCheck {
            valid: true,
            conclusion: proof.conclusion().cloned(),
            failing_line: None,
        }
    }
}

pub fn check_proof(system: &FormalSystem, proof: &Proof) -> ProofCheck {
    system.check_proof(proof)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halt_now_in_one_step_is_an_axiom() {
        let p = Proof::new().axiom(Statement::halts("halt_now", ""), &[1]);
        let r = check_proof(&trace_f(), &p);
        assert!(r.valid);
        assert_eq!(r.conclusion, Some(Statement::halts("halt_now", "")));
        // wrong step count
        let p = Proof::new().axiom(Statement::halts("halt_now", ""), &[2]);
        assert_eq!(check_proof(&trace_f(), &p).failing_line, Some(0));
    }

    #[test]
    fn encodings_resolve_like_names() {
        let desc = crate::machine::encode_tape(&crate::machine::builtin::halt_now());
        let p = Proof::new().axiom(Statement::halts(desc, ""), &[1]);
        assert!(check_proof(&trace_f(), &p).valid);
    }

    #[test]
    fn forward_reference_is_invalid_at_that_line() {
        let p = Proof::new()
            .axiom(Statement::halts("loop2", ""), &[0])
            .rule(Statement::halts("halt_now", ""), 0, &[0, 2])
            .axiom(Statement::not_halts("loop2", ""), &[0, 1]);
        let r = check_proof(&inconsistent_f(), &p);
        assert!(!r.valid);
        assert_eq!(r.failing_line, Some(1));
    }

    #[test]
    fn no_rules_means_rule_lines_fail() {
        let mut sys = inconsistent_f();
        sys.rules.clear();
        let p = Proof::new()
            .axiom(Statement::halts("loop2", ""), &[0])
            .axiom(Statement::not_halts("loop2", ""), &[0])
            .rule(Statement::halts("halt_now", ""), 0, &[0, 1]);
        assert_eq!(check_proof(&sys, &p).failing_line, Some(2));
        assert!(check_proof(&inconsistent_f(), &p).valid);
    }

    #[test]
    fn loop_certificates_only_in_loopcert() {
        let p = Proof::new().axiom(Statement::not_halts("loop2", ""), &[0, 2]);
        assert!(check_proof(&loopcert_f(), &p).valid);
        assert!(!check_proof(&trace_f(), &p).valid);
        let bad = Proof::new().axiom(Statement::not_halts("loop2", ""), &[0, 1]);
        assert!(!check_proof(&loopcert_f(), &bad).valid);
        let halting = Proof::new().axiom(Statement::not_halts("halt_now", ""), &[1, 1]);
        assert!(!check_proof(&loopcert_f(), &halting).valid);
    }

    #[test]
    fn empty_proof_is_invalid() {
        assert!(!check_proof(&trace_f(), &Proof::new()).valid);
    }

    #[test]
    fn explode_needs_a_genuine_negation() {
        let p = Proof::new()
            .axiom(Statement::halts("halt_now", ""), &[1])
            .axiom(Statement::halts("halt_now", ""), &[1])
            .rule(Statement::not_halts("halt_now", ""), 0, &[0, 1]);
        assert_eq!(check_proof(&trace_f(), &p).failing_line, Some(2));
    }

    #[test]
    fn lookup_by_id_or_code() {
        assert_eq!(system_by_id("TRACE-F").unwrap().code, "trace");
        assert_eq!(system_by_id("inconsistent").unwrap().id, "INCONSISTENT-F");
        assert!(system_by_id("ZFC").is_none());
    }
}
