//! Proofs and their line-per-entry text form:
//!
//! ```text
//! 0: HALTS(M:loop2,I:) ; AX 0
//! 1: NOT_HALTS(M:loop2,I:) ; AX 0,1
//! 2: HALTS(M:halt_now,I:) ; R0 0,1
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use super::statement::{parse_statement, Statement, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Justification {
    /// Axiom with a bounded certificate: `[steps]` for halting facts,
    /// `[prefix, period]` for repeated-configuration facts.
    Axiom(Vec<u64>),
    Rule { rule: usize, premises: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProofLine {
    pub statement: Statement,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Proof {
    pub lines: Vec<ProofLine>,
}

impl Proof {
    pub fn new() -> Self {
        Proof::default()
    }

    pub fn axiom(mut self, statement: Statement, witness: &[u64]) -> Self {
        self.lines.push(ProofLine {
            statement,
            justification: Justification::Axiom(witness.to_vec()),
        });
        self
    }

    pub fn rule(mut self, statement: Statement, rule: usize, premises: &[usize]) -> Self {
        self.lines.push(ProofLine {
            statement,
            justification: Justification::Rule {
                rule,
                premises: premises.to_vec(),
            },
        });
        self
    }

    pub fn conclusion(&self) -> Option<&Statement> {
        self.lines.last().map(|l| &l.statement)
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

fn join(xs: impl IntoIterator<Item = impl ToString>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, line) in self.lines.iter().enumerate() {
            write!(f, "{k}: {} ; ", line.statement)?;
            let (head, args) = match &line.justification {
                Justification::Axiom(w) => ("AX".to_string(), join(w)),
                Justification::Rule { rule, premises } => (format!("R{rule}"), join(premises)),
            };
            f.write_str(&head)?;
            if !args.is_empty() {
                write!(f, " {args}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn numbers(text: &str, offset: usize) -> Result<Vec<u64>, SyntaxError> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut pos = offset;
    for part in text.split(',') {
        let n = part.parse::<u64>().map_err(|_| SyntaxError {
            offset: pos,
            message: format!("expected a number, found {part:?}"),
        })?;
        out.push(n);
        pos += part.len() + 1;
    }
    Ok(out)
}

/// Parses the text form. Byte offsets in errors refer to the whole text.
pub fn parse_proof(text: &str) -> Result<Proof, SyntaxError> {
    let mut proof = Proof::new();
    let mut base = 0;
    for raw in text.split_inclusive('\n') {
        let line = raw.trim_end_matches('\n');
        let here = base;
        base += raw.len();
        if line.trim().is_empty() {
            continue;
        }
        let err = |at: usize, message: &str| SyntaxError {
            offset: here + at,
            message: message.to_string(),
        };
        let colon = line.find(": ").ok_or_else(|| err(0, "expected `k: `"))?;
        let k: usize = line[..colon].parse().map_err(|_| err(0, "expected a line number"))?;
        if k != proof.lines.len() {
            return Err(err(0, "line numbers must count up from 0"));
        }
        let rest_at = colon + 2;
        let sep = line[rest_at..].find(" ; ").ok_or_else(|| err(rest_at, "expected ` ; `"))? + rest_at;
        let statement = parse_statement(&line[rest_at..sep]).map_err(|e| SyntaxError {
            offset: here + rest_at + e.offset,
            message: e.message,
        })?;
        let just_at = sep + 3;
        let just = &line[just_at..];
        let (head, args, args_at) = match just.find(' ') {
            Some(sp) => (&just[..sp], &just[sp + 1..], just_at + sp + 1),
            None => (just, "", just_at + just.len()),
        };
        let args = numbers(args, here + args_at)?;
        let justification = if head == "AX" {
            Justification::Axiom(args)
        } else if let Some(id) = head.strip_prefix('R') {
            let rule = id.parse().map_err(|_| err(just_at + 1, "expected a rule id"))?;
            Justification::Rule {
                rule,
                premises: args.into_iter().map(|a| a as usize).collect(),
            }
        } else {
            return Err(err(just_at, "expected `AX` or `R<id>`"));
        };
        proof.lines.push(ProofLine {
            statement,
            justification,
        });
    }
    Ok(proof)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let p = Proof::new()
            .axiom(Statement::halts("loop2", ""), &[0])
            .axiom(Statement::not_halts("loop2", ""), &[0, 1])
            .rule(Statement::halts("halt_now", ""), 0, &[0, 1]);
        let text = p.render();
        assert_eq!(
            text,
            "0: HALTS(M:loop2,I:) ; AX 0\n1: NOT_HALTS(M:loop2,I:) ; AX 0,1\n2: HALTS(M:halt_now,I:) ; R0 0,1\n"
        );
        assert_eq!(parse_proof(&text).unwrap(), p);
    }

    #[test]
    fn bad_statement_offset_is_absolute() {
        let e = parse_proof("0: HALTS(M:a,I:) ; AX 1\n1: HALTS(M:B,I:) ; AX 1\n").unwrap_err();
        assert_eq!(e.offset, 24 + 3 + 8);
    }

    #[test]
    fn rejects_misnumbered_lines() {
        assert!(parse_proof("1: HALTS(M:a,I:) ; AX 1").is_err());
        assert!(parse_proof("0: HALTS(M:a,I:) ; XX 1").is_err());
    }
}
