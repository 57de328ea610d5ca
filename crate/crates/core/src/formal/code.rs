//! Binary proof code used for enumeration.
//!
//! Candidates are the strings over `{0,1}` in length-then-lexicographic
//! order (`""`, `0`, `1`, `00`, `01`, ...); candidate `i` is the binary form
//! of `i + 1` with its leading `1` dropped. Each candidate either decodes to
//! exactly one [`Proof`] or to nothing, and each proof over the vocabulary
//! has exactly one code, so the enumeration visits every such proof once.
//!
//! A code is a concatenation of lines:
//!
//! ```text
//! 1  <machine> <input> γ(steps)                      HALTS axiom
//! 01 <machine> <input> γ(prefix) γ(period - 1)       NOT_HALTS axiom
//! 00 <rule> <kind> <machine> <input> <premise>*      rule application
//! ```
//!
//! `<machine>`, `<input>` and `<rule>` are fixed-width indices into the
//! vocabulary / rule list (width `ceil(log2 n)`, zero bits when `n <= 1`);
//! `<kind>` is one bit (`1` = HALTS); each premise of line `k` is a
//! `ceil(log2 k)`-bit line number; `γ(n)` is the Elias gamma code of `n + 1`.

use super::proof::{Justification, Proof, ProofLine};
use super::statement::{Kind, Statement};
use super::system::FormalSystem;

/// Names available to the enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    pub machines: Vec<String>,
    pub inputs: Vec<String>,
}

impl Vocabulary {
    pub fn of(system: &FormalSystem) -> Self {
        Vocabulary {
            machines: system.machine_vocab.clone(),
            inputs: system.input_vocab.clone(),
        }
    }

    /// Appends the target's names when missing, keeping existing indices.
    pub fn with_statement(mut self, s: &Statement) -> Self {
        if !self.machines.contains(&s.machine) {
            self.machines.push(s.machine.clone());
        }
        if !self.inputs.contains(&s.input) {
            self.inputs.push(s.input.clone());
        }
        self
    }
}

/// Bits needed to index `n` items.
pub fn index_width(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// The `index`-th candidate string.
pub fn candidate(index: u64) -> Vec<bool> {
    let n = index + 1;
    let len = 63 - n.leading_zeros() as usize;
    (0..len).rev().map(|b| (n >> b) & 1 == 1).collect()
}

/// Inverse of [`candidate`].
pub fn candidate_index(bits: &[bool]) -> u64 {
    let n = bits.iter().fold(1u64, |acc, &b| (acc << 1) | b as u64);
    n - 1
}

pub fn render_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

struct Reader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl Reader<'_> {
    fn bit(&mut self) -> Option<bool> {
        let b = *self.bits.get(self.pos)?;
        self.pos += 1;
        Some(b)
    }

    fn fixed(&mut self, width: usize) -> Option<u64> {
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | self.bit()? as u64;
        }
        Some(v)
    }

    fn gamma(&mut self) -> Option<u64> {
        let mut zeros = 0;
        while !self.bit()? {
            zeros += 1;
            if zeros > 62 {
                return None;
            }
        }
        let rest = self.fixed(zeros)?;
        Some(((1u64 << zeros) | rest) - 1)
    }

    fn index(&mut self, n: usize) -> Option<usize> {
        let v = self.fixed(index_width(n))? as usize;
        (v < n).then_some(v)
    }

    fn done(&self) -> bool {
        self.pos == self.bits.len()
    }
}

struct Writer(Vec<bool>);

impl Writer {
    fn fixed(&mut self, v: u64, width: usize) -> Option<()> {
        if width < 64 && v >> width != 0 {
            return None;
        }
        self.0.extend((0..width).rev().map(|b| (v >> b) & 1 == 1));
        Some(())
    }

    fn gamma(&mut self, n: u64) -> Option<()> {
        let v = n.checked_add(1)?;
        let len = 64 - v.leading_zeros() as usize;
        self.0.extend(std::iter::repeat(false).take(len - 1));
        self.fixed(v, len)
    }

    fn index(&mut self, items: &[String], name: &str) -> Option<()> {
        let i = items.iter().position(|x| x == name)?;
        self.fixed(i as u64, index_width(items.len()))
    }
}

/// Decodes a candidate into a proof. `None` for the empty string and for
/// anything that is not a whole number of well-formed lines.
pub fn decode_proof(bits: &[bool], system: &FormalSystem, vocab: &Vocabulary) -> Option<Proof> {
    let mut r = Reader { bits, pos: 0 };
    let mut lines = Vec::new();
    while !r.done() {
        let k = lines.len();
        let line = if r.bit()? {
            let machine = r.index(vocab.machines.len())?;
            let input = r.index(vocab.inputs.len())?;
            let steps = r.gamma()?;
            ProofLine {
                statement: Statement::halts(&vocab.machines[machine], &vocab.inputs[input]),
                justification: Justification::Axiom(vec![steps]),
            }
        } else if r.bit()? {
            let machine = r.index(vocab.machines.len())?;
            let input = r.index(vocab.inputs.len())?;
            let prefix = r.gamma()?;
            let period = r.gamma()?.checked_add(1)?;
            ProofLine {
                statement: Statement::not_halts(&vocab.machines[machine], &vocab.inputs[input]),
                justification: Justification::Axiom(vec![prefix, period]),
            }
        } else {
            if system.rules.is_empty() {
                return None;
            }
            let rule = r.index(system.rules.len())?;
            let kind = if r.bit()? { Kind::Halts } else { Kind::NotHalts };
            let machine = r.index(vocab.machines.len())?;
            let input = r.index(vocab.inputs.len())?;
            let premises = (0..system.rules[rule].arity())
                .map(|_| r.fixed(index_width(k)).map(|p| p as usize))
                .collect::<Option<Vec<_>>>()?;
            ProofLine {
                statement: Statement::new(kind, &vocab.machines[machine], &vocab.inputs[input]),
                justification: Justification::Rule { rule, premises },
            }
        };
        lines.push(line);
    }
    (!lines.is_empty()).then_some(Proof { lines })
}

/// The unique code of `proof`, if every name is in the vocabulary and every
/// field fits the layout.
pub fn encode_proof(proof: &Proof, system: &FormalSystem, vocab: &Vocabulary) -> Option<Vec<bool>> {
    let mut w = Writer(Vec::new());
    for (k, line) in proof.lines.iter().enumerate() {
        let s = &line.statement;
        match (&line.justification, s.kind) {
            (Justification::Axiom(wit), Kind::Halts) if wit.len() == 1 => {
                w.0.push(true);
                w.index(&vocab.machines, &s.machine)?;
                w.index(&vocab.inputs, &s.input)?;
                w.gamma(wit[0])?;
            }
            (Justification::Axiom(wit), Kind::NotHalts) if wit.len() == 2 && wit[1] >= 1 => {
                w.0.extend([false, true]);
                w.index(&vocab.machines, &s.machine)?;
                w.index(&vocab.inputs, &s.input)?;
                w.gamma(wit[0])?;
                w.gamma(wit[1] - 1)?;
            }
            (Justification::Rule { rule, premises }, kind) => {
                let arity = system.rules.get(*rule)?.arity();
                if premises.len() != arity {
                    return None;
                }
                w.0.extend([false, false]);
                w.fixed(*rule as u64, index_width(system.rules.len()))?;
                w.0.push(kind == Kind::Halts);
                w.index(&vocab.machines, &s.machine)?;
                w.index(&vocab.inputs, &s.input)?;
                for &p in premises {
                    w.fixed(p as u64, index_width(k))?;
                }
            }
            _ => return None,
        }
    }
    (!w.0.is_empty()).then_some(w.0)
}
