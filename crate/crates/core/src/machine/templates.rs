//! Small abstract machines, mostly used as fixed-point templates.

use std::sync::Arc;

use super::{AbstractMachine, AbstractProcess, Machine};

pub const NAMES: [&str; 6] = ["ab_halt", "ab_spin", "ab_count", "ab_scan", "ab_parity", "ab_selfeq"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Template {
    /// Halts after one step.
    Halt,
    /// Never halts; one configuration forever.
    Spin,
    /// Walks over the input, halting after `len + 1` steps.
    Count,
    /// Cycles over the input and halts on the first `1`; loops if none.
    Scan,
    /// Walks over the input; halts if its length is even, else spins.
    Parity,
    /// Halts after one step iff the input is `fx_ab_selfeq`, its own
    /// fixed point's description; spins otherwise.
    SelfEq,
}

impl Template {
    pub fn name(self) -> &'static str {
        NAMES[self as usize]
    }

    fn from_name(s: &str) -> Option<Template> {
        use Template::*;
        [Halt, Spin, Count, Scan, Parity, SelfEq]
            .into_iter()
            .find(|t| t.name() == s)
    }
}

impl AbstractMachine for Template {
    fn encode(&self) -> String {
        self.name().to_string()
    }

    fn boot(&self, input: &str) -> Box<dyn AbstractProcess> {
        Box::new(TemplateProcess {
            kind: *self,
            input: input.as_bytes().to_vec(),
            pos: 0,
            halted: false,
            started: false,
        })
    }
}

struct TemplateProcess {
    kind: Template,
    input: Vec<u8>,
    pos: usize,
    halted: bool,
    started: bool,
}

impl AbstractProcess for TemplateProcess {
    fn step(&mut self) {
        if self.halted {
            return;
        }
        let len = self.input.len();
        match self.kind {
            Template::Halt => self.halted = true,
            Template::Spin => {}
            Template::Count => {
                self.pos += 1;
                self.halted = self.pos > len;
            }
            Template::Scan => {
                if self.input.get(self.pos) == Some(&b'1') {
                    self.halted = true;
                } else {
                    self.pos = (self.pos + 1) % (len + 1);
                }
            }
            Template::Parity => {
                if self.pos < len {
                    self.pos += 1;
                } else if len % 2 == 0 {
                    self.halted = true;
                }
            }
            Template::SelfEq => {
                if !self.started {
                    self.started = true;
                    self.halted = self.input == b"fx_ab_selfeq";
                }
            }
        }
    }

    fn is_halted(&self) -> bool {
        self.halted
    }

    fn snapshot(&self) -> Vec<u8> {
        let mut s = vec![self.halted as u8, self.started as u8];
        s.extend((self.pos as u64).to_le_bytes());
        s
    }
}

pub fn by_name(name: &str) -> Option<Machine> {
    decode_template(name)
}

pub(super) fn decode_template(s: &str) -> Option<Machine> {
    Template::from_name(s).map(|t| Machine::Abstract(Arc::new(t)))
}
