use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Kind {
    Halts,
    NotHalts,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Halts => "HALTS",
            Kind::NotHalts => "NOT_HALTS",
        }
    }

    pub fn flip(self) -> Kind {
        match self {
            Kind::Halts => Kind::NotHalts,
            Kind::NotHalts => Kind::Halts,
        }
    }
}

/// A halting atom or its negation: `HALTS(M:<desc>,I:<input>)` or
/// `NOT_HALTS(M:<desc>,I:<input>)`, both fields over `[a-z0-9_]*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Statement {
    pub kind: Kind,
    pub machine: String,
    pub input: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at byte {offset}: {message}")]
pub struct SyntaxError {
    pub offset: usize,
    pub message: String,
}

pub fn is_desc_char(c: char) -> bool {
    matches!(c, 'a'..='z' | '0'..='9' | '_')
}

impl Statement {
    pub fn new(kind: Kind, machine: impl Into<String>, input: impl Into<String>) -> Self {
        Statement {
            kind,
            machine: machine.into(),
            input: input.into(),
        }
    }

    pub fn halts(machine: impl Into<String>, input: impl Into<String>) -> Self {
        Self::new(Kind::Halts, machine, input)
    }

    pub fn not_halts(machine: impl Into<String>, input: impl Into<String>) -> Self {
        Self::new(Kind::NotHalts, machine, input)
    }

    pub fn negate(&self) -> Statement {
        Statement {
            kind: self.kind.flip(),
            ..self.clone()
        }
    }

    pub fn is_well_formed(&self) -> bool {
        self.machine.chars().all(is_desc_char) && self.input.chars().all(is_desc_char)
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(M:{},I:{})", self.kind.keyword(), self.machine, self.input)
    }
}

impl std::str::FromStr for Statement {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_statement(s)
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn fail<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, lit: &str) -> Result<(), SyntaxError> {
        if self.text[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            Ok(())
        } else {
            self.fail(format!("expected `{lit}`"))
        }
    }

    fn field(&mut self) -> String {
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| !is_desc_char(c)).unwrap_or(rest.len());
        self.pos += len;
        rest[..len].to_string()
    }
}

/// Parses one statement; the whole input must match the grammar.
pub fn parse_statement(text: &str) -> Result<Statement, SyntaxError> {
    let mut cur = Cursor { text, pos: 0 };
    let kind = if text.starts_with("HALTS(") {
        Kind::Halts
    } else if text.starts_with("NOT_HALTS(") {
        Kind::NotHalts
    } else {
        return cur.fail("expected `HALTS(` or `NOT_HALTS(`");
    };
    cur.pos = kind.keyword().len() + 1;
    cur.expect("M:")?;
    let machine = cur.field();
    cur.expect(",I:")?;
    let input = cur.field();
    cur.expect(")")?;
    if cur.pos != text.len() {
        return cur.fail("trailing characters");
    }
    Ok(Statement { kind, machine, input })
}
