//! Local term sets and their canonical JSON form.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::matrix::ExactMatrix;
use super::scalar::AlgebraicScalar;
use crate::machine::{Mode, Polarity, RunOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TileKind {
    /// A non-halting step of the computation.
    Run,
    /// The halting configuration; gates the coupled qubit layer.
    Halt,
    /// The computation did not finish within the compile budget.
    Pending,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tile {
    pub label: String,
    pub kind: TileKind,
    /// Index of the tile that must follow this one.
    pub successor: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Provenance {
    pub machine: String,
    pub input: String,
}

/// Where the declared boundary term acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundarySites {
    /// Site 0 of a chain.
    FirstSite,
    /// Every site of row 0 of a lattice.
    BottomRow,
}

/// A single-site term outside the translation-invariant bulk, pinning the
/// initial configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryTerm {
    pub sites: BoundarySites,
    pub term: ExactMatrix,
}

/// Translation-invariant nearest-neighbour terms with exact entries.
///
/// Local basis index `2·tile + qubit` for compiled sets; two-site terms use
/// `left·d + right` (1D, `h`; 2D row bonds, `h_row`) or `lower·d + upper`
/// (2D column bonds, `h_col`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalTermSet {
    pub d: usize,
    pub mode: Mode,
    pub polarity: Option<Polarity>,
    pub provenance: Provenance,
    /// The machine's bounded run that determined the tile layer.
    pub run: Option<RunOutcome>,
    pub tiles: Vec<Tile>,
    pub h1: ExactMatrix,
    /// 1D bond term.
    pub h: Option<ExactMatrix>,
    pub h_row: Option<ExactMatrix>,
    pub h_col: Option<ExactMatrix>,
    pub boundary: Option<BoundaryTerm>,
    /// Hex SHA-256 of the canonical JSON with this field empty.
    pub hash: String,
}

#[derive(Debug, Error)]
pub enum TermsError {
    #[error("malformed term set: {0}")]
    Json(#[from] serde_json::Error),
    #[error("hash mismatch: recorded {recorded}, computed {computed}")]
    Hash { recorded: String, computed: String },
    #[error("invalid term set: {0}")]
    Invalid(String),
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn sha256_hex(text: &str) -> String {
    hex(&Sha256::digest(text.as_bytes()))
}

/// Exact certificate that every term is Hermitian with operator norm ≤ 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormCertificate {
    pub hermitian: bool,
    /// `(term name, exact max absolute row sum)`.
    pub row_sums: Vec<(String, AlgebraicScalar)>,
    pub bounded: bool,
}

impl LocalTermSet {
    /// A hand-made 1D term set (no tile layer, no boundary).
    pub fn custom_1d(h1: ExactMatrix, h: ExactMatrix) -> Self {
        assert_eq!(h.dim(), h1.dim() * h1.dim(), "bond term must act on d² states");
        Self::seal(LocalTermSet {
            d: h1.dim(),
            mode: Mode::OneD,
            polarity: None,
            provenance: Provenance {
                machine: String::new(),
                input: String::new(),
            },
            run: None,
            tiles: Vec::new(),
            h1,
            h: Some(h),
            h_row: None,
            h_col: None,
            boundary: None,
            hash: String::new(),
        })
    }

    pub fn custom_2d(h1: ExactMatrix, h_row: ExactMatrix, h_col: ExactMatrix) -> Self {
        let d2 = h1.dim() * h1.dim();
        assert!(h_row.dim() == d2 && h_col.dim() == d2, "bond terms must act on d² states");
        Self::seal(LocalTermSet {
            d: h1.dim(),
            mode: Mode::TwoD,
            polarity: None,
            provenance: Provenance {
                machine: String::new(),
                input: String::new(),
            },
            run: None,
            tiles: Vec::new(),
            h1,
            h: None,
            h_row: Some(h_row),
            h_col: Some(h_col),
            boundary: None,
            hash: String::new(),
        })
    }

    /// Recomputes the hash field.
    pub fn seal(mut self) -> Self {
        self.hash = self.compute_hash();
        self
    }

    pub fn compute_hash(&self) -> String {
        let body = LocalTermSet {
            hash: String::new(),
            ..self.clone()
        };
        sha256_hex(&serde_json::to_string(&body).expect("term sets serialize"))
    }

    /// Named bulk and boundary terms.
    pub fn named_terms(&self) -> Vec<(&'static str, &ExactMatrix)> {
        let mut out = vec![("h1", &self.h1)];
        for (name, t) in [("h", &self.h), ("h_row", &self.h_row), ("h_col", &self.h_col)] {
            if let Some(t) = t {
                out.push((name, t));
            }
        }
        if let Some(b) = &self.boundary {
            out.push(("boundary", &b.term));
        }
        out
    }

    pub fn certify(&self) -> NormCertificate {
        let terms = self.named_terms();
        let row_sums: Vec<_> = terms
            .iter()
            .map(|(n, t)| (n.to_string(), t.max_abs_row_sum()))
            .collect();
        NormCertificate {
            hermitian: terms.iter().all(|(_, t)| t.is_hermitian()),
            bounded: row_sums.iter().all(|(_, s)| *s <= AlgebraicScalar::ONE),
            row_sums,
        }
    }

    /// True iff any tile is a halting tile.
    pub fn has_halt_tile(&self) -> bool {
        self.tiles.iter().any(|t| t.kind == TileKind::Halt)
    }

    /// Canonical, bit-stable serialization.
    pub fn describe(&self) -> String {
        serde_json::to_string(self).expect("term sets serialize")
    }

    fn validate(&self) -> Result<(), TermsError> {
        let bad = |m: String| Err(TermsError::Invalid(m));
        if self.h1.dim() != self.d {
            return bad(format!("h1 is {0}x{0}, expected d = {1}", self.h1.dim(), self.d));
        }
        for (name, t) in self.named_terms().into_iter().skip(1) {
            let want = if name == "boundary" { self.d } else { self.d * self.d };
            if t.dim() != want {
                return bad(format!("{name} has dimension {}, expected {want}", t.dim()));
            }
        }
        let ok = match self.mode {
            Mode::OneD => self.h.is_some() && self.h_row.is_none() && self.h_col.is_none(),
            Mode::TwoD => self.h.is_none() && self.h_row.is_some() && self.h_col.is_some(),
        };
        if !ok {
            return bad(format!("bond terms do not match mode {}", self.mode));
        }
        if self.tiles.iter().any(|t| t.successor >= self.tiles.len()) {
            return bad("tile successor out of range".into());
        }
        Ok(())
    }
}

pub fn describe(terms: &LocalTermSet) -> String {
    terms.describe()
}

/// Inverse of [`describe`]; rejects text whose hash does not match.
pub fn parse_terms(text: &str) -> Result<LocalTermSet, TermsError> {
    let t: LocalTermSet = serde_json::from_str(text)?;
    t.validate()?;
    let computed = t.compute_hash();
    if computed != t.hash {
        return Err(TermsError::Hash {
            recorded: t.hash,
            computed,
        });
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn custom_sets_round_trip() {
        let h1 = ExactMatrix::diagonal(&[AlgebraicScalar::ZERO, AlgebraicScalar::ONE]);
        let t = LocalTermSet::custom_1d(h1, ExactMatrix::zeros(4));
        let text = t.describe();
        assert_eq!(parse_terms(&text).unwrap(), t);
        assert_eq!(t.hash.len(), 64);
    }

    #[test]
    fn tampering_is_detected() {
        let t = LocalTermSet::custom_1d(ExactMatrix::identity(2), ExactMatrix::zeros(4));
        let text = t.describe().replace("\"d\":2", "\"d\":3");
        assert!(parse_terms(&text).is_err());
        let text = t.describe().replace("\"p\":1", "\"p\":-1");
        assert!(matches!(parse_terms(&text), Err(TermsError::Hash { .. })));
    }
}
