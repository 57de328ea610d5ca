//! Finite-size Hamiltonians from local terms.
//!
//! Sites are numbered `0..N` (row-major `y·Lx + x` on a lattice) and a basis
//! state `(s_0, …, s_{N-1})` has index `Σ s_i · d^(N-1-i)`, site 0 most
//! significant. Assembly is structural: terms are kept per site so that
//! large Hilbert spaces are only ever materialised sector by sector.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::solver::CsrMatrix;
use crate::hamc::{BoundarySites, ExactMatrix, LocalTermSet};
use crate::machine::Mode;

/// Default for `GAPFORGE_MAX_DIM`.
pub const DEFAULT_MAX_DIM: u64 = 1 << 25;

/// Largest dimension [`to_sparse`](AssembledHamiltonian::to_sparse) builds.
pub const MATERIALIZE_LIMIT: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("size error: {0}")]
    Size(String),
    #[error("convergence error: {message} (worst residual {residual:e})")]
    Convergence { message: String, residual: f64 },
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// Memory budget on the Hilbert-space dimension, from `GAPFORGE_MAX_DIM`.
pub fn max_dim() -> u64 {
    std::env::var("GAPFORGE_MAX_DIM")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Geometry {
    Chain { len: usize },
    Lattice { lx: usize, ly: usize },
}

impl Geometry {
    pub fn sites(&self) -> usize {
        match *self {
            Geometry::Chain { len } => len,
            Geometry::Lattice { lx, ly } => lx * ly,
        }
    }
}

/// Which boundary terms are added on top of the bulk sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    /// Bulk terms only.
    Open,
    /// Bulk terms plus the term set's declared boundary term.
    Declared,
}

/// A local operator with both its exact entries and an `f64` row view.
#[derive(Debug, Clone)]
pub struct LocalOp {
    pub name: &'static str,
    pub arity: usize,
    pub exact: ExactMatrix,
    /// `rows[i]` lists `(j, value)` with `value = ⟨i|op|j⟩ ≠ 0`.
    pub rows: Vec<Vec<(usize, f64)>>,
}

impl LocalOp {
    fn new(name: &'static str, arity: usize, exact: &ExactMatrix) -> Self {
        let mut rows = vec![Vec::new(); exact.dim()];
        for (i, j, v) in exact.iter() {
            rows[i].push((j, v.to_f64()));
        }
        LocalOp {
            name,
            arity,
            exact: exact.clone(),
            rows,
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.exact.is_diagonal()
    }
}

/// One placement of a local operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub sites: Vec<usize>,
    pub op: usize,
}

#[derive(Debug, Clone)]
pub struct AssembledHamiltonian {
    pub d: usize,
    pub geometry: Geometry,
    pub boundary: Boundary,
    pub ops: Vec<LocalOp>,
    pub terms: Vec<Term>,
    dimension: u64,
}

fn dimension(d: usize, n: usize) -> Result<u64, SpectralError> {
    let budget = max_dim();
    (d as u64)
        .checked_pow(n as u32)
        .filter(|&dim| dim <= budget)
        .ok_or_else(|| SpectralError::Size(format!("{d}^{n} exceeds the dimension budget of {budget}")))
}

fn add_op(ops: &mut Vec<LocalOp>, name: &'static str, arity: usize, m: &ExactMatrix) -> Option<usize> {
    if m.is_zero() {
        return None;
    }
    ops.push(LocalOp::new(name, arity, m));
    Some(ops.len() - 1)
}

pub fn assemble_1d(terms: &LocalTermSet, len: usize, boundary: Boundary) -> Result<AssembledHamiltonian, SpectralError> {
    if len < 2 {
        return Err(SpectralError::Invalid(format!("chain length {len} < 2")));
    }
    let h = terms
        .h
        .as_ref()
        .ok_or_else(|| SpectralError::Invalid("term set has no 1D bond term".into()))?;
    let dimension = dimension(terms.d, len)?;
    let mut ops = Vec::new();
    let mut placed = Vec::new();
    if let Some(op) = add_op(&mut ops, "h1", 1, &terms.h1) {
        placed.extend((0..len).map(|i| Term { sites: vec![i], op }));
    }
    if let Some(op) = add_op(&mut ops, "h", 2, h) {
        placed.extend((0..len - 1).map(|i| Term { sites: vec![i, i + 1], op }));
    }
    if let (Boundary::Declared, Some(b)) = (boundary, &terms.boundary) {
        if b.sites != BoundarySites::FirstSite {
            return Err(SpectralError::Invalid("boundary term is not declared for a chain".into()));
        }
        if let Some(op) = add_op(&mut ops, "boundary", 1, &b.term) {
            placed.push(Term { sites: vec![0], op });
        }
    }
    Ok(AssembledHamiltonian {
        d: terms.d,
        geometry: Geometry::Chain { len },
        boundary,
        ops,
        terms: placed,
        dimension,
    })
}

pub fn assemble_2d(
    terms: &LocalTermSet,
    lx: usize,
    ly: usize,
    boundary: Boundary,
) -> Result<AssembledHamiltonian, SpectralError> {
    if lx < 2 || ly < 2 {
        return Err(SpectralError::Invalid(format!("lattice {lx}x{ly} needs both sides ≥ 2")));
    }
    let (Some(h_row), Some(h_col)) = (&terms.h_row, &terms.h_col) else {
        return Err(SpectralError::Invalid("term set has no 2D bond terms".into()));
    };
    let dimension = dimension(terms.d, lx * ly)?;
    let site = |x: usize, y: usize| y * lx + x;
    let mut ops = Vec::new();
    let mut placed = Vec::new();
    if let Some(op) = add_op(&mut ops, "h1", 1, &terms.h1) {
        placed.extend((0..lx * ly).map(|i| Term { sites: vec![i], op }));
    }
    if let Some(op) = add_op(&mut ops, "h_row", 2, h_row) {
        for y in 0..ly {
            for x in 0..lx - 1 {
                placed.push(Term {
                    sites: vec![site(x, y), site(x + 1, y)],
                    op,
                });
            }
        }
    }
    if let Some(op) = add_op(&mut ops, "h_col", 2, h_col) {
        for y in 0..ly - 1 {
            for x in 0..lx {
                placed.push(Term {
                    sites: vec![site(x, y), site(x, y + 1)],
                    op,
                });
            }
        }
    }
    if let (Boundary::Declared, Some(b)) = (boundary, &terms.boundary) {
        if b.sites != BoundarySites::BottomRow {
            return Err(SpectralError::Invalid("boundary term is not declared for a lattice".into()));
        }
        if let Some(op) = add_op(&mut ops, "boundary", 1, &b.term) {
            placed.extend((0..lx).map(|x| Term { sites: vec![site(x, 0)], op }));
        }
    }
    Ok(AssembledHamiltonian {
        d: terms.d,
        geometry: Geometry::Lattice { lx, ly },
        boundary,
        ops,
        terms: placed,
        dimension,
    })
}

/// Assembles a term set in its own mode: a chain of `size` sites or a
/// `size × size` lattice.
pub fn assemble(terms: &LocalTermSet, size: usize, boundary: Boundary) -> Result<AssembledHamiltonian, SpectralError> {
    match terms.mode {
        Mode::OneD => assemble_1d(terms, size, boundary),
        Mode::TwoD => assemble_2d(terms, size, size, boundary),
    }
}

impl AssembledHamiltonian {
    pub fn dimension(&self) -> u64 {
        self.dimension
    }

    pub fn sites(&self) -> usize {
        self.geometry.sites()
    }

    pub fn is_diagonal(&self) -> bool {
        self.ops.iter().all(LocalOp::is_diagonal)
    }

    /// Digits of a basis index, site 0 first.
    pub fn digits(&self, mut index: u64) -> Vec<u8> {
        let n = self.sites();
        let mut out = vec![0u8; n];
        for i in (0..n).rev() {
            out[i] = (index % self.d as u64) as u8;
            index /= self.d as u64;
        }
        out
    }

    pub fn index(&self, digits: &[u8]) -> u64 {
        digits.iter().fold(0, |acc, &s| acc * self.d as u64 + s as u64)
    }

    pub fn local_index(&self, term: &Term, digits: &[u8]) -> usize {
        term.sites.iter().fold(0, |acc, &s| acc * self.d + digits[s] as usize)
    }

    /// Calls `f(target_digits, value)` for every nonzero `⟨target|H|state⟩`
    /// contribution, term by term (targets may repeat).
    pub fn for_each_entry(&self, digits: &[u8], mut f: impl FnMut(&[u8], f64)) {
        let mut target = digits.to_vec();
        for term in &self.terms {
            let op = &self.ops[term.op];
            let row = self.local_index(term, digits);
            for &(col, v) in &op.rows[row] {
                // H is symmetric, so row view = column view
                let mut c = col;
                for &s in term.sites.iter().rev() {
                    target[s] = (c % self.d) as u8;
                    c /= self.d;
                }
                f(&target, v);
            }
            for &s in &term.sites {
                target[s] = digits[s];
            }
        }
    }

    /// The whole matrix in CSR form.
    pub fn to_sparse(&self) -> Result<CsrMatrix, SpectralError> {
        if self.dimension > MATERIALIZE_LIMIT {
            return Err(SpectralError::Size(format!(
                "dimension {} is above the materialisation limit {MATERIALIZE_LIMIT}",
                self.dimension
            )));
        }
        let n = self.dimension as usize;
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let digits = self.digits(i as u64);
            let mut row: Vec<(usize, f64)> = Vec::new();
            self.for_each_entry(&digits, |t, v| row.push((self.index(t) as usize, v)));
            rows.push(row);
        }
        Ok(CsrMatrix::from_rows(n, rows))
    }

    /// Exact diagonal entry `⟨s|H|s⟩` of a basis state.
    pub fn exact_diagonal(&self, digits: &[u8]) -> crate::hamc::AlgebraicScalar {
        self.terms
            .iter()
            .map(|t| {
                let i = self.local_index(t, digits);
                self.ops[t.op].exact.get(i, i)
            })
            .sum()
    }
}
