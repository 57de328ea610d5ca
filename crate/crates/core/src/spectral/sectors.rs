//! Low spectra through conserved sectors.
//!
//! Local basis states that some term connects off-diagonally are merged
//! into classes (union–find). Fixing a class at every site gives an
//! invariant subspace ("sector"); a verified additive charge splits sectors
//! further. Each term restricted to a class tuple has a smallest eigenvalue,
//! and the sum of these over all terms bounds the sector's spectrum from
//! below. Sectors are generated best-first in order of that bound, and the
//! search stops once no unsolved sector can reach below the current cutoff.
//!
//! When every sector solved has dimension one the Hamiltonian is classical
//! on the relevant window, and the energies are carried in exact arithmetic.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::assemble::{AssembledHamiltonian, SpectralError};
use super::solver::{dense_eigenvalues, lanczos_csr, CsrMatrix, LanczosOptions, DENSE_LIMIT};
use crate::hamc::AlgebraicScalar;

/// Slack subtracted from numerically computed block minima so that bounds
/// stay valid lower bounds.
const BOUND_SLACK: f64 = 1e-9;

/// Cap on best-first nodes expanded per spectrum request.
const NODE_LIMIT: usize = 4_000_000;

/// Cap on a single sector's dimension.
const SECTOR_LIMIT: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRequest {
    /// Collect at least this many eigenvalues.
    pub k: usize,
    /// Also collect every eigenvalue within `window` of the ground energy.
    pub window: f64,
    pub tol: f64,
    pub deg_tol: f64,
    pub seed: u64,
}

impl Default for SpectrumRequest {
    fn default() -> Self {
        SpectrumRequest {
            k: 32,
            window: 0.0,
            tol: 1e-9,
            deg_tol: 1e-8,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SolverStats {
    pub sectors_solved: usize,
    pub largest_sector: usize,
    pub dense_solves: usize,
    pub lanczos_solves: usize,
    pub nodes_expanded: usize,
    pub max_residual: f64,
    /// Whether an additive charge was found and used.
    pub charge_split: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Ascending; every eigenvalue up to the cutoff, with multiplicity.
    pub values: Vec<f64>,
    /// The same values in exact arithmetic, when all solved sectors were
    /// one-dimensional.
    pub exact: Option<Vec<AlgebraicScalar>>,
    pub stats: SolverStats,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Per-op table of block minima indexed by class tuple.
struct BlockTable {
    min: Vec<f64>,
    exact: Vec<Option<AlgebraicScalar>>,
    global_min: f64,
}

struct Structure {
    classes: Vec<usize>,
    members: Vec<Vec<u8>>,
    charges: Option<Vec<i64>>,
    tables: Vec<BlockTable>,
}

fn local_digits(mut idx: usize, d: usize, arity: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for i in (0..arity).rev() {
        out[i] = idx % d;
        idx /= d;
    }
    out
}

fn analyse(h: &AssembledHamiltonian) -> Structure {
    let d = h.d;
    let mut uf = UnionFind((0..d).collect());
    for op in &h.ops {
        for (i, j, _) in op.exact.iter() {
            if i != j {
                let (a, b) = (local_digits(i, d, op.arity), local_digits(j, d, op.arity));
                for (x, y) in a.into_iter().zip(b) {
                    uf.union(x, y);
                }
            }
        }
    }
    let mut roots: Vec<usize> = (0..d).map(|x| uf.find(x)).collect();
    let mut ids: Vec<usize> = roots.clone();
    ids.sort_unstable();
    ids.dedup();
    for r in roots.iter_mut() {
        *r = ids.binary_search(r).unwrap();
    }
    let classes = roots;
    let nc = ids.len();
    let mut members = vec![Vec::new(); nc];
    for (s, &c) in classes.iter().enumerate() {
        members[c].push(s as u8);
    }
    // candidate additive charges; keep the first one every term conserves
    // and that actually splits some class
    let candidates: Vec<Vec<i64>> = vec![(0..d).map(|i| (i % 2) as i64).collect(), (0..d).map(|i| i as i64).collect()];
    let charges = candidates.into_iter().find(|q| {
        let splits = members.iter().any(|m| m.iter().any(|&s| q[s as usize] != q[m[0] as usize]));
        splits
            && h.ops.iter().all(|op| {
                op.exact.iter().all(|(i, j, _)| {
                    let a: i64 = local_digits(i, d, op.arity).iter().map(|&s| q[s]).sum();
                    let b: i64 = local_digits(j, d, op.arity).iter().map(|&s| q[s]).sum();
                    a == b
                })
            })
    });
    let tables = h
        .ops
        .iter()
        .map(|op| {
            let tuples = nc.pow(op.arity as u32);
            let mut min = Vec::with_capacity(tuples);
            let mut exact = Vec::with_capacity(tuples);
            for t in 0..tuples {
                let cls = local_digits(t, nc, op.arity);
                // block basis: all local indices whose digits lie in the classes
                let mut basis = vec![0usize];
                for &c in &cls {
                    basis = basis
                        .iter()
                        .flat_map(|&b| members[c].iter().map(move |&s| b * d + s as usize))
                        .collect();
                }
                let pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
                let diagonal = basis.iter().all(|&b| op.rows[b].iter().all(|&(j, _)| j == b));
                if diagonal {
                    let e = basis.iter().map(|&b| op.exact.get(b, b)).min().unwrap();
                    min.push(e.to_f64());
                    exact.push(Some(e));
                } else {
                    let n = basis.len();
                    let mut m = DMatrix::zeros(n, n);
                    for (r, &b) in basis.iter().enumerate() {
                        for &(j, v) in &op.rows[b] {
                            m[(r, pos[&j])] = v;
                        }
                    }
                    min.push(dense_eigenvalues(m)[0] - BOUND_SLACK);
                    exact.push(None);
                }
            }
            let global_min = min.iter().copied().fold(f64::INFINITY, f64::min);
            BlockTable { min, exact, global_min }
        })
        .collect();
    Structure {
        classes,
        members,
        charges,
        tables,
    }
}

#[derive(Debug, Clone)]
struct Node {
    f: f64,
    g_exact: Option<AlgebraicScalar>,
    assign: Vec<u8>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    // reversed: BinaryHeap pops the smallest bound first, ties by assignment
    fn cmp(&self, other: &Self) -> Ordering {
        other.f.total_cmp(&self.f).then_with(|| other.assign.cmp(&self.assign))
    }
}

/// Sector basis states (digits) for a class assignment, optionally split
/// by total charge.
fn sector_bases(s: &Structure, assign: &[u8]) -> Result<Vec<Vec<Vec<u8>>>, SpectralError> {
    let dim: usize = assign.iter().map(|&c| s.members[c as usize].len()).product();
    if dim > SECTOR_LIMIT {
        return Err(SpectralError::Size(format!("sector of dimension {dim} exceeds {SECTOR_LIMIT}")));
    }
    let mut states: Vec<Vec<u8>> = vec![Vec::with_capacity(assign.len())];
    for &c in assign {
        states = states
            .into_iter()
            .flat_map(|st| {
                s.members[c as usize].iter().map(move |&m| {
                    let mut n = st.clone();
                    n.push(m);
                    n
                })
            })
            .collect();
    }
    Ok(match &s.charges {
        None => vec![states],
        Some(q) => {
            let mut by: std::collections::BTreeMap<i64, Vec<Vec<u8>>> = Default::default();
            for st in states {
                let total = st.iter().map(|&x| q[x as usize]).sum();
                by.entry(total).or_default().push(st);
            }
            by.into_values().collect()
        }
    })
}

fn solve_block(
    h: &AssembledHamiltonian,
    basis: &[Vec<u8>],
    want: usize,
    req: &SpectrumRequest,
    stats: &mut SolverStats,
) -> Result<Vec<f64>, SpectralError> {
    let n = basis.len();
    stats.largest_sector = stats.largest_sector.max(n);
    let index: HashMap<&[u8], usize> = basis.iter().enumerate().map(|(i, b)| (b.as_slice(), i)).collect();
    let mut rows = Vec::with_capacity(n);
    for b in basis {
        let mut row = Vec::new();
        h.for_each_entry(b, |t, v| row.push((index[t], v)));
        rows.push(row);
    }
    let m = CsrMatrix::from_rows(n, rows);
    if n <= DENSE_LIMIT {
        stats.dense_solves += 1;
        return Ok(dense_eigenvalues(m.to_dense()));
    }
    stats.lanczos_solves += 1;
    let pairs = lanczos_csr(
        &m,
        want.min(n),
        LanczosOptions {
            tol: req.tol,
            seed: req.seed,
            ..Default::default()
        },
    )?;
    for p in &pairs {
        stats.max_residual = stats.max_residual.max(p.residual);
    }
    Ok(pairs.into_iter().map(|p| p.value).collect())
}

/// Every eigenvalue up to `max(λ_k, λ0 + window)`, exactly once per
/// multiplicity.
pub fn sector_spectrum(h: &AssembledHamiltonian, req: &SpectrumRequest) -> Result<Spectrum, SpectralError> {
    let s = analyse(h);
    let n = h.sites();
    let k = (req.k as u64).min(h.dimension()) as usize;
    // terms grouped by the site that completes them
    let mut completing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (t, term) in h.terms.iter().enumerate() {
        completing[*term.sites.iter().max().unwrap()].push(t);
    }
    // heuristic: sum of global minima of terms completed at sites ≥ j
    let mut rest = vec![0.0; n + 1];
    for j in (0..n).rev() {
        rest[j] = rest[j + 1] + completing[j].iter().map(|&t| s.tables[h.terms[t].op].global_min).sum::<f64>();
    }
    let nc = s.members.len();
    let mut heap = BinaryHeap::new();
    heap.push(Node {
        f: rest[0],
        g_exact: Some(AlgebraicScalar::ZERO),
        assign: Vec::new(),
    });
    let mut stats = SolverStats {
        charge_split: s.charges.is_some(),
        ..Default::default()
    };
    let mut values: Vec<f64> = Vec::new();
    let mut exact: Option<Vec<AlgebraicScalar>> = Some(Vec::new());
    let cutoff = |values: &[f64]| -> f64 {
        if values.len() < k || values.is_empty() {
            f64::INFINITY
        } else {
            values[k - 1].max(values[0] + req.window)
        }
    };
    while let Some(node) = heap.pop() {
        if node.f > cutoff(&values) + req.deg_tol {
            break;
        }
        stats.nodes_expanded += 1;
        if stats.nodes_expanded > NODE_LIMIT {
            return Err(SpectralError::Size(format!(
                "sector search expanded more than {NODE_LIMIT} nodes"
            )));
        }
        let j = node.assign.len();
        if j == n {
            stats.sectors_solved += 1;
            let one_dim = node.assign.iter().all(|&c| s.members[c as usize].len() == 1);
            if one_dim {
                let digits: Vec<u8> = node.assign.iter().map(|&c| s.members[c as usize][0]).collect();
                let e = node.g_exact.unwrap_or_else(|| h.exact_diagonal(&digits));
                let pos = values.partition_point(|&v| v <= e.to_f64());
                values.insert(pos, e.to_f64());
                if let Some(ex) = exact.as_mut() {
                    let p = ex.partition_point(|&v| v <= e);
                    ex.insert(p, e);
                }
                continue;
            }
            exact = None;
            for basis in sector_bases(&s, &node.assign)? {
                for v in solve_block(h, &basis, k, req, &mut stats)? {
                    let pos = values.partition_point(|&x| x <= v);
                    values.insert(pos, v);
                }
            }
            continue;
        }
        for c in 0..nc {
            let mut assign = node.assign.clone();
            assign.push(c as u8);
            let mut g = node.f - rest[j];
            let mut g_exact = node.g_exact;
            for &t in &completing[j] {
                let term = &h.terms[t];
                let table = &s.tables[term.op];
                let tuple = term.sites.iter().fold(0, |acc, &site| acc * nc + assign[site] as usize);
                g += table.min[tuple];
                g_exact = match (g_exact, table.exact[tuple]) {
                    (Some(a), Some(b)) => Some(a + b),
                    _ => None,
                };
            }
            heap.push(Node {
                f: g + rest[j + 1],
                g_exact,
                assign,
            });
        }
    }
    let cut = cutoff(&values) + req.deg_tol;
    values.retain(|&v| v <= cut);
    if let Some(ex) = exact.as_mut() {
        ex.truncate(values.len());
    }
    let _ = &s.classes;
    Ok(Spectrum { values, exact, stats })
}
