//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use gapforge::formal::{Kind, Statement};
use gapforge::hamc::{
    AlgebraicScalar, BoundarySites, BoundaryTerm, ExactMatrix, LocalTermSet, Provenance, Tile, TileKind,
};
use gapforge::machine::{Mode, Move, Polarity, RunOutcome, TapeMachine, Transition};
use nalgebra::DMatrix;
use proptest::prelude::*;

pub fn tape_machine() -> impl Strategy<Value = TapeMachine> {
    (2u32..7, 1u32..6).prop_flat_map(|(states, symbols)| {
        let rows = (states as usize - 1) * symbols as usize;
        let tr = (0..states, 0..symbols, prop_oneof![Just(Move::Left), Just(Move::Right), Just(Move::Stay)])
            .prop_map(|(next, write, movement)| Transition { next, write, movement });
        (0..states, 0..states, prop::collection::vec(tr, rows)).prop_map(move |(start, halt, table)| {
            TapeMachine::from_table(states, symbols, start, halt, table).expect("generated in range")
        })
    })
}

pub fn statement() -> impl Strategy<Value = Statement> {
    (any::<bool>(), "[a-z0-9_]{0,16}", "[a-z0-9_]{0,8}").prop_map(|(halts, m, i)| {
        Statement::new(if halts { Kind::Halts } else { Kind::NotHalts }, m, i)
    })
}

pub fn scalar() -> impl Strategy<Value = AlgebraicScalar> {
    (-4i64..5, 1i64..5, -2i64..3, 1i64..4).prop_map(|(p, q, r, s)| AlgebraicScalar::new(p, q, r, s))
}

pub fn matrix(dim: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec((0..dim, 0..dim, scalar()), 0..6)
        .prop_map(move |es| ExactMatrix::from_entries(dim, es))
}

fn tile(n: usize) -> impl Strategy<Value = Tile> {
    (
        "[a-z0-9@]{0,8}",
        prop_oneof![Just(TileKind::Run), Just(TileKind::Halt), Just(TileKind::Pending)],
        0..n,
    )
        .prop_map(|(label, kind, successor)| Tile { label, kind, successor })
}

pub fn term_set() -> impl Strategy<Value = LocalTermSet> {
    (1usize..4, any::<bool>()).prop_flat_map(|(tiles, two_d)| {
        let d = 2 * tiles;
        (
            prop::collection::vec(tile(tiles), tiles),
            matrix(d),
            matrix(d * d),
            matrix(d * d),
            prop::option::of(matrix(d)),
            prop::option::of(prop_oneof![Just(Polarity::G), Just(Polarity::C)]),
            "[a-z0-9_]{0,12}",
            prop::option::of((0u64..1000, 1u64..50)),
        )
            .prop_map(move |(tiles, h1, a, b, boundary, polarity, machine, run)| {
                let mut t = if two_d {
                    LocalTermSet::custom_2d(h1, a, b)
                } else {
                    LocalTermSet::custom_1d(h1, a)
                };
                let _ = d;
                t.tiles = tiles;
                t.polarity = polarity;
                t.provenance = Provenance { machine, input: String::new() };
                t.run = run.map(|(prefix, period)| RunOutcome::LoopDetected { prefix, period });
                t.boundary = boundary.map(|term| BoundaryTerm {
                    sites: if two_d { BoundarySites::BottomRow } else { BoundarySites::FirstSite },
                    term,
                });
                assert_eq!(t.mode, if two_d { Mode::TwoD } else { Mode::OneD });
                t.seal()
            })
    })
}

/// Single-particle energies of the open hopping chain, `−cos(πk/(L+1))`.
pub fn hopping_modes(len: usize) -> Vec<f64> {
    (1..=len).map(|k| -(std::f64::consts::PI * k as f64 / (len as f64 + 1.0)).cos()).collect()
}

/// Lowest `k` many-body energies: all subset sums of the modes.
pub fn hopping_closed_form(len: usize, k: usize) -> Vec<f64> {
    let modes = hopping_modes(len);
    let mut all: Vec<f64> = (0u32..1 << len)
        .map(|mask| (0..len).filter(|i| mask >> i & 1 == 1).map(|i| modes[i]).sum())
        .collect();
    all.sort_by(f64::total_cmp);
    all.truncate(k);
    all
}

fn dense(m: &ExactMatrix) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(m.dim(), m.dim());
    for (i, j, v) in m.iter() {
        out[(i, j)] = v.to_f64();
    }
    out
}

/// Brute-force chain Hamiltonian by Kronecker products: `h1` on every site,
/// `h` on every bond, and the boundary term on site 0 if present.
pub fn brute_force_chain(t: &LocalTermSet, len: usize) -> DMatrix<f64> {
    let d = t.d;
    let id = |n: usize| DMatrix::<f64>::identity(n, n);
    let place = |op: &DMatrix<f64>, site: usize, width: usize| {
        let left = id(d.pow(site as u32));
        let right = id(d.pow((len - site - width) as u32));
        left.kronecker(op).kronecker(&right)
    };
    let dim = d.pow(len as u32);
    let mut h = DMatrix::zeros(dim, dim);
    let h1 = dense(&t.h1);
    let bond = dense(t.h.as_ref().expect("chain term set"));
    for i in 0..len {
        h += place(&h1, i, 1);
    }
    for i in 0..len - 1 {
        h += place(&bond, i, 2);
    }
    if let Some(b) = &t.boundary {
        h += place(&dense(&b.term), 0, 1);
    }
    h
}

pub fn sorted_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}
