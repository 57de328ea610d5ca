//! Small reference models with independently known spectra.

use crate::hamc::{AlgebraicScalar, ExactMatrix, LocalTermSet};

/// Nearest-neighbour hopping `−(|01⟩⟨10| + |10⟩⟨01|)/2`, no field.
pub fn hopping_chain_terms() -> LocalTermSet {
    let h = AlgebraicScalar::rational(-1, 2);
    LocalTermSet::custom_1d(ExactMatrix::zeros(2), ExactMatrix::from_entries(4, [(1, 2, h), (2, 1, h)]))
}

/// Single-particle energies `−cos(πk/(L+1))`, `k = 1..=L`, of the open
/// hopping chain.
pub fn hopping_modes(len: usize) -> Vec<f64> {
    (1..=len)
        .map(|k| -(std::f64::consts::PI * k as f64 / (len as f64 + 1.0)).cos())
        .collect()
}

/// The `k` lowest many-body energies of the open hopping chain: sums over
/// subsets of occupied modes. Exhaustive, so meant for `len ≤ 22`.
pub fn hopping_spectrum(len: usize, k: usize) -> Vec<f64> {
    let modes = hopping_modes(len);
    let mut all: Vec<f64> = (0u64..1 << len)
        .map(|mask| {
            modes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| e)
                .sum()
        })
        .collect();
    all.sort_by(f64::total_cmp);
    all.truncate(k);
    all
}

/// Projector onto unequal neighbouring values, on rows and columns alike.
pub fn unequal_neighbour_terms(d: usize) -> LocalTermSet {
    let mut p = ExactMatrix::zeros(d * d);
    for a in 0..d {
        for b in 0..d {
            if a != b {
                p.set(a * d + b, a * d + b, AlgebraicScalar::ONE);
            }
        }
    }
    LocalTermSet::custom_2d(ExactMatrix::zeros(d), p.clone(), p)
}
