//! Sparse square matrices over [`AlgebraicScalar`].

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::AlgebraicScalar;

/// Square matrix with only its nonzero entries stored, in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    dim: usize,
    entries: BTreeMap<(usize, usize), AlgebraicScalar>,
}

impl ExactMatrix {
    pub fn zeros(dim: usize) -> Self {
        ExactMatrix {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![AlgebraicScalar::ONE; dim])
    }

    pub fn diagonal(values: &[AlgebraicScalar]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// `|i⟩⟨i|`.
    pub fn projector(dim: usize, i: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.set(i, i, AlgebraicScalar::ONE);
        m
    }

    pub fn from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, AlgebraicScalar)>,
    ) -> Self {
        let mut m = Self::zeros(dim);
        for (i, j, v) in entries {
            m.add_at(i, j, v);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> AlgebraicScalar {
        self.entries.get(&(i, j)).copied().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: AlgebraicScalar) {
        assert!(i < self.dim && j < self.dim, "entry ({i}, {j}) outside {0}x{0}", self.dim);
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: AlgebraicScalar) {
        let sum = self.get(i, j) + v;
        self.set(i, j, sum);
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, AlgebraicScalar)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|&(i, j)| i == j)
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (i, j, v) in other.iter() {
            out.add_at(i, j, v);
        }
        out
    }

    pub fn scale(&self, c: AlgebraicScalar) -> ExactMatrix {
        ExactMatrix::from_entries(self.dim, self.iter().map(|(i, j, v)| (i, j, v * c)))
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &ExactMatrix) -> ExactMatrix {
        let n = other.dim;
        let mut out = ExactMatrix::zeros(self.dim * n);
        for (i, j, a) in self.iter() {
            for (k, l, b) in other.iter() {
                out.set(i * n + k, j * n + l, a * b);
            }
        }
        out
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_entries(self.dim, self.iter().map(|(i, j, v)| (j, i, v)))
    }

    /// Exact entry-wise check `A = A†`.
    pub fn is_hermitian(&self) -> bool {
        self.iter().all(|(i, j, v)| self.get(j, i).conj() == v)
    }

    /// Largest absolute row sum, computed exactly. For a Hermitian matrix
    /// it bounds the operator norm (`‖A‖₂ ≤ √(‖A‖₁‖A‖∞) = ‖A‖∞`).
    pub fn max_abs_row_sum(&self) -> AlgebraicScalar {
        let mut rows: BTreeMap<usize, AlgebraicScalar> = BTreeMap::new();
        for (i, _, v) in self.iter() {
            *rows.entry(i).or_default() = rows.get(&i).copied().unwrap_or_default() + v.abs();
        }
        rows.into_values().max().unwrap_or_default()
    }

    /// Dense `f64` copy, row-major.
    pub fn to_f64_dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.dim * self.dim];
        for (i, j, v) in self.iter() {
            out[i * self.dim + j] = v.to_f64();
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    dim: usize,
    entries: Vec<(usize, usize, AlgebraicScalar)>,
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        Wire {
            dim: self.dim,
            entries: self.iter().collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = Wire::deserialize(de)?;
        let mut m = ExactMatrix::zeros(w.dim);
        let mut last = None;
        for (i, j, v) in w.entries {
            if i >= w.dim || j >= w.dim {
                return Err(D::Error::custom(format!("entry ({i}, {j}) out of range")));
            }
            if v.is_zero() || last.is_some_and(|l| l >= (i, j)) {
                return Err(D::Error::custom("entries must be nonzero and strictly row-major"));
            }
            last = Some((i, j));
            m.entries.insert((i, j), v);
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> AlgebraicScalar {
        AlgebraicScalar::rational(1, 2)
    }

    #[test]
    fn kron_dimensions_and_entries() {
        let a = ExactMatrix::projector(2, 1);
        let b = ExactMatrix::identity(3);
        let k = a.kron(&b);
        assert_eq!(k.dim(), 6);
        assert_eq!(k.nnz(), 3);
        assert_eq!(k.get(4, 4), AlgebraicScalar::ONE);
        assert_eq!(k.get(0, 0), AlgebraicScalar::ZERO);
    }

    #[test]
    fn hermiticity_is_exact() {
        let mut m = ExactMatrix::zeros(2);
        m.set(0, 1, half());
        assert!(!m.is_hermitian());
        m.set(1, 0, AlgebraicScalar::new(1, 2, 0, 1));
        assert!(m.is_hermitian());
        m.set(1, 0, AlgebraicScalar::new(1, 2, 1, 1_000_000));
        assert!(!m.is_hermitian());
    }

    #[test]
    fn row_sum_bound() {
        let mut m = ExactMatrix::zeros(2);
        m.set(0, 0, half());
        m.set(0, 1, -half());
        m.set(1, 0, -half());
        m.set(1, 1, half());
        assert_eq!(m.max_abs_row_sum(), AlgebraicScalar::ONE);
        assert_eq!(ExactMatrix::zeros(3).max_abs_row_sum(), AlgebraicScalar::ZERO);
    }

    #[test]
    fn json_rejects_unsorted_entries() {
        let m = ExactMatrix::identity(2);
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<ExactMatrix>(&text).unwrap(), m);
        let bad = r#"{"dim":2,"entries":[[1,1,{"p":1,"q":1,"r":0,"s":1}],[0,0,{"p":1,"q":1,"r":0,"s":1}]]}"#;
        assert!(serde_json::from_str::<ExactMatrix>(bad).is_err());
    }
}
