//! Lowest eigenvalues of real symmetric matrices: dense diagonalisation for
//! small problems, thick-restart Lanczos with residual certificates above.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::assemble::SpectralError;

/// Problems up to this dimension are solved densely.
pub const DENSE_LIMIT: usize = 4096;

/// Compressed sparse rows.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    n: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Builds from per-row `(column, value)` lists; duplicates are summed
    /// and exact zeros dropped.
    pub fn from_rows(n: usize, rows: Vec<Vec<(usize, f64)>>) -> Self {
        let mut indptr = vec![0];
        let mut indices = Vec::new();
        let mut values = Vec::new();
        for mut row in rows {
            row.sort_by_key(|&(j, _)| j);
            let mut k = 0;
            while k < row.len() {
                let j = row[k].0;
                let mut v = 0.0;
                while k < row.len() && row[k].0 == j {
                    v += row[k].1;
                    k += 1;
                }
                if v != 0.0 {
                    indices.push(j);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        assert_eq!(indptr.len(), n + 1);
        CsrMatrix {
            n,
            indptr,
            indices,
            values,
        }
    }

    pub fn from_dense(m: &DMatrix<f64>) -> Self {
        let rows = (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| (j, m[(i, j)])).collect())
            .collect();
        Self::from_rows(m.nrows(), rows)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let r = self.indptr[i]..self.indptr[i + 1];
        match self.indices[r.clone()].binary_search(&j) {
            Ok(k) => self.values[r.start + k],
            Err(_) => 0.0,
        }
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let mut s = 0.0;
            for k in self.indptr[i]..self.indptr[i + 1] {
                s += self.values[k] * x[self.indices[k]];
            }
            *yi = s;
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for k in self.indptr[i]..self.indptr[i + 1] {
                m[(i, self.indices[k])] = self.values[k];
            }
        }
        m
    }

    /// Exact symmetry of the stored entries.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (self.indptr[i]..self.indptr[i + 1]).all(|k| self.get(self.indices[k], i) == self.values[k]))
    }

    pub fn add(&self, other: &CsrMatrix) -> CsrMatrix {
        assert_eq!(self.n, other.n);
        let rows = (0..self.n)
            .map(|i| {
                let a = (self.indptr[i]..self.indptr[i + 1]).map(|k| (self.indices[k], self.values[k]));
                let b = (other.indptr[i]..other.indptr[i + 1]).map(|k| (other.indices[k], other.values[k]));
                a.chain(b).collect()
            })
            .collect();
        CsrMatrix::from_rows(self.n, rows)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Dense,
    Lanczos,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
    /// `‖Hv − λv‖` for the unit vector `v`.
    pub residual: f64,
}

/// All eigenvalues, ascending.
pub fn dense_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// All eigenpairs, ascending.
pub fn dense_eigenpairs(m: DMatrix<f64>) -> Vec<EigenPair> {
    let a = m.clone();
    let e = SymmetricEigen::new(m);
    let mut pairs: Vec<EigenPair> = (0..e.eigenvalues.len())
        .map(|i| {
            let v = e.eigenvectors.column(i).into_owned();
            let r = (&a * &v - &v * e.eigenvalues[i]).norm();
            EigenPair {
                value: e.eigenvalues[i],
                vector: v.iter().copied().collect(),
                residual: r,
            }
        })
        .collect();
    pairs.sort_by(|a, b| a.value.total_cmp(&b.value));
    pairs
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanczosOptions {
    /// Residual bound every returned pair must meet.
    pub tol: f64,
    pub seed: u64,
    pub max_restarts: usize,
    /// Krylov subspace size; 0 picks `max(2k + 20, 40)`.
    pub subspace: usize,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions {
            tol: 1e-9,
            seed: 0x5eed,
            max_restarts: 400,
            subspace: 0,
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(a: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Orthogonalises `w` against `basis` (two passes) and returns its
/// remaining norm.
fn orthogonalize(w: &mut [f64], basis: &[Vec<f64>]) -> f64 {
    for _ in 0..2 {
        for v in basis {
            let c = dot(v, w);
            axpy(-c, v, w);
        }
    }
    norm(w)
}

fn orthogonalize_both(w: &mut [f64], locked: &[Vec<f64>], basis: &[Vec<f64>]) -> f64 {
    orthogonalize(w, locked);
    orthogonalize(w, basis);
    orthogonalize(w, locked);
    orthogonalize(w, basis)
}

/// Restarts without progress after which a run returns its converged part.
const STALL_RESTARTS: usize = 15;

/// One thick-restart run in the orthogonal complement of `locked`.
fn lanczos_run(
    apply: &impl Fn(&[f64], &mut [f64]),
    n: usize,
    k: usize,
    opts: &LanczosOptions,
    locked: &[Vec<f64>],
    rng: &mut ChaCha8Rng,
) -> Result<Vec<EigenPair>, SpectralError> {
    let free = n - locked.len();
    let k = k.min(free);
    let m_max = if opts.subspace > 0 { opts.subspace } else { (2 * k + 20).max(40) }.min(free);
    let keep = (k + (m_max - k) / 2).clamp(k, m_max.saturating_sub(1).max(k));
    let mut random = |basis: &[Vec<f64>]| -> Option<Vec<f64>> {
        for _ in 0..8 {
            let mut v: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
            let r = orthogonalize_both(&mut v, locked, basis);
            if r > 1e-8 {
                v.iter_mut().for_each(|x| *x /= r);
                return Some(v);
            }
        }
        None
    };
    let mut v_basis: Vec<Vec<f64>> = Vec::new();
    let mut w_basis: Vec<Vec<f64>> = Vec::new();
    let push = |v: Vec<f64>, vb: &mut Vec<Vec<f64>>, wb: &mut Vec<Vec<f64>>| {
        let mut w = vec![0.0; n];
        apply(&v, &mut w);
        vb.push(v);
        wb.push(w);
    };
    let first = random(&[]).expect("nonzero dimension");
    push(first, &mut v_basis, &mut w_basis);
    let mut worst = f64::INFINITY;
    // converged leading pairs, and restarts since that count last grew
    let (mut prefix, mut stalled) = (0usize, 0usize);
    let mut best: Vec<EigenPair> = Vec::new();
    for _ in 0..opts.max_restarts {
        while v_basis.len() < m_max {
            let mut w = w_basis.last().unwrap().clone();
            let scale = norm(&w).max(1.0);
            let r = orthogonalize_both(&mut w, locked, &v_basis);
            let next = if r > 1e-8 * scale {
                w.iter_mut().for_each(|x| *x /= r);
                if r < 1e-3 * scale {
                    // heavy cancellation: clean up what the division amplified
                    let r2 = orthogonalize_both(&mut w, locked, &v_basis);
                    w.iter_mut().for_each(|x| *x /= r2);
                }
                Some(w)
            } else {
                random(&v_basis)
            };
            match next {
                Some(v) => push(v, &mut v_basis, &mut w_basis),
                None => break,
            }
        }
        let m = v_basis.len();
        let t = DMatrix::from_fn(m, m, |i, j| 0.5 * (dot(&v_basis[i], &w_basis[j]) + dot(&v_basis[j], &w_basis[i])));
        let e = SymmetricEigen::new(t);
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| e.eigenvalues[a].total_cmp(&e.eigenvalues[b]));
        let combine = |basis: &[Vec<f64>], y: &DVector<f64>| {
            let mut out = vec![0.0; n];
            for (b, &c) in basis.iter().zip(y.iter()) {
                axpy(c, b, &mut out);
            }
            out
        };
        let mut ritz = Vec::new();
        let mut ritz_w = Vec::new();
        let mut pairs = Vec::new();
        worst = 0.0f64;
        for (rank, &idx) in order.iter().enumerate().take(keep.min(m)) {
            let y = e.eigenvectors.column(idx).into_owned();
            let x = combine(&v_basis, &y);
            let ax = combine(&w_basis, &y);
            if rank < k {
                let theta = e.eigenvalues[idx];
                let mut r = ax.clone();
                axpy(-theta, &x, &mut r);
                let res = norm(&r);
                worst = worst.max(res);
                pairs.push(EigenPair {
                    value: theta,
                    vector: x.clone(),
                    residual: res,
                });
            }
            ritz.push(x);
            ritz_w.push(ax);
        }
        if worst <= opts.tol || m == free && worst <= opts.tol.max(1e-7) {
            return Ok(pairs);
        }
        let now = pairs.iter().take_while(|p| p.residual <= opts.tol).count();
        if now > prefix {
            prefix = now;
            stalled = 0;
        } else {
            stalled += 1;
        }
        if now > 0 {
            best = pairs[..now].to_vec();
        }
        if prefix > 0 && stalled >= STALL_RESTARTS && !best.is_empty() {
            // hand back what has converged; the caller locks it and continues
            return Ok(best);
        }
        if m < m_max && m < free {
            // could not extend: nothing left to try
            break;
        }
        v_basis = ritz;
        w_basis = ritz_w;
    }
    if !best.is_empty() {
        return Ok(best);
    }
    Err(SpectralError::Convergence {
        message: format!("Lanczos did not converge for the {k} lowest eigenpairs of a {n}-dimensional operator"),
        residual: worst,
    })
}

/// The `k` lowest eigenpairs of the symmetric operator `apply` on `R^n`.
///
/// Thick-restart Lanczos: the basis is extended by `A·(last vector)` with
/// full reorthogonalisation, Rayleigh–Ritz is done on the explicit
/// projection `VᵀAV`, and restarts keep the lowest Ritz vectors. Invariant
/// subspaces are escaped with a fresh random direction.
///
/// A single Krylov space sees only one copy of a degenerate eigenvalue, so
/// converged pairs are locked and the search repeats in their orthogonal
/// complement until the complement has nothing below the `k`-th value.
/// Every returned pair has residual `≤ tol`.
pub fn lanczos(
    apply: impl Fn(&[f64], &mut [f64]),
    n: usize,
    k: usize,
    opts: LanczosOptions,
) -> Result<Vec<EigenPair>, SpectralError> {
    let k = k.min(n);
    if k == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut locked: Vec<EigenPair> = Vec::new();
    while locked.len() < n {
        let want = k.saturating_sub(locked.len()).max(1);
        let vectors: Vec<Vec<f64>> = locked.iter().map(|p| p.vector.clone()).collect();
        let found = lanczos_run(&apply, n, want, &opts, &vectors, &mut rng)?;
        if locked.len() >= k {
            let kth = locked[k - 1].value;
            if found.first().is_none_or(|p| p.value >= kth - opts.tol.max(1e-12)) {
                break;
            }
        }
        if found.is_empty() {
            break;
        }
        locked.extend(found);
        locked.sort_by(|a, b| a.value.total_cmp(&b.value));
    }
    locked.truncate(k);
    Ok(locked)
}

pub fn lanczos_csr(m: &CsrMatrix, k: usize, opts: LanczosOptions) -> Result<Vec<EigenPair>, SpectralError> {
    lanczos(|x, y| m.matvec(x, y), m.dim(), k, opts)
}

/// The `k` smallest eigenvalues: dense when `n ≤ DENSE_LIMIT`, Lanczos above.
pub fn low_spectrum_matrix(m: &CsrMatrix, k: usize, tol: f64) -> Result<(Vec<f64>, Method), SpectralError> {
    if m.dim() <= DENSE_LIMIT {
        let mut v = dense_eigenvalues(m.to_dense());
        v.truncate(k);
        return Ok((v, Method::Dense));
    }
    let pairs = lanczos_csr(
        m,
        k,
        LanczosOptions {
            tol,
            ..Default::default()
        },
    )?;
    Ok((pairs.into_iter().map(|p| p.value).collect(), Method::Lanczos))
}

/// Seeded random real symmetric matrix with entries uniform in `[-1, 1]`,
/// scaled by `1/√n`.
pub fn random_symmetric(n: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = DMatrix::zeros(n, n);
    let s = 1.0 / (n as f64).sqrt();
    for i in 0..n {
        for j in i..n {
            let v = (rng.gen::<f64>() * 2.0 - 1.0) * s;
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix() {
        let d = DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, -1.0, 2.0, 0.5]));
        let (v, _) = low_spectrum_matrix(&CsrMatrix::from_dense(&d), 2, 1e-10).unwrap();
        assert_eq!(v, vec![-1.0, 0.5]);
    }

    #[test]
    fn lanczos_matches_dense_on_random_200() {
        let m = random_symmetric(200, 7);
        let dense = dense_eigenvalues(m.clone());
        let pairs = lanczos_csr(&CsrMatrix::from_dense(&m), 6, LanczosOptions::default()).unwrap();
        for (p, want) in pairs.iter().zip(&dense) {
            assert!((p.value - want).abs() < 1e-8, "{} vs {want}", p.value);
            assert!(p.residual <= 1e-9);
        }
    }

    #[test]
    fn lanczos_on_tiny_and_degenerate_spaces() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, 1.0, 2.0, 5.0]));
        let pairs = lanczos_csr(&CsrMatrix::from_dense(&m), 4, LanczosOptions::default()).unwrap();
        let vals: Vec<f64> = pairs.iter().map(|p| p.value).collect();
        for (a, b) in vals.iter().zip([1.0, 1.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-10, "{vals:?}");
        }
    }

    #[test]
    fn csr_basics() {
        let m = CsrMatrix::from_rows(2, vec![vec![(1, 1.0), (1, 1.0)], vec![(0, 2.0), (1, 0.0)]]);
        assert_eq!(m.get(0, 1), 2.0);
        assert_eq!(m.nnz(), 2);
        assert!(m.is_symmetric());
        let mut y = [0.0; 2];
        m.matvec(&[1.0, 3.0], &mut y);
        assert_eq!(y, [6.0, 2.0]);
    }
}
