//! Gap scans over system sizes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::assemble::{assemble, AssembledHamiltonian, Boundary, Geometry, SpectralError};
use super::sectors::{sector_spectrum, SolverStats, Spectrum, SpectrumRequest};
use crate::hamc::{AlgebraicScalar, LocalTermSet};
use crate::machine::Mode;

/// Eigenvalues within this distance of `λ0` count toward its multiplicity.
pub const DEGENERACY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanOptions {
    /// Eigenvalues per size; `None` means `min(32, dimension)`.
    pub k: Option<usize>,
    /// Extra window above `λ0` that is always resolved completely.
    pub window: f64,
    pub tol: f64,
    pub deg_tol: f64,
    pub boundary: Boundary,
    pub seed: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            k: None,
            window: 0.15,
            tol: 1e-9,
            deg_tol: DEGENERACY_TOL,
            boundary: Boundary::Declared,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SizeStatus {
    Ok,
    SizeError { message: String },
    ConvergenceError { message: String, residual: f64 },
    Invalid { message: String },
}

/// Ground energy and gap in exact arithmetic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactSummary {
    pub lambda0: AlgebraicScalar,
    pub lambda1: Option<AlgebraicScalar>,
    pub gap: Option<AlgebraicScalar>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeResult {
    pub size: usize,
    pub geometry: Geometry,
    pub dimension: u64,
    #[serde(flatten)]
    pub status: SizeStatus,
    pub lambda0: Option<f64>,
    pub lambda1: Option<f64>,
    /// `λ1 − λ0`, with `λ1` the second eigenvalue counted with multiplicity.
    pub gap: Option<f64>,
    /// Distance from the ground multiplet to the next level.
    pub gap_above_ground: Option<f64>,
    pub multiplicity: Option<usize>,
    /// Lowest part of the spectrum, ascending, with multiplicity.
    pub spectrum: Vec<f64>,
    pub exact: Option<ExactSummary>,
    pub solver: Option<SolverStats>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub terms_hash: String,
    pub mode: Mode,
    pub options: ScanOptions,
    pub sizes: Vec<SizeResult>,
}

impl GapReport {
    pub fn ok_sizes(&self) -> impl Iterator<Item = &SizeResult> {
        self.sizes.iter().filter(|s| s.status == SizeStatus::Ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Lowest spectrum, enlarging `k` until the ground multiplet is resolved
/// (or the whole space has been seen).
pub fn spectrum(h: &AssembledHamiltonian, req: &SpectrumRequest) -> Result<Spectrum, SpectralError> {
    let dim = h.dimension();
    let mut req = *req;
    loop {
        let s = sector_spectrum(h, &req)?;
        let all_ground = s.values.last().zip(s.values.first()).is_some_and(|(l, f)| l - f <= req.deg_tol);
        if !all_ground || s.values.len() as u64 >= dim {
            return Ok(s);
        }
        req.k = (s.values.len() * 2).min(dim as usize).max(req.k + 1);
    }
}

/// The `k` smallest eigenvalues of `h`, ascending.
pub fn low_spectrum(h: &AssembledHamiltonian, k: usize, tol: f64) -> Result<Vec<f64>, SpectralError> {
    if k == 0 || k as u64 > h.dimension() {
        return Err(SpectralError::Invalid(format!(
            "k = {k} outside 1..={}",
            h.dimension()
        )));
    }
    let req = SpectrumRequest {
        k,
        tol,
        ..Default::default()
    };
    let mut v = sector_spectrum(h, &req)?.values;
    v.truncate(k);
    Ok(v)
}

impl SizeResult {
    /// A result built from a known spectrum (ascending, with multiplicity).
    pub fn from_values(size: usize, geometry: Geometry, dimension: u64, values: Vec<f64>, deg_tol: f64) -> Self {
        let l0 = values[0];
        let mult = values.iter().take_while(|&&x| x - l0 <= deg_tol).count();
        SizeResult {
            size,
            geometry,
            dimension,
            status: SizeStatus::Ok,
            lambda0: Some(l0),
            lambda1: values.get(1).copied(),
            gap: values.get(1).map(|x| x - l0),
            gap_above_ground: values.get(mult).map(|x| x - l0),
            multiplicity: Some(mult),
            spectrum: values,
            exact: None,
            solver: None,
        }
    }
}

fn summarise(size: usize, h: &AssembledHamiltonian, s: Spectrum, deg_tol: f64) -> SizeResult {
    let exact = s.exact.as_ref().map(|ex| {
        let m = ex.iter().take_while(|&&x| x == ex[0]).count();
        ExactSummary {
            lambda0: ex[0],
            lambda1: ex.get(1).copied(),
            gap: ex.get(1).map(|&x| x - ex[0]),
            multiplicity: m,
        }
    });
    SizeResult {
        exact,
        solver: Some(s.stats),
        ..SizeResult::from_values(size, h.geometry, h.dimension(), s.values, deg_tol)
    }
}

fn failed(size: usize, terms: &LocalTermSet, err: SpectralError) -> SizeResult {
    let geometry = match terms.mode {
        Mode::OneD => Geometry::Chain { len: size },
        Mode::TwoD => Geometry::Lattice { lx: size, ly: size },
    };
    let dimension = (terms.d as u64).saturating_pow(geometry.sites() as u32);
    let status = match err {
        SpectralError::Size(message) => SizeStatus::SizeError { message },
        SpectralError::Convergence { message, residual } => SizeStatus::ConvergenceError { message, residual },
        other => SizeStatus::Invalid {
            message: other.to_string(),
        },
    };
    SizeResult {
        size,
        geometry,
        dimension,
        status,
        lambda0: None,
        lambda1: None,
        gap: None,
        gap_above_ground: None,
        multiplicity: None,
        spectrum: Vec::new(),
        exact: None,
        solver: None,
    }
}

fn scan_one(terms: &LocalTermSet, size: usize, opts: &ScanOptions) -> SizeResult {
    let run = || -> Result<SizeResult, SpectralError> {
        let h = assemble(terms, size, opts.boundary)?;
        let k = opts.k.unwrap_or(32).min(h.dimension() as usize).max(1);
        let req = SpectrumRequest {
            k,
            window: opts.window,
            tol: opts.tol,
            deg_tol: opts.deg_tol,
            seed: opts.seed ^ size as u64,
        };
        Ok(summarise(size, &h, spectrum(&h, &req)?, opts.deg_tol))
    };
    run().unwrap_or_else(|e| failed(size, terms, e))
}

/// Scans every size (concurrently); failures are recorded per size.
pub fn gap_scan(terms: &LocalTermSet, sizes: &[usize], opts: &ScanOptions) -> Result<GapReport, SpectralError> {
    if sizes.is_empty() {
        return Err(SpectralError::Invalid("no sizes to scan".into()));
    }
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let results = sizes.par_iter().map(|&l| scan_one(terms, l, opts)).collect();
    Ok(GapReport {
        terms_hash: terms.hash.clone(),
        mode: terms.mode,
        options: *opts,
        sizes: results,
    })
}
