//! Finite-size spectra and gap verdicts.

mod assemble;
mod classify;
pub mod models;
mod scan;
mod sectors;
mod solver;

pub use assemble::{
    assemble, assemble_1d, assemble_2d, max_dim, AssembledHamiltonian, Boundary, Geometry, LocalOp, SpectralError, Term,
    DEFAULT_MAX_DIM, MATERIALIZE_LIMIT,
};
pub use classify::{classify, eps_covers, power_fit, ClassifierConfig, Clauses, PowerFit, Verdict, VerdictKind};
pub use scan::{
    gap_scan, low_spectrum, spectrum, ExactSummary, GapReport, ScanOptions, SizeResult, SizeStatus, DEGENERACY_TOL,
};
pub use sectors::{sector_spectrum, SolverStats, Spectrum, SpectrumRequest};
pub use solver::{
    dense_eigenpairs, dense_eigenvalues, lanczos, lanczos_csr, low_spectrum_matrix, random_symmetric, CsrMatrix,
    EigenPair, LanczosOptions, Method, DENSE_LIMIT,
};
