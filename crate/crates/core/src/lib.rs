//! Proof-searching machines, self-referential spin Hamiltonians and
//! finite-size spectral gap evidence.
//!
//! - [`formal`]: toy formal systems, proof checking and enumeration.
//! - [`machine`]: tape machines, searchers, fixed points.
//! - [`hamc`]: exact local terms compiled from machines.
//! - [`spectral`]: exact/sector/Lanczos spectra, gap scans, the classifier.
//! - [`pipeline`]: configuration, artifacts and the end-to-end demo.
//!
//! The `examples/` directory has one runnable program per piece.

pub mod formal;
pub mod hamc;
pub mod machine;
pub mod pipeline;
pub mod spectral;
