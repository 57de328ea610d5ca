//! Compiler from machines to translation-invariant nearest-neighbour
//! Hamiltonian terms with exact entries in Q(√2).

mod compile;
mod matrix;
mod scalar;
mod selfref;
mod terms;

pub use compile::{compile, compile_with, singlet_projector, terms_from_tiles, with_polarity, CompileError, CompileOptions};
pub use matrix::ExactMatrix;
pub use scalar::AlgebraicScalar;
pub use selfref::{audit, self_referential_hamiltonian, Audit, SelfReferential};
pub use terms::{
    describe, parse_terms, sha256_hex, BoundarySites, BoundaryTerm, LocalTermSet, NormCertificate, Provenance, Tile,
    TileKind, TermsError,
};
