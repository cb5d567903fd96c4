//! Exact integer linear algebra over the Mukai lattice: normal forms,
//! kernels, saturation, orthogonal complements, inertia, discriminant groups,
//! isometries and reflections.

pub mod field;
pub mod hnf;
pub mod inertia;
pub mod isometry;
pub mod sublattice;

pub use hnf::{hnf, hnf_solve, snf};
pub use inertia::{inertia, Inertia};
pub use isometry::{apply_isometry, bfield_isometry, is_isometry, reflection, Isometry};
pub use sublattice::{
    discriminant_group, integer_kernel, kernel_basis, orth_complement, rational_span, saturate, FiniteAbelianGroup, Sublattice,
};

use crate::scalar::Int;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("Gram matrix of the rank-{rank} lattice is degenerate; discriminant group undefined")]
    DegenerateGram { rank: usize },
    #[error("invariant factors must be ≥ 2 and form a divisibility chain")]
    BadInvariantFactors,
    #[error("matrix does not preserve the Mukai pairing")]
    NotIsometry,
    #[error("expected a 24x24 matrix, got {rows}x{cols}")]
    Shape { rows: usize, cols: usize },
    #[error("reflection needs a class of square −2, got {0}")]
    NotMinusTwo(Int),
    #[error("basis is not in canonical Hermite normal form")]
    NotCanonical,
}
