//! Symmetric polynomials in finitely many variables: the bases m, e, h, p, s,
//! basis changes, the Hall inner product, `ω`, `e_i^⊥` and plethysm for a few
//! fixed alphabets.

mod basis;
mod partition;
mod plethysm;
mod sympoly;

pub use basis::{
    basis_vector, expand_in_basis, inner_product, kostka, omega, omega_involution, skew_by_e,
    Basis, BasisExpansion,
};
pub use partition::{Composition, Partition};
pub use plethysm::{
    alaurent_mul, plethysm, plethysm_a, plethysm_hmz, plethysm_one_minus_t, plethysm_y_minus_z,
    zgraded_mul, ALaurent, AlphabetSpec, PlethysmOutput, TwoAlphabetExpansion, ZGraded,
};
pub(crate) use sympoly::distinct_permutations;
pub use sympoly::SymPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("invalid partition {0}")]
    InvalidPartition(String),
    #[error("invalid composition {0}")]
    InvalidComposition(String),
    #[error("degree {degree} exceeds the {nvars} available variables")]
    DegreeExceedsVars { degree: usize, nvars: usize },
    #[error("inner product of different degrees")]
    DegreeMismatch,
    #[error("unsupported alphabet {0}")]
    UnsupportedAlphabet(String),
    #[error("unknown basis {0}")]
    UnknownBasis(String),
    #[error("coefficient is not a Laurent polynomial")]
    NotPolynomial,
}
