//! Enumeration, classification and counting of Latin squares with conjugate
//! symmetry (symmetric, semisymmetric and totally symmetric squares).
//!
//! Symbols are `1..=n` at every external boundary (text formats, catalogs,
//! cycle notation). Internally squares are stored zero-based.

pub mod canonical;
pub mod catalog;
pub mod census;
pub mod generate;
pub mod perm;
pub mod square;
pub mod verify;

pub use canonical::{canonical_form, invariant_signature, EquivalenceRelation, InvariantSignature};
pub use perm::{CycleStructure, Isotopism, Paratopism, Permutation};
pub use square::{Conjugate, LatinSquare, PropertyFilter, Shape, Symmetry, SymmetryType};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a Latin square: {0}")]
    NotLatin(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid cycle structure: {0:?}")]
    InvalidCycleStructure(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
