//! Simplicial differential geometry at desk scale.
//!
//! Finite simplicial sets, polynomial differential forms on simplices,
//! simplicial G-bundles with connections for small matrix groups, and the
//! Chern–Weil map from invariant polynomials to cochains.
//!
//! Exact computations use [`scalar::Scalar`], which tracks `τ = 2π`
//! symbolically so Chern numbers come out as exact integers.

#![no_std]

extern crate alloc;

use alloc::string::String;

pub mod bundle;
pub mod chern_weil;
pub mod connection;
pub mod form;
pub mod invariant;
pub mod lie;
pub mod linalg;
pub mod poly;
pub mod quadrature;
pub mod random;
pub mod scalar;
pub mod simplicial;
pub mod simplicial_form;
pub mod whitney;

pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("expected a form of degree {expected}, found degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid horn: k = {k} exceeds n = {n}")]
    InvalidHorn { n: usize, k: usize },
    #[error("inconsistent prescription: faces {0} and {1} disagree on their intersection")]
    InconsistentPrescription(usize, usize),
    #[error("Lie algebra mismatch: {0} vs {1}")]
    AlgebraMismatch(String, String),
    #[error("unsupported Lie algebra for this operation: {0}")]
    UnsupportedAlgebra(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("quadrature order {0} is below the minimum of 2")]
    QuadratureOrder(usize),
    #[error("invalid simplicial set: {0}")]
    InvalidSimplicialSet(String),
    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("invalid bundle: {0}")]
    InvalidBundle(String),
    #[error("invalid connection: {0}")]
    InvalidConnection(String),
    #[error("simplex {dim}.{index}: {source}")]
    AtSimplex {
        dim: usize,
        index: usize,
        source: alloc::boxed::Box<Error>,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}
