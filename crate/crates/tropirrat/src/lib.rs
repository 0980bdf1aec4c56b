//! Exact-arithmetic toolkit for computing tropical obstructions to stable
//! rationality of lattice polytopes.
//!
//! The pipeline goes: build a lattice polytope ([`polytope`]), refine it by a
//! regular integral subdivision ([`subdivision`]) coming from a convex lifting
//! or a hyperplane slicing, classify the faces of the subdivision that meet
//! the interior ([`classify`]), and evaluate the alternating obstruction sum
//! over those faces ([`obstruction`]). Every step runs in exact rational
//! arithmetic so the resulting certificates are bit-reproducible.

pub mod classify;
pub mod linalg;
pub mod obstruction;
pub mod polytope;
pub mod repro;
pub mod subdivision;
mod util;

pub use linalg::{Int, IntMatrix, IntVec, Rat, RatVec};
pub use polytope::LatticePolytope;

use thiserror::Error;

/// Errors shared across the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ZeroVector: primitive part of the zero vector is undefined")]
    ZeroVector,
    #[error("RaggedInput: points have inconsistent lengths ({0} vs {1})")]
    RaggedInput(usize, usize),
    #[error("NoFacets: a 0-dimensional polytope has no facets")]
    NoFacets,
    #[error("DimMismatch: ambient dimensions differ ({0} vs {1})")]
    DimMismatch(usize, usize),
    #[error("NotContained: the given polytope is not contained in the parent")]
    NotContained,
    #[error("NotASegment: expected a 1-dimensional polytope")]
    NotASegment,
    #[error("BadParameter: {0}")]
    BadParameter(String),
    #[error("NotIntegral: slicing produces the non-lattice vertex {0}")]
    NotIntegral(String),
    #[error("UnclassifiedFace: interior face {0} has no rationality status")]
    UnclassifiedFace(usize),
    #[error("BadAssumptions: {0}")]
    BadAssumptions(String),
    #[error("BadDegree: schreieder bound needs an even degree >= 4, got {0}")]
    BadDegree(i64),
    #[error("BadLifting: {0}")]
    BadLifting(String),
    #[error("schema error in field `{field}`: {message}")]
    Schema { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn schema(field: &str, message: impl Into<String>) -> Self {
        Error::Schema {
            field: field.to_string(),
            message: message.into(),
        }
    }
}
