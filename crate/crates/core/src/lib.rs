//! Exact computations with finite-dimensional Lie algebras given by structure
//! constants over ℚ or a prime field: central series, generator counts, the
//! Schur defect `t(L) = d(L/Z(L))·dim L² − dim L/Z(L)`, recognition of the
//! algebras with `t ≤ 2`, and exhaustive enumeration over tiny fields.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod catalog;
pub mod census;
pub mod classify;
pub mod error;
pub mod field;
pub mod invariants;
pub mod linalg;

pub use algebra::{BracketSpec, Homomorphism, LieAlgebra};
pub use classify::{classify_t012, ClassificationResult, Verdict};
pub use error::{Error, Result};
pub use field::{FieldKind, FieldSpec, Scalar};
pub use invariants::InvariantReport;
pub use linalg::{Matrix, Subspace};
