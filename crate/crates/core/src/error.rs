use alloc::string::String;

use crate::field::{FieldError, FieldSpec};
use crate::linalg::LinalgError;

/// Errors raised by algebra construction and the computations built on it.
///
/// Basis indices are stored 0-based and displayed 1-based (`x1 … xn`).
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("basis index {} out of range for dimension {dim}", .index + 1)]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket [x{0},x{0}] is always zero and cannot be specified", .index + 1)]
    SelfBracket { index: usize },
    #[error("bracket [x{},x{}] specified twice", .i + 1, .j + 1)]
    DuplicatePair { i: usize, j: usize },
    #[error("Jacobi identity fails on (x{}, x{}, x{})", .i + 1, .j + 1, .k + 1)]
    NotALieAlgebra { i: usize, j: usize, k: usize },
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("map does not preserve brackets")]
    NotAHomomorphism,
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("derived subalgebra has dimension {dim}, expected 1")]
    DerivedNotLine { dim: usize },
    #[error("unknown catalog key {0:?}")]
    UnknownKey(String),
    #[error("{key} takes {expected} parameter(s), got {found}")]
    ParameterCount {
        key: String,
        expected: usize,
        found: usize,
    },
    #[error("{key} requires a nonzero parameter")]
    ZeroParameter { key: String },
    #[error("{key} is not available over {field} (requires {constraint})")]
    FieldConstraint {
        key: String,
        field: FieldSpec,
        constraint: &'static str,
    },
    #[error("{family} requires a size of at least 1, got {value}")]
    InvalidSize { family: &'static str, value: usize },
    #[error("enumeration of {candidates} candidates exceeds the budget; force it to run anyway")]
    BudgetExceeded { candidates: u128 },
    #[error("enumeration over {0} is not supported")]
    UnsupportedField(FieldSpec),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
