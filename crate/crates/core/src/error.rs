use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::model::{Case, Violation};
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator polynomial is identically zero")]
    ZeroDenominator,

    #[error("series coefficient of order {order} requested, but only orders through {available} are stored")]
    SeriesTruncated { order: i64, available: i64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid instance: {} violation(s)", .0.len())]
    InvalidInstance(Vec<Violation>),

    #[error("inconsistent at infinity: leading coefficient of G is {found}, exponents require {expected}")]
    InconsistentAtInfinity { expected: Box<GaussianRational>, found: Box<GaussianRational> },

    #[error(
        "instance is in the {found:?} case; this operation handles the {expected:?} case (see the overdet module)"
    )]
    WrongCase { expected: Case, found: Case },

    #[error("expected {expected} free values, found {found}")]
    FreeValuesLength { expected: usize, found: usize },

    #[error("local data is not of apparent shape (residue -1, no double pole)")]
    NotApparentShape,

    #[error("linear system for H is not uniquely solvable")]
    NotUnique,

    #[error("row {row} of the H-system is dependent but is not a second-derivative row")]
    UnexpectedDependentRow { row: usize },

    #[error("leading coefficient of a quadratic is zero")]
    DegenerateQuadratic,

    #[error("momentum index {index} out of range for {count} apparent points")]
    MomentumIndex { index: usize, count: usize },

    #[error("constructed equation failed Frobenius verification")]
    VerificationFailed,

    #[error("degree of {which} exceeds the bound {bound}")]
    DegreeBound { which: &'static str, bound: usize },
}
