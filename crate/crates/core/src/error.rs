use thiserror::Error;

use crate::ring::VarKey;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("expected a polynomial in Y-variables only, found {0}")]
    NotInY(VarKey),

    #[error("no value assigned to variable {0}")]
    MissingAssignment(VarKey),

    #[error("division by zero while evaluating {0}")]
    ZeroDivision(String),

    #[error("operator has a non-unit constant term")]
    NonUnitConstant,

    #[error("letter {letter} is not allowed under the {convention} weight convention")]
    IncompatibleLetter {
        letter: String,
        convention: &'static str,
    },

    #[error("tableau {0} is not in the required set")]
    NotInSet(String),

    #[error("array is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),

    #[error("truncation order {have} is too small, need {need}")]
    Truncation { have: usize, need: usize },

    #[error("degenerate point: {0}")]
    Degenerate(String),

    #[error("rational size guard exceeded ({0} bits)")]
    BitGuard(u64),

    #[error("grid access outside window: Q_{index} at half shift {half}")]
    OutsideWindow { index: u32, half: i64 },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
