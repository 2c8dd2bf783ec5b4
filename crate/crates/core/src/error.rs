use thiserror::Error;

use crate::poly::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("variable x{index} exceeds the ambient dimension {dim}")]
    VariableOutOfRange { index: u32, dim: u32 },

    #[error("no value assigned to variable x{0}")]
    MissingVariable(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degree {0} must be even")]
    OddDegree(u32),

    #[error("rotation generator needs distinct indices, got j = k = {0}")]
    SameIndex(u32),

    #[error("singular linear system")]
    Singular,

    #[error("zero denominator in Gegenbauer recursion at k = {k}")]
    ZeroDenominator { k: u32 },

    #[error("no representative in {0} variables")]
    NoRepresentative(u32),

    #[error("substitution for x{0} has degree above one")]
    NonLinearSubstitution(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
