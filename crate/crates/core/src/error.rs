use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polynomial is identically infinite (no finite monomials)")]
    EmptyPolynomial,

    #[error("negative exponent {exponent} for x{var}; pass relaxed exponent mode to allow it")]
    NegativeExponent { var: usize, exponent: i64 },

    #[error("variable count must be at least 1")]
    ZeroVariables,

    #[error("point is not a vertex of the polyhedron")]
    NotAVertex,

    #[error("invalid structured polynomial: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
