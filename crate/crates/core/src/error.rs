use thiserror::Error;

use crate::exactnum::ExtError;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{a} is not invertible modulo {d}")]
    NotInvertible { a: i64, d: i64 },
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("bad quotient type: {0}")]
    BadType(String),
    #[error("germ is not reduced")]
    NotReduced,
    #[error("germ is not semi-invariant for {0}")]
    NotSemiInvariant(String),
    #[error("extension tower degree {degree} exceeds the bound {bound}")]
    ExtensionOverflow { degree: usize, bound: usize },
    #[error("polynomial is not quasi-homogeneous; offending monomials: {0}")]
    NotQuasiHomogeneous(String),
    #[error("exponent of x{var} not divisible by {by}")]
    NonDivisibleExponent { var: usize, by: i64 },
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("germs share a common component")]
    CommonComponent,
    #[error("weighted order {nu} is not a multiple of {pq}")]
    NotMultiple { nu: i64, pq: i64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("bad weights: {0}")]
    BadWeights(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<ExtError> for Error {
    /// Only for call sites where a split cannot occur (rational coefficients).
    fn from(e: ExtError) -> Self {
        match e {
            ExtError::DivisionByZero => Error::DivisionByZero,
            ExtError::Split(_) => Error::InternalInconsistency("unexpected tower split".into()),
        }
    }
}
