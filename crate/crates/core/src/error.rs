use crate::numeric::Nat;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("not invertible (gcd = {gcd})")]
    NotInvertible { gcd: Nat },
    #[error("no square root exists")]
    NoSquareRoot,
    #[error("division by zero")]
    DivisionByZero,
    #[error("x-coordinate is not on the curve")]
    NotOnCurve,
    #[error("line function vanished at the evaluation point")]
    DegenerateEvaluation,
    #[error("iteration cap of {0} exceeded")]
    IterationCap(usize),
    #[error("parameter generation failed: {0}")]
    Generation(&'static str),
    #[error("invalid key material: {0}")]
    InvalidKey(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inconclusive: all residuals are zero")]
    Inconclusive,
    #[error("candidate totient does not factor the modulus")]
    InvalidPhi,
}
