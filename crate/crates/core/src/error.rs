use thiserror::Error;

use crate::gf2poly::Gf2Poly;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty polynomial string")]
    EmptyInput,

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("modulus must have degree at least 1")]
    ConstantModulus,

    #[error("polynomial {0} is not a square")]
    NotSquare(Gf2Poly),

    #[error("exponents must be positive (got a={a}, b={b})")]
    InvalidExponents { a: u32, b: u32 },

    #[error("1+x^{a}(x+1)^{b} = {poly} is not irreducible")]
    NotIrreducible { a: u32, b: u32, poly: Gf2Poly },

    #[error("invalid degree range {min}..={max}")]
    InvalidRange { min: u32, max: u32 },

    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),

    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),

    #[error("internal arithmetic check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
