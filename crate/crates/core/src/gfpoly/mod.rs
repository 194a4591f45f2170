//! Prime-field arithmetic and sparse multivariate polynomials.
//!
//! Everything here is pure: a [`PolyFp`] carries an `Arc` to its [`Ring`]
//! context and is never mutated after construction.

mod field;
mod monomial;
mod poly;

pub use field::{is_prime, FpElem, PrimeField, MAX_MODULUS};
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use poly::{PolyFp, Ring};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is not below 2^31")]
    ModulusTooLarge(u64),
    #[error("polynomials belong to different ring contexts")]
    ContextMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("no image given for variable `{0}`")]
    MissingAssignment(String),
    #[error("substitution needs at least one image to fix the target ring")]
    EmptyAssignment,
    #[error("variable precedence {0:?} is not a permutation of the ring variables")]
    InvalidPrecedence(Vec<usize>),
    #[error("unknown monomial order `{0}` (expected lex or grevlex)")]
    UnknownOrder(String),
}
