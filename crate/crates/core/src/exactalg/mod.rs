//! Exact rational arithmetic and sparse multivariate polynomials.
//!
//! Every symbolic computation in the crate runs on the types defined here:
//! [`Rational`] coefficients, a fixed [`Universe`] of named variables,
//! dense-exponent [`Monomial`]s compared under a [`MonomialOrder`], and the
//! canonical sparse [`Polynomial`].

mod monomial;
mod parse;
mod polynomial;
mod rational;
mod universe;

pub use monomial::{Monomial, MonomialOrder, OrderKind, MAX_VARS};
pub use parse::parse_polynomial;
pub use polynomial::{Bindings, Polynomial, Value};
pub use rational::{parse_rational, rational_to_f64, Rational};
pub use universe::{Universe, Variable};

use thiserror::Error;

/// Errors raised by the exact-algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands belong to different variable universes")]
    UniverseMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` has no binding")]
    UnboundVariable(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("universe of {0} variables exceeds the limit of {MAX_VARS}")]
    TooManyVariables(usize),
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
