//! Sparse multivariate polynomials with class-group grading, and their text
//! form.

mod monomial;
mod parse;
mod polynomial;

pub use monomial::{Monomial, MAX_EXPONENT};
pub use parse::parse_polynomial;
pub use polynomial::{Grading, Polynomial};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error("exponent too large at offset {offset}")]
    ExponentOverflow { offset: usize },
    #[error("polynomial is not homogeneous: {first:?} has degree {first_degree:?} but {second:?} has degree {second_degree:?}")]
    NotHomogeneous {
        first: Monomial,
        first_degree: Vec<i64>,
        second: Monomial,
        second_degree: Vec<i64>,
    },
    #[error("expected {expected} variables, found {found}")]
    VariableCount { expected: usize, found: usize },
}
