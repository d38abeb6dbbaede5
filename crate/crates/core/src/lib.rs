//! Exact construction and certification of the Landau-Ginzburg Frobenius
//! algebra `A(f) = ⊕_a R(f)_{aβ}` of a Calabi-Yau hypersurface in a
//! simplicial Gorenstein toric Fano variety.
//!
//! The algebraic core is generic over a coefficient [`Field`]; exact
//! rationals are the working field and a 62-bit prime field serves the rank
//! prefilter. The aliases below fix the rational instantiation used by the
//! rest of the crate and by the `lgfrob` binary.

pub mod fixtures;
pub mod frobenius;
pub mod jacobian;
pub mod lattice;
pub mod matrix;
pub mod modular;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod sparse;
pub mod toric;

pub use scalar::{Field, Fp, Rational, Zp};

/// Dense matrix over the rationals.
pub type RatMatrix = matrix::Matrix<Rational>;
/// Dense integer matrix.
pub type IntMatrix = matrix::Matrix<i64>;
/// Sparse polynomial with rational coefficients.
pub type GradedPolynomial = poly::Polynomial<Rational>;
/// Jacobian system over the rationals.
pub type JacobianSystem = jacobian::JacobianSystem<Rational>;
/// Graded quotient piece over the rationals.
pub type QuotientBasis = jacobian::GradedPiece<Rational>;
/// Frobenius algebra data over the rationals.
pub type FrobeniusAlgebraData = frobenius::FrobeniusAlgebra<Rational>;
