//! Toric input: fans, their class-group grading, the anti-canonical
//! polytope, Betti numbers and graded monomial enumeration.

mod betti;
mod enumerate;
mod fan;
mod grading;
mod polytope;

pub use betti::{betti_numbers, extraisom_necessary_check, ExtraisomStatus};
pub use enumerate::{lattice_points, monomial_basis};
pub use fan::{validate_fan, Check, FanData, ValidationReport, Witness};
pub use grading::{class_group, GradingMap};
pub use polytope::{anticanonical_polytope, normalized_volume, AnticanPolytope};

use thiserror::Error;

use crate::matrix::{rref, Matrix};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("malformed fan: {0}")]
    Malformed(String),
    #[error("rays do not span the lattice rationally")]
    RaysDoNotSpan,
    #[error("class group has torsion (invariant factors {0:?}); unsupported")]
    TorsionClassGroup(Vec<i64>),
    #[error("vertex of cone {cone} violates the anti-canonical inequality of ray {ray} (pairing {value})")]
    NotReflexivePipeline { cone: usize, ray: usize, value: String },
    #[error("vertex of cone {cone} is not a lattice point")]
    NonIntegralVertex { cone: usize },
    #[error("anti-canonical polytope has zero volume")]
    DegeneratePolytope,
    #[error("class degree has wrong length {found}, expected {expected}")]
    DegreeLength { expected: usize, found: usize },
}

/// Unique solution of a square rational system, `None` when singular.
pub(crate) fn solve_rational(a: &Matrix<Rational>, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let aug = Matrix::from_rows_with_cols(
        (0..n)
            .map(|i| {
                let mut row = a.row(i).to_vec();
                row.push(b[i].clone());
                row
            })
            .collect(),
        n + 1,
    );
    let r = rref(&aug);
    if r.pivots != (0..n).collect::<Vec<_>>() {
        return None;
    }
    Some((0..n).map(|i| r.matrix[(i, n)].clone()).collect())
}
