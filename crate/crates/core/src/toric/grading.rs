use serde::{Deserialize, Serialize};

use super::{FanData, ToricError};
use crate::lattice::{hermite_normal_form, smith_normal_form, unimodular_inverse};
use crate::matrix::Matrix;
use crate::poly::{Grading, Monomial};

/// Degree homomorphism `Z^r -> Cl = Z^{r-m}`, in Hermite-normal canonical
/// basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingMap {
    rank: usize,
    /// `r x (r-m)`; row `i` is `deg(z_i)`.
    degrees: Matrix<i64>,
    beta: Vec<i64>,
}

impl GradingMap {
    /// Builds a grading from explicit per-variable degrees.
    pub fn from_degrees(degrees: Vec<Vec<i64>>, rank: usize) -> Self {
        let degrees = Matrix::from_rows_with_cols(degrees, rank);
        let beta = (0..rank)
            .map(|j| (0..degrees.nrows()).map(|i| degrees[(i, j)]).sum())
            .collect();
        GradingMap { rank, degrees, beta }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_vars(&self) -> usize {
        self.degrees.nrows()
    }

    pub fn degree_matrix(&self) -> &Matrix<i64> {
        &self.degrees
    }

    pub fn variable_degree(&self, i: usize) -> &[i64] {
        self.degrees.row(i)
    }

    /// The anti-canonical class, the sum of all variable degrees.
    pub fn beta(&self) -> &[i64] {
        &self.beta
    }

    pub fn beta_multiple(&self, a: i64) -> Vec<i64> {
        self.beta.iter().map(|b| a * b).collect()
    }

    pub fn exponent_degree(&self, exponents: &[u32]) -> Vec<i64> {
        let mut d = vec![0i64; self.rank];
        for (i, &e) in exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            for (j, dj) in d.iter_mut().enumerate() {
                *dj += e as i64 * self.degrees[(i, j)];
            }
        }
        d
    }

    /// `degree-matrix^T * ray-matrix == 0`.
    pub fn gale_duality_holds(&self, fan: &FanData) -> bool {
        self.degrees.transpose().matmul(&fan.ray_matrix()).is_zero_matrix()
    }

    /// Finds `T` in `GL(rank, Z)` with `expected_i = T * deg(z_i)` for every
    /// variable, if one exists.
    pub fn unimodular_transform_to(&self, expected: &[Vec<i64>]) -> Option<Matrix<i64>> {
        if expected.len() != self.num_vars() || expected.iter().any(|e| e.len() != self.rank) {
            return None;
        }
        let ours = self.degrees.transpose();
        let theirs = Matrix::from_rows_with_cols(expected.to_vec(), self.rank).transpose();
        let (h1, w1) = hermite_normal_form(&ours);
        let (h2, w2) = hermite_normal_form(&theirs);
        if h1 != h2 {
            return None;
        }
        let t = unimodular_inverse(&w2)?.matmul(&w1);
        (t.matmul(&ours) == theirs).then_some(t)
    }
}

impl Grading for GradingMap {
    fn nvars(&self) -> usize {
        self.num_vars()
    }

    fn monomial_degree(&self, m: &Monomial) -> Vec<i64> {
        self.exponent_degree(m.exponents())
    }
}

/// Class group of the fan via the Smith form of its ray matrix. The degree
/// rows are the last `r - m` rows of the left transform, put in Hermite
/// normal form.
pub fn class_group(fan: &FanData) -> Result<GradingMap, ToricError> {
    let p = fan.ray_matrix();
    let (r, m) = (p.nrows(), p.ncols());
    let snf = smith_normal_form(&p);
    let diag = snf.diagonal();
    let nonzero: Vec<i64> = diag.iter().copied().filter(|d| *d != 0).collect();
    if nonzero.len() < m {
        return Err(ToricError::RaysDoNotSpan);
    }
    if nonzero.iter().any(|&d| d > 1) {
        return Err(ToricError::TorsionClassGroup(nonzero));
    }
    let k = r - m;
    let q_t = Matrix::from_rows_with_cols((m..r).map(|i| snf.u.row(i).to_vec()).collect(), r);
    let (h, _) = hermite_normal_form(&q_t);
    let degrees = h.transpose();
    let beta = (0..k).map(|j| (0..r).map(|i| degrees[(i, j)]).sum()).collect();
    Ok(GradingMap { rank: k, degrees, beta })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_grading() {
        let fan = FanData::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        let g = class_group(&fan).unwrap();
        assert_eq!(g.rank(), 1);
        assert_eq!(g.degree_matrix(), &Matrix::from_rows(vec![vec![1], vec![1], vec![1]]));
        assert_eq!(g.beta(), &[3]);
        assert!(g.gale_duality_holds(&fan));
    }

    #[test]
    fn weighted_p112_grading() {
        let fan = FanData::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -2]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        let g = class_group(&fan).unwrap();
        assert_eq!(g.degree_matrix(), &Matrix::from_rows(vec![vec![1], vec![2], vec![1]]));
        assert_eq!(g.beta(), &[4]);
    }

    #[test]
    fn torsion_is_rejected() {
        // P^2 / (Z/3): rays (1,0), (0,1), (-1,-1) in the sublattice scaled
        let fan = FanData::new(
            2,
            vec![vec![2, -1], vec![-1, 2], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        assert!(matches!(class_group(&fan), Err(ToricError::TorsionClassGroup(_))));
    }
}
