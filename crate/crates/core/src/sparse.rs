//! Sparse row reduction.
//!
//! Rows are sorted `(column, value)` lists without explicit zeros. The
//! eliminator accepts rows one at a time, keeps an echelon basis, and produces
//! the reduced row echelon form on demand. Below [`DENSE_THRESHOLD`] columns
//! [`rref_rows`] hands the work to the dense routine instead.

use std::cmp::Ordering;

use crate::matrix::{rref, Matrix};
use crate::scalar::Field;

pub type SparseRow<F> = Vec<(usize, F)>;

/// Column count below which [`rref_rows`] uses dense elimination.
pub const DENSE_THRESHOLD: usize = 200;

/// Reduced row echelon form in sparse storage. `rows[k]` has leading entry 1
/// at column `pivots[k]` and no entries in any other pivot column.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseRref<F> {
    pub ncols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<SparseRow<F>>,
}

impl<F> SparseRref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// `a - factor * b` for sorted sparse rows.
fn sub_scaled<F: Field>(a: &[(usize, F)], factor: &F, b: &[(usize, F)]) -> SparseRow<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0, -factor.mul_ref(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let mut v = a[i].1.clone();
                v.sub_mul_assign(factor, &b[j].1);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Incremental echelon basis.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ncols: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<SparseRow<F>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivot_row: vec![None; ncols],
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the current pivots. The result has no entry in
    /// any pivot column.
    pub fn reduce(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        let mut start = 0;
        loop {
            let hit = row[start..]
                .iter()
                .position(|(c, _)| self.pivot_row[*c].is_some())
                .map(|k| k + start);
            let Some(k) = hit else {
                return row;
            };
            let (col, factor) = row[k].clone();
            let prow = &self.rows[self.pivot_row[col].unwrap()];
            row = sub_scaled(&row, &factor, prow);
            // entries before k are untouched, and the pivot row only has
            // entries at columns >= col
            start = k;
        }
    }

    /// Adds a row; returns true when it enlarged the row space.
    pub fn push(&mut self, row: SparseRow<F>) -> bool {
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(row.iter().all(|(c, v)| *c < self.ncols && !v.is_zero()));
        let mut row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        let lead = row[0].0;
        let inv = row[0].1.inv().expect("nonzero leading entry");
        for (_, v) in row.iter_mut() {
            *v *= &inv;
        }
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    /// Back-substitutes into reduced row echelon form.
    pub fn into_rref(self) -> SparseRref<F> {
        let Echelon {
            ncols,
            pivot_row,
            mut rows,
        } = self;
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by_key(|&k| rows[k][0].0);
        // right-most pivots first, so every row used for elimination is final
        for &k in order.iter().rev() {
            let mut row = std::mem::take(&mut rows[k]);
            let mut pos = 1;
            while pos < row.len() {
                let col = row[pos].0;
                match pivot_row[col] {
                    Some(other) => {
                        let factor = row[pos].1.clone();
                        row = sub_scaled(&row, &factor, &rows[other]);
                        // the other row is reduced, so nothing before pos changed
                    }
                    None => pos += 1,
                }
            }
            rows[k] = row;
        }
        let pivots: Vec<usize> = order.iter().map(|&k| rows[k][0].0).collect();
        let mut slots: Vec<Option<SparseRow<F>>> = rows.into_iter().map(Some).collect();
        let rows = order.iter().map(|&k| slots[k].take().unwrap()).collect();
        SparseRref { ncols, pivots, rows }
    }
}

/// Reduced row echelon form of the given rows, dense below
/// [`DENSE_THRESHOLD`] columns and sparse above.
pub fn rref_rows<F: Field>(rows: Vec<SparseRow<F>>, ncols: usize) -> SparseRref<F> {
    if ncols < DENSE_THRESHOLD {
        dense_rref_rows(rows, ncols)
    } else {
        sparse_rref_rows(rows, ncols)
    }
}

pub fn sparse_rref_rows<F: Field>(rows: Vec<SparseRow<F>>, ncols: usize) -> SparseRref<F> {
    let mut ech = Echelon::new(ncols);
    for row in rows {
        ech.push(row);
    }
    ech.into_rref()
}

pub fn dense_rref_rows<F: Field>(rows: Vec<SparseRow<F>>, ncols: usize) -> SparseRref<F> {
    let dense = rows
        .iter()
        .map(|row| {
            let mut d = vec![F::zero(); ncols];
            for (c, v) in row {
                d[*c] = v.clone();
            }
            d
        })
        .collect();
    let r = rref(&Matrix::from_rows_with_cols(dense, ncols));
    let rows = (0..r.rank)
        .map(|i| {
            r.matrix
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect()
        })
        .collect();
    SparseRref {
        ncols,
        pivots: r.pivots,
        rows,
    }
}

/// Rank only, without back-substitution.
pub fn rank_rows<F: Field>(rows: impl IntoIterator<Item = SparseRow<F>>, ncols: usize) -> usize {
    let mut ech = Echelon::new(ncols);
    for row in rows {
        ech.push(row);
        if ech.rank() == ncols {
            break;
        }
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_int, Fp, Rational};
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_rows(seed: u64, nrows: usize, ncols: usize, density: f64) -> Vec<SparseRow<Rational>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..nrows)
            .map(|_| {
                (0..ncols)
                    .filter_map(|c| {
                        if rng.gen_bool(density) {
                            let v: i64 = rng.gen_range(-4..=4);
                            (v != 0).then(|| (c, rat_int(v)))
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn sparse_and_dense_agree() {
        for seed in 0..20 {
            let rows = random_rows(seed, 12, 9, 0.3);
            assert_eq!(
                sparse_rref_rows(rows.clone(), 9),
                dense_rref_rows(rows, 9),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn rank_is_invariant_under_row_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for seed in 0..10 {
            let mut rows = random_rows(100 + seed, 15, 12, 0.25);
            let r0 = sparse_rref_rows(rows.clone(), 12).rank();
            for _ in 0..5 {
                for i in (1..rows.len()).rev() {
                    rows.swap(i, rng.gen_range(0..=i));
                }
                assert_eq!(sparse_rref_rows(rows.clone(), 12).rank(), r0);
            }
        }
    }

    #[test]
    fn modular_rank_never_exceeds_exact_rank() {
        for seed in 0..10 {
            let rows = random_rows(200 + seed, 10, 10, 0.4);
            let exact = sparse_rref_rows(rows.clone(), 10).rank();
            let modp = rank_rows(
                rows.iter().map(|r| {
                    r.iter()
                        .map(|(c, v)| (*c, crate::scalar::rational_to_fp(v).unwrap()))
                        .filter(|(_, v)| !v.is_zero())
                        .collect::<SparseRow<Fp>>()
                }),
                10,
            );
            assert!(modp <= exact);
        }
    }

    #[test]
    fn reduced_rows_avoid_pivot_columns() {
        let rows = random_rows(3, 20, 30, 0.2);
        let r = sparse_rref_rows(rows, 30);
        for (k, row) in r.rows.iter().enumerate() {
            assert_eq!(row[0].0, r.pivots[k]);
            assert_eq!(row[0].1, rat_int(1));
            for (c, _) in &row[1..] {
                assert!(!r.pivots.contains(c));
            }
        }
    }
}
