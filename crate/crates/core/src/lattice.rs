//! Integer lattice routines: Smith and Hermite normal forms, integer solving.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::Matrix;

/// Unimodular certificate `U * A * V = D` of a Smith normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: Clone + Zero> SmithForm<T> {
    /// The diagonal entries `d_1 | d_2 | ...`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.nrows().min(self.d.ncols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

fn add_row_multiple<T: Integer + Clone>(m: &mut Matrix<T>, target: usize, source: usize, k: &T) {
    for j in 0..m.ncols() {
        let v = m[(source, j)].clone() * k.clone();
        let cur = m[(target, j)].clone();
        m[(target, j)] = cur + v;
    }
}

fn add_col_multiple<T: Integer + Clone>(m: &mut Matrix<T>, target: usize, source: usize, k: &T) {
    for i in 0..m.nrows() {
        let v = m[(i, source)].clone() * k.clone();
        let cur = m[(i, target)].clone();
        m[(i, target)] = cur + v;
    }
}

fn negate_row<T: Integer + Signed + Clone>(m: &mut Matrix<T>, i: usize) {
    for j in 0..m.ncols() {
        m[(i, j)] = -m[(i, j)].clone();
    }
}

/// Smith normal form by alternating row and column reduction.
pub fn smith_normal_form<T>(a: &Matrix<T>) -> SmithForm<T>
where
    T: Integer + Signed + Clone,
{
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut d = a.clone();
    let mut u = Matrix::identity(rows);
    let mut v = Matrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                if !q.is_zero() {
                    let nq = -q;
                    add_row_multiple(&mut d, i, t, &nq);
                    add_row_multiple(&mut u, i, t, &nq);
                }
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                if !q.is_zero() {
                    let nq = -q;
                    add_col_multiple(&mut d, j, t, &nq);
                    add_col_multiple(&mut v, j, t, &nq);
                }
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and retry
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
            match offending {
                Some(i) => {
                    add_row_multiple(&mut d, t, i, &T::one());
                    add_row_multiple(&mut u, t, i, &T::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    SmithForm { u, d, v }
}

/// Row-style Hermite normal form `H = W * A` with `W` unimodular: pivot
/// columns strictly increase, pivots are positive, and entries above a pivot
/// lie in `[0, pivot)`. Zero rows are moved to the bottom.
pub fn hermite_normal_form<T>(a: &Matrix<T>) -> (Matrix<T>, Matrix<T>)
where
    T: Integer + Signed + Clone,
{
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut h = a.clone();
    let mut w = Matrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // gcd-combine every row below r into row r at column c
        for i in r + 1..rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            if h[(r, c)].is_zero() {
                h.swap_rows(r, i);
                w.swap_rows(r, i);
                continue;
            }
            let (x, y) = (h[(r, c)].clone(), h[(i, c)].clone());
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let (xg, yg) = (x / g.clone(), y / g);
            // [s t; -y/g x/g] has determinant 1
            for m in [&mut h, &mut w] {
                for j in 0..m.ncols() {
                    let (top, bot) = (m[(r, j)].clone(), m[(i, j)].clone());
                    m[(r, j)] = s.clone() * top.clone() + t.clone() * bot.clone();
                    m[(i, j)] = xg.clone() * bot - yg.clone() * top;
                }
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut w, r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            if !q.is_zero() {
                let nq = -q;
                add_row_multiple(&mut h, i, r, &nq);
                add_row_multiple(&mut w, i, r, &nq);
            }
        }
        r += 1;
    }
    (h, w)
}

/// A particular integer solution of `A u = b`, or `None` when `b` is not in
/// the integer image of `A`.
pub fn solve_integer<T>(a: &Matrix<T>, b: &[T]) -> Option<Vec<T>>
where
    T: Integer + Signed + Clone,
{
    assert_eq!(a.nrows(), b.len(), "solve_integer shape mismatch");
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let mut y = vec![T::zero(); a.ncols()];
    for (i, rhs) in ub.iter().enumerate() {
        let di = diag.get(i).cloned().unwrap_or_else(T::zero);
        if di.is_zero() {
            if !rhs.is_zero() {
                return None;
            }
        } else {
            let (q, rem) = rhs.div_rem(&di);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Inverse of a unimodular integer matrix, via its Hermite form.
pub fn unimodular_inverse<T>(a: &Matrix<T>) -> Option<Matrix<T>>
where
    T: Integer + Signed + Clone,
{
    if a.nrows() != a.ncols() {
        return None;
    }
    let (h, w) = hermite_normal_form(a);
    (h == Matrix::identity(a.nrows())).then_some(w)
}
