use num_traits::{ToPrimitive, Zero};

use super::polytope::dot;
use super::{solve_rational, FanData, GradingMap, ToricError};
use crate::lattice::solve_integer;
use crate::matrix::Matrix;
use crate::poly::Monomial;
use crate::scalar::{rat_int, Rational};

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Integer bounding box of `{m : <m, rho_i> >= -rhs_i}` from its vertices,
/// found by solving every independent `m`-subset of the inequalities with
/// equality. `None` when the polyhedron is empty.
fn bounding_box(rays: &[Vec<i64>], dim: usize, rhs: &[i64]) -> Option<Vec<(i64, i64)>> {
    let mut lo: Vec<Option<Rational>> = vec![None; dim];
    let mut hi: Vec<Option<Rational>> = vec![None; dim];
    for subset in combinations(rays.len(), dim) {
        let a = Matrix::from_rows(
            subset
                .iter()
                .map(|&i| rays[i].iter().map(|&v| rat_int(v)).collect())
                .collect(),
        );
        let b: Vec<Rational> = subset.iter().map(|&i| rat_int(-rhs[i])).collect();
        let Some(v) = solve_rational(&a, &b) else {
            continue;
        };
        let feasible = rays.iter().zip(rhs).all(|(ray, &c)| {
            let s = v
                .iter()
                .zip(ray)
                .fold(Rational::zero(), |acc, (x, &y)| acc + x * rat_int(y));
            s >= rat_int(-c)
        });
        if !feasible {
            continue;
        }
        for j in 0..dim {
            if lo[j].as_ref().is_none_or(|l| v[j] < *l) {
                lo[j] = Some(v[j].clone());
            }
            if hi[j].as_ref().is_none_or(|h| v[j] > *h) {
                hi[j] = Some(v[j].clone());
            }
        }
    }
    (0..dim)
        .map(|j| {
            let l = lo[j].as_ref()?.ceil().to_integer().to_i64()?;
            let h = hi[j].as_ref()?.floor().to_integer().to_i64()?;
            Some((l, h))
        })
        .collect()
}

/// Lattice points of the bounded polyhedron `{m : <m, rho_i> >= -rhs_i}`,
/// by a bounding-box sweep pruned with per-coordinate interval bounds.
pub fn lattice_points(rays: &[Vec<i64>], dim: usize, rhs: &[i64]) -> Vec<Vec<i64>> {
    let Some(bbox) = bounding_box(rays, dim, rhs) else {
        return Vec::new();
    };
    if bbox.iter().any(|(l, h)| l > h) {
        return Vec::new();
    }
    // best[i][k]: max of <m, rho_i> restricted to coordinates >= k over the box
    let best: Vec<Vec<i64>> = rays
        .iter()
        .map(|ray| {
            let mut suffix = vec![0i64; dim + 1];
            for k in (0..dim).rev() {
                let (l, h) = bbox[k];
                suffix[k] = suffix[k + 1] + (ray[k] * l).max(ray[k] * h);
            }
            suffix
        })
        .collect();
    let mut out = Vec::new();
    let mut point = vec![0i64; dim];
    let mut partial = vec![0i64; rays.len()];
    sweep(rays, rhs, &bbox, &best, 0, &mut point, &mut partial, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    rays: &[Vec<i64>],
    rhs: &[i64],
    bbox: &[(i64, i64)],
    best: &[Vec<i64>],
    k: usize,
    point: &mut Vec<i64>,
    partial: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    let dim = bbox.len();
    if k == dim {
        out.push(point.clone());
        return;
    }
    let (l, h) = bbox[k];
    for x in l..=h {
        point[k] = x;
        let mut ok = true;
        for (i, ray) in rays.iter().enumerate() {
            partial[i] += ray[k] * x;
            if partial[i] + best[i][k + 1] < -rhs[i] {
                ok = false;
            }
        }
        if ok {
            sweep(rays, rhs, bbox, best, k + 1, point, partial, out);
        }
        for (i, ray) in rays.iter().enumerate() {
            partial[i] -= ray[k] * x;
        }
    }
}

/// All monomials of class degree `alpha`, in descending graded-lex order.
///
/// One particular exponent vector `u0` is found by integer solving; the rest
/// of the fiber is `u0 + P m` over the lattice points `m` of
/// `{m : u0_i + <m, rho_i> >= 0}`.
pub fn monomial_basis(g: &GradingMap, fan: &FanData, alpha: &[i64]) -> Result<Vec<Monomial>, ToricError> {
    if alpha.len() != g.rank() {
        return Err(ToricError::DegreeLength {
            expected: g.rank(),
            found: alpha.len(),
        });
    }
    let q_t = g.degree_matrix().transpose();
    let Some(u0) = solve_integer(&q_t, alpha) else {
        return Ok(Vec::new());
    };
    debug_assert_eq!(q_t.mul_vec(&u0), alpha);
    let mut out: Vec<Monomial> = lattice_points(&fan.rays, fan.dim, &u0)
        .into_iter()
        .map(|m| {
            let u: Vec<i64> = fan.rays.iter().zip(&u0).map(|(ray, &c)| c + dot(&m, ray)).collect();
            Monomial::from_i64(&u).expect("fiber point has non-negative exponents")
        })
        .collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}
