use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{FanData, ToricError};
use crate::matrix::{integer_determinant, Matrix};
use crate::scalar::Rational;

/// `{m : <m, rho_i> >= -1 for all i}` with one vertex per maximal cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnticanPolytope {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    /// `cone_vertex[k]` is the lattice point `m_sigma` of maximal cone `k`.
    pub cone_vertex: Vec<Vec<i64>>,
    /// Distinct vertices, sorted.
    pub vertices: Vec<Vec<i64>>,
}

impl AnticanPolytope {
    pub fn contains(&self, point: &[i64], dilation: i64) -> bool {
        self.rays.iter().all(|r| dot(point, r) >= -dilation)
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Builds the polytope from the cone vertices. Every vertex must be a lattice
/// point satisfying all inequalities, with equality exactly on its cone.
pub fn anticanonical_polytope(fan: &FanData) -> Result<AnticanPolytope, ToricError> {
    let mut cone_vertex = Vec::with_capacity(fan.max_cones.len());
    for k in 0..fan.max_cones.len() {
        let v = fan
            .cone_vertex(k)
            .ok_or_else(|| ToricError::Malformed(format!("cone {k} is not simplicial")))?;
        if !v.iter().all(Rational::is_integer) {
            return Err(ToricError::NonIntegralVertex { cone: k });
        }
        let v: Vec<i64> = v
            .iter()
            .map(|x| x.to_integer().to_i64().expect("vertex fits i64"))
            .collect();
        for (j, ray) in fan.rays.iter().enumerate() {
            let value = dot(&v, ray);
            if value < -1 {
                return Err(ToricError::NotReflexivePipeline {
                    cone: k,
                    ray: j,
                    value: value.to_string(),
                });
            }
        }
        cone_vertex.push(v);
    }
    let vertices: BTreeSet<Vec<i64>> = cone_vertex.iter().cloned().collect();
    Ok(AnticanPolytope {
        dim: fan.dim,
        rays: fan.rays.clone(),
        max_cones: fan.max_cones.clone(),
        cone_vertex,
        vertices: vertices.into_iter().collect(),
    })
}

/// Pulling triangulation of the face dual to cone `tau` (a sorted ray set):
/// pick the vertex of the first maximal cone containing `tau`, and cone it
/// over the triangulations of the facets of the face that miss it.
fn triangulate_face(poly: &AnticanPolytope, tau: &[usize], out: &mut Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
    let containing: Vec<usize> = (0..poly.max_cones.len())
        .filter(|&k| tau.iter().all(|i| poly.max_cones[k].contains(i)))
        .collect();
    let apex = containing[0];
    if tau.len() == poly.dim {
        prefix.push(apex);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    // facets of the face are the cones tau + {j}
    let mut extensions = BTreeSet::new();
    for &k in &containing {
        for &j in &poly.max_cones[k] {
            if !tau.contains(&j) && !poly.max_cones[apex].contains(&j) {
                extensions.insert(j);
            }
        }
    }
    prefix.push(apex);
    for j in extensions {
        let mut next = tau.to_vec();
        next.push(j);
        next.sort_unstable();
        triangulate_face(poly, &next, out, prefix);
    }
    prefix.pop();
}

/// `m! * Vol(Delta)` as an exact integer: the sum of `|det|` over the
/// simplices `conv(0, v_1, ..., v_m)` of the fan-induced triangulation.
pub fn normalized_volume(poly: &AnticanPolytope) -> Result<u64, ToricError> {
    let mut total: u64 = 0;
    for j in 0..poly.rays.len() {
        let mut simplices = Vec::new();
        triangulate_face(poly, &[j], &mut simplices, &mut Vec::new());
        for s in simplices {
            let rows: Vec<Vec<i64>> = s.iter().map(|&k| poly.cone_vertex[k].clone()).collect();
            let det = integer_determinant(&Matrix::from_rows_with_cols(rows, poly.dim));
            total += det.unsigned_abs();
        }
    }
    if total == 0 {
        return Err(ToricError::DegeneratePolytope);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1() -> FanData {
        FanData::new(1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap()
    }

    fn p2() -> FanData {
        FanData::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap()
    }

    fn p1p1() -> FanData {
        FanData::new(
            2,
            vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]],
        )
        .unwrap()
    }

    #[test]
    fn vertices_of_small_polytopes() {
        assert_eq!(anticanonical_polytope(&p1()).unwrap().vertices, vec![vec![-1], vec![1]]);
        assert_eq!(
            anticanonical_polytope(&p2()).unwrap().vertices,
            vec![vec![-1, -1], vec![-1, 2], vec![2, -1]]
        );
        assert_eq!(
            anticanonical_polytope(&p1p1()).unwrap().vertices,
            vec![vec![-1, -1], vec![-1, 1], vec![1, -1], vec![1, 1]]
        );
    }

    #[test]
    fn normalized_volumes() {
        assert_eq!(normalized_volume(&anticanonical_polytope(&p1()).unwrap()).unwrap(), 2);
        assert_eq!(normalized_volume(&anticanonical_polytope(&p2()).unwrap()).unwrap(), 9);
        assert_eq!(normalized_volume(&anticanonical_polytope(&p1p1()).unwrap()).unwrap(), 8);
    }

    #[test]
    fn non_gorenstein_vertex_is_rejected() {
        // P(1,1,3): the cone {(1,0), (-1,-3)} has vertex (-1, 2/3)
        let fan = FanData::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -3]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        assert!(matches!(
            anticanonical_polytope(&fan),
            Err(ToricError::NonIntegralVertex { cone: 2 })
        ));
    }
}
