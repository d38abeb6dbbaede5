use std::collections::{BTreeMap, HashSet, VecDeque};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use serde::{Deserialize, Serialize};

use super::{solve_rational, ToricError};
use crate::lattice::smith_normal_form;
use crate::matrix::{integer_determinant, nullspace, Matrix};
use crate::scalar::{rat_int, Rational};

/// Combinatorial input: primitive rays in `Z^m` and the maximal cones as
/// ray-index sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanData {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl FanData {
    /// Checks shapes and indices; normalizes every cone to sorted order.
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Self, ToricError> {
        if dim == 0 {
            return Err(ToricError::Malformed("dimension must be positive".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(ToricError::Malformed(format!(
                    "ray {i} has {} coordinates, expected {dim}",
                    r.len()
                )));
            }
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        for (k, c) in max_cones.into_iter().enumerate() {
            let mut c = c;
            c.sort_unstable();
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(ToricError::Malformed(format!("cone {k} references missing ray {bad}")));
            }
            if c.windows(2).any(|w| w[0] == w[1]) {
                return Err(ToricError::Malformed(format!("cone {k} repeats a ray")));
            }
            cones.push(c);
        }
        if cones.is_empty() {
            return Err(ToricError::Malformed("no maximal cones".into()));
        }
        Ok(FanData {
            dim,
            rays,
            max_cones: cones,
        })
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    /// The `r x m` matrix whose rows are the rays.
    pub fn ray_matrix(&self) -> Matrix<i64> {
        Matrix::from_rows_with_cols(self.rays.clone(), self.dim)
    }

    pub fn pairing(&self, point: &[Rational], ray: usize) -> Rational {
        point
            .iter()
            .zip(&self.rays[ray])
            .fold(Rational::zero(), |acc, (a, &b)| acc + a * rat_int(b))
    }

    /// Solves `<m, rho_i> = -1` for the rays of maximal cone `k`.
    pub fn cone_vertex(&self, k: usize) -> Option<Vec<Rational>> {
        let cone = &self.max_cones[k];
        if cone.len() != self.dim {
            return None;
        }
        let a = Matrix::from_rows(
            cone.iter()
                .map(|&i| self.rays[i].iter().map(|&v| rat_int(v)).collect())
                .collect(),
        );
        solve_rational(&a, &vec![rat_int(-1); self.dim])
    }

    /// Every cone of the fan (faces of maximal cones), including the zero
    /// cone, as sorted ray-index sets.
    pub fn all_cones(&self) -> Vec<Vec<usize>> {
        let mut seen = HashSet::new();
        for cone in &self.max_cones {
            for mask in 0u64..(1u64 << cone.len()) {
                let face: Vec<usize> = cone
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &i)| i)
                    .collect();
                seen.insert(face);
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// True when the fan is, up to `GL(m, Z)`, the fan of `P^m`: `m + 1` rays
    /// summing to zero with every `m`-subset a unimodular maximal cone.
    pub fn is_standard_projective(&self) -> bool {
        let m = self.dim;
        if self.rays.len() != m + 1 || self.max_cones.len() != m + 1 {
            return false;
        }
        let sums_to_zero = (0..m).all(|j| self.rays.iter().map(|r| r[j]).sum::<i64>() == 0);
        let unimodular = self
            .max_cones
            .iter()
            .all(|c| c.len() == m && integer_determinant(&self.cone_matrix(c)).abs() == 1);
        let distinct: HashSet<_> = self.max_cones.iter().collect();
        sums_to_zero && unimodular && distinct.len() == m + 1
    }

    fn cone_matrix(&self, cone: &[usize]) -> Matrix<i64> {
        Matrix::from_rows_with_cols(cone.iter().map(|&i| self.rays[i].clone()).collect(), self.dim)
    }
}

/// Concrete reason a validation flag failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    TooFewRays { rays: usize, required: usize },
    NonPrimitiveRay { ray: usize },
    WrongConeSize { cone: usize, size: usize },
    DependentRays { cone: usize },
    RidgeCount { ridge: Vec<usize>, cones: Vec<usize> },
    RidgeSameSide { ridge: Vec<usize>, cones: Vec<usize> },
    Disconnected { unreachable_cone: usize },
    NonIntegralVertex { cone: usize, vertex: Vec<String> },
    Pairing { cone: usize, ray: usize, value: String },
    Torsion { invariant_factors: Vec<i64> },
    NotSimplicial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    fn ok() -> Self {
        Check {
            pass: true,
            witness: None,
        }
    }

    fn fail(w: Witness) -> Self {
        Check {
            pass: false,
            witness: Some(w),
        }
    }

    fn from(r: Result<(), Witness>) -> Self {
        match r {
            Ok(()) => Self::ok(),
            Err(w) => Self::fail(w),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub simplicial: Check,
    pub complete_criterion: Check,
    pub gorenstein: Check,
    pub ample: Check,
    pub torsion_free: Check,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        [
            &self.simplicial,
            &self.complete_criterion,
            &self.gorenstein,
            &self.ample,
            &self.torsion_free,
        ]
        .iter()
        .all(|c| c.pass)
    }
}

fn check_simplicial(fan: &FanData) -> Result<(), Witness> {
    if fan.rays.len() < fan.dim + 1 {
        return Err(Witness::TooFewRays {
            rays: fan.rays.len(),
            required: fan.dim + 1,
        });
    }
    for (i, r) in fan.rays.iter().enumerate() {
        let g = r.iter().fold(0i64, |g, &v| g.gcd(&v));
        if g != 1 {
            return Err(Witness::NonPrimitiveRay { ray: i });
        }
    }
    for (k, c) in fan.max_cones.iter().enumerate() {
        if c.len() != fan.dim {
            return Err(Witness::WrongConeSize { cone: k, size: c.len() });
        }
        if integer_determinant(&fan.cone_matrix(c)).is_zero() {
            return Err(Witness::DependentRays { cone: k });
        }
    }
    Ok(())
}

/// Every ridge lies in exactly two maximal cones which sit on opposite sides
/// of it, and the adjacency graph is connected.
fn check_complete(fan: &FanData) -> Result<(), Witness> {
    let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (k, c) in fan.max_cones.iter().enumerate() {
        for skip in 0..c.len() {
            let ridge: Vec<usize> = c
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != skip)
                .map(|(_, &i)| i)
                .collect();
            ridges.entry(ridge).or_default().push(k);
        }
    }
    let mut adjacency = vec![Vec::new(); fan.max_cones.len()];
    for (ridge, cones) in &ridges {
        if cones.len() != 2 {
            return Err(Witness::RidgeCount {
                ridge: ridge.clone(),
                cones: cones.clone(),
            });
        }
        let normal = ridge_normal(fan, ridge);
        let side = |k: usize| {
            let extra = fan.max_cones[k].iter().find(|i| !ridge.contains(i)).copied().unwrap();
            fan.pairing(&normal, extra).signum()
        };
        if side(cones[0]) * side(cones[1]) != -Rational::one() {
            return Err(Witness::RidgeSameSide {
                ridge: ridge.clone(),
                cones: cones.clone(),
            });
        }
        adjacency[cones[0]].push(cones[1]);
        adjacency[cones[1]].push(cones[0]);
    }
    let mut seen = vec![false; fan.max_cones.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(k) = queue.pop_front() {
        for &n in &adjacency[k] {
            if !seen[n] {
                seen[n] = true;
                queue.push_back(n);
            }
        }
    }
    match seen.iter().position(|s| !s) {
        Some(k) => Err(Witness::Disconnected { unreachable_cone: k }),
        None => Ok(()),
    }
}

fn ridge_normal(fan: &FanData, ridge: &[usize]) -> Vec<Rational> {
    let rows: Vec<Vec<Rational>> = ridge
        .iter()
        .map(|&i| fan.rays[i].iter().map(|&v| rat_int(v)).collect())
        .collect();
    let ns = nullspace(&Matrix::from_rows_with_cols(rows, fan.dim));
    ns.into_iter().next().expect("ridge of independent rays has a normal")
}

fn check_gorenstein(vertices: &[Vec<Rational>]) -> Result<(), Witness> {
    for (k, v) in vertices.iter().enumerate() {
        if !v.iter().all(|x| x.is_integer()) {
            return Err(Witness::NonIntegralVertex {
                cone: k,
                vertex: v.iter().map(|x| x.to_string()).collect(),
            });
        }
    }
    Ok(())
}

fn check_ample(fan: &FanData, vertices: &[Vec<Rational>]) -> Result<(), Witness> {
    let minus_one = -Rational::one();
    for (k, v) in vertices.iter().enumerate() {
        for j in 0..fan.rays.len() {
            if fan.max_cones[k].contains(&j) {
                continue;
            }
            let value = fan.pairing(v, j);
            if value <= minus_one {
                return Err(Witness::Pairing {
                    cone: k,
                    ray: j,
                    value: value.to_string(),
                });
            }
        }
    }
    Ok(())
}

fn check_torsion_free(fan: &FanData) -> Result<(), Witness> {
    let snf = smith_normal_form(&fan.ray_matrix());
    let factors: Vec<i64> = snf.diagonal().into_iter().filter(|d| *d != 0).collect();
    if factors.len() == fan.dim && factors.iter().all(|d| *d == 1) {
        Ok(())
    } else {
        Err(Witness::Torsion {
            invariant_factors: factors,
        })
    }
}

/// Runs every validation check. Failures become report entries.
pub fn validate_fan(fan: &FanData) -> ValidationReport {
    let simplicial = Check::from(check_simplicial(fan));
    let torsion_free = Check::from(check_torsion_free(fan));
    if !simplicial.pass {
        let pre = || Check::fail(Witness::NotSimplicial);
        return ValidationReport {
            simplicial,
            complete_criterion: pre(),
            gorenstein: pre(),
            ample: pre(),
            torsion_free,
        };
    }
    let vertices: Vec<Vec<Rational>> = (0..fan.max_cones.len())
        .map(|k| fan.cone_vertex(k).expect("simplicial cone has a vertex"))
        .collect();
    ValidationReport {
        simplicial,
        complete_criterion: Check::from(check_complete(fan)),
        gorenstein: Check::from(check_gorenstein(&vertices)),
        ample: Check::from(check_ample(fan, &vertices)),
        torsion_free,
    }
}
