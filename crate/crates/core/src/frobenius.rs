//! The Landau-Ginzburg Frobenius algebra `A(f) = ⊕_{a<m} R(f)_{aβ}`.
//!
//! Basis elements of every graded piece are monomials, so a structure
//! constant is the normal form of a monomial product. The trace factors
//! through the one-dimensional piece `R_0(f)_{mβ}`: a top-degree class `U` is
//! sent to `z_1⋯z_r·U` there and read off against a chosen generator.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jacobian::{graded_piece, GradedPiece, Ideal, JacobianError, JacobianSystem, PieceOptions};
use crate::matrix::{rank, Matrix};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::{sign_power, Field};
use crate::toric::{anticanonical_polytope, normalized_volume};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FrobeniusError {
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
    #[error("socle pieces have dimensions {top} and {euler}, expected 1 and 1")]
    SocleNotOneDimensional { top: usize, euler: usize },
    #[error("the Hessian generator reduces to zero")]
    HessianGeneratorZero,
    #[error("the projective Hessian needs the standard projective fan")]
    HessianNotAdmissible,
    #[error("R(f) is nonzero in degree {a}β (dimension {dim})")]
    MacaulayViolation { a: usize, dim: usize },
    #[error("degree mismatch: {a} + {b} != {expected}")]
    DegreeMismatch { a: usize, b: usize, expected: usize },
}

/// Normalization of the trace.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceStrategy {
    /// The graded-lex least quotient monomial of `R_0(f)_{mβ}`.
    #[default]
    Generic,
    /// `z_1⋯z_r·det(∂²f)`, only on the standard fan of `P^{r-1}`.
    ProjectiveHessian,
}

/// `value · (2πi)^{unit_exponent}`; `sign` records the factor
/// `-(-1)^{m(m-1)/2}` already folded into `value`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceScalar<F> {
    pub value: F,
    pub unit_exponent: usize,
    pub sign: i64,
}

impl<F: PartialEq> PartialEq for TraceScalar<F> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

/// Products of basis pairs from degrees `a <= b`. `coords[i * dim_b + j]` is
/// the product of the `i`-th and `j`-th basis elements in the basis of
/// degree `a + b`; empty when `a + b >= m`.
#[derive(Clone, Debug)]
pub struct StructureConstants<F> {
    pub a: usize,
    pub b: usize,
    pub dim_a: usize,
    pub dim_b: usize,
    pub coords: Vec<Vec<F>>,
}

impl<F> StructureConstants<F> {
    pub fn get(&self, i: usize, j: usize) -> &[F] {
        &self.coords[i * self.dim_b + j]
    }
}

#[derive(Clone, Debug)]
pub struct FrobeniusAlgebra<F> {
    system: JacobianSystem<F>,
    m: usize,
    pieces: Vec<GradedPiece<F>>,
    /// `dim R(f)_{aβ}` for `m <= a <= 2m - 2`, all zero after a successful build.
    high_dims: Vec<(usize, usize)>,
    euler_piece: GradedPiece<F>,
    strategy: TraceStrategy,
    /// Coordinate of the strategy generator in `R_0(f)_{mβ}`.
    generator_coordinate: F,
    volume: u64,
    constants: BTreeMap<(usize, usize), StructureConstants<F>>,
}

/// Determinant of a square matrix of polynomials by cofactor expansion,
/// memoized on the set of columns still available.
fn polynomial_determinant<F: Field>(entries: &[Vec<Polynomial<F>>], nvars: usize) -> Polynomial<F> {
    let n = entries.len();
    let mut memo: Vec<Option<Polynomial<F>>> = vec![None; 1 << n];
    memo[0] = Some(Polynomial::one(nvars));
    for mask in 1usize..(1 << n) {
        // expand the row `n - popcount(mask)` against the columns in mask
        let row = n - mask.count_ones() as usize;
        let mut acc = Polynomial::zero(nvars);
        let mut sign_pos = 0;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let e = &entries[row][col];
            if !e.is_zero() {
                let minor = memo[mask & !(1 << col)].as_ref().unwrap();
                let term = e * minor;
                acc = if sign_pos % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            sign_pos += 1;
        }
        memo[mask] = Some(acc);
    }
    memo[(1 << n) - 1].take().unwrap()
}

/// `z_1⋯z_r·det(∂²f/∂z_i∂z_j)`.
pub fn projective_hessian_generator<F: Field>(system: &JacobianSystem<F>) -> Polynomial<F> {
    let n = system.nvars();
    let entries: Vec<Vec<Polynomial<F>>> = system
        .partials()
        .iter()
        .map(|p| (0..n).map(|j| p.partial_derivative(j)).collect())
        .collect();
    polynomial_determinant(&entries, n).mul_monomial(&Monomial::product_of_all(n))
}

/// `R(f)_{aβ}` for `a = 0, ..., top`. Pieces of degree `a >= m` only need
/// their dimension, so they may be certified by the modular prefilter.
pub fn jacobian_pieces<F: Field>(
    system: &JacobianSystem<F>,
    top: usize,
    options: PieceOptions,
) -> Result<Vec<GradedPiece<F>>, JacobianError> {
    let m = system.dim();
    (0..=top)
        .into_par_iter()
        .map(|a| {
            let opts = if a < m {
                PieceOptions {
                    modular_prefilter: false,
                    ..options
                }
            } else {
                options
            };
            graded_piece(system, Ideal::Jacobian, &system.beta_multiple(a as i64), opts)
        })
        .collect()
}

/// `R_0(f)_{mβ}`.
pub fn euler_socle_piece<F: Field>(
    system: &JacobianSystem<F>,
    options: PieceOptions,
) -> Result<GradedPiece<F>, JacobianError> {
    graded_piece(
        system,
        Ideal::Euler,
        &system.beta_multiple(system.dim() as i64),
        PieceOptions {
            modular_prefilter: false,
            ..options
        },
    )
}

/// Builds the graded pieces, the socle data and all structure constants.
pub fn build_algebra<F: Field>(
    system: &JacobianSystem<F>,
    strategy: TraceStrategy,
    options: PieceOptions,
) -> Result<FrobeniusAlgebra<F>, FrobeniusError> {
    let m = system.dim();
    let (pieces, euler) = rayon::join(
        || jacobian_pieces(system, 2 * m - 2, options),
        || euler_socle_piece(system, options),
    );
    assemble(system, pieces?, euler?, strategy)
}

/// Assembles the algebra from `R(f)_{aβ}` for `a = 0, ..., 2m-2` (or more)
/// and `R_0(f)_{mβ}`. Every piece with `m <= a <= 2m-2` must vanish.
pub fn assemble<F: Field>(
    system: &JacobianSystem<F>,
    mut pieces: Vec<GradedPiece<F>>,
    euler_piece: GradedPiece<F>,
    strategy: TraceStrategy,
) -> Result<FrobeniusAlgebra<F>, FrobeniusError> {
    let m = system.dim();
    assert!(pieces.len() > 2 * m - 2, "pieces up to degree 2m-2 are required");
    let high: Vec<GradedPiece<F>> = pieces.split_off(m);
    let top = pieces[m - 1].dim();
    if top != 1 || euler_piece.dim() != 1 {
        return Err(FrobeniusError::SocleNotOneDimensional {
            top,
            euler: euler_piece.dim(),
        });
    }
    let high_dims: Vec<(usize, usize)> = high
        .iter()
        .take(m - 1)
        .enumerate()
        .map(|(k, p)| (m + k, p.dim()))
        .collect();
    if let Some(&(a, dim)) = high_dims.iter().find(|(_, d)| *d != 0) {
        return Err(FrobeniusError::MacaulayViolation { a, dim });
    }

    let generator_coordinate = match strategy {
        TraceStrategy::Generic => F::one(),
        TraceStrategy::ProjectiveHessian => {
            if !system.fan().is_standard_projective() {
                return Err(FrobeniusError::HessianNotAdmissible);
            }
            let h = projective_hessian_generator(system);
            let c = euler_piece.normal_form(&h, system.grading())?.remove(0);
            if c.is_zero() {
                return Err(FrobeniusError::HessianGeneratorZero);
            }
            c
        }
    };
    let polytope = anticanonical_polytope(system.fan()).map_err(JacobianError::from)?;
    let volume = normalized_volume(&polytope).map_err(JacobianError::from)?;

    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a..m).map(move |b| (a, b))).collect();
    let constants = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (pa, pb) = (&pieces[a], &pieces[b]);
            let mut coords = Vec::with_capacity(pa.dim() * pb.dim());
            for i in 0..pa.dim() {
                for j in 0..pb.dim() {
                    let prod = pa.basis_monomial(i).mul(pb.basis_monomial(j));
                    coords.push(if a + b < m {
                        dense_coordinates(&pieces[a + b], &prod)
                    } else {
                        Vec::new()
                    });
                }
            }
            (
                (a, b),
                StructureConstants {
                    a,
                    b,
                    dim_a: pa.dim(),
                    dim_b: pb.dim(),
                    coords,
                },
            )
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();

    Ok(FrobeniusAlgebra {
        system: system.clone(),
        m,
        pieces,
        high_dims,
        euler_piece,
        strategy,
        generator_coordinate,
        volume,
        constants,
    })
}

fn dense_coordinates<F: Field>(piece: &GradedPiece<F>, m: &Monomial) -> Vec<F> {
    let mut out = vec![F::zero(); piece.dim()];
    for (k, v) in piece.monomial_coordinates(m).expect("product has the sum degree") {
        out[*k] = v.clone();
    }
    out
}

impl<F: Field> FrobeniusAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn system(&self) -> &JacobianSystem<F> {
        &self.system
    }

    pub fn piece(&self, a: usize) -> &GradedPiece<F> {
        &self.pieces[a]
    }

    pub fn euler_piece(&self) -> &GradedPiece<F> {
        &self.euler_piece
    }

    pub fn strategy(&self) -> TraceStrategy {
        self.strategy
    }

    pub fn generator_coordinate(&self) -> &F {
        &self.generator_coordinate
    }

    pub fn volume(&self) -> u64 {
        self.volume
    }

    pub fn high_degree_dims(&self) -> &[(usize, usize)] {
        &self.high_dims
    }

    pub fn structure_constants(&self, a: usize, b: usize) -> &StructureConstants<F> {
        &self.constants[&(a.min(b), a.max(b))]
    }

    /// Basis element `i` of degree `a` as a coordinate vector.
    pub fn basis_vector(&self, a: usize, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.pieces[a].dim()];
        v[i] = F::one();
        v
    }

    /// Coordinates of `e_i · e_j` for basis elements of degrees `a`, `b`.
    pub fn basis_product(&self, a: usize, i: usize, b: usize, j: usize) -> &[F] {
        if a <= b {
            self.constants[&(a, b)].get(i, j)
        } else {
            self.constants[&(b, a)].get(j, i)
        }
    }

    /// Product of `u` in degree `a` and `v` in degree `b` via structure
    /// constants; the zero vector of an empty piece when `a + b >= m`.
    pub fn multiply(&self, a: usize, u: &[F], b: usize, v: &[F]) -> Vec<F> {
        if a + b >= self.m {
            return Vec::new();
        }
        let mut out = vec![F::zero(); self.pieces[a + b].dim()];
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let w = ui.mul_ref(vj);
                for (k, c) in self.basis_product(a, i, b, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &w.mul_ref(c);
                    }
                }
            }
        }
        out
    }

    /// Product computed by multiplying lifted polynomials and reducing in
    /// the target piece, independently of the structure constants.
    pub fn multiply_direct(&self, a: usize, u: &[F], b: usize, v: &[F]) -> Result<Vec<F>, FrobeniusError> {
        if a + b >= self.m {
            return Ok(Vec::new());
        }
        let p = &self.pieces[a].lift(u) * &self.pieces[b].lift(v);
        Ok(self.pieces[a + b].normal_form(&p, self.system.grading())?)
    }

    /// `-(-1)^{m(m-1)/2}`
    pub fn trace_sign(&self) -> i64 {
        let m = self.m as i64;
        -sign_power(m * (m - 1) / 2)
    }

    fn scalar(&self, value: F) -> TraceScalar<F> {
        TraceScalar {
            value,
            unit_exponent: self.m - 1,
            sign: self.trace_sign(),
        }
    }

    /// Trace of a polynomial of degree `(m-1)β`.
    pub fn trace_polynomial(&self, u: &Polynomial<F>) -> Result<TraceScalar<F>, FrobeniusError> {
        let n = self.system.nvars();
        let shifted = u.mul_monomial(&Monomial::product_of_all(n));
        let mut c = self.euler_piece.normal_form(&shifted, self.system.grading())?.remove(0);
        c *= &self.generator_coordinate.inv().expect("nonzero generator");
        c *= &F::from_i64(self.trace_sign());
        c *= &F::from_i64(self.volume as i64);
        Ok(self.scalar(c))
    }

    /// Trace of a top-degree class given by its coordinates.
    pub fn trace(&self, u: &[F]) -> Result<TraceScalar<F>, FrobeniusError> {
        let top = &self.pieces[self.m - 1];
        if u.len() != top.dim() {
            return Err(JacobianError::DegreeMismatch {
                expected: top.degree().to_vec(),
                found: vec![u.len() as i64],
            }
            .into());
        }
        self.trace_polynomial(&top.lift(u))
    }

    /// `(G_a)_{ij} = Tr(e_i · e'_j)` over degrees `a` and `m-1-a`.
    pub fn pairing_gram(&self, a: usize) -> Result<Vec<Vec<TraceScalar<F>>>, FrobeniusError> {
        let tau = self.trace(&[F::one()])?.value;
        let b = self.m - 1 - a;
        Ok((0..self.pieces[a].dim())
            .map(|i| {
                (0..self.pieces[b].dim())
                    .map(|j| self.scalar(self.basis_product(a, i, b, j)[0].mul_ref(&tau)))
                    .collect()
            })
            .collect())
    }

    /// Rational parts of [`FrobeniusAlgebra::pairing_gram`].
    pub fn gram_matrix(&self, a: usize) -> Result<Matrix<F>, FrobeniusError> {
        let g = self.pairing_gram(a)?;
        let cols = self.pieces[self.m - 1 - a].dim();
        Ok(Matrix::from_rows_with_cols(
            g.into_iter()
                .map(|row| row.into_iter().map(|t| t.value).collect())
                .collect(),
            cols,
        ))
    }

    /// `mul(u, v) = (-1)^b u·v` for `a + b = m - 1`.
    pub fn mul_twisted(&self, a: usize, u: &[F], b: usize, v: &[F]) -> Result<Vec<F>, FrobeniusError> {
        if a + b != self.m - 1 {
            return Err(FrobeniusError::DegreeMismatch {
                a,
                b,
                expected: self.m - 1,
            });
        }
        let s = F::from_i64(sign_power(b as i64));
        Ok(self.multiply(a, u, b, v).into_iter().map(|x| x.mul_ref(&s)).collect())
    }

    /// `dim R(f)_{aβ}` for `a = 0, ..., m-1`.
    pub fn hodge_row(&self) -> Vec<usize> {
        self.pieces.iter().map(GradedPiece::dim).collect()
    }

    fn total_basis(&self) -> usize {
        self.pieces.iter().map(GradedPiece::dim).sum()
    }
}

/// Outcome of one axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomResult {
    pub pass: bool,
    pub checked: usize,
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl AxiomResult {
    fn from_failures(checked: usize, exhaustive: bool, failures: impl IntoIterator<Item = String>) -> Self {
        let witness = failures.into_iter().next();
        AxiomResult {
            pass: witness.is_none(),
            checked,
            exhaustive,
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub unit: AxiomResult,
    pub commutativity: AxiomResult,
    pub associativity: AxiomResult,
    pub invariance: AxiomResult,
    pub nondegeneracy: AxiomResult,
    /// `rank G_a` for each `a`.
    pub gram_ranks: Vec<usize>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.unit.pass
            && self.commutativity.pass
            && self.associativity.pass
            && self.invariance.pass
            && self.nondegeneracy.pass
    }
}

/// Basis triples `((a, i), (b, j), (c, k))` to test; exhaustive when the
/// number of basis triples is at most `10^4`, otherwise `count` seeded draws.
fn triples<F: Field>(
    alg: &FrobeniusAlgebra<F>,
    admissible: impl Fn(usize, usize, usize) -> bool,
    seed: u64,
    count: usize,
) -> (Vec<[(usize, usize); 3]>, bool) {
    let m = alg.m;
    let shapes: Vec<[usize; 3]> = (0..m)
        .flat_map(|a| (0..m).flat_map(move |b| (0..m).map(move |c| [a, b, c])))
        .filter(|&[a, b, c]| admissible(a, b, c))
        .filter(|s| s.iter().all(|&d| alg.pieces[d].dim() > 0))
        .collect();
    let n = alg.total_basis();
    if n.pow(3) <= 10_000 {
        let mut out = Vec::new();
        for [a, b, c] in shapes {
            for i in 0..alg.pieces[a].dim() {
                for j in 0..alg.pieces[b].dim() {
                    for k in 0..alg.pieces[c].dim() {
                        out.push([(a, i), (b, j), (c, k)]);
                    }
                }
            }
        }
        return (out, true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let out = (0..count)
        .filter(|_| !shapes.is_empty())
        .map(|_| {
            let s = shapes[rng.gen_range(0..shapes.len())];
            s.map(|d| (d, rng.gen_range(0..alg.pieces[d].dim())))
        })
        .collect();
    (out, false)
}

/// Checks unit, commutativity, associativity, invariance and
/// nondegeneracy exactly.
pub fn frobenius_axiom_check<F: Field>(
    alg: &FrobeniusAlgebra<F>,
    sample_seed: u64,
    sample_count: usize,
) -> Result<AxiomReport, FrobeniusError> {
    let m = alg.m;

    // unit: 1 is the basis of degree 0 and acts as the identity
    let mut unit_fail = Vec::new();
    if alg.pieces[0].dim() != 1 || !alg.pieces[0].basis_monomial(0).is_one() {
        unit_fail.push(format!("degree-0 basis is {:?}", alg.pieces[0].basis()));
    } else {
        for b in 0..m {
            for j in 0..alg.pieces[b].dim() {
                if alg.basis_product(0, 0, b, j) != alg.basis_vector(b, j).as_slice() {
                    unit_fail.push(format!("1 * e[{b}][{j}] != e[{b}][{j}]"));
                }
            }
        }
    }
    let unit_checked = alg.total_basis();

    // commutativity: swapped structure constants against the product
    // recomputed in the opposite order from polynomials
    let pairs: Vec<(usize, usize, usize, usize)> = (0..m)
        .flat_map(|a| (a..m).map(move |b| (a, b)))
        .filter(|&(a, b)| a + b < m)
        .flat_map(|(a, b)| {
            let (da, db) = (alg.pieces[a].dim(), alg.pieces[b].dim());
            (0..da).flat_map(move |i| (0..db).map(move |j| (a, i, b, j)))
        })
        .collect();
    let comm_fail: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(a, i, b, j)| {
            let uv = alg.basis_product(a, i, b, j).to_vec();
            let vu = if a == b {
                alg.basis_product(b, j, a, i).to_vec()
            } else {
                alg.multiply_direct(b, &alg.basis_vector(b, j), a, &alg.basis_vector(a, i))
                    .ok()?
            };
            (uv != vu).then(|| format!("e[{a}][{i}] * e[{b}][{j}] != e[{b}][{j}] * e[{a}][{i}]"))
        })
        .collect();

    // associativity
    let (assoc, assoc_exhaustive) = triples(alg, |_, _, _| true, sample_seed, sample_count);
    let assoc_fail: Vec<String> = assoc
        .par_iter()
        .filter_map(|&[(a, i), (b, j), (c, k)]| {
            let (u, v, w) = (alg.basis_vector(a, i), alg.basis_vector(b, j), alg.basis_vector(c, k));
            let left = alg.multiply(a + b, &alg.multiply(a, &u, b, &v), c, &w);
            let right = alg.multiply(a, &u, b + c, &alg.multiply(b, &v, c, &w));
            let zero = |x: &[F]| x.iter().all(|t| t.is_zero());
            let equal = if a + b + c >= m {
                zero(&left) && zero(&right)
            } else {
                left == right
            };
            (!equal).then(|| format!("(e[{a}][{i}] e[{b}][{j}]) e[{c}][{k}] != e[{a}][{i}] (e[{b}][{j}] e[{c}][{k}])"))
        })
        .collect();

    // invariance: Gram route against a direct polynomial route
    let grams: Vec<Matrix<F>> = (0..m).map(|a| alg.gram_matrix(a)).collect::<Result<_, _>>()?;
    let (inv, inv_exhaustive) = triples(
        alg,
        |a, b, c| a + b + c == m - 1,
        sample_seed.wrapping_add(1),
        sample_count,
    );
    let inv_fail: Vec<String> = inv
        .par_iter()
        .filter_map(|&[(a, i), (b, j), (c, k)]| {
            let uv = alg.multiply(a, &alg.basis_vector(a, i), b, &alg.basis_vector(b, j));
            let vw = alg.multiply(b, &alg.basis_vector(b, j), c, &alg.basis_vector(c, k));
            let left = uv
                .iter()
                .enumerate()
                .fold(F::zero(), |acc, (s, x)| acc.add_ref(&x.mul_ref(&grams[a + b][(s, k)])));
            let right = vw
                .iter()
                .enumerate()
                .fold(F::zero(), |acc, (s, x)| acc.add_ref(&x.mul_ref(&grams[a][(i, s)])));
            let triple = &(&alg.pieces[a].lift(&alg.basis_vector(a, i)) * &alg.pieces[b].lift(&alg.basis_vector(b, j)))
                * &alg.pieces[c].lift(&alg.basis_vector(c, k));
            let direct = alg.trace_polynomial(&triple).ok()?.value;
            (left != right || left != direct).then(|| {
                format!("<e[{a}][{i}] e[{b}][{j}], e[{c}][{k}]> = {left}, <e[{a}][{i}], e[{b}][{j}] e[{c}][{k}]> = {right}, Tr = {direct}")
            })
        })
        .collect();

    // nondegeneracy
    let mut gram_ranks = Vec::with_capacity(m);
    let mut nondeg_fail = Vec::new();
    for (a, g) in grams.iter().enumerate() {
        let r = rank(g);
        gram_ranks.push(r);
        if g.nrows() != g.ncols() {
            nondeg_fail.push(format!("G_{a} is {}x{}", g.nrows(), g.ncols()));
        } else if r != g.nrows() {
            nondeg_fail.push(format!("G_{a} has rank {r} < {}", g.nrows()));
        }
    }

    Ok(AxiomReport {
        unit: AxiomResult::from_failures(unit_checked, true, unit_fail),
        commutativity: AxiomResult::from_failures(pairs.len(), true, comm_fail),
        associativity: AxiomResult::from_failures(assoc.len(), assoc_exhaustive, assoc_fail),
        invariance: AxiomResult::from_failures(inv.len(), inv_exhaustive, inv_fail),
        nondegeneracy: AxiomResult::from_failures(m, true, nondeg_fail),
        gram_ranks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::scalar::{rat_int, Rational};
    use crate::toric::{class_group, FanData};

    fn system(rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>, vars: &[&str], f: &str) -> JacobianSystem<Rational> {
        let fan = FanData::new(rays[0].len(), rays, cones).unwrap();
        let g = class_group(&fan).unwrap();
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        JacobianSystem::new(parse_polynomial(f, &names).unwrap(), g, fan).unwrap()
    }

    fn cubic() -> JacobianSystem<Rational> {
        system(
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            &["x", "y", "z"],
            "x^3 + y^3 + z^3",
        )
    }

    #[test]
    fn fermat_cubic_trace_and_axioms() {
        let alg = build_algebra(&cubic(), TraceStrategy::Generic, PieceOptions::default()).unwrap();
        assert_eq!(alg.hodge_row(), vec![1, 1]);
        assert_eq!(alg.piece(1).basis(), vec![Monomial::new(vec![1, 1, 1])]);
        let t = alg.trace(&[rat_int(1)]).unwrap();
        assert_eq!(t.value, rat_int(9));
        assert_eq!(t.unit_exponent, 1);
        assert_eq!(alg.trace(&[rat_int(0)]).unwrap().value, rat_int(0));
        let report = frobenius_axiom_check(&alg, 0, 200).unwrap();
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.gram_ranks, vec![1, 1]);
    }

    #[test]
    fn hessian_strategy_ratio() {
        let sys = cubic();
        let g = build_algebra(&sys, TraceStrategy::Generic, PieceOptions::default()).unwrap();
        let h = build_algebra(&sys, TraceStrategy::ProjectiveHessian, PieceOptions::default()).unwrap();
        assert_eq!(h.generator_coordinate(), &rat_int(216));
        let tg = g.trace(&[rat_int(1)]).unwrap().value;
        let th = h.trace(&[rat_int(1)]).unwrap().value;
        assert_eq!(tg / th, rat_int(216));
    }

    #[test]
    fn twisted_product_sign() {
        let alg = build_algebra(&cubic(), TraceStrategy::Generic, PieceOptions::default()).unwrap();
        let one = vec![rat_int(1)];
        assert_eq!(alg.mul_twisted(0, &one, 1, &one).unwrap(), vec![rat_int(-1)]);
        assert!(matches!(
            alg.mul_twisted(1, &one, 1, &one),
            Err(FrobeniusError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn degenerate_cubic_has_no_socle() {
        let sys = system(
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            &["x", "y", "z"],
            "x^3",
        );
        assert!(matches!(
            build_algebra(&sys, TraceStrategy::Generic, PieceOptions::default()),
            Err(FrobeniusError::SocleNotOneDimensional { .. })
        ));
    }

    #[test]
    fn hessian_rejected_off_projective_fans() {
        let sys = system(
            vec![vec![1, 0], vec![-1, -2], vec![0, 1]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            &["x", "y", "z"],
            "x^4 + y^4 + z^2",
        );
        assert!(matches!(
            build_algebra(&sys, TraceStrategy::ProjectiveHessian, PieceOptions::default()),
            Err(FrobeniusError::HessianNotAdmissible)
        ));
    }
}
