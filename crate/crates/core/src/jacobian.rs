//! Graded pieces of the Jacobian quotients `R(f) = S/J(f)` and
//! `R_0(f) = S/J_0(f)`.
//!
//! Each piece is a finite linear-algebra problem: the relation space in
//! degree `α` is spanned by `g * x^v` over generators `g` and cofactor
//! monomials `x^v` of complementary degree. The pivot columns of its reduced
//! echelon form (columns in descending graded-lex order) are the reducible
//! monomials; the remaining monomials form the quotient basis.

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::solve_integer;
use crate::matrix::{nullspace, Matrix};
use crate::modular::multimodular_rref;
use crate::poly::{Grading, Monomial, PolyError, Polynomial};
use crate::scalar::{Field, Fp};
use crate::sparse::{rank_rows, rref_rows, SparseRow};
use crate::toric::{monomial_basis, FanData, GradingMap, ToricError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JacobianError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error("polynomial has degree {found:?}, expected the anti-canonical class {expected:?}")]
    NotAnticanonical {
        expected: Vec<i64>,
        found: Option<Vec<i64>>,
    },
    #[error("degree mismatch: expected {expected:?}, found {found:?}")]
    DegreeMismatch { expected: Vec<i64>, found: Vec<i64> },
    #[error("no integer functional with nonzero value on the anti-canonical class")]
    NoFunctional,
}

/// Which ideal a quotient is taken by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ideal {
    /// `J(f) = <f_1, ..., f_r>`
    #[serde(rename = "J")]
    Jacobian,
    /// `J_0(f) = <z_1 f_1, ..., z_r f_r>`
    #[serde(rename = "J0")]
    Euler,
}

/// `f` of degree `β` with its partials and the generators `z_i f_i`.
#[derive(Clone, Debug)]
pub struct JacobianSystem<F> {
    f: Polynomial<F>,
    partials: Vec<Polynomial<F>>,
    euler: Vec<Polynomial<F>>,
    grading: GradingMap,
    fan: FanData,
}

impl<F: Field> JacobianSystem<F> {
    /// Fails unless `f` is homogeneous of degree `β`.
    pub fn new(mut f: Polynomial<F>, grading: GradingMap, fan: FanData) -> Result<Self, JacobianError> {
        let degree = f.check_homogeneous(&grading)?;
        if degree.as_deref() != Some(grading.beta()) {
            return Err(JacobianError::NotAnticanonical {
                expected: grading.beta().to_vec(),
                found: degree,
            });
        }
        let n = f.nvars();
        let partials: Vec<_> = (0..n).map(|i| f.partial_derivative(i)).collect();
        let euler = partials
            .iter()
            .enumerate()
            .map(|(i, p)| p.mul_monomial(&Monomial::variable(n, i)))
            .collect();
        Ok(JacobianSystem {
            f,
            partials,
            euler,
            grading,
            fan,
        })
    }

    pub fn f(&self) -> &Polynomial<F> {
        &self.f
    }

    pub fn partials(&self) -> &[Polynomial<F>] {
        &self.partials
    }

    pub fn euler_generators(&self) -> &[Polynomial<F>] {
        &self.euler
    }

    pub fn grading(&self) -> &GradingMap {
        &self.grading
    }

    pub fn fan(&self) -> &FanData {
        &self.fan
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    /// Ambient dimension `m`.
    pub fn dim(&self) -> usize {
        self.fan.dim
    }

    pub fn beta_multiple(&self, a: i64) -> Vec<i64> {
        self.grading.beta_multiple(a)
    }

    /// Nonzero generators of the ideal with their degrees.
    fn generators(&self, ideal: Ideal) -> Vec<(&Polynomial<F>, Vec<i64>)> {
        let beta = self.grading.beta();
        match ideal {
            Ideal::Jacobian => self
                .partials
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(i, p)| {
                    let d = beta
                        .iter()
                        .zip(self.grading.variable_degree(i))
                        .map(|(b, e)| b - e)
                        .collect();
                    (p, d)
                })
                .collect(),
            Ideal::Euler => self
                .euler
                .iter()
                .filter(|p| !p.is_zero())
                .map(|p| (p, beta.to_vec()))
                .collect(),
        }
    }
}

/// Options for building a graded piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PieceOptions {
    /// Try a rank computation modulo [`Fp::MODULUS`] first; a full-column
    /// modular rank certifies a zero quotient without exact elimination.
    pub modular_prefilter: bool,
    /// Eliminate by certified Chinese remaindering when the field is the
    /// rationals, falling back to direct elimination.
    pub multimodular: bool,
}

impl Default for PieceOptions {
    fn default() -> Self {
        PieceOptions {
            modular_prefilter: true,
            multimodular: true,
        }
    }
}

/// How the rank of a piece was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMethod {
    Exact,
    /// Modular rank equal to the column count; since a modular rank never
    /// exceeds the rational rank, every column is a pivot.
    ModularFullRank,
}

/// One graded piece `S_α / I_α` with its normal-form map.
#[derive(Clone, Debug)]
pub struct GradedPiece<F> {
    degree: Vec<i64>,
    ideal: Ideal,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    relation_count: usize,
    rank: usize,
    pivots: Vec<usize>,
    basis: Vec<usize>,
    /// Per column: coordinates of that monomial over the quotient basis.
    reductions: Vec<SparseRow<F>>,
    method: RankMethod,
}

impl<F: Field> GradedPiece<F> {
    pub fn degree(&self) -> &[i64] {
        &self.degree
    }

    pub fn ideal(&self) -> Ideal {
        self.ideal
    }

    /// All monomials of the degree, descending graded-lex.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn relation_count(&self) -> usize {
        self.relation_count
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn method(&self) -> RankMethod {
        self.method
    }

    pub fn pivot_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.pivots.iter().map(|&c| &self.monomials[c])
    }

    /// Quotient basis monomials, descending graded-lex.
    pub fn basis(&self) -> Vec<Monomial> {
        self.basis.iter().map(|&c| self.monomials[c].clone()).collect()
    }

    pub fn basis_monomial(&self, k: usize) -> &Monomial {
        &self.monomials[self.basis[k]]
    }

    /// Coordinates of a monomial's class, or `None` if the monomial has a
    /// different degree.
    pub fn monomial_coordinates(&self, m: &Monomial) -> Option<&SparseRow<F>> {
        self.index.get(m).map(|&c| &self.reductions[c])
    }

    /// Coordinates of `[p]` over the quotient basis.
    pub fn normal_form<G: Grading>(&self, p: &Polynomial<F>, grading: &G) -> Result<Vec<F>, JacobianError> {
        let mut out = vec![F::zero(); self.dim()];
        for (m, c) in p.terms() {
            let Some(row) = self.monomial_coordinates(m) else {
                return Err(JacobianError::DegreeMismatch {
                    expected: self.degree.clone(),
                    found: grading.monomial_degree(m),
                });
            };
            for (k, v) in row {
                out[*k] += &c.mul_ref(v);
            }
        }
        Ok(out)
    }

    /// The polynomial `sum_k coords[k] * basis_k`.
    pub fn lift(&self, coords: &[F]) -> Polynomial<F> {
        assert_eq!(coords.len(), self.dim(), "coordinate length mismatch");
        let n = self.monomials.first().map_or(0, Monomial::nvars);
        Polynomial::from_terms(
            n,
            coords
                .iter()
                .enumerate()
                .map(|(k, c)| (self.basis_monomial(k).clone(), c.clone())),
        )
    }
}

fn to_row<F: Field>(p: &Polynomial<F>, index: &HashMap<Monomial, usize>) -> SparseRow<F> {
    let mut row: SparseRow<F> = p
        .terms()
        .map(|(m, c)| (*index.get(m).expect("relation term of the piece's degree"), c.clone()))
        .collect();
    row.sort_unstable_by_key(|(c, _)| *c);
    row
}

fn modular_rows<F: Field>(rows: &[SparseRow<F>]) -> Option<Vec<SparseRow<Fp>>> {
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|(c, v)| v.to_fp().map(|x| (*c, x)))
                .collect::<Option<Vec<_>>>()
                .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
        })
        .collect()
}

/// Builds `S_α / I_α` for the chosen ideal.
pub fn graded_piece<F: Field>(
    system: &JacobianSystem<F>,
    ideal: Ideal,
    alpha: &[i64],
    options: PieceOptions,
) -> Result<GradedPiece<F>, JacobianError> {
    let monomials = monomial_basis(&system.grading, &system.fan, alpha)?;
    let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let ncols = monomials.len();

    let mut rows = Vec::new();
    for (g, gdeg) in system.generators(ideal) {
        let cofactor_degree: Vec<i64> = alpha.iter().zip(&gdeg).map(|(a, d)| a - d).collect();
        for v in monomial_basis(&system.grading, &system.fan, &cofactor_degree)? {
            rows.push(to_row(&g.mul_monomial(&v), &index));
        }
    }
    let relation_count = rows.len();

    if options.modular_prefilter && ncols > 0 {
        if let Some(mrows) = modular_rows(&rows) {
            if rank_rows(mrows, ncols) == ncols {
                return Ok(GradedPiece {
                    degree: alpha.to_vec(),
                    ideal,
                    monomials,
                    index,
                    relation_count,
                    rank: ncols,
                    pivots: (0..ncols).collect(),
                    basis: Vec::new(),
                    reductions: vec![Vec::new(); ncols],
                    method: RankMethod::ModularFullRank,
                });
            }
        }
    }

    let multimodular = if options.multimodular {
        multimodular_rref(&rows, ncols)
    } else {
        None
    };
    let rref = multimodular.unwrap_or_else(|| rref_rows(rows, ncols));
    let mut is_pivot = vec![false; ncols];
    for &p in &rref.pivots {
        is_pivot[p] = true;
    }
    let basis: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
    let mut position = vec![usize::MAX; ncols];
    for (k, &c) in basis.iter().enumerate() {
        position[c] = k;
    }
    let mut reductions: Vec<SparseRow<F>> = vec![Vec::new(); ncols];
    for &c in &basis {
        reductions[c] = vec![(position[c], F::one())];
    }
    for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
        reductions[p] = row[1..].iter().map(|(c, v)| (position[*c], -v.clone())).collect();
    }
    Ok(GradedPiece {
        degree: alpha.to_vec(),
        ideal,
        monomials,
        index,
        relation_count,
        rank: rref.pivots.len(),
        pivots: rref.pivots,
        basis,
        reductions,
        method: RankMethod::Exact,
    })
}

/// `dim R(f)_{aβ}`.
pub fn dim_r<F: Field>(system: &JacobianSystem<F>, a: i64, options: PieceOptions) -> Result<usize, JacobianError> {
    Ok(graded_piece(system, Ideal::Jacobian, &system.beta_multiple(a), options)?.dim())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MacaulayCheck {
    pub pass: bool,
    /// `(p, dim R(f)_{pβ})` for each checked `p`.
    pub dims: Vec<(i64, usize)>,
}

/// Checks `R(f)_{pβ} = 0` for `p = m, ..., m + extra`.
pub fn macaulay_vanishing_check<F: Field>(
    system: &JacobianSystem<F>,
    m: i64,
    extra: i64,
    options: PieceOptions,
) -> Result<MacaulayCheck, JacobianError> {
    let dims = (m..=m + extra)
        .map(|p| dim_r(system, p, options).map(|d| (p, d)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MacaulayCheck {
        pass: dims.iter().all(|(_, d)| *d == 0),
        dims,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleCertificate {
    /// `dim R(f)_{(m-1)β}`
    pub top_dim: usize,
    /// `dim R_0(f)_{mβ}`
    pub euler_socle_dim: usize,
    pub top_generators: Vec<Monomial>,
    pub euler_socle_generators: Vec<Monomial>,
    /// Both dimensions equal 1.
    pub consistent: bool,
}

pub fn socle_certificates<F: Field>(
    system: &JacobianSystem<F>,
    m: i64,
    options: PieceOptions,
) -> Result<SocleCertificate, JacobianError> {
    let top = graded_piece(system, Ideal::Jacobian, &system.beta_multiple(m - 1), options)?;
    let euler = graded_piece(system, Ideal::Euler, &system.beta_multiple(m), options)?;
    Ok(SocleCertificate {
        top_dim: top.dim(),
        euler_socle_dim: euler.dim(),
        top_generators: top.basis(),
        euler_socle_generators: euler.basis(),
        consistent: top.dim() == 1 && euler.dim() == 1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCheck {
    /// Integer functional on the class group.
    pub lambda: Vec<i64>,
    pub lambda_beta: i64,
    pub pass: bool,
}

/// Finds an integer functional `λ` with `λ(β) != 0` and
/// `sum_i λ(deg z_i) z_i f_i = λ(β) f`, then verifies the identity by exact
/// expansion.
pub fn euler_membership_check<F: Field>(system: &JacobianSystem<F>) -> Result<EulerCheck, JacobianError> {
    let g = &system.grading;
    let k = g.rank();
    let n = system.nvars();
    let beta = g.beta();
    // unknowns λ_1..λ_k; one equation per monomial of the expansion
    let mut columns: Vec<Polynomial<F>> = Vec::with_capacity(k);
    for (j, &b) in beta.iter().enumerate() {
        let mut p = system.f.scale(&-F::from_i64(b));
        for i in 0..n {
            let w = g.variable_degree(i)[j];
            if w != 0 {
                p = &p + &system.euler[i].scale(&F::from_i64(w));
            }
        }
        columns.push(p);
    }
    let mut monos: Vec<&Monomial> = columns.iter().flat_map(|p| p.terms().map(|(m, _)| m)).collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<F>> = monos
        .iter()
        .map(|m| columns.iter().map(|p| p.coefficient(m)).collect())
        .collect();
    let candidates = if rows.is_empty() {
        (0..k)
            .map(|j| (0..k).map(|i| if i == j { F::one() } else { F::zero() }).collect())
            .collect()
    } else {
        nullspace(&Matrix::from_rows_with_cols(rows, k))
    };
    // prefer a coordinate functional when one works
    let mut found: Option<Vec<i64>> = None;
    for cand in candidates {
        let Some(ints) = clear_denominators(&cand) else {
            continue;
        };
        let lb: i64 = ints.iter().zip(beta).map(|(a, b)| a * b).sum();
        if lb != 0 {
            found = Some(ints);
            break;
        }
    }
    let lambda = found.ok_or(JacobianError::NoFunctional)?;
    let lambda_beta: i64 = lambda.iter().zip(beta).map(|(a, b)| a * b).sum();
    let mut lhs = Polynomial::zero(n);
    for i in 0..n {
        let w: i64 = lambda.iter().zip(g.variable_degree(i)).map(|(a, b)| a * b).sum();
        if w != 0 {
            lhs = &lhs + &system.euler[i].scale(&F::from_i64(w));
        }
    }
    let rhs = system.f.scale(&F::from_i64(lambda_beta));
    Ok(EulerCheck {
        pass: lhs == rhs,
        lambda,
        lambda_beta,
    })
}

/// Integer multiple of a field vector, for fields whose elements print as
/// `p` or `p/q`.
fn clear_denominators<F: Field>(v: &[F]) -> Option<Vec<i64>> {
    let parsed: Vec<crate::scalar::Rational> = v
        .iter()
        .map(|x| crate::scalar::parse_rational(&x.to_string()))
        .collect::<Option<_>>()?;
    let den = crate::scalar::common_denominator(parsed.iter());
    parsed
        .iter()
        .map(|x| {
            let scaled = x * crate::scalar::Rational::from_integer(den.clone());
            num_traits::ToPrimitive::to_i64(&scaled.to_integer())
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CritCheck {
    pub zero_variables: Vec<usize>,
    pub pass: bool,
    /// A partial derivative that survives the restriction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surviving_partial: Option<usize>,
}

/// For each variable subset `V`, checks that every partial vanishes once the
/// variables of `V` are set to zero, i.e. the complementary coordinate
/// subspace lies in the critical locus.
pub fn crit_containment_check<F: Field>(system: &JacobianSystem<F>, zero_sets: &[Vec<usize>]) -> Vec<CritCheck> {
    zero_sets
        .iter()
        .map(|vars| {
            let surviving = system.partials.iter().position(|p| !p.restrict_to_zero(vars).is_zero());
            CritCheck {
                zero_variables: vars.clone(),
                pass: surviving.is_none(),
                surviving_partial: surviving,
            }
        })
        .collect()
}

/// A particular exponent vector of a degree, used by callers that need one
/// monomial of a given class.
pub fn some_exponent(grading: &GradingMap, alpha: &[i64]) -> Option<Vec<i64>> {
    solve_integer(&grading.degree_matrix().transpose(), alpha)
}
