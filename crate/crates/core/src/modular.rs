//! Reduced row echelon form over the rationals by Chinese remaindering.
//!
//! Rows are scaled to integers, reduced modulo successive primes from
//! [`PRIMES`], combined by CRT and lifted by rational reconstruction. A
//! candidate is accepted only after an exact check that every input row is
//! the combination of candidate rows given by its pivot entries. That puts
//! the input row space inside the candidate's span, so the exact rank is at
//! most the candidate rank; the modular rank bounds it from below, hence the
//! spans agree and the candidate is the reduced echelon form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{common_denominator, Field, Rational, Zp, PRIMES};
use crate::sparse::{sparse_rref_rows, SparseRow, SparseRref};

type IntRow = Vec<(usize, BigInt)>;

/// Modular image: pivots and the entries of each row outside its pivot.
struct Image {
    modulus: u64,
    pivots: Vec<usize>,
    rows: Vec<Vec<(usize, u64)>>,
}

fn image<const P: u64>(rows: &[IntRow], ncols: usize) -> Image {
    let p = BigInt::from(P);
    let reduced: Vec<SparseRow<Zp<P>>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .filter_map(|(c, v)| {
                    let r = Zp::<P>::new(v.mod_floor(&p).to_u64().expect("residue fits"));
                    (!r.is_zero()).then_some((*c, r))
                })
                .collect()
        })
        .collect();
    let rref = sparse_rref_rows(reduced, ncols);
    Image {
        modulus: P,
        pivots: rref.pivots,
        rows: rref
            .rows
            .into_iter()
            .map(|r| r[1..].iter().map(|(c, v)| (*c, v.value())).collect())
            .collect(),
    }
}

macro_rules! image_fns {
    ($($i:literal)*) => {
        [$(image::<{ PRIMES[$i] }> as fn(&[IntRow], usize) -> Image),*]
    };
}

const IMAGES: [fn(&[IntRow], usize) -> Image; 24] =
    image_fns!(0 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19 20 21 22 23);

/// `n/d` with `|n|, d <= sqrt(m/2)` and `n = r d (mod m)`, if one exists.
fn reconstruct(r: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// True when `cand` ranks above `best`: larger rank, or equal rank with
/// lexicographically smaller pivots. Unlucky primes only lose rank or push
/// pivots to the right.
fn better(cand: &[usize], best: &[usize]) -> bool {
    cand.len() > best.len() || (cand.len() == best.len() && cand < best)
}

struct Accumulator {
    pivots: Vec<usize>,
    modulus: BigInt,
    /// Per row: column -> residue modulo `modulus`.
    residues: Vec<BTreeMap<usize, BigInt>>,
}

impl Accumulator {
    fn start(img: Image) -> Self {
        Accumulator {
            pivots: img.pivots,
            modulus: BigInt::from(img.modulus),
            residues: img
                .rows
                .into_iter()
                .map(|r| r.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect())
                .collect(),
        }
    }

    fn absorb(&mut self, img: Image) {
        let p = BigInt::from(img.modulus);
        // m^{-1} mod p
        let inv = self.modulus.extended_gcd(&p).x.mod_floor(&p);
        for (acc, row) in self.residues.iter_mut().zip(img.rows) {
            let new: BTreeMap<usize, u64> = row.into_iter().collect();
            let cols: Vec<usize> = acc.keys().copied().chain(new.keys().copied()).collect();
            for c in cols {
                let r = acc.get(&c).cloned().unwrap_or_default();
                let a = BigInt::from(new.get(&c).copied().unwrap_or(0));
                let k = ((a - &r) * &inv).mod_floor(&p);
                let v = r + &self.modulus * k;
                if v.is_zero() {
                    acc.remove(&c);
                } else {
                    acc.insert(c, v);
                }
            }
        }
        self.modulus *= p;
    }

    fn lift(&self) -> Option<Vec<SparseRow<Rational>>> {
        self.pivots
            .iter()
            .zip(&self.residues)
            .map(|(&p, acc)| {
                let mut row = vec![(p, Rational::one())];
                for (c, r) in acc {
                    row.push((*c, reconstruct(r, &self.modulus)?));
                }
                Some(row)
            })
            .collect()
    }
}

/// Exact check that each input row equals `sum_k row[pivot_k] * cand_k`.
fn certify(rows: &[IntRow], pivots: &[usize], cand: &[SparseRow<Rational>]) -> bool {
    let mut slot = BTreeMap::new();
    for (k, &p) in pivots.iter().enumerate() {
        slot.insert(p, k);
    }
    rows.iter().all(|row| {
        let mut combo: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in row {
            if let Some(&k) = slot.get(c) {
                let v = Rational::from_integer(v.clone());
                for (cc, w) in &cand[k] {
                    *combo.entry(*cc).or_insert_with(Rational::zero) += &v * w;
                }
            }
        }
        combo.retain(|_, v| !v.is_zero());
        combo.len() == row.len()
            && row
                .iter()
                .all(|(c, v)| combo.get(c) == Some(&Rational::from_integer(v.clone())))
    })
}

/// Reduced row echelon form of rational rows by modular images, or `None`
/// when the available primes do not certify a result.
pub fn multimodular_rref<F: Field>(rows: &[SparseRow<F>], ncols: usize) -> Option<SparseRref<F>> {
    let int_rows: Vec<IntRow> = rows
        .iter()
        .map(|row| {
            let q: Vec<Rational> = row.iter().map(|(_, v)| v.to_rational()).collect::<Option<_>>()?;
            let den = Rational::from_integer(common_denominator(q.iter()));
            Some(
                row.iter()
                    .zip(q)
                    .map(|((c, _), v)| (*c, (v * &den).to_integer()))
                    .collect(),
            )
        })
        .collect::<Option<_>>()?;
    let mut acc: Option<Accumulator> = None;
    let mut last: Option<Vec<SparseRow<Rational>>> = None;
    for f in IMAGES {
        let img = f(&int_rows, ncols);
        match acc.as_mut() {
            Some(a) if img.pivots == a.pivots => a.absorb(img),
            Some(a) if !better(&img.pivots, &a.pivots) => continue,
            _ => {
                acc = Some(Accumulator::start(img));
                last = None;
                continue;
            }
        }
        let a = acc.as_ref().unwrap();
        let Some(cand) = a.lift() else {
            continue;
        };
        // certify once two consecutive lifts agree
        if last.as_ref() == Some(&cand) && certify(&int_rows, &a.pivots, &cand) {
            let rows = cand
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|(c, v)| F::from_rational(&v).map(|x| (c, x)))
                        .collect::<Option<_>>()
                })
                .collect::<Option<_>>()?;
            return Some(SparseRref {
                ncols,
                pivots: a.pivots.clone(),
                rows,
            });
        }
        last = Some(cand);
    }
    None
}
