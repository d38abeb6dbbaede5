use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::Monomial;
use super::PolyError;
use crate::scalar::Field;

/// Anything that assigns a class-group degree to a monomial.
pub trait Grading {
    fn nvars(&self) -> usize;
    fn monomial_degree(&self, m: &Monomial) -> Vec<i64>;
}

/// Sparse multivariate polynomial over a field with optional homogeneity
/// metadata. No zero coefficient is ever stored.
#[derive(Clone, Debug)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
    degree: Option<Vec<i64>>,
}

impl<F: PartialEq> PartialEq for Polynomial<F> {
    /// Equality of the underlying polynomials; the degree stamp is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
            degree: None,
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let mut p = Self::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::variable(nvars, i), F::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// The stamped class-group degree, if [`Polynomial::check_homogeneous`]
    /// has succeeded on it.
    pub fn degree(&self) -> Option<&[i64]> {
        self.degree.as_deref()
    }

    pub fn with_degree(mut self, degree: Option<Vec<i64>>) -> Self {
        self.degree = degree;
        self
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        assert_eq!(m.nvars(), self.nvars, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(cur) => {
                *cur += &c;
                if cur.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.mul_ref(c))).collect(),
            degree: self.degree.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
            degree: None,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut c = c.clone();
            c *= &F::from_i64(e as i64);
            p.add_term(m.lower(i).unwrap(), c);
        }
        p
    }

    /// Substitutes 0 for every variable in `vars`.
    pub fn restrict_to_zero(&self, vars: &[usize]) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.involves_any(vars))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            degree: self.degree.clone(),
        }
    }

    /// Common degree of all monomials under `grading`; stamps the polynomial.
    /// The zero polynomial has no degree and is reported as homogeneous of
    /// an unknown degree.
    pub fn check_homogeneous<G: Grading>(&mut self, grading: &G) -> Result<Option<Vec<i64>>, PolyError> {
        if grading.nvars() != self.nvars {
            return Err(PolyError::VariableCount {
                expected: grading.nvars(),
                found: self.nvars,
            });
        }
        let mut first: Option<(&Monomial, Vec<i64>)> = None;
        for m in self.terms.keys() {
            let d = grading.monomial_degree(m);
            match &first {
                None => first = Some((m, d)),
                Some((m0, d0)) if *d0 != d => {
                    return Err(PolyError::NotHomogeneous {
                        first: (*m0).clone(),
                        first_degree: d0.clone(),
                        second: m.clone(),
                        second_degree: d,
                    })
                }
                _ => {}
            }
        }
        let degree = first.map(|(_, d)| d);
        self.degree = degree.clone();
        Ok(degree)
    }

    /// Printed form with terms in descending graded-lex order.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let s = c.to_string();
            let (negative, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&m.to_text(names));
            } else {
                out.push_str(&mag);
                out.push('*');
                out.push_str(&m.to_text(names));
            }
        }
        out
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        let mut out = self.clone();
        out.degree = None;
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        let mut out = self.clone();
        out.degree = None;
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca.mul_ref(cb));
            }
        }
        out
    }
}
