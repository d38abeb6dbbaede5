use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest exponent accepted for a single variable.
pub const MAX_EXPONENT: u32 = (1 << 31) - 1;

/// Exponent vector of a monomial `z_1^{u_1} ... z_r^{u_r}`.
///
/// Ordered graded-lexicographically: total degree first, then the
/// exponent of the first variable, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        assert!(exponents.iter().all(|&e| e <= MAX_EXPONENT), "exponent overflow");
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    /// `z_1 z_2 ... z_r`
    pub fn product_of_all(nvars: usize) -> Self {
        Monomial(vec![1; nvars])
    }

    pub fn from_i64(exponents: &[i64]) -> Option<Self> {
        exponents
            .iter()
            .map(|&e| u32::try_from(e).ok().filter(|&e| e <= MAX_EXPONENT))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "variable count mismatch");
        Monomial::new(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// The monomial with the exponent of `i` lowered by one, if positive.
    pub fn lower(&self, i: usize) -> Option<Monomial> {
        let mut e = self.0.clone();
        e[i] = e[i].checked_sub(1)?;
        Some(Monomial(e))
    }

    /// True when some variable of `vars` occurs.
    pub fn involves_any(&self, vars: &[usize]) -> bool {
        vars.iter().any(|&i| self.0[i] > 0)
    }

    pub fn to_text(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{:?}", self.0)
    }
}
