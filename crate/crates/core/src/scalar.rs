//! Coefficient fields.
//!
//! Every algebraic routine in the crate is generic over [`Field`]. Two
//! implementations ship: exact rationals ([`Rational`]) and the prime field
//! [`Fp`] used by the modular rank prefilter.

use std::fmt;
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// A commutative field with exact arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Send
    + Sync
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    /// Image in the prefilter field, `None` when the prime divides a
    /// denominator.
    fn to_fp(&self) -> Option<Fp>;

    /// The element as a rational, when the field is the rationals.
    fn to_rational(&self) -> Option<Rational>;

    /// Image of a rational; `None` when its denominator is not invertible.
    fn from_rational(value: &Rational) -> Option<Self>;

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out *= other;
        out
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out += other;
        out
    }

    fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out -= other;
        out
    }

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= &a.mul_ref(b);
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_fp(&self) -> Option<Fp> {
        rational_to_fp(self)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn from_rational(value: &Rational) -> Option<Self> {
        Some(value.clone())
    }
}

/// Builds the rational `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"p"` or `"p/q"` into a reduced rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => BigInt::from_str(text).ok().map(Rational::from_integer),
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Reduces a rational into `Fp`; `None` when the prime divides the denominator.
pub fn rational_to_fp(value: &Rational) -> Option<Fp> {
    rational_to_zp(value)
}

pub fn rational_to_zp<const P: u64>(value: &Rational) -> Option<Zp<P>> {
    let p = BigInt::from(P);
    let num = value.numer().mod_floor(&p).to_u64()?;
    let den = value.denom().mod_floor(&p).to_u64()?;
    Zp::<P>::new(den).inv().map(|d| Zp::new(num) * d)
}

/// The prefilter field, of order `2^62 - 57`.
pub type Fp = Zp<{ PRIMES[0] }>;

/// The 24 largest primes below `2^62`, in decreasing order.
pub const PRIMES: [u64; 24] = [
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387751,
    4611686018427387737,
    4611686018427387733,
    4611686018427387709,
    4611686018427387701,
    4611686018427387631,
    4611686018427387617,
    4611686018427387587,
    4611686018427387461,
    4611686018427387421,
    4611686018427387409,
    4611686018427387329,
    4611686018427387323,
    4611686018427387301,
    4611686018427387271,
    4611686018427387241,
    4611686018427387139,
    4611686018427387131,
    4611686018427387127,
    4611686018427387113,
];

/// Element of the prime field of order `P`, for a prime `P < 2^63`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Zp<const P: u64>(u64);

impl<const P: u64> Zp<P> {
    pub const MODULUS: u64 = P;

    pub fn new(v: u64) -> Self {
        Zp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Zp(1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Zp({})", self.0)
    }
}

impl<const P: u64> fmt::Display for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> std::ops::Add for Zp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Zp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> std::ops::Sub for Zp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        if self.0 >= rhs.0 {
            Zp(self.0 - rhs.0)
        } else {
            Zp(self.0 + P - rhs.0)
        }
    }
}

impl<const P: u64> std::ops::Mul for Zp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Zp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Zp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Zp(0) - self
    }
}

impl<const P: u64> AddAssign<&Zp<P>> for Zp<P> {
    fn add_assign(&mut self, rhs: &Self) {
        *self = *self + *rhs;
    }
}

impl<const P: u64> SubAssign<&Zp<P>> for Zp<P> {
    fn sub_assign(&mut self, rhs: &Self) {
        *self = *self - *rhs;
    }
}

impl<const P: u64> MulAssign<&Zp<P>> for Zp<P> {
    fn mul_assign(&mut self, rhs: &Self) {
        *self = *self * *rhs;
    }
}

impl<const P: u64> Zero for Zp<P> {
    fn zero() -> Self {
        Zp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Zp<P> {
    fn one() -> Self {
        Zp(1)
    }
}

impl<const P: u64> Field for Zp<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn from_i64(v: i64) -> Self {
        if v >= 0 {
            Zp::new(v as u64)
        } else {
            -Zp::new(v.unsigned_abs())
        }
    }

    fn to_fp(&self) -> Option<Fp> {
        (P == Fp::MODULUS).then_some(Zp(self.0))
    }

    fn to_rational(&self) -> Option<Rational> {
        None
    }

    fn from_rational(value: &Rational) -> Option<Self> {
        rational_to_zp(value)
    }
}

/// Sign `(-1)^k`.
pub fn sign_power(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
