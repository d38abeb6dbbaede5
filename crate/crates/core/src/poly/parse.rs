//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr   := ('+' | '-')? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := rational | variable | '(' expr ')'
//! rational := nat ('/' nat)?
//! ```
//!
//! Whitespace is ignored between tokens. Error offsets are byte offsets into
//! the input.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::MAX_EXPONENT;
use super::polynomial::Polynomial;
use super::PolyError;
use crate::scalar::Rational;

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn syntax(&self, message: impl Into<String>) -> PolyError {
        PolyError::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected a natural number"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn expr(&mut self) -> Result<Polynomial<Rational>, PolyError> {
        let n = self.vars.len();
        let mut acc = Polynomial::zero(n);
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<Rational>, PolyError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<Rational>, PolyError> {
        let base = self.base()?;
        if self.eat(b'^') {
            let at = self.pos;
            let e = self.nat()?;
            let e: u32 = e
                .try_into()
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or(PolyError::ExponentOverflow { offset: at })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial<Rational>, PolyError> {
        let n = self.vars.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.nat()?;
                let den = if self.eat(b'/') {
                    let d = self.nat()?;
                    if d.is_zero() {
                        return Err(self.syntax("zero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(Polynomial::constant(n, Rational::new(num, den)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(Polynomial::variable(n, i)),
                    None => Err(PolyError::UnknownVariable {
                        name: name.to_string(),
                        offset: start,
                    }),
                }
            }
            Some(_) => Err(self.syntax("expected a number, variable or '('")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

/// Parses `text` over the ordered variable names. The result carries no
/// degree stamp.
pub fn parse_polynomial(text: &str, variables: &[String]) -> Result<Polynomial<Rational>, PolyError> {
    let mut p = Parser {
        src: text,
        bytes: text.as_bytes(),
        pos: 0,
        vars: variables,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(out)
}
