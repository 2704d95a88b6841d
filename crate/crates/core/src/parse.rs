//! Text form of polynomials: `3*X1^2*X2 - X3 + 1/2`.
//!
//! The grammar is the one the printer emits — signed sums of terms, each an
//! optional coefficient and `*`-separated variable powers — so display and
//! parse round-trip exactly.

use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("parse error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable {name} at byte {pos}")]
    UnknownVariable { pos: usize, name: String },
}

/// Parses `input` as a polynomial in `ring`.
pub fn parse_poly<F: Field>(
    ring: &PolyRing<F>,
    input: &str,
) -> Result<Polynomial<F>, ParseError> {
    Parser {
        ring,
        bytes: input.as_bytes(),
        pos: 0,
    }
    .parse()
}

struct Parser<'a, F: Field> {
    ring: &'a PolyRing<F>,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a, F: Field> Parser<'a, F> {
    fn parse(mut self) -> Result<Polynomial<F>, ParseError> {
        let field = self.ring.field().clone();
        let mut terms: Vec<(Monomial, F::Elem)> = Vec::new();
        self.skip_ws();
        if self.bytes.is_empty() || self.peek().is_none() {
            return self.fail("empty input");
        }
        let mut sign_neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (m, c) = self.term()?;
            let c = if sign_neg { field.neg(&c) } else { c };
            terms.push((m, c));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    sign_neg = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign_neg = true;
                }
                Some(_) => return self.fail("expected '+' or '-' between terms"),
            }
        }
        Ok(Polynomial::from_terms(&field, terms))
    }

    /// One term: `*`-separated factors, each an integer (or fraction) or a
    /// variable power.
    fn term(&mut self) -> Result<(Monomial, F::Elem), ParseError> {
        let field = self.ring.field().clone();
        let mut coeff = field.one();
        let mut mono = Monomial::one(self.ring.nvars());
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.integer()?;
                    self.skip_ws();
                    let val = if self.peek() == Some(b'/') {
                        self.pos += 1;
                        self.skip_ws();
                        let den = self.integer()?;
                        if den == 0 {
                            return self.fail("zero denominator");
                        }
                        field.from_fraction(num, den)
                    } else {
                        field.from_i64(num)
                    };
                    coeff = field.mul(&coeff, &val);
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    let name = self.ident();
                    let idx = self.ring.var_index(&name).ok_or(ParseError::UnknownVariable {
                        pos: start,
                        name,
                    })?;
                    self.skip_ws();
                    let exp: u16 = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        let e = self.integer()?;
                        u16::try_from(e)
                            .map_err(|_| self.err("exponent out of range"))?
                    } else {
                        1
                    };
                    let mut step = Monomial::one(self.ring.nvars());
                    step.0[idx] = exp;
                    mono = mono.mul(&step);
                }
                _ => return self.fail("expected a coefficient or variable"),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((mono, coeff));
            }
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.fail("expected an integer");
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| self.err("integer literal too large"))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn fail<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(self.err(msg))
    }
}
