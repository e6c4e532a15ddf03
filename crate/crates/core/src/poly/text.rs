//! Canonical text form and a small expression parser.
//!
//! Output: terms joined by `" + "`, each `coeff*v^e*...`, unit coefficients
//! and zero exponents elided. Input additionally accepts `-`, parentheses and
//! arbitrary nesting, e.g. `a11*(x + 2*z)^6 - a11*x^6`.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{Poly, PolyError, Ring};
use crate::scalar::Scalar;

const MAX_EXPONENT: u64 = 1000;
const MAX_DEGREE: u64 = 100_000;
const MAX_TERM_PRODUCT: usize = 1 << 22;

impl Poly {
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let names = self.ring.names();
        let mut parts = Vec::with_capacity(self.len());
        for (m, c) in self.terms() {
            let factors: Vec<String> = m
                .exponents()
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
            if factors.is_empty() {
                parts.push(c.to_string());
                continue;
            }
            let body = factors.join("*");
            if c.is_one() {
                parts.push(body);
            } else if (-c).is_one() && matches!(c, Scalar::Rat(_)) {
                parts.push(format!("-{body}"));
            } else {
                parts.push(format!("{c}*{body}"));
            }
        }
        parts.join(" + ")
    }

    pub fn parse(ring: &Arc<Ring>, src: &str) -> Result<Poly, PolyError> {
        let mut p = Parser {
            ring,
            src: src.as_bytes(),
            pos: 0,
        };
        let out = p.expr(0)?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    src: &'a [u8],
    pos: usize,
}

fn total_degree(p: &Poly) -> u64 {
    p.terms().map(|(m, _)| m.degree()).max().unwrap_or(0)
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self, depth: usize) -> Result<Poly, PolyError> {
        if depth > 64 {
            return Err(self.error("nesting too deep"));
        }
        let mut acc = self.term(depth)?;
        while let Some(b) = self.peek() {
            match b {
                b'+' => {
                    self.pos += 1;
                    let t = self.term(depth)?;
                    acc = &acc + &t;
                }
                b'-' => {
                    self.pos += 1;
                    let t = self.term(depth)?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self, depth: usize) -> Result<Poly, PolyError> {
        let mut negate = false;
        while let Some(b) = self.peek() {
            match b {
                b'-' => negate = !negate,
                b'+' => {}
                _ => break,
            }
            self.pos += 1;
        }
        let mut acc = self.factor(depth)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor(depth)?;
            acc = checked_mul(&acc, &f, self.pos)?;
        }
        Ok(if negate { -acc } else { acc })
    }

    fn factor(&mut self, depth: usize) -> Result<Poly, PolyError> {
        let base = self.atom(depth)?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u64 = e
                .try_into()
                .map_err(|_| self.error("exponent must be a non-negative integer"))?;
            if e > MAX_EXPONENT || total_degree(&base).saturating_mul(e) > MAX_DEGREE {
                return Err(PolyError::TooLarge(format!("exponent {e}")));
            }
            return checked_pow(&base, e as u32, self.pos);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse().map_err(|_| self.error("bad integer"))
    }

    fn atom(&mut self, depth: usize) -> Result<Poly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr(depth + 1)?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b) if b.is_ascii_digit() => {
                let num = self.integer()?;
                let mut den = BigInt::from(1);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    den = self.integer()?;
                }
                let c = self.ring.field().from_ratio(&num, &den)?;
                Ok(Poly::constant(self.ring, c))
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                let i = self.ring.var_index(name)?;
                Ok(Poly::var(self.ring, i))
            }
            _ => Err(self.error("expected number, variable or '('")),
        }
    }
}

fn checked_mul(a: &Poly, b: &Poly, pos: usize) -> Result<Poly, PolyError> {
    if a.len().saturating_mul(b.len()) > MAX_TERM_PRODUCT
        || total_degree(a) + total_degree(b) > MAX_DEGREE
    {
        return Err(PolyError::TooLarge(format!("product at byte {pos}")));
    }
    Ok(a * b)
}

fn checked_pow(base: &Poly, e: u32, pos: usize) -> Result<Poly, PolyError> {
    let mut acc = Poly::one(base.ring());
    for _ in 0..e {
        acc = checked_mul(&acc, base, pos)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    #[test]
    fn text_round_trip_rational() {
        let r = Ring::new(Field::Rational, ["a0", "a1", "a2", "a3", "a4"]);
        let p = Poly::parse(&r, "-27/2*a1^2*a4 + 9/2*a1*a2*a3 - a2^3 + 36*a2*a4*a0 - 27/2*a3^2*a0").unwrap();
        let text = p.to_text();
        assert_eq!(Poly::parse(&r, &text).unwrap(), p);
        assert!(text.contains(" + -a2^3") || text.starts_with("-a2^3"));
    }

    #[test]
    fn errors_are_reported() {
        let r = Ring::new(Field::Prime(3), ["x", "z"]);
        assert!(matches!(Poly::parse(&r, "x +"), Err(PolyError::Parse { .. })));
        assert!(matches!(Poly::parse(&r, "y"), Err(PolyError::UnknownVariable(_))));
        assert!(matches!(Poly::parse(&r, "(x"), Err(PolyError::Parse { .. })));
        assert!(matches!(Poly::parse(&r, "x^99999"), Err(PolyError::TooLarge(_))));
        assert!(Poly::parse(&r, "1/3*x").is_err());
    }

    #[test]
    fn constants_and_signs() {
        let r = Ring::new(Field::Rational, ["x"]);
        assert_eq!(Poly::parse(&r, "0").unwrap().to_text(), "0");
        assert_eq!(Poly::parse(&r, "--x").unwrap().to_text(), "x");
        assert_eq!(Poly::parse(&r, "x - 1").unwrap().to_text(), "x + -1");
    }
}
