//! Parser for the polynomial text syntax.
//!
//! Terms are separated by `+`/`-`; a term is `[coeff*]gen[^exp][*gen[^exp]]...`
//! with integer or `p/q` coefficients. Whitespace is ignored.
//! Example: `a^2 + a*b - 3/2*b^2`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{FreeAlgebra, Polynomial};
use crate::error::{Error, Result};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Int(BigInt),
    Ident(String),
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Result<Token> {
        self.skip_ws();
        if self.pos >= self.src.len() {
            return Ok(Token::End);
        }
        let c = self.src[self.pos];
        match c {
            b'+' => {
                self.pos += 1;
                Ok(Token::Plus)
            }
            b'-' => {
                self.pos += 1;
                Ok(Token::Minus)
            }
            b'*' => {
                self.pos += 1;
                Ok(Token::Star)
            }
            b'^' => {
                self.pos += 1;
                Ok(Token::Caret)
            }
            b'/' => {
                self.pos += 1;
                Ok(Token::Slash)
            }
            b'0'..=b'9' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Token::Int(s.parse().unwrap()))
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric()
                        || self.src[self.pos] == b'_'
                        || self.src[self.pos] == b'\'')
                {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Token::Ident(s.to_string()))
            }
            other => Err(self.err(format!("unexpected character `{}`", other as char))),
        }
    }

    fn peek(&mut self) -> Result<Token> {
        let save = self.pos;
        let t = self.next()?;
        self.pos = save;
        Ok(t)
    }
}

/// Parse a polynomial in the documented text syntax over the given algebra.
pub fn parse_polynomial(src: &str, algebra: &Arc<FreeAlgebra>) -> Result<Polynomial> {
    let mut lx = Lexer::new(src);
    let mut acc = Polynomial::zero(algebra);
    let mut sign = BigRational::one();
    let mut expect_term = true;
    let mut parsed_any = false;
    loop {
        let tok = lx.peek()?;
        match tok {
            Token::End => {
                if expect_term || !parsed_any {
                    return Err(lx.err("expected a term"));
                }
                return Ok(acc);
            }
            Token::Plus => {
                if expect_term {
                    return Err(lx.err("unexpected `+`"));
                }
                lx.next()?;
                sign = BigRational::one();
                expect_term = true;
            }
            Token::Minus => {
                lx.next()?;
                if expect_term {
                    sign = -sign;
                } else {
                    sign = -BigRational::one();
                    expect_term = true;
                }
            }
            _ => {
                if !expect_term {
                    return Err(lx.err("expected `+` or `-` between terms"));
                }
                let term = parse_term(&mut lx, algebra)?;
                acc = acc.add(&term.scale(&sign))?;
                sign = BigRational::one();
                expect_term = false;
                parsed_any = true;
            }
        }
    }
}

fn parse_term(lx: &mut Lexer, algebra: &Arc<FreeAlgebra>) -> Result<Polynomial> {
    let mut prod = Polynomial::one(algebra);
    loop {
        let factor = parse_factor(lx, algebra)?;
        prod = prod.mul(&factor)?;
        match lx.peek()? {
            Token::Star => {
                lx.next()?;
            }
            _ => return Ok(prod),
        }
    }
}

fn parse_factor(lx: &mut Lexer, algebra: &Arc<FreeAlgebra>) -> Result<Polynomial> {
    match lx.next()? {
        Token::Int(n) => {
            // optional `/ d` fraction
            if lx.peek()? == Token::Slash {
                lx.next()?;
                match lx.next()? {
                    Token::Int(d) => {
                        if d.is_zero() {
                            return Err(lx.err("zero denominator"));
                        }
                        Ok(Polynomial::one(algebra).scale(&BigRational::new(n, d)))
                    }
                    _ => Err(lx.err("expected denominator after `/`")),
                }
            } else {
                Ok(Polynomial::one(algebra).scale(&BigRational::from(n)))
            }
        }
        Token::Ident(name) => {
            let idx = algebra
                .index_of(&name)
                .ok_or_else(|| lx.err(format!("unknown generator `{}`", name)))?;
            let mut exp = 1u32;
            if lx.peek()? == Token::Caret {
                lx.next()?;
                match lx.next()? {
                    Token::Int(n) => {
                        exp = n
                            .try_into()
                            .map_err(|_| lx.err("exponent out of range"))?;
                    }
                    _ => return Err(lx.err("expected integer exponent after `^`")),
                }
            }
            Polynomial::generator(idx, algebra).pow(exp)
        }
        other => Err(lx.err(format!("unexpected token {:?}", other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::algebra_from;

    #[test]
    fn parses_fractions_and_powers() {
        let alg = algebra_from(&[("a", 2), ("b", 2)]);
        let p = parse_polynomial(" a^2 + a*b - 3/2 * b^2 ", &alg).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.homogeneous_degree(), Some(4));
    }

    #[test]
    fn rejects_unknown_generator() {
        let alg = algebra_from(&[("a", 2)]);
        assert!(parse_polynomial("a + c", &alg).is_err());
    }

    #[test]
    fn leading_minus_and_cancellation() {
        let alg = algebra_from(&[("a", 2)]);
        let p = parse_polynomial("-a + a", &alg).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn odd_power_collapses() {
        let alg = algebra_from(&[("e", 3)]);
        let p = parse_polynomial("e^2", &alg).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn reports_position() {
        let alg = algebra_from(&[("a", 2)]);
        match parse_polynomial("a + ?", &alg) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {:?}", other),
        }
    }
}
