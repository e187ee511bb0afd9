//! Recursive-descent parser for polynomial expressions.

use num_bigint::BigInt;

use super::extrat::{q, Q};
use super::poly::BiPoly;
use crate::error::{Error, Result};

/// Parses a polynomial in `x` and `y`.
pub fn parse_poly(text: &str) -> Result<BiPoly> {
    Parser::new(text, &[("x", 0), ("y", 1)], 0).parse_all()
}

/// Parses a polynomial in the single variable `t`, stored in the x slot.
pub(crate) fn parse_poly_in(text: &str, vars: &[(&str, usize)], base: usize) -> Result<BiPoly> {
    Parser::new(text, vars, base).parse_all()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [(&'a str, usize)],
    base: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, vars: &'a [(&'a str, usize)], base: usize) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            vars,
            base,
        }
    }

    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.base + at,
            message: message.into(),
        })
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

    fn parse_all(mut self) -> Result<BiPoly> {
        let p = self.expr()?;
        if self.peek().is_some() {
            let at = self.pos;
            return self.err(at, format!("unexpected '{}'", self.src[at] as char));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BiPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BiPoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = {
            self.skip_ws();
            self.pos
        };
        if self.peek() == Some(b'-') {
            return Err(Error::NegativeExponent { offset: self.base + at });
        }
        let digits = self.digits();
        if digits.is_empty() {
            return self.err(at, "expected exponent");
        }
        match digits.parse::<u32>() {
            Ok(e) => Ok(base.pow(e)),
            Err(_) => self.err(at, "exponent too large"),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<BiPoly> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            None => self.err(at, "unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let p = self.expr()?;
                if self.peek() != Some(b')') {
                    let at = self.pos;
                    return self.err(at, "expected ')'");
                }
                self.pos += 1;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                // a literal fraction p/q; no space allowed before the slash
                if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    let dat = self.pos;
                    let d = self.digits();
                    if d.is_empty() {
                        return self.err(dat, "expected denominator");
                    }
                    let den: BigInt = d.parse().expect("digits");
                    if den == BigInt::from(0) {
                        return self.err(dat, "zero denominator");
                    }
                    return Ok(BiPoly::constant(Q::new(num, den)));
                }
                Ok(BiPoly::constant(Q::from_integer(num)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                match self.vars.iter().find(|(v, _)| *v == name) {
                    Some((_, 0)) => Ok(BiPoly::monomial(q(1), 1, 0)),
                    Some(_) => Ok(BiPoly::monomial(q(1), 0, 1)),
                    None => self.err(start, format!("unknown variable '{name}'")),
                }
            }
            Some(c) => self.err(at, format!("unexpected '{}'", c as char)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_from_examples() {
        let p = parse_poly("y^2 - x^3").unwrap();
        assert_eq!(p.coeff(0, 2), q(1));
        assert_eq!(p.coeff(3, 0), q(-1));
        assert_eq!(p.terms().len(), 2);
        let s = parse_poly("(x+y)^2").unwrap();
        assert_eq!(s.coeff(1, 1), q(2));
        assert_eq!(s.terms().len(), 3);
    }

    #[test]
    fn error_offsets() {
        assert_eq!(
            parse_poly("x + "),
            Err(Error::Syntax {
                offset: 4,
                message: "unexpected end of input".into()
            })
        );
        assert_eq!(parse_poly("x^-1"), Err(Error::NegativeExponent { offset: 2 }));
        assert!(matches!(parse_poly("x z"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_poly("(x"), Err(Error::Syntax { offset: 2, .. })));
    }

    #[test]
    fn rationals_and_precedence() {
        let p = parse_poly("3/2*x - -y^2*2").unwrap();
        assert_eq!(p.to_string(), "3/2*x + 2*y^2");
        assert_eq!(parse_poly("-x^2").unwrap().to_string(), "-x^2");
    }
}
