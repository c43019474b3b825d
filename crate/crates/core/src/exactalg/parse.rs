//! Recursive-descent reader for polynomial and rational-function text:
//! integers, variable names, `+ - * / ^` and parentheses. Exponents must be
//! integer literals (a leading minus is allowed for rational functions).

use num_bigint::BigInt;

use super::{MPoly, RatFun, Rational};
use crate::error::{Error, Result};

/// Parses `text` as a polynomial in `vars`. Division is allowed only by
/// nonzero constants.
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<MPoly> {
    let r = parse_ratfun(text, vars)?;
    match r.den().constant_value() {
        Some(c) => Ok(r.num().scale(&c.recip())),
        None => r.as_poly().ok_or(Error::Parse {
            pos: 0,
            msg: "expression is not a polynomial".into(),
        }),
    }
}

/// Parses `text` as a rational function in `vars`.
pub fn parse_ratfun(text: &str, vars: &[&str]) -> Result<RatFun> {
    let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars };
    let r = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(r)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: Vec<String>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<RatFun> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                acc.mul(&rhs)
            } else {
                let at = self.pos;
                acc.div(&rhs).map_err(|_| Error::Parse { pos: at, msg: "division by zero".into() })?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFun> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.err("expected integer exponent"));
            }
            let e: i32 = digits.parse().map_err(|_| self.err("exponent too large"))?;
            let e = if neg { -e } else { e };
            return base.pow(e).map_err(|_| self.err("zero raised to a negative power"));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<RatFun> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let r = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().expect("digits");
                Ok(RatFun::constant(self.vars.clone(), Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if !self.vars.iter().any(|v| v == name) {
                    self.pos = start;
                    return Err(Error::UnknownVariable(name.to_string()));
                }
                Ok(RatFun::from_poly(MPoly::var(self.vars.clone(), name)?))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
