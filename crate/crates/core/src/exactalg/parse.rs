//! Text grammar for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := number | identifier | '(' expr ')'
//! ```
//!
//! Numbers are integers or decimals and are read exactly. Division is only
//! allowed by nonzero constants.

use std::sync::Arc;

use super::polynomial::Polynomial;
use super::rational::parse_rational;
use super::universe::Universe;
use super::{AlgebraError, Result};

pub fn parse_polynomial(text: &str, universe: &Arc<Universe>) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        universe,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    universe: &'a Arc<Universe>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse {
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

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if !d.is_constant() {
                        self.pos = at;
                        return Err(self.error("division by a non-constant"));
                    }
                    let c = d.constant_term();
                    if num_traits::Zero::is_zero(&c) {
                        return Err(AlgebraError::DivisionByZero);
                    }
                    acc = acc.scale(&c.recip());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            if self.src.get(self.pos) == Some(&b'-') {
                self.pos += 1;
            }
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let e: i64 = text.parse().map_err(|_| self.error("expected exponent"))?;
            return base.checked_pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let value = parse_rational(text).map_err(|_| AlgebraError::Parse {
                    pos: start,
                    msg: format!("bad number `{text}`"),
                })?;
                Ok(Polynomial::constant(self.universe, value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let v = self.universe.var(name)?;
                Ok(Polynomial::var(self.universe, v))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_printed_forms() {
        let u = Universe::mechanism();
        let f = parse_polynomial("a1*c1 - a2*(c1*c2 - s1*s2) - a3*s3 - b1", &u).unwrap();
        assert_eq!(f.len(), 5);
        let g = parse_polynomial("3/20*c4 + 0.5*s4^2 - (1)", &u).unwrap();
        assert_eq!(g.to_string(), "1/2*s4^2 + 3/20*c4 - 1");
    }

    #[test]
    fn rejects_bad_input() {
        let u = Universe::mechanism();
        assert!(matches!(
            parse_polynomial("c1 + ", &u),
            Err(AlgebraError::Parse { .. })
        ));
        assert!(matches!(
            parse_polynomial("zz", &u),
            Err(AlgebraError::UnknownVariable(_))
        ));
        assert!(parse_polynomial("c1/s1", &u).is_err());
        assert!(parse_polynomial("c1^-2", &u).is_err());
        assert!(parse_polynomial("(c1", &u).is_err());
    }

    #[test]
    fn display_parse_roundtrip() {
        let u = Universe::mechanism();
        let f = parse_polynomial("-7/3*c1^2*s4 + a4*a5 - 2/9", &u).unwrap();
        assert_eq!(parse_polynomial(&f.to_string(), &u).unwrap(), f);
    }
}
