use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{AlgebraError, Polynomial, Rational, Ring};

/// Parses `text` into a polynomial of `ring`.
///
/// Grammar: sums and differences of `*`-products of factors, each factor an
/// integer or `a/b` literal, a ring variable or a parenthesised expression,
/// optionally raised to a natural power with `^`. A single leading sign is
/// also accepted. Juxtaposition (`xy`, `2x`) is rejected.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial, AlgebraError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<Ring>,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> AlgebraError {
        AlgebraError::SyntaxError {
            position: self.pos,
            message: message.to_string(),
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

    fn expr(&mut self) -> Result<Polynomial, AlgebraError> {
        let negate = match self.peek() {
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
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, AlgebraError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, AlgebraError> {
        let base = self.base()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek() {
            Some(b'-') => return Err(AlgebraError::NegativeExponent { position: self.pos }),
            Some(c) if c.is_ascii_digit() => {}
            _ => return Err(self.error("expected exponent")),
        }
        let start = self.pos;
        let n = self.integer()?;
        let e = n
            .to_u32()
            .ok_or(AlgebraError::SyntaxError {
                position: start,
                message: "exponent too large".into(),
            })?;
        Ok(base.pow(e))
    }

    fn base(&mut self) -> Result<Polynomial, AlgebraError> {
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
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut value = Rational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        return Err(self.error("expected denominator"));
                    }
                    let at = self.pos;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(AlgebraError::SyntaxError {
                            position: at,
                            message: "zero denominator".into(),
                        });
                    }
                    value /= Rational::from_integer(den);
                }
                self.reject_juxtaposition()?;
                Ok(Polynomial::constant(self.ring, value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric()
                        || self.src[self.pos] == b'_'
                        || self.src[self.pos] == b'\'')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Polynomial::var(self.ring, name)
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, AlgebraError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        digits.parse().map_err(|_| AlgebraError::SyntaxError {
            position: start,
            message: "expected integer".into(),
        })
    }

    fn reject_juxtaposition(&mut self) -> Result<(), AlgebraError> {
        // `2x` and `2(x)` must be written with `*`
        match self.src.get(self.pos) {
            Some(&c) if c.is_ascii_alphabetic() || c == b'_' || c == b'(' => {
                Err(self.error("implicit multiplication is not allowed"))
            }
            _ => Ok(()),
        }
    }
}
