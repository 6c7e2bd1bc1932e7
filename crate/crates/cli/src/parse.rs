//! Polynomial expressions in `x` with integer coefficients.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := power (['*'] power)*
//! power  := atom ['^' digits]
//! atom   := digits | 'x' | '(' expr ')'
//! ```
//!
//! A missing `*` is allowed between adjacent factors, so `3x^2` and
//! `2(x+1)` parse.

use std::fmt;

use num_bigint::BigInt;
use orelab_core::IntPoly;

pub const DEFAULT_MAX_DEGREE: usize = 128;

/// Largest accepted exponent; also caps the size of constant powers.
const MAX_EXPONENT: u32 = 100_000;
const MAX_CONSTANT_BITS: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the source text.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Source text together with the polynomial it denotes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyExpr {
    pub source: String,
    pub parsed: IntPoly,
}

impl PolyExpr {
    pub fn new(source: &str) -> Result<PolyExpr, ParseError> {
        Ok(PolyExpr { source: source.to_string(), parsed: parse_poly(source)? })
    }
}

/// `ORELAB_MAX_DEGREE`, or the default when unset or unreadable.
pub fn max_degree_from_env() -> usize {
    std::env::var("ORELAB_MAX_DEGREE")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DEGREE)
}

pub fn parse_poly(text: &str) -> Result<IntPoly, ParseError> {
    parse_poly_with_limit(text, max_degree_from_env())
}

pub fn parse_poly_with_limit(text: &str, max_degree: usize) -> Result<IntPoly, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, max_degree };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(format!("unexpected '{}'", p.peek_char())));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    max_degree: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { position: self.pos, message: message.into() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
            .unwrap_or('?')
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn check_degree(&self, p: &IntPoly, at: usize) -> Result<(), ParseError> {
        match p.degree() {
            Some(d) if d > self.max_degree => Err(ParseError {
                position: at,
                message: format!("degree {d} exceeds the limit of {}", self.max_degree),
            }),
            _ => Ok(()),
        }
    }

    fn expr(&mut self) -> Result<IntPoly, ParseError> {
        self.skip_ws();
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
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            self.skip_ws();
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

    fn term(&mut self) -> Result<IntPoly, ParseError> {
        let start = self.pos;
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(b'0'..=b'9' | b'x' | b'X' | b'(') => {}
                _ => return Ok(acc),
            }
            acc = &acc * &self.power()?;
            self.check_degree(&acc, start)?;
        }
    }

    fn power(&mut self) -> Result<IntPoly, ParseError> {
        let start = self.pos;
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let exp_at = self.pos;
        match self.peek() {
            Some(b'0'..=b'9') => {}
            Some(b'-') => return Err(self.error("negative exponents are not allowed")),
            _ => return Err(self.error("expected a non-negative integer exponent")),
        }
        let digits = self.digits().to_string();
        if self.peek() == Some(b'.') {
            return Err(self.error("non-integer exponent"));
        }
        let exp: u32 = digits
            .parse()
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| ParseError { position: exp_at, message: format!("exponent {digits} is too large") })?;
        match base.degree() {
            Some(d) if d > 0 => {
                if d.saturating_mul(exp as usize) > self.max_degree {
                    return Err(ParseError {
                        position: start,
                        message: format!("degree {} exceeds the limit of {}", d * exp as usize, self.max_degree),
                    });
                }
            }
            _ => {
                let bits = base.coeff(0).bits();
                if bits.saturating_mul(exp as u64) > MAX_CONSTANT_BITS {
                    return Err(ParseError { position: start, message: "constant power is too large".into() });
                }
            }
        }
        Ok(base.pow(exp))
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ASCII digits")
    }

    fn atom(&mut self) -> Result<IntPoly, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'0'..=b'9') => {
                let value: BigInt = self.digits().parse().expect("digit string");
                if self.peek() == Some(b'.') {
                    return Err(self.error("non-integer coefficient"));
                }
                Ok(IntPoly::constant(value))
            }
            Some(b'x' | b'X') => {
                self.pos += 1;
                Ok(IntPoly::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            None => Err(self.error("unexpected end of input")),
            Some(_) => Err(self.error(format!("unexpected '{}'", self.peek_char()))),
        }
    }
}
