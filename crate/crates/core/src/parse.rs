//! Text syntax for rational functions in `n` and `k`.
//!
//! ```text
//! expr   = term   { ("+" | "-") term }
//! term   = unary  { ("*" | "/") unary }
//! unary  = [ "-" ] factor
//! factor = base [ "^" integer ]
//! base   = "(" expr ")" | "n" | "k" | natural
//! ```
//!
//! Whitespace is ignored, `^` binds tighter than unary minus (`-k^2` is
//! `-(k^2)`), exponents may be negative, and implicit multiplication is
//! rejected.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::rat_nk::RatNK;
use crate::scalar::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: expected {}", expected.join(" or "))]
    Syntax {
        position: usize,
        expected: Vec<String>,
    },
    #[error("division by a zero expression at position {position}")]
    DivisionByZero { position: usize },
}

pub fn parse(text: &str) -> Result<RatNK, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.expected(&["operator", "end of input"]));
    }
    Ok(v)
}

/// Prints `F` in the grammar above; `parse(&format(f)) == f`.
pub fn format(f: &RatNK) -> String {
    f.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expected(&self, what: &[&str]) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
            expected: what.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expr(&mut self) -> Result<RatNK, ParseError> {
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

    fn term(&mut self) -> Result<RatNK, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    let inv = d.recip().ok_or(ParseError::DivisionByZero { position: at })?;
                    acc = &acc * &inv;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatNK, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<RatNK, ParseError> {
        let at = self.pos;
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            return base.pow(e).ok_or(ParseError::DivisionByZero { position: at });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.expected(&["integer exponent"]));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let v: i64 = s.parse().map_err(|_| ParseError::Syntax {
            position: start,
            expected: vec!["exponent small enough to fit in 64 bits".into()],
        })?;
        Ok(if neg { -v } else { v })
    }

    fn base(&mut self) -> Result<RatNK, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.expected(&["')'", "operator"]));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'n') => {
                self.pos += 1;
                self.no_implicit_mul()?;
                Ok(RatNK::n())
            }
            Some(b'k') => {
                self.pos += 1;
                self.no_implicit_mul()?;
                Ok(RatNK::k())
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                self.no_implicit_mul()?;
                let v: BigInt = s.parse().unwrap();
                Ok(RatNK::from_rat(Rat::from_integer(v)))
            }
            _ => Err(self.expected(&["'('", "'n'", "'k'", "number"])),
        }
    }

    // "2k", "nk", "2(k+1)" are rejected
    fn no_implicit_mul(&self) -> Result<(), ParseError> {
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphanumeric() || *c == b'(' => {
                Err(self.expected(&["operator"]))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ParseErrorContext<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pos = match self.err {
            ParseError::Syntax { position, .. } | ParseError::DivisionByZero { position } => {
                *position
            }
        };
        writeln!(f, "{}", self.err)?;
        writeln!(f, "  {}", self.text)?;
        write!(f, "  {}^", " ".repeat(pos))
    }
}

/// Renders an error with a caret under the offending position.
pub struct ParseErrorContext<'a> {
    pub err: &'a ParseError,
    pub text: &'a str,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivar::BiPoly;
    use crate::rat_nk::recip_of;
    use crate::scalar::ratio;

    #[test]
    fn precedence() {
        assert_eq!(parse("1-1-1").unwrap(), RatNK::from_int(-1));
        assert_eq!(parse("2/2/2").unwrap(), RatNK::from_rat(ratio(1, 2)));
        assert_eq!(parse("-k^2").unwrap(), -RatNK::k().pow(2).unwrap());
        assert_eq!(parse("2*k^-1").unwrap(), parse("2/k").unwrap());
        assert_eq!(parse("0").unwrap(), RatNK::zero());
        assert_eq!(parse(" ( n + k ) ^ 2 ").unwrap(), parse("n^2+2*n*k+k^2").unwrap());
    }

    #[test]
    fn sample_inputs() {
        let b = BiPoly::from_ints(&[&[3], &[1]]);
        let f = parse("1/(k+3) + 2/(k+2+n) - 2/(2*k+1)").unwrap();
        let g = &(&recip_of(&b) + &(RatNK::from_int(2) * recip_of(&BiPoly::from_ints(&[&[2, 1], &[1]]))))
            - &(RatNK::from_int(2) * recip_of(&BiPoly::from_ints(&[&[1], &[2]])));
        assert_eq!(f, g);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("2k"), Err(ParseError::Syntax { position: 1, .. })));
        assert!(matches!(parse("1/(k-k)"), Err(ParseError::DivisionByZero { .. })));
        assert!(matches!(parse("0^-1"), Err(ParseError::DivisionByZero { .. })));
        assert!(matches!(parse("(k+1"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("x"), Err(ParseError::Syntax { position: 0, .. })));
        assert!(matches!(parse("--k"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("k^"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse(""), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn format_roundtrip_basic() {
        for s in ["0", "k^2-1", "1/(k+1)", "(n^2-3*k)/(2*n*k+5)", "-1/2*n+k/3"] {
            let f = parse(s).unwrap();
            assert_eq!(parse(&format(&f)).unwrap(), f, "{s} -> {}", format(&f));
        }
    }
}
