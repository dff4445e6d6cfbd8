//! Text forms: `x^5+x^2+1` (descending exponents) and `0x25` (coefficient bitmask).
//!
//! Grammar accepted by the parser:
//!
//! ```text
//! poly := hex | term ('+' term)*
//! term := '0' | '1' | 'x' | 'x^' digits
//! hex  := '0x' hexdigits
//! ```
//!
//! Whitespace between tokens is ignored and repeated terms cancel mod 2.

use std::fmt;
use std::str::FromStr;

use super::{Gf2Poly, WORD};
use crate::error::{Error, Result};

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

fn parse_hex(digits: &str, offset: usize) -> Result<Gf2Poly> {
    if digits.is_empty() {
        return Err(syntax(offset, "expected hexadecimal digits after 0x"));
    }
    let mut limbs = Vec::with_capacity(digits.len() / 16 + 1);
    let mut word = 0u64;
    let mut filled = 0;
    for (i, ch) in digits.char_indices().rev() {
        let v = ch
            .to_digit(16)
            .ok_or_else(|| syntax(offset + i, format!("invalid hex digit {ch:?}")))?;
        word |= (v as u64) << (4 * filled);
        filled += 1;
        if filled == WORD / 4 {
            limbs.push(word);
            word = 0;
            filled = 0;
        }
    }
    limbs.push(word);
    Ok(Gf2Poly::from_limbs(limbs))
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(syntax(start, "expected exponent digits"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| syntax(start, "exponent out of range"))
    }

    /// One term, returned as an exponent (`None` for the term `0`).
    fn term(&mut self) -> Result<Option<usize>> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(b'0') => {
                self.pos += 1;
                Ok(None)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Some(0))
            }
            Some(b'x') => {
                self.pos += 1;
                self.skip_ws();
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    Ok(Some(self.digits()?))
                } else {
                    Ok(Some(1))
                }
            }
            Some(c) => Err(syntax(start, format!("unexpected character {:?}", c as char))),
            None => Err(syntax(start, "expected a term")),
        }
    }
}

impl FromStr for Gf2Poly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let trimmed = text.trim_start();
        let lead = text.len() - trimmed.len();
        let trimmed = trimmed.trim_end();
        if trimmed.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(hex) = trimmed
            .strip_prefix("0x")
            .or_else(|| trimmed.strip_prefix("0X"))
        {
            return parse_hex(hex, lead + 2);
        }

        let mut cur = Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        };
        let mut poly = Gf2Poly::zero();
        loop {
            if let Some(e) = cur.term()? {
                poly.flip(e);
            }
            cur.skip_ws();
            match cur.peek() {
                None => break,
                Some(b'+') => cur.pos += 1,
                Some(c) => {
                    return Err(syntax(cur.pos, format!("expected '+', found {:?}", c as char)))
                }
            }
        }
        Ok(poly)
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for e in self.exponents().rev() {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let p: Gf2Poly = "x^2+x+1".parse().unwrap();
        assert_eq!(p.limbs(), &[0b111]);
        assert!("0".parse::<Gf2Poly>().unwrap().is_zero());
        assert!("x+x".parse::<Gf2Poly>().unwrap().is_zero());
        assert_eq!(" x ^ 3 + 1 ".parse::<Gf2Poly>().unwrap().to_string(), "x^3+1");
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert!(matches!("".parse::<Gf2Poly>(), Err(Error::EmptyInput)));
        assert!(matches!("   ".parse::<Gf2Poly>(), Err(Error::EmptyInput)));
        match "x^2+y".parse::<Gf2Poly>() {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {other:?}"),
        }
        match "x^2+".parse::<Gf2Poly>() {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!("x^".parse::<Gf2Poly>(), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!("x x".parse::<Gf2Poly>(), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!("0xg1".parse::<Gf2Poly>(), Err(Error::Syntax { offset: 2, .. })));
    }

    #[test]
    fn hex_form() {
        let p: Gf2Poly = "x^64+x^3+1".parse().unwrap();
        assert_eq!(p.to_hex(), "0x10000000000000009");
        assert_eq!(p.to_hex().parse::<Gf2Poly>().unwrap(), p);
        assert_eq!("0x0".parse::<Gf2Poly>().unwrap(), Gf2Poly::zero());
        assert_eq!(Gf2Poly::zero().to_hex(), "0x0");
        assert_eq!("0x00b".parse::<Gf2Poly>().unwrap().to_string(), "x^3+x+1");
    }

    #[test]
    fn display() {
        assert_eq!(Gf2Poly::zero().to_string(), "0");
        assert_eq!(Gf2Poly::one().to_string(), "1");
        assert_eq!(Gf2Poly::from_exponents(&[0, 1, 7]).to_string(), "x^7+x+1");
    }
}
