//! Group-expression grammar:
//!
//! ```text
//! expr := "C(" int ")" | "D(" expr "," expr ")" | "W(" expr "," expr ")"
//!       | "Ex1(" p "," q "," r "," t "," n ")" | "Ex2(" p "," q "," n ")"
//! ```
//!
//! Whitespace is ignored. `GroupExpr`'s `Display` is the canonical printing.

use std::fmt;

use fitheight_core::constructors::{cyc, dir, wr, GroupExpr};
use fitheight_core::primes::is_prime;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax {
        expected: Vec<&'static str>,
        found: Option<char>,
    },
    NotPrime(u64),
    /// A constructor got the wrong number of arguments.
    Arity {
        constructor: &'static str,
        expected: usize,
        found: usize,
    },
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: ", self.offset)?;
        match &self.kind {
            ParseErrorKind::Syntax { expected, found } => {
                let list: Vec<String> = expected.iter().map(|e| format!("{e:?}")).collect();
                write!(f, "expected {}", list.join(" or "))?;
                match found {
                    Some(c) => write!(f, ", found {c:?}"),
                    None => write!(f, ", found end of input"),
                }
            }
            ParseErrorKind::NotPrime(n) => write!(f, "{n} is not prime"),
            ParseErrorKind::Arity { constructor, expected, found } => {
                write!(f, "{constructor} takes {expected} arguments, got {found}")
            }
            ParseErrorKind::Invalid(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for ParseError {}

pub fn parse(text: &str) -> Result<GroupExpr, ParseError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.syntax(&["end of input"]));
    }
    Ok(e)
}

/// Comma-separated primes, e.g. `2,5`.
pub fn parse_sigma(text: &str) -> Result<Vec<u32>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let trimmed = part.trim();
        let at = offset + part.len() - part.trim_start().len();
        let n: u64 = trimmed.parse().map_err(|_| ParseError {
            offset: at,
            kind: ParseErrorKind::Syntax { expected: vec!["prime"], found: trimmed.chars().next() },
        })?;
        if !is_prime(n) || n > u32::MAX as u64 {
            return Err(ParseError { offset: at, kind: ParseErrorKind::NotPrime(n) });
        }
        if !out.contains(&(n as u32)) {
            out.push(n as u32);
        }
        offset += part.len() + 1;
    }
    out.sort_unstable();
    Ok(out)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn syntax(&mut self, expected: &[&'static str]) -> ParseError {
        let found = self.peek().map(|b| b as char);
        ParseError { offset: self.pos, kind: ParseErrorKind::Syntax { expected: expected.to_vec(), found } }
    }

    fn eat(&mut self, tok: &'static str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.s[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            Ok(())
        } else {
            Err(self.syntax(&[tok]))
        }
    }

    fn expr(&mut self) -> Result<GroupExpr, ParseError> {
        self.skip_ws();
        let rest = &self.s[self.pos..];
        let start = self.pos;
        if rest.starts_with(b"Ex1") || rest.starts_with(b"Ex2") {
            let one = rest[2] == b'1';
            self.pos += 3;
            self.eat("(")?;
            let args = self.int_args()?;
            let (name, want) = if one { ("Ex1", 5) } else { ("Ex2", 3) };
            if args.len() != want {
                return Err(ParseError {
                    offset: start,
                    kind: ParseErrorKind::Arity { constructor: name, expected: want, found: args.len() },
                });
            }
            for &(at, v) in &args[..want - 1] {
                if !is_prime(v) {
                    return Err(ParseError { offset: at, kind: ParseErrorKind::NotPrime(v) });
                }
            }
            let v: Vec<u32> = args
                .iter()
                .map(|&(at, v)| {
                    u32::try_from(v).map_err(|_| ParseError {
                        offset: at,
                        kind: ParseErrorKind::Invalid(format!("{v} is too large")),
                    })
                })
                .collect::<Result<_, _>>()?;
            let e = if one {
                GroupExpr::Ex1 { p: v[0], q: v[1], r: v[2], t: v[3], n: v[4] }
            } else {
                GroupExpr::Ex2 { p: v[0], q: v[1], n: v[2] }
            };
            e.validate().map_err(|err| ParseError { offset: start, kind: ParseErrorKind::Invalid(err.to_string()) })?;
            return Ok(e);
        }
        match rest.first() {
            Some(b'C') => {
                self.pos += 1;
                self.eat("(")?;
                let (at, n) = self.int()?;
                if n == 0 {
                    return Err(ParseError {
                        offset: at,
                        kind: ParseErrorKind::Invalid("cyclic order must be positive".into()),
                    });
                }
                self.close("C", 1)?;
                Ok(cyc(n))
            }
            Some(&c @ (b'D' | b'W')) => {
                self.pos += 1;
                self.eat("(")?;
                let a = self.expr()?;
                self.skip_ws();
                if self.peek() == Some(b')') {
                    return Err(ParseError {
                        offset: self.pos,
                        kind: ParseErrorKind::Arity {
                            constructor: if c == b'D' { "D" } else { "W" },
                            expected: 2,
                            found: 1,
                        },
                    });
                }
                if self.peek() != Some(b',') {
                    return Err(self.syntax(&[",", ")"]));
                }
                self.pos += 1;
                let b = self.expr()?;
                self.close(if c == b'D' { "D" } else { "W" }, 2)?;
                Ok(if c == b'D' { dir(a, b) } else { wr(a, b) })
            }
            _ => Err(self.syntax(&["C(", "D(", "W(", "Ex1(", "Ex2("])),
        }
    }

    /// Expects `)`; a `,` here means too many arguments.
    fn close(&mut self, constructor: &'static str, arity: usize) -> Result<(), ParseError> {
        match self.peek() {
            Some(b')') => {
                self.pos += 1;
                Ok(())
            }
            Some(b',') => Err(ParseError {
                offset: self.pos,
                kind: ParseErrorKind::Arity { constructor, expected: arity, found: arity + 1 },
            }),
            _ => Err(self.syntax(&[")"])),
        }
    }

    fn int(&mut self) -> Result<(usize, u64), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax(&["integer"]));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        let v = text.parse().map_err(|_| ParseError {
            offset: start,
            kind: ParseErrorKind::Invalid(format!("integer {text} is too large")),
        })?;
        Ok((start, v))
    }

    fn int_args(&mut self) -> Result<Vec<(usize, u64)>, ParseError> {
        let mut out = vec![self.int()?];
        loop {
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    out.push(self.int()?);
                }
                Some(b')') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.syntax(&[",", ")"])),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wreath_and_direct() {
        assert_eq!(parse("W(C(2),C(3))").unwrap(), wr(cyc(2), cyc(3)));
        assert_eq!(parse(" D ( C(2) , W(C(3), C(2)) ) ").unwrap(), dir(cyc(2), wr(cyc(3), cyc(2))));
    }

    #[test]
    fn example_families() {
        let e = parse("Ex2(2,3,1)").unwrap();
        assert_eq!(e, GroupExpr::Ex2 { p: 2, q: 3, n: 1 });
        assert_eq!(e.expand().unwrap(), wr(wr(cyc(2), cyc(3)), cyc(2)));
        assert_eq!(parse("Ex1(2,3,5,7,0)").unwrap().to_string(), "Ex1(2,3,5,7,0)");
    }

    #[test]
    fn unterminated_argument_list() {
        let err = parse("W(C(2)").unwrap_err();
        assert_eq!(err.offset, 6);
        assert_eq!(err.kind, ParseErrorKind::Syntax { expected: vec![",", ")"], found: None });
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("Ex2(4,3,1)").unwrap_err().kind, ParseErrorKind::NotPrime(4)));
        assert_eq!(parse("Ex2(4,3,1)").unwrap_err().offset, 4);
        assert!(matches!(parse("Ex2(2,3)").unwrap_err().kind, ParseErrorKind::Arity { expected: 3, found: 2, .. }));
        assert!(matches!(parse("W(C(2))").unwrap_err().kind, ParseErrorKind::Arity { found: 1, .. }));
        assert!(matches!(parse("C(2,3)").unwrap_err().kind, ParseErrorKind::Arity { found: 2, .. }));
        assert!(matches!(parse("Ex2(2,2,1)").unwrap_err().kind, ParseErrorKind::Invalid(_)));
        assert_eq!(parse("X").unwrap_err().offset, 0);
        assert_eq!(parse("C(2) C(3)").unwrap_err().offset, 5);
        assert!(parse("C(0)").is_err());
    }

    #[test]
    fn sigma_lists() {
        assert_eq!(parse_sigma("5, 2").unwrap(), [2, 5]);
        assert_eq!(parse_sigma("2,4").unwrap_err().offset, 2);
    }
}
