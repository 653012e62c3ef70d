//! Surface syntax for parameters: a recursive-descent parser for the
//! expression grammar and its inverse pretty-printer.
//!
//! ```text
//! rep   := block { "x" block }
//! block := "chiR(" int "," cq ")"      real character, m in {0, 1}
//!        | "chiC(" int "," cq ")"      complex character, m in Z
//!        | "indR(" int "," cq ")"      induced GL(2, R) parameter, m != 0
//!        | "st(" cusp "," int ")"      segment of the given length
//! cusp  := "unram(" qq [ "," "zeta" "=" int "/" int ] ")"
//!        | "ram"
//!        | "cusp(" int "," qq ")"      opaque: degree >= 2, tempered exponent
//! qq    := [ "-" ] int [ "/" int ]
//! cq    := qq [ ("+"|"-") qq "i" ]
//! ```
//!
//! Whitespace is insignificant between tokens. Every parameter is written
//! out explicitly; the printer emits the canonical form, and
//! `parse(format(rep)) == rep` for every canonical product.
//!
//! Errors carry the byte offset of the offending token. Semantic errors
//! cite the canonicalization rule (for example `indR(0, r)` is rejected
//! as the reducible expansion `chiR(0,r) x chiR(1,r)`).

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::params::{ArchChar, ArchInduced, Block, NonArchCuspidal, RepProduct};
use crate::rational::{RootOfUnity, CQ, QQ};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Key(&'static str),
    Int(String),
    LParen,
    RParen,
    Comma,
    Slash,
    Plus,
    Minus,
    Eq,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Key(k) => write!(f, "'{k}'"),
            Tok::Int(d) => write!(f, "integer {d}"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Comma => write!(f, "','"),
            Tok::Slash => write!(f, "'/'"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Eq => write!(f, "'='"),
        }
    }
}

/// Keywords, longest first so maximal munch picks "unram" over "ram".
const KEYWORDS: [&str; 10] = [
    "unram", "chiR", "chiC", "indR", "cusp", "zeta", "ram", "st", "i", "x",
];

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => pos += 1,
            b'(' => {
                toks.push((Tok::LParen, pos));
                pos += 1;
            }
            b')' => {
                toks.push((Tok::RParen, pos));
                pos += 1;
            }
            b',' => {
                toks.push((Tok::Comma, pos));
                pos += 1;
            }
            b'/' => {
                toks.push((Tok::Slash, pos));
                pos += 1;
            }
            b'+' => {
                toks.push((Tok::Plus, pos));
                pos += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, pos));
                pos += 1;
            }
            b'=' => {
                toks.push((Tok::Eq, pos));
                pos += 1;
            }
            b'0'..=b'9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                toks.push((Tok::Int(text[start..pos].to_string()), start));
            }
            _ if b.is_ascii_alphabetic() => {
                let rest = &text[pos..];
                let key = KEYWORDS.iter().find(|k| rest.starts_with(**k));
                match key {
                    Some(k) => {
                        toks.push((Tok::Key(k), pos));
                        pos += k.len();
                    }
                    None => {
                        return Err(ParseError::new(
                            pos,
                            format!(
                                "unknown name starting at {:?} (expected chiR, chiC, indR, st, \
                                 unram, ram, cusp, zeta, i or x)",
                                &rest[..rest.len().min(8)]
                            ),
                        ));
                    }
                }
            }
            _ => {
                return Err(ParseError::new(
                    pos,
                    format!(
                        "unexpected character {:?}",
                        text[pos..].chars().next().unwrap()
                    ),
                ));
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.idx)
    }

    fn pos(&self) -> usize {
        self.peek().map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn next(&mut self, expected: &str) -> Result<(Tok, usize), ParseError> {
        match self.toks.get(self.idx) {
            Some(t) => {
                self.idx += 1;
                Ok(t.clone())
            }
            None => Err(ParseError::new(
                self.end,
                format!("unexpected end of input, expected {expected}"),
            )),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<usize, ParseError> {
        let (t, p) = self.next(&tok.to_string())?;
        if t == tok {
            Ok(p)
        } else {
            Err(ParseError::new(p, format!("expected {tok}, found {t}")))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|(t, _)| t == tok).unwrap_or(false) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<(String, usize), ParseError> {
        let (t, p) = self.next("an integer")?;
        match t {
            Tok::Int(d) => Ok((d, p)),
            other => Err(ParseError::new(
                p,
                format!("expected an integer, found {other}"),
            )),
        }
    }

    /// Signed machine integer (block parameters m, lengths, degrees).
    fn int(&mut self) -> Result<(i64, usize), ParseError> {
        let neg = self.eat(&Tok::Minus);
        let (d, p) = self.digits()?;
        let v: i64 = d
            .parse()
            .map_err(|_| ParseError::new(p, format!("integer {d} is out of range")))?;
        Ok((if neg { -v } else { v }, p))
    }

    /// Unsigned machine integer.
    fn uint(&mut self) -> Result<(u64, usize), ParseError> {
        let (d, p) = self.digits()?;
        let v: u64 = d
            .parse()
            .map_err(|_| ParseError::new(p, format!("integer {d} is out of range")))?;
        Ok((v, p))
    }

    /// qq := [ "-" ] int [ "/" int ], arbitrary precision.
    fn qq(&mut self) -> Result<(QQ, usize), ParseError> {
        let neg = self.eat(&Tok::Minus);
        let (num, p) = self.digits()?;
        let mut n: BigInt = num.parse().expect("digit string");
        if neg {
            n = -n;
        }
        let d: BigInt = if self.eat(&Tok::Slash) {
            let (den, dp) = self.digits()?;
            let d: BigInt = den.parse().expect("digit string");
            if d == BigInt::from(0) {
                return Err(ParseError::new(dp, "zero denominator".to_string()));
            }
            d
        } else {
            BigInt::from(1)
        };
        Ok((QQ::from_big(n, d).expect("nonzero denominator"), p))
    }

    /// cq := qq [ ("+"|"-") qq "i" ].
    fn cq(&mut self) -> Result<(CQ, usize), ParseError> {
        let (re, p) = self.qq()?;
        let sign = match self.peek() {
            Some((Tok::Plus, _)) => {
                self.idx += 1;
                Some(false)
            }
            Some((Tok::Minus, _)) => {
                self.idx += 1;
                Some(true)
            }
            _ => None,
        };
        let im = match sign {
            None => QQ::zero(),
            Some(neg) => {
                let (im, _) = self.qq()?;
                let (t, tp) = self.next("'i'")?;
                if t != Tok::Key("i") {
                    return Err(ParseError::new(tp, format!("expected 'i', found {t}")));
                }
                if neg {
                    -im
                } else {
                    im
                }
            }
        };
        Ok((CQ::new(re, im), p))
    }

    fn cusp(&mut self) -> Result<NonArchCuspidal, ParseError> {
        let (t, p) = self.next("'unram', 'ram' or 'cusp'")?;
        match t {
            Tok::Key("unram") => {
                self.expect(Tok::LParen)?;
                let (c, _) = self.qq()?;
                let zeta = if self.eat(&Tok::Comma) {
                    let (t, tp) = self.next("'zeta'")?;
                    if t != Tok::Key("zeta") {
                        return Err(ParseError::new(tp, format!("expected 'zeta', found {t}")));
                    }
                    self.expect(Tok::Eq)?;
                    let (j, _) = self.uint()?;
                    self.expect(Tok::Slash)?;
                    let (k, kp) = self.uint()?;
                    if k == 0 {
                        return Err(ParseError::new(kp, "zeta order must be >= 1".to_string()));
                    }
                    RootOfUnity::new(j, k)
                } else {
                    RootOfUnity::one()
                };
                self.expect(Tok::RParen)?;
                Ok(NonArchCuspidal::unramified(c, zeta))
            }
            Tok::Key("ram") => Ok(NonArchCuspidal::Ramified),
            Tok::Key("cusp") => {
                self.expect(Tok::LParen)?;
                let (degree, dp) = self.int()?;
                self.expect(Tok::Comma)?;
                let (e, _) = self.qq()?;
                self.expect(Tok::RParen)?;
                if !(2..=u32::MAX as i64).contains(&degree) {
                    return Err(ParseError::new(
                        dp,
                        format!("opaque cuspidals must have degree >= 2, got {degree}"),
                    ));
                }
                Ok(NonArchCuspidal::opaque(degree as u32, e).expect("degree checked"))
            }
            other => Err(ParseError::new(
                p,
                format!("expected 'unram', 'ram' or 'cusp', found {other}"),
            )),
        }
    }

    fn block(&mut self) -> Result<Block, ParseError> {
        let (t, p) = self.next("a block ('chiR', 'chiC', 'indR' or 'st')")?;
        match t {
            Tok::Key("chiR") => {
                self.expect(Tok::LParen)?;
                let (m, mp) = self.int()?;
                self.expect(Tok::Comma)?;
                let (r, _) = self.cq()?;
                self.expect(Tok::RParen)?;
                let ch = ArchChar::real(m, r).map_err(|e| ParseError::new(mp, e.to_string()))?;
                Ok(Block::Char(ch))
            }
            Tok::Key("chiC") => {
                self.expect(Tok::LParen)?;
                let (m, _) = self.int()?;
                self.expect(Tok::Comma)?;
                let (r, _) = self.cq()?;
                self.expect(Tok::RParen)?;
                Ok(Block::Char(ArchChar::complex(m, r)))
            }
            Tok::Key("indR") => {
                self.expect(Tok::LParen)?;
                let (m, mp) = self.int()?;
                self.expect(Tok::Comma)?;
                let (r, _) = self.cq()?;
                self.expect(Tok::RParen)?;
                let ind = ArchInduced::new(m, r).map_err(|e| ParseError::new(mp, e.to_string()))?;
                Ok(Block::Induced(ind))
            }
            Tok::Key("st") => {
                self.expect(Tok::LParen)?;
                let base = self.cusp()?;
                self.expect(Tok::Comma)?;
                let (len, lp) = self.int()?;
                self.expect(Tok::RParen)?;
                if !(1..=u32::MAX as i64).contains(&len) {
                    return Err(ParseError::new(
                        lp,
                        format!("segment length must be >= 1, got {len}"),
                    ));
                }
                Block::segment(base, len as u32).map_err(|e| ParseError::new(lp, e.to_string()))
            }
            other => Err(ParseError::new(
                p,
                format!("expected a block ('chiR', 'chiC', 'indR' or 'st'), found {other}"),
            )),
        }
    }

    fn rep(&mut self) -> Result<RepProduct, ParseError> {
        let first_pos = self.pos();
        let mut blocks = vec![self.block()?];
        while self.eat(&Tok::Key("x")) {
            blocks.push(self.block()?);
        }
        if let Some((t, p)) = self.peek() {
            return Err(ParseError::new(
                *p,
                format!("expected 'x' or end of input, found {t}"),
            ));
        }
        RepProduct::new(blocks).map_err(|e| ParseError::new(first_pos, e.to_string()))
    }
}

/// Parse a product expression into a canonical [`RepProduct`].
pub fn parse(text: &str) -> Result<RepProduct, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        idx: 0,
        end: text.len(),
    };
    parser.rep()
}

/// Parse a standalone complex rational in the `cq` grammar.
pub fn parse_cq(text: &str) -> Result<CQ, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        idx: 0,
        end: text.len(),
    };
    let (cq, _) = parser.cq()?;
    if let Some((t, p)) = parser.peek() {
        return Err(ParseError::new(*p, format!("trailing input: {t}")));
    }
    Ok(cq)
}

/// Parse an expression that must denote a single block.
pub fn parse_block(text: &str) -> Result<Block, ParseError> {
    let rep = parse(text)?;
    if rep.blocks().len() != 1 {
        return Err(ParseError::new(
            0,
            format!(
                "expected a single block, found a product of {}",
                rep.blocks().len()
            ),
        ));
    }
    Ok(rep.blocks()[0].clone())
}

/// Canonical surface form; the inverse of [`parse`] on canonical values.
pub fn format(rep: &RepProduct) -> String {
    rep.to_string()
}
