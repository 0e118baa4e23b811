//! Scalar tokens shared by all text formats.

use std::str::FromStr;

use cobcalc::geometry::Point2;
use cobcalc::gf2::BitVec;
use cobcalc::Rat;

use crate::error::{CliError, Result};

/// A whitespace-separated word and its 1-based column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Token<'a> {
    pub text: &'a str,
    pub col: usize,
}

pub fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (i, c)) in line.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((i, col + 1)),
            (true, Some((s, sc))) => {
                out.push(Token { text: &line[s..i], col: sc });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((s, sc)) = start {
        out.push(Token { text: &line[s..], col: sc });
    }
    out
}

/// Rationals are written `p/q`; a bare integer is accepted on input.
pub fn rational(s: &str) -> Option<Rat> {
    if s.starts_with('+') || s.contains(' ') {
        return None;
    }
    Rat::from_str(s).ok()
}

pub fn fmt_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn point(s: &str) -> Option<Point2> {
    let (x, y) = s.strip_prefix('(')?.strip_suffix(')')?.split_once(',')?;
    Some(Point2::new(rational(x)?, rational(y)?))
}

pub fn fmt_point(p: &Point2) -> String {
    format!("({},{})", fmt_rat(&p.x), fmt_rat(&p.y))
}

/// Bit strings; `-` is the empty vector.
pub fn bits(s: &str) -> Option<BitVec> {
    if s == "-" {
        Some(BitVec::zeros(0))
    } else if s.is_empty() {
        None
    } else {
        BitVec::from_bit_str(s)
    }
}

pub fn fmt_bits(v: &BitVec) -> String {
    if v.is_empty() {
        "-".into()
    } else {
        v.to_bit_string()
    }
}

/// Typed accessors that report the offending token's position.
pub struct Fields<'a> {
    pub line: usize,
    pub end_col: usize,
    pub tokens: Vec<Token<'a>>,
}

impl<'a> Fields<'a> {
    pub fn new(line: usize, text: &'a str) -> Self {
        Self { line, end_col: text.chars().count() + 1, tokens: tokens(text) }
    }

    pub fn err(&self, col: usize, msg: impl Into<String>) -> CliError {
        CliError::parse(self.line, col, msg)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn get(&self, i: usize, what: &str) -> Result<Token<'a>> {
        self.tokens.get(i).copied().ok_or_else(|| self.err(self.end_col, format!("expected {what}")))
    }

    pub fn exact(&self, n: usize, what: &str) -> Result<()> {
        match self.tokens.get(n) {
            Some(t) => Err(self.err(t.col, format!("unexpected `{}` after {what}", t.text))),
            None if self.tokens.len() < n => Err(self.err(self.end_col, format!("expected {what}"))),
            None => Ok(()),
        }
    }

    pub fn rational(&self, i: usize) -> Result<Rat> {
        let t = self.get(i, "a rational p/q")?;
        rational(t.text).ok_or_else(|| self.err(t.col, format!("`{}` is not a rational", t.text)))
    }

    pub fn bits(&self, i: usize) -> Result<BitVec> {
        let t = self.get(i, "a bit string")?;
        bits(t.text).ok_or_else(|| self.err(t.col, format!("`{}` is not a bit string", t.text)))
    }

    pub fn point(&self, i: usize) -> Result<Point2> {
        let t = self.get(i, "a point (x,y)")?;
        point(t.text).ok_or_else(|| self.err(t.col, format!("`{}` is not a point (x,y)", t.text)))
    }
}
