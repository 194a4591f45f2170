//! Recursive-descent parser for polynomial expressions over a [`Ring`].
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' integer)?
//! atom   := integer | ident | '(' expr ')'
//! ident  := [a-zA-Z][a-zA-Z0-9']*
//! ```

use std::fmt;
use std::sync::Arc;

use duval_core::gfpoly::{PolyFp, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    Expected(&'static str),
    UnknownVariable(String),
    NonIntegerCoefficient(String),
    ExponentTooLarge(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::Expected(what) => write!(f, "expected {what}"),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            ParseErrorKind::NonIntegerCoefficient(c) => {
                write!(f, "coefficient `{c}` is not an integer")
            }
            ParseErrorKind::ExponentTooLarge(e) => write!(f, "exponent `{e}` is too large"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<(Vec<Spanned>, (usize, usize)), ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = (line, column);
        let err = |kind| ParseError { line: start.0, column: start.1, kind };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let (tok, len) = if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            // A decimal point or fraction bar directly after digits is a non-integer coefficient.
            if j < chars.len() && (chars[j] == '.' || chars[j] == '/') {
                let mut k = j + 1;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let lit: String = chars[i..k].iter().collect();
                return Err(err(ParseErrorKind::NonIntegerCoefficient(lit)));
            }
            (Tok::Int(chars[i..j].iter().collect()), j - i)
        } else if c.is_ascii_alphabetic() {
            let mut j = i + 1;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '\'') {
                j += 1;
            }
            (Tok::Ident(chars[i..j].iter().collect()), j - i)
        } else {
            let tok = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '.' => {
                    let mut k = i + 1;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                    let lit: String = chars[i..k].iter().collect();
                    return Err(err(ParseErrorKind::NonIntegerCoefficient(lit)));
                }
                other => return Err(err(ParseErrorKind::UnexpectedChar(other))),
            };
            (tok, 1)
        };
        out.push(Spanned { tok, line: start.0, column: start.1 });
        i += len;
        column += len;
    }
    Ok((out, (line, column)))
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
    ring: &'a Arc<Ring>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |s| (s.line, s.column))
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        let (line, column) = self.here();
        let kind = match (kind, self.peek()) {
            (ParseErrorKind::Expected(_), None) => ParseErrorKind::UnexpectedEnd,
            (k, _) => k,
        };
        ParseError { line, column, kind }
    }

    fn expr(&mut self) -> Result<PolyFp, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -&self.term()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyFp, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PolyFp, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek().cloned() {
            Some(Tok::Int(digits)) => {
                let e: u32 = digits
                    .parse()
                    .map_err(|_| self.error(ParseErrorKind::ExponentTooLarge(digits.clone())))?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => Err(self.error(ParseErrorKind::Expected("a non-negative integer exponent"))),
        }
    }

    fn atom(&mut self) -> Result<PolyFp, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(digits)) => {
                self.pos += 1;
                let p = self.ring.characteristic();
                // Reduce digit by digit so arbitrarily long literals are accepted.
                let c = digits
                    .bytes()
                    .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(PolyFp::constant(self.ring, c as i64))
            }
            Some(Tok::Ident(name)) => {
                let v = PolyFp::var(self.ring, &name)
                    .map_err(|_| self.error(ParseErrorKind::UnknownVariable(name.clone())))?;
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error(ParseErrorKind::Expected("`)`")));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Tok::RParen | Tok::Plus | Tok::Star | Tok::Caret | Tok::Minus) => {
                let c = match self.peek() {
                    Some(Tok::RParen) => ')',
                    Some(Tok::Plus) => '+',
                    Some(Tok::Star) => '*',
                    Some(Tok::Caret) => '^',
                    _ => '-',
                };
                Err(self.error(ParseErrorKind::UnexpectedChar(c)))
            }
            None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
        }
    }
}

/// Parses `text` into a polynomial of `ring`; whitespace and newlines are insignificant.
pub fn parse_poly(text: &str, ring: &Arc<Ring>) -> Result<PolyFp, ParseError> {
    let (toks, end) = lex(text)?;
    let mut p = Parser { toks, pos: 0, end, ring };
    let f = p.expr()?;
    if p.pos < p.toks.len() {
        let c = match &p.toks[p.pos].tok {
            Tok::Int(d) => d.chars().next().unwrap(),
            Tok::Ident(s) => s.chars().next().unwrap(),
            Tok::Plus => '+',
            Tok::Minus => '-',
            Tok::Star => '*',
            Tok::Caret => '^',
            Tok::LParen => '(',
            Tok::RParen => ')',
        };
        return Err(p.error(ParseErrorKind::UnexpectedChar(c)));
    }
    Ok(f)
}
