//! Recursive-descent parser for the ASCII term grammar.
//!
//! ```text
//! identity := arrow ('=' | '<=') arrow
//! arrow    := join ('->' join)?          non-associative
//! join     := meet ('\/' meet)*          left-associative
//! meet     := postfix ('/\' postfix)*    left-associative
//! postfix  := atom ('\'' | '*' | '+')*
//! atom     := var | '0' | '1' | '(' arrow ')'
//! var      := [a-z][a-z0-9_]*
//! ```

use thiserror::Error;

use super::{Identity, IdentityKind, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok<'a> {
    Var(&'a str),
    Zero,
    One,
    Join,
    Meet,
    Arrow,
    Prime,
    Star,
    Plus,
    LParen,
    RParen,
    Eq,
    Le,
}

impl Tok<'_> {
    fn describe(&self) -> String {
        match self {
            Tok::Var(v) => format!("variable {v:?}"),
            Tok::Zero => "'0'".into(),
            Tok::One => "'1'".into(),
            Tok::Join => "'\\/'".into(),
            Tok::Meet => "'/\\'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::Prime => "'''".into(),
            Tok::Star => "'*'".into(),
            Tok::Plus => "'+'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Eq => "'='".into(),
            Tok::Le => "'<='".into(),
        }
    }
}

fn err(position: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        position,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok<'_>)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let two = |s: &[u8]| bytes[i..].starts_with(s);
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'a'..=b'z' => {
                i += 1;
                while i < bytes.len() && matches!(bytes[i], b'a'..=b'z' | b'0'..=b'9' | b'_') {
                    i += 1;
                }
                out.push((start, Tok::Var(&text[start..i])));
                continue;
            }
            b'0' => Tok::Zero,
            b'1' => Tok::One,
            b'\'' => Tok::Prime,
            b'*' => Tok::Star,
            b'+' => Tok::Plus,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'=' => Tok::Eq,
            _ if two(b"\\/") => {
                i += 1;
                Tok::Join
            }
            _ if two(b"/\\") => {
                i += 1;
                Tok::Meet
            }
            _ if two(b"->") => {
                i += 1;
                Tok::Arrow
            }
            _ if two(b"<=") => {
                i += 1;
                Tok::Le
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(err(i, format!("unexpected character {ch:?}")));
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            end: text.len(),
        })
    }

    fn peek(&self) -> Option<Tok<'a>> {
        self.toks.get(self.pos).map(|&(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(p, _)| p)
    }

    fn bump(&mut self) -> Option<Tok<'a>> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => err(
                self.offset(),
                format!("expected {wanted}, found {}", t.describe()),
            ),
            None => err(self.end, format!("expected {wanted}, found end of input")),
        }
    }

    fn arrow(&mut self) -> Result<Term, ParseError> {
        let lhs = self.join()?;
        if self.peek() == Some(Tok::Arrow) {
            self.bump();
            let rhs = self.join()?;
            if self.peek() == Some(Tok::Arrow) {
                return Err(err(
                    self.offset(),
                    "'->' is non-associative; add parentheses",
                ));
            }
            return Ok(lhs.arrow(rhs));
        }
        Ok(lhs)
    }

    fn join(&mut self) -> Result<Term, ParseError> {
        let mut t = self.meet()?;
        while self.peek() == Some(Tok::Join) {
            self.bump();
            t = t.join(self.meet()?);
        }
        Ok(t)
    }

    fn meet(&mut self) -> Result<Term, ParseError> {
        let mut t = self.postfix()?;
        while self.peek() == Some(Tok::Meet) {
            self.bump();
            t = t.meet(self.postfix()?);
        }
        Ok(t)
    }

    fn postfix(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        loop {
            t = match self.peek() {
                Some(Tok::Prime) => t.neg(),
                Some(Tok::Star) => t.star(),
                Some(Tok::Plus) => t.plus(),
                _ => return Ok(t),
            };
            self.bump();
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(Tok::Var(v)) => {
                self.bump();
                Ok(Term::var(v))
            }
            Some(Tok::Zero) => {
                self.bump();
                Ok(Term::Zero)
            }
            Some(Tok::One) => {
                self.bump();
                Ok(Term::One)
            }
            Some(Tok::LParen) => {
                self.bump();
                let t = self.arrow()?;
                if self.peek() != Some(Tok::RParen) {
                    return Err(self.unexpected("')'"));
                }
                self.bump();
                Ok(t)
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }
}

/// Parses a single term.
pub fn parse(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.arrow()?;
    p.finish()?;
    Ok(t)
}

/// Parses `lhs = rhs` or `lhs <= rhs`.
pub fn parse_identity(name: &str, text: &str) -> Result<Identity, ParseError> {
    let mut p = Parser::new(text)?;
    let lhs = p.arrow()?;
    let kind = match p.peek() {
        Some(Tok::Eq) => IdentityKind::Equation,
        Some(Tok::Le) => IdentityKind::Inequality,
        _ => return Err(p.unexpected("'=' or '<='")),
    };
    p.bump();
    let rhs = p.arrow()?;
    p.finish()?;
    Ok(Identity {
        name: name.to_string(),
        lhs,
        rhs,
        kind,
    })
}

/// Parses `name : lhs = rhs`. Positions in errors are relative to the line.
pub fn parse_identity_line(line: &str) -> Result<Identity, ParseError> {
    let Some(colon) = line.find(':') else {
        return Err(err(0, "expected 'name : identity'"));
    };
    let name = line[..colon].trim();
    if name.is_empty() {
        return Err(err(0, "empty identity name"));
    }
    parse_identity(name, &line[colon + 1..]).map_err(|e| ParseError {
        position: e.position + colon + 1,
        message: e.message,
    })
}

/// One identity per line; blank lines and `#` comments are skipped. Error
/// positions are byte offsets into the whole text.
pub fn parse_identity_file(text: &str) -> Result<Vec<Identity>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let line = raw.split('#').next().unwrap_or("");
        if !line.trim().is_empty() {
            let id = parse_identity_line(line).map_err(|e| ParseError {
                position: e.position + offset,
                message: e.message,
            })?;
            out.push(id);
        }
        offset += raw.len();
    }
    Ok(out)
}
