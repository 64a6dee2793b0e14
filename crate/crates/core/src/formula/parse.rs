//! Infix and Polish parsers.
//!
//! Infix precedence, tightest first: `~` and quantifiers, `&`, `|`, `->`,
//! `<->`. `&` and `|` associate to the left, `->` and `<->` to the right.
//! `(x)` is the universal quantifier and `(Ex)` (or `(E x)`) the existential.

use thiserror::Error;

use super::Formula;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at {pos}: {msg}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Tilde,
    Amp,
    Bar,
    Arrow,
    DArrow,
    LParen,
    RParen,
    Comma,
    Eq,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Tok::Tilde,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'=' => Tok::Eq,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::DArrow
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::new(i, format!("unexpected character `{ch}`")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(self.offset(), msg))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected identifier"),
        }
    }

    fn equiv(&mut self) -> Result<Formula, ParseError> {
        let l = self.implication()?;
        if self.peek() == Some(&Tok::DArrow) {
            self.pos += 1;
            let r = self.equiv()?;
            return Ok(Formula::equiv(l, r));
        }
        Ok(l)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let l = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let r = self.implication()?;
            return Ok(Formula::implies(l, r));
        }
        Ok(l)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut l = self.conjunction()?;
        while self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            l = Formula::or(l, self.conjunction()?);
        }
        Ok(l)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut l = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            l = Formula::and(l, self.unary()?);
        }
        Ok(l)
    }

    fn starts_unary(tok: Option<&Tok>) -> bool {
        matches!(tok, Some(Tok::Ident(_)) | Some(Tok::Tilde) | Some(Tok::LParen))
    }

    /// Recognizes `(x)`, `(Ex)` and `(E x)` when a unary formula follows.
    fn quantifier_prefix(&self) -> Option<(bool, String, usize)> {
        if self.peek() != Some(&Tok::LParen) {
            return None;
        }
        match (self.peek_at(1), self.peek_at(2), self.peek_at(3)) {
            (Some(Tok::Ident(e)), Some(Tok::Ident(x)), Some(Tok::RParen)) if e == "E" => {
                Self::starts_unary(self.peek_at(4)).then(|| (true, x.clone(), 4))
            }
            (Some(Tok::Ident(name)), Some(Tok::RParen), next) if Self::starts_unary(next) => {
                match name.strip_prefix('E') {
                    Some(rest) if rest.starts_with(|c: char| c.is_ascii_alphabetic()) => {
                        Some((true, rest.to_string(), 3))
                    }
                    _ => Some((false, name.clone(), 3)),
                }
            }
            _ => None,
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::LParen) => {
                if let Some((existential, x, skip)) = self.quantifier_prefix() {
                    self.pos += skip;
                    let body = self.unary()?;
                    return Ok(if existential { Formula::exists(x, body) } else { Formula::forall(x, body) });
                }
                self.pos += 1;
                let f = self.equiv()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Ident(_)) => {
                let name = self.ident()?;
                match self.peek() {
                    Some(Tok::LParen) => {
                        self.pos += 1;
                        let mut args = vec![self.ident()?];
                        while self.peek() == Some(&Tok::Comma) {
                            self.pos += 1;
                            args.push(self.ident()?);
                        }
                        self.expect(Tok::RParen, "`)` closing argument list")?;
                        Ok(Formula::Atom(name, args))
                    }
                    Some(Tok::Eq) => {
                        self.pos += 1;
                        let rhs = self.ident()?;
                        Ok(Formula::Atom("=".into(), vec![name, rhs]))
                    }
                    _ => Ok(Formula::Var(name)),
                }
            }
            Some(_) => self.err("expected a formula"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses the ASCII infix notation.
pub fn parse_infix(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let f = p.equiv()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

/// Parses Polish prefix notation: `N` not, `K` and, `A` or, `C` implies,
/// `E` equivalence, lowercase letters for variables. Whitespace is ignored.
pub fn parse_polish(text: &str) -> Result<Formula, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut pos = 0;
    let f = polish_term(&chars, &mut pos, text.len())?;
    if pos != chars.len() {
        return Err(ParseError::new(chars[pos].0, "trailing symbols"));
    }
    Ok(f)
}

fn polish_term(chars: &[(usize, char)], pos: &mut usize, end: usize) -> Result<Formula, ParseError> {
    let Some(&(off, c)) = chars.get(*pos) else {
        return Err(ParseError::new(end, "premature end of input"));
    };
    *pos += 1;
    let mut binary = |make: fn(Formula, Formula) -> Formula| -> Result<Formula, ParseError> {
        let l = polish_term(chars, pos, end)?;
        let r = polish_term(chars, pos, end)?;
        Ok(make(l, r))
    };
    match c {
        'N' => Ok(Formula::not(polish_term(chars, pos, end)?)),
        'K' => binary(Formula::and),
        'A' => binary(Formula::or),
        'C' => binary(Formula::implies),
        'E' => binary(Formula::equiv),
        c if c.is_ascii_lowercase() => Ok(Formula::Var(c.to_string())),
        c if c.is_ascii_uppercase() => Err(ParseError::new(off, format!("unknown functor `{c}`"))),
        c => Err(ParseError::new(off, format!("unexpected character `{c}`"))),
    }
}
