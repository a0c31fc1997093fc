use std::fmt;

use thiserror::Error;

use super::{Comparison, EntropyExpr, InfoTerm, Statement, TermKind};
use crate::rational::{ParseRationalError, Rational};
use crate::varset::Universe;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    Unexpected {
        found: String,
        expected: &'static str,
    },
    UnknownLabel(String),
    MalformedRational(ParseRationalError),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::Unexpected { found, expected } => {
                write!(f, "expected {expected}, found {found}")
            }
            ParseErrorKind::UnknownLabel(l) => write!(f, "unknown variable `{l}`"),
            ParseErrorKind::MalformedRational(e) => write!(f, "malformed rational: {e}"),
        }
    }
}

/// A parse failure at byte offset `pos` of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at column {}: {kind}", .pos + 1)]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Statement(Statement),
    Expr(EntropyExpr),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    LParen,
    RParen,
    Comma,
    Colon,
    Bar,
    Plus,
    Minus,
    Star,
    Rel(Comparison),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Rel(r) => format!("`{r}`"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < text.len() {
        let c = text[i..].chars().next().unwrap_or(' ');
        let start = i;
        let single = |t: Tok| (t, c.len_utf8());
        let (tok, width) = match c {
            c if c.is_whitespace() => {
                i += c.len_utf8();
                continue;
            }
            '(' => single(Tok::LParen),
            ')' => single(Tok::RParen),
            ',' => single(Tok::Comma),
            ':' => single(Tok::Colon),
            '|' => single(Tok::Bar),
            '+' => single(Tok::Plus),
            '-' | '−' => single(Tok::Minus),
            '*' | '·' => single(Tok::Star),
            '≤' => single(Tok::Rel(Comparison::Le)),
            '≥' => single(Tok::Rel(Comparison::Ge)),
            '<' | '>' if bytes.get(i + 1) == Some(&b'=') => (
                Tok::Rel(if c == '<' {
                    Comparison::Le
                } else {
                    Comparison::Ge
                }),
                2,
            ),
            '=' => (
                Tok::Rel(Comparison::Eq),
                if bytes.get(i + 1) == Some(&b'=') {
                    2
                } else {
                    1
                },
            ),
            c if c.is_ascii_digit()
                || (c == '.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) =>
            {
                let mut j = i;
                let digits = |j: &mut usize| {
                    while bytes.get(*j).is_some_and(u8::is_ascii_digit) {
                        *j += 1;
                    }
                };
                digits(&mut j);
                if bytes.get(j) == Some(&b'.') {
                    j += 1;
                    digits(&mut j);
                }
                if matches!(bytes.get(j), Some(b'e' | b'E'))
                    && (bytes.get(j + 1).is_some_and(u8::is_ascii_digit)
                        || (matches!(bytes.get(j + 1), Some(b'+' | b'-'))
                            && bytes.get(j + 2).is_some_and(u8::is_ascii_digit)))
                {
                    j += 2;
                    digits(&mut j);
                }
                if bytes.get(j) == Some(&b'/') {
                    j += 1;
                    digits(&mut j);
                }
                (Tok::Number(text[i..j].to_string()), j - i)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i + 1;
                while bytes
                    .get(j)
                    .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_' || *b == b'\'')
                {
                    j += 1;
                }
                (Tok::Ident(text[i..j].to_string()), j - i)
            }
            c => {
                return Err(ParseError {
                    pos: i,
                    kind: ParseErrorKind::UnexpectedChar(c),
                })
            }
        };
        out.push((start, tok));
        i += width;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    universe: &'a Universe,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &'static str) -> ParseError {
        ParseError {
            pos: self.pos(),
            kind: ParseErrorKind::Unexpected {
                found: self.peek().describe(),
                expected,
            },
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn expr(&mut self) -> Result<EntropyExpr, ParseError> {
        let mut items = Vec::new();
        let mut negate = match self.peek() {
            Tok::Plus => {
                self.bump();
                false
            }
            Tok::Minus => {
                self.bump();
                true
            }
            _ => false,
        };
        loop {
            let p = self.product()?;
            items.push(if negate { p.scale(-Rational::one()) } else { p });
            negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap_or(EntropyExpr::Sum(Vec::new()))
        } else {
            EntropyExpr::Sum(items)
        })
    }

    fn product(&mut self) -> Result<EntropyExpr, ParseError> {
        if let Tok::Number(text) = self.peek().clone() {
            let pos = self.pos();
            self.bump();
            let value: Rational = text.parse().map_err(|e| ParseError {
                pos,
                kind: ParseErrorKind::MalformedRational(e),
            })?;
            let starred = *self.peek() == Tok::Star;
            if starred {
                self.bump();
            }
            return match self.peek() {
                Tok::Ident(_) | Tok::LParen => Ok(self.atom()?.scale(value)),
                _ if starred => Err(self.error("a term or `(`")),
                _ => Ok(EntropyExpr::Const(value)),
            };
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<EntropyExpr, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) if name == "H" || name == "I" => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let mut args = vec![self.list()?];
                if name == "I" {
                    self.expect(Tok::Colon, "`:`")?;
                    args.push(self.list()?);
                    if *self.peek() == Tok::Colon {
                        self.bump();
                        args.push(self.list()?);
                    }
                }
                let given = if *self.peek() == Tok::Bar {
                    self.bump();
                    self.list()?
                } else {
                    Vec::new()
                };
                self.expect(
                    Tok::RParen,
                    if name == "I" {
                        "`:`, `|` or `)`"
                    } else {
                        "`|` or `)`"
                    },
                )?;
                let kind = match args.len() {
                    1 => TermKind::Entropy,
                    2 => TermKind::Mutual,
                    _ => TermKind::Mutual3,
                };
                Ok(EntropyExpr::Term(InfoTerm { kind, args, given }))
            }
            _ => Err(self.error("`H(`, `I(`, a rational or `(`")),
        }
    }

    fn list(&mut self) -> Result<Vec<String>, ParseError> {
        let mut out = Vec::new();
        loop {
            let pos = self.pos();
            match self.bump() {
                Tok::Ident(l) if self.universe.contains(&l) => {
                    if !out.contains(&l) {
                        out.push(l);
                    }
                }
                Tok::Ident(l) => {
                    return Err(ParseError {
                        pos,
                        kind: ParseErrorKind::UnknownLabel(l),
                    })
                }
                _ => {
                    self.at -= 1;
                    return Err(self.error("a variable label"));
                }
            }
            if *self.peek() != Tok::Comma {
                return Ok(out);
            }
            self.bump();
        }
    }
}

fn parser<'a>(text: &str, universe: &'a Universe) -> Result<Parser<'a>, ParseError> {
    Ok(Parser {
        toks: lex(text)?,
        at: 0,
        universe,
    })
}

/// Parses either a bare expression or a statement `expr REL expr`.
pub fn parse(text: &str, universe: &Universe) -> Result<Parsed, ParseError> {
    let mut p = parser(text, universe)?;
    let lhs = p.expr()?;
    let out = match p.peek().clone() {
        Tok::Rel(relation) => {
            p.bump();
            let rhs = p.expr()?;
            Parsed::Statement(Statement { lhs, relation, rhs })
        }
        _ => Parsed::Expr(lhs),
    };
    p.expect(Tok::End, "an operator, a relation or end of input")?;
    Ok(out)
}

pub fn parse_expr(text: &str, universe: &Universe) -> Result<EntropyExpr, ParseError> {
    let mut p = parser(text, universe)?;
    let e = p.expr()?;
    p.expect(Tok::End, "an operator or end of input")?;
    Ok(e)
}

pub fn parse_statement(text: &str, universe: &Universe) -> Result<Statement, ParseError> {
    let mut p = parser(text, universe)?;
    let lhs = p.expr()?;
    let relation = match p.peek() {
        Tok::Rel(r) => *r,
        _ => return Err(p.error("`<=`, `>=` or `=`")),
    };
    p.bump();
    let rhs = p.expr()?;
    p.expect(Tok::End, "an operator or end of input")?;
    Ok(Statement { lhs, relation, rhs })
}
