//! Text syntax for primitive-recursive functions.
//!
//! ```text
//! program := { name "=" expr ";" } [ expr ]
//! expr    := "zero/" N | "succ" | "proj/" N "." N
//!          | "comp(" expr ";" expr { "," expr } ")"
//!          | "primrec(" expr ";" expr ")"
//!          | name
//! ```
//!
//! `#` starts a comment. The program denotes its trailing expression, or the
//! last definition when there is none. `Display` on [`PrFunction`] prints the
//! canonical, fully inlined form, which this parser reads back unchanged.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{PrError, PrFunction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DslError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(#[from] PrError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(usize),
    Slash,
    Dot,
    LParen,
    RParen,
    Semi,
    Comma,
    Equals,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, DslError> {
    let mut out = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let simple = match c {
                '/' => Some(Tok::Slash),
                '.' => Some(Tok::Dot),
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                ';' => Some(Tok::Semi),
                ',' => Some(Tok::Comma),
                '=' => Some(Tok::Equals),
                _ => None,
            };
            if let Some(tok) = simple {
                out.push(Spanned {
                    tok,
                    line: li + 1,
                    column,
                });
                i += 1;
            } else if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s.parse().map_err(|_| DslError::Syntax {
                    line: li + 1,
                    column,
                    message: format!("number `{s}` is too large"),
                })?;
                out.push(Spanned {
                    tok: Tok::Num(n),
                    line: li + 1,
                    column,
                });
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line: li + 1,
                    column,
                });
            } else {
                return Err(DslError::Syntax {
                    line: li + 1,
                    column,
                    message: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    Ok(out)
}

const KEYWORDS: [&str; 5] = ["zero", "succ", "proj", "comp", "primrec"];

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    defs: BTreeMap<String, PrFunction>,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn error_here(&self, message: impl Into<String>) -> DslError {
        let (line, column) = self
            .toks
            .get(self.pos)
            .map(|s| (s.line, s.column))
            .unwrap_or(self.end);
        DslError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), DslError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error_here(format!("expected {what}")))
        }
    }

    fn number(&mut self) -> Result<usize, DslError> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error_here("expected a number")),
        }
    }

    fn program(&mut self) -> Result<PrFunction, DslError> {
        let mut last = None;
        while self.pos < self.toks.len() {
            let is_def = matches!(self.peek(), Some(Tok::Ident(name)) if !KEYWORDS.contains(&name.as_str()))
                && matches!(
                    self.toks.get(self.pos + 1).map(|s| &s.tok),
                    Some(Tok::Equals)
                );
            if is_def {
                let Some(Tok::Ident(name)) = self.peek().cloned() else {
                    unreachable!()
                };
                self.pos += 2;
                let f = self.expr()?;
                self.expect(Tok::Semi, "`;` after definition")?;
                self.defs.insert(name, f.clone());
                last = Some(f);
            } else {
                let f = self.expr()?;
                if self.pos < self.toks.len() {
                    return Err(self.error_here("unexpected input after expression"));
                }
                return Ok(f);
            }
        }
        last.ok_or_else(|| self.error_here("empty program"))
    }

    fn expr(&mut self) -> Result<PrFunction, DslError> {
        let Some(Tok::Ident(word)) = self.peek().cloned() else {
            return Err(self.error_here("expected a function"));
        };
        self.pos += 1;
        let f = match word.as_str() {
            "succ" => PrFunction::Succ,
            "zero" => {
                self.expect(Tok::Slash, "`/` after zero")?;
                PrFunction::Zero {
                    arity: self.number()?,
                }
            }
            "proj" => {
                self.expect(Tok::Slash, "`/` after proj")?;
                let arity = self.number()?;
                self.expect(Tok::Dot, "`.` between arity and index")?;
                let index = self.number()?;
                PrFunction::Proj { arity, index }
            }
            "comp" => {
                self.expect(Tok::LParen, "`(`")?;
                let outer = self.expr()?;
                self.expect(Tok::Semi, "`;` after the outer function")?;
                let mut inners = vec![self.expr()?];
                while self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    inners.push(self.expr()?);
                }
                self.expect(Tok::RParen, "`)`")?;
                PrFunction::Comp {
                    outer: Box::new(outer),
                    inners,
                }
            }
            "primrec" => {
                self.expect(Tok::LParen, "`(`")?;
                let base = self.expr()?;
                self.expect(Tok::Semi, "`;` after the base function")?;
                let step = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                PrFunction::PrimRec {
                    base: Box::new(base),
                    step: Box::new(step),
                }
            }
            name => {
                self.pos -= 1;
                let f = self
                    .defs
                    .get(name)
                    .cloned()
                    .ok_or_else(|| self.error_here(format!("undefined function `{name}`")))?;
                self.pos += 1;
                f
            }
        };
        f.arity()?;
        Ok(f)
    }
}

/// Parses a program and returns the function it denotes, validated.
pub fn parse_program(text: &str) -> Result<PrFunction, DslError> {
    let toks = lex(text)?;
    let lines = text.lines().count().max(1);
    let last_len = text.lines().last().map(|l| l.chars().count()).unwrap_or(0);
    let mut p = Parser {
        toks,
        pos: 0,
        defs: BTreeMap::new(),
        end: (lines, last_len + 1),
    };
    p.program()
}

impl std::str::FromStr for PrFunction {
    type Err = DslError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_program(s)
    }
}
