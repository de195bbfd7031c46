//! Recursive-descent parser for the ASCII formula syntax.
//!
//! The canonical grammar parenthesizes every equation. The parser also
//! accepts a bare `t = s` wherever a formula may start, so hand-written
//! input such as `A x1 . x1 = x1` reads naturally; printing always
//! produces the canonical form.

use thiserror::Error;

use super::{Formula, FormulaError, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Zero,
    Ident(String),
    Succ,
    ForAll,
    Exists,
    LParen,
    RParen,
    Equals,
    Plus,
    Star,
    Tilde,
    Amp,
    Bar,
    Arrow,
    Less,
    Dot,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Zero => "`0`".into(),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Succ => "`S`".into(),
            Tok::ForAll => "`A`".into(),
            Tok::Exists => "`E`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Less => "`<`".into(),
            Tok::Dot => "`.`".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, line: usize) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let err = |message: String| ParseError {
            line,
            column,
            message,
        };
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Equals,
            '+' => Tok::Plus,
            '*' => Tok::Star,
            '~' => Tok::Tilde,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '<' => Tok::Less,
            '.' => Tok::Dot,
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    i += 1;
                    Tok::Arrow
                } else {
                    return Err(err("expected `->`".into()));
                }
            }
            '0' => {
                if chars.get(i + 1).is_some_and(|d| d.is_ascii_alphanumeric()) {
                    return Err(err(
                        "numbers other than `0` must be written with `S(...)`".into()
                    ));
                }
                Tok::Zero
            }
            c if c.is_ascii_digit() => {
                return Err(err(
                    "numbers other than `0` must be written with `S(...)`".into()
                ))
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i + 1 < chars.len()
                    && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_')
                {
                    i += 1;
                }
                let word: String = chars[start..=i].iter().collect();
                match word.as_str() {
                    "A" => Tok::ForAll,
                    "E" => Tok::Exists,
                    "S" => Tok::Succ,
                    _ => Tok::Ident(word),
                }
            }
            other => return Err(err(format!("unexpected character `{other}`"))),
        };
        out.push(Spanned { tok, line, column });
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self
            .toks
            .get(self.pos)
            .map(|s| (s.line, s.column))
            .unwrap_or(self.end);
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn found(&self) -> String {
        self.peek()
            .map(Tok::describe)
            .unwrap_or_else(|| "end of input".into())
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!(
                "expected {}, found {}",
                want.describe(),
                self.found()
            )))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                self.pos += 1;
                Ok(name)
            }
            _ => Err(self.error(format!("expected a variable, found {}", self.found()))),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(Tok::Zero) => {
                self.pos += 1;
                Ok(Term::Zero)
            }
            Some(Tok::Ident(_)) => Ok(Term::Var(self.ident()?)),
            Some(Tok::Succ) => {
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::succ(t))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let a = self.term()?;
                let op = self.peek().cloned();
                match op {
                    Some(Tok::Plus) | Some(Tok::Star) => self.pos += 1,
                    _ => {
                        return Err(
                            self.error(format!("expected `+` or `*`, found {}", self.found()))
                        )
                    }
                }
                let b = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(if op == Some(Tok::Plus) {
                    Term::plus(a, b)
                } else {
                    Term::times(a, b)
                })
            }
            _ => Err(self.error(format!("expected a term, found {}", self.found()))),
        }
    }

    /// Runs `f`, rewinding the cursor if it fails.
    fn attempt<T>(
        &mut self,
        f: impl FnOnce(&mut Self) -> Result<T, ParseError>,
    ) -> Result<T, ParseError> {
        let save = self.pos;
        let r = f(self);
        if r.is_err() {
            self.pos = save;
        }
        r
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula::not(self.formula()?))
            }
            Some(Tok::ForAll) | Some(Tok::Exists) => {
                let universal = self.peek() == Some(&Tok::ForAll);
                self.pos += 1;
                let var = self.ident()?;
                let bound = if self.peek() == Some(&Tok::Less) {
                    self.pos += 1;
                    let at = self.pos;
                    let t = self.term()?;
                    if t.mentions(&var) {
                        self.pos = at;
                        return Err(self.error(FormulaError::SelfBounded { var }.to_string()));
                    }
                    Some(t)
                } else {
                    None
                };
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(match (universal, bound) {
                    (true, None) => Formula::forall(var, body),
                    (false, None) => Formula::exists(var, body),
                    (true, Some(t)) => Formula::bounded_forall(var, t, body),
                    (false, Some(t)) => Formula::bounded_exists(var, t, body),
                })
            }
            _ => {
                if let Ok(eq) = self.attempt(|p| {
                    let a = p.term()?;
                    p.expect(Tok::Equals)?;
                    let b = p.term()?;
                    Ok(Formula::eq(a, b))
                }) {
                    return Ok(eq);
                }
                if self.peek() != Some(&Tok::LParen) {
                    // rerun the equation reading to surface its error
                    let a = self.term()?;
                    self.expect(Tok::Equals)?;
                    let b = self.term()?;
                    return Ok(Formula::eq(a, b));
                }
                if let Ok(eq) = self.attempt(|p| {
                    p.expect(Tok::LParen)?;
                    let a = p.term()?;
                    p.expect(Tok::Equals)?;
                    let b = p.term()?;
                    p.expect(Tok::RParen)?;
                    Ok(Formula::eq(a, b))
                }) {
                    return Ok(eq);
                }
                self.expect(Tok::LParen)?;
                let left = self.formula()?;
                let op = self.peek().cloned();
                match op {
                    Some(Tok::Arrow) | Some(Tok::Amp) | Some(Tok::Bar) => self.pos += 1,
                    _ => {
                        return Err(self
                            .error(format!("expected `->`, `&` or `|`, found {}", self.found())))
                    }
                }
                let right = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(match op {
                    Some(Tok::Arrow) => Formula::implies(left, right),
                    Some(Tok::Amp) => Formula::and(left, right),
                    _ => Formula::or(left, right),
                })
            }
        }
    }
}

fn parser_for(text: &str, line: usize) -> Result<Parser, ParseError> {
    Ok(Parser {
        toks: lex(text, line)?,
        pos: 0,
        end: (line, text.chars().count() + 1),
    })
}

/// Parses a single formula (on a single line).
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_formula_at(text, 1)
}

fn parse_formula_at(text: &str, line: usize) -> Result<Formula, ParseError> {
    let mut p = parser_for(text, line)?;
    let f = p.formula()?;
    if p.pos < p.toks.len() {
        return Err(p.error(format!("unexpected {} after formula", p.found())));
    }
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = parser_for(text, 1)?;
    let t = p.term()?;
    if p.pos < p.toks.len() {
        return Err(p.error(format!("unexpected {} after term", p.found())));
    }
    Ok(t)
}

/// One formula per line; blank lines and `#` comments are skipped.
pub fn parse_formula_file(text: &str) -> Result<Vec<Formula>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        out.push(parse_formula_at(content, i + 1)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{mk_bt, pa_axiom};

    #[test]
    fn round_trip_examples() {
        let f = parse_formula("A x1 . x1 = x1").unwrap();
        assert_eq!(f.to_string(), "A x1 . (x1 = x1)");
        assert_eq!(parse_formula("A x1 . (x1 = x1)").unwrap(), f);

        for text in [
            "E x1 . ((x1 + S(0)) = 0)",
            "E x1 < S(0) . ((x1 + S(0)) = 0)",
            "(A x . (x = 0) -> ~E y < (x * x) . ((y + x) = S(y)))",
            "((0 = 0) -> (A x . ((x = x) -> (S(x) = S(x))) -> A x . (x = x)))",
            "((a = b) | ((c = d) & ~(e = f)))",
        ] {
            assert_eq!(parse_formula(text).unwrap().to_string(), text);
        }
        for i in 1..=8 {
            let ax = pa_axiom(i).unwrap();
            assert_eq!(parse_formula(&ax.to_string()).unwrap(), ax);
        }
        assert_eq!(parse_formula(&mk_bt().to_string()).unwrap(), mk_bt());
    }

    #[test]
    fn bare_equations_inside_connectives() {
        let f = parse_formula("(x = y -> S(x) = S(y))").unwrap();
        assert_eq!(f.to_string(), "((x = y) -> (S(x) = S(y)))");
        let g = parse_formula("(x + 0) = x").unwrap();
        assert_eq!(g, pa_axiom(5).unwrap().substitute("x1", &Term::var("x")));
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_formula("A x1 . (x1 = )").unwrap_err();
        assert_eq!((e.line, e.column), (1, 14));
        let e = parse_formula("(x = y) (z = w)").unwrap_err();
        assert_eq!((e.line, e.column), (1, 9));
        let e = parse_formula("x").unwrap_err();
        assert_eq!((e.line, e.column), (1, 2));
        assert!(parse_formula("E x < S(x) . (x = x)")
            .unwrap_err()
            .message
            .contains("mentions"));
        let e = parse_formula("(1 = 1)").unwrap_err();
        assert_eq!((e.line, e.column), (1, 2));
        assert!(parse_formula("(x ? y)").is_err());
        assert!(parse_formula("((x = y) = z)").is_err());
    }

    #[test]
    fn files_skip_comments() {
        let text = "# header\n(x = x)   # trailing\n\n~(0 = S(x))\n(x = \n";
        let err = parse_formula_file(text).unwrap_err();
        assert_eq!(err.line, 5);
        let ok = parse_formula_file("# c\n(x = x)\n  \nA y . (y = y)\n").unwrap();
        assert_eq!(ok.len(), 2);
    }
}
