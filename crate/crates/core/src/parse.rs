//! Recursive-descent parser for the term language.
//!
//! ```text
//! term := tensor ("." term)?          -- "." is right-associative
//! tensor := atom ("*" atom)*          -- "*" is left-associative, binds tighter
//! atom := "id" | "m" | "unit" | "comul" | "tr" | "swap" | "empty"
//!       | "pe(" label ")" | "pu(" label ")" | "(" term ")"
//! ```

use thiserror::Error;

use crate::term::{Generator, PrimeLabel, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Parses a term. No arity checking is done here.
pub fn parse(src: &str) -> Result<Term, SyntaxError> {
    Parser::new(src, false).parse_all()
}

/// Parses a rule pattern, where labels may be metavariables `?name`.
pub fn parse_pattern(src: &str) -> Result<Term, SyntaxError> {
    Parser::new(src, true).parse_all()
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    allow_metavars: bool,
}

impl Parser {
    fn new(src: &str, allow_metavars: bool) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            allow_metavars,
        }
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> SyntaxError {
        let (line, column) = self.location(pos);
        SyntaxError {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), SyntaxError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.error_at(self.pos, format!("expected '{c}', found '{d}'"))),
            None => Err(self.error_at(self.pos, format!("expected '{c}', found end of input"))),
        }
    }

    fn parse_all(mut self) -> Result<Term, SyntaxError> {
        let t = self.term()?;
        match self.peek() {
            None => Ok(t),
            Some(c) => Err(self.error_at(self.pos, format!("unexpected '{c}'"))),
        }
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        let left = self.tensor()?;
        if self.peek() == Some('.') {
            self.pos += 1;
            let right = self.term()?;
            Ok(Term::compose(left, right))
        } else {
            Ok(left)
        }
    }

    fn tensor(&mut self) -> Result<Term, SyntaxError> {
        let mut acc = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let rhs = self.atom()?;
            acc = Term::tensor(acc, rhs);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Term, SyntaxError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(')')?;
                Ok(t)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let word: String = self.chars[start..self.pos].iter().collect();
                let g = match word.as_str() {
                    "id" => Generator::Id,
                    "m" => Generator::Mul,
                    "unit" => Generator::Unit,
                    "comul" => Generator::Comul,
                    "tr" => Generator::Counit,
                    "swap" => Generator::Swap,
                    "empty" => return Ok(Term::Empty),
                    "pe" => Generator::PrimeEndo(self.label()?),
                    "pu" => Generator::PrimeUnit(self.label()?),
                    _ => return Err(self.error_at(start, format!("unknown generator '{word}'"))),
                };
                Ok(Term::Gen(g))
            }
            Some(c) => Err(self.error_at(self.pos, format!("unexpected '{c}'"))),
            None => Err(self.error_at(self.pos, "unexpected end of input")),
        }
    }

    fn label(&mut self) -> Result<PrimeLabel, SyntaxError> {
        // no whitespace allowed between the keyword and '('
        if self.chars.get(self.pos) != Some(&'(') {
            return Err(self.error_at(self.pos, "expected '(' directly after pe/pu"));
        }
        self.pos += 1;
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos] != ')' {
            self.pos += 1;
        }
        if self.pos >= self.chars.len() {
            return Err(self.error_at(start, "unterminated prime label"));
        }
        let raw: String = self.chars[start..self.pos].iter().collect();
        self.pos += 1;
        let label = match raw.strip_prefix('?') {
            Some(name) if self.allow_metavars => PrimeLabel::metavar(name),
            Some(_) => {
                return Err(self.error_at(start, "metavariables are only allowed in rule patterns"))
            }
            None => PrimeLabel::new(raw.clone()),
        };
        label.map_err(|_| self.error_at(start, format!("invalid prime label {raw:?}")))
    }
}
