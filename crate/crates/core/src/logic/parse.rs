use std::collections::BTreeSet;

use thiserror::Error;

use super::{Formula, Interval};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown atom `{atom}` at {pos}")]
    UnknownAtom { atom: String, pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u32),
    Inf,
    True,
    False,
    Not,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Unary(&'static str),
    Binary(&'static str),
}

const UNARY: [&str; 5] = ["X", "F", "G", "wF", "wG"];
const BINARY: [&str; 3] = ["U", "uU", "wU"];

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            ',' => Tok::Comma,
            '~' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            '0'..='9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..=i].parse().map_err(|_| ParseError::Syntax {
                    pos: start,
                    msg: "interval bound too large".into(),
                })?;
                Tok::Num(n)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                let word = &text[start..=i];
                if let Some(op) = UNARY.iter().find(|k| **k == word) {
                    Tok::Unary(op)
                } else if let Some(op) = BINARY.iter().find(|k| **k == word) {
                    Tok::Binary(op)
                } else {
                    match word {
                        "true" => Tok::True,
                        "false" => Tok::False,
                        "inf" => Tok::Inf,
                        _ => Tok::Ident(word.to_string()),
                    }
                }
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    alphabet: Option<&'a BTreeSet<String>>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.offset(), msg: msg.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.until()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            lhs = Formula::and(lhs, self.until()?);
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if let Some(Tok::Binary(op)) = self.peek().cloned() {
            self.pos += 1;
            let i = self.interval()?;
            let rhs = self.until()?;
            return Ok(match op {
                "U" => Formula::until(lhs, rhs, i),
                "uU" => Formula::dual_until(lhs, rhs, i),
                _ => Formula::weak_until(lhs, rhs, i),
            });
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Unary(op)) => {
                self.pos += 1;
                let i = self.interval()?;
                let body = self.unary()?;
                Ok(match op {
                    "X" => Formula::next(i, body),
                    "F" => Formula::finally(i, body),
                    "G" => Formula::globally(i, body),
                    "wF" => Formula::weak_finally(i, body),
                    _ => Formula::weak_globally(i, body),
                })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::True) => {
                self.pos += 1;
                Ok(Formula::True)
            }
            Some(Tok::False) => {
                self.pos += 1;
                Ok(Formula::False)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(alpha) = self.alphabet {
                    if !alpha.contains(&name) {
                        return Err(ParseError::UnknownAtom { atom: name, pos: at });
                    }
                }
                Ok(Formula::Atom(name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.implication()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(_) => self.err("expected a formula"),
            None => self.err("unexpected end of input"),
        }
    }

    /// Optional interval suffix; `(` only opens an interval when a number follows.
    fn interval(&mut self) -> Result<Interval, ParseError> {
        let lower_closed = match (self.peek(), self.toks.get(self.pos + 1).map(|t| &t.0)) {
            (Some(Tok::LBrack), _) => true,
            (Some(Tok::LParen), Some(Tok::Num(_))) => false,
            _ => return Ok(Interval::full()),
        };
        let at = self.offset();
        self.pos += 1;
        let lower = match self.peek() {
            Some(Tok::Num(n)) => *n,
            _ => return self.err("expected interval lower bound"),
        };
        self.pos += 1;
        self.expect(Tok::Comma, "`,`")?;
        let upper = match self.peek() {
            Some(Tok::Num(n)) => Some(*n),
            Some(Tok::Inf) => None,
            _ => return self.err("expected interval upper bound"),
        };
        self.pos += 1;
        let upper_closed = match self.peek() {
            Some(Tok::RBrack) => true,
            Some(Tok::RParen) => false,
            _ => return self.err("expected `]` or `)`"),
        };
        self.pos += 1;
        Interval::new(lower, upper, lower_closed, upper_closed)
            .map_err(|e| ParseError::Syntax { pos: at, msg: e.to_string() })
    }
}

fn run(text: &str, alphabet: Option<&BTreeSet<String>>) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, end: text.len(), alphabet };
    let f = p.implication()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

/// Parses a formula; any identifier is accepted as an atom.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    run(text, None)
}

/// Parses a formula whose atoms must belong to `alphabet`.
pub fn parse_formula_with(text: &str, alphabet: &BTreeSet<String>) -> Result<Formula, ParseError> {
    run(text, Some(alphabet))
}
