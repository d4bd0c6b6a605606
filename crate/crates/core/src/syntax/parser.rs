//! Precedence-climbing parser for terms and pattern terms.

use super::lexer::{Assoc, Infix, Lexer, Tok, Token};
use super::pattern::PatternTerm;
use super::{ParseError, ParseErrorKind};
use crate::term::{Term, ALL, CONS, NIL};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Accept `_` and `□`.
    pub allow_pattern: bool,
    /// Accept `?x`.
    pub allow_schematic: bool,
}

impl ParseOptions {
    pub const GOAL: ParseOptions = ParseOptions {
        allow_pattern: false,
        allow_schematic: false,
    };
    pub const RULE: ParseOptions = ParseOptions {
        allow_pattern: false,
        allow_schematic: true,
    };
    pub const PATTERN: ParseOptions = ParseOptions {
        allow_pattern: true,
        allow_schematic: false,
    };
}

/// Parses a single term under the given options.
pub fn parse_term_with(text: &str, opts: ParseOptions) -> Result<PatternTerm, ParseError> {
    parse_term_at(text, opts, 1, 1)
}

pub(crate) fn parse_term_at(
    text: &str,
    opts: ParseOptions,
    line: usize,
    column: usize,
) -> Result<PatternTerm, ParseError> {
    let tokens = Lexer::new(text, line, column).tokenize()?;
    let mut p = Parser {
        tokens,
        idx: 0,
        env: Vec::new(),
        opts,
        holes: 0,
    };
    let t = p.expr(0)?;
    match p.peek() {
        Tok::Eof => Ok(t),
        other => Err(p.syntax(format!("unexpected {}", other.describe()))),
    }
}

/// Parses a plain term: no schematics, wildcards or holes.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    Ok(into_term(parse_term_with(text, ParseOptions::GOAL)?))
}

/// Parses a term that may contain schematic variables.
pub fn parse_schematic_term(text: &str) -> Result<Term, ParseError> {
    Ok(into_term(parse_term_with(text, ParseOptions::RULE)?))
}

/// Parses a pattern term (wildcards and at most one hole, no schematics).
pub fn parse_pattern(text: &str) -> Result<PatternTerm, ParseError> {
    parse_term_with(text, ParseOptions::PATTERN)
}

pub(crate) fn into_term(p: PatternTerm) -> Term {
    p.to_term()
        .expect("parser rejects pattern symbols when they are not allowed")
}

struct Parser {
    tokens: Vec<Token>,
    idx: usize,
    /// Names of the enclosing binders, innermost last.
    env: Vec<String>,
    opts: ParseOptions,
    holes: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.idx].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.idx + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.idx].clone();
        if self.idx + 1 < self.tokens.len() {
            self.idx += 1;
        }
        t
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let t = &self.tokens[self.idx];
        ParseError::new(t.line, t.column, kind)
    }

    fn syntax(&self, msg: String) -> ParseError {
        self.error_here(ParseErrorKind::Syntax(msg))
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.syntax(format!(
                "expected {}, found {}",
                tok.describe(),
                self.peek().describe()
            )))
        }
    }

    fn expr(&mut self, min_prec: u32) -> Result<PatternTerm, ParseError> {
        match self.peek() {
            Tok::Lambda => return self.binder(false),
            Tok::MetaAll => return self.binder(true),
            _ => {}
        }
        let mut lhs = self.application()?;
        let mut last_non_assoc: Option<u32> = None;
        while let Tok::Op(op) = *self.peek() {
            let prec = op.precedence();
            if prec < min_prec {
                break;
            }
            if op.assoc() == Assoc::Non && last_non_assoc == Some(prec) {
                return Err(self.syntax(format!(
                    "operator `{}` is non-associative; add parentheses",
                    op.symbol()
                )));
            }
            self.next();
            let rhs_min = match op.assoc() {
                Assoc::Right => prec,
                Assoc::Left | Assoc::Non => prec + 1,
            };
            let rhs = self.expr(rhs_min)?;
            lhs = binop(op, lhs, rhs);
            last_non_assoc = (op.assoc() == Assoc::Non).then_some(prec);
        }
        Ok(lhs)
    }

    fn binder(&mut self, meta_all: bool) -> Result<PatternTerm, ParseError> {
        self.next();
        let mut names = Vec::new();
        while let Tok::Ident(n) = self.peek() {
            names.push(n.clone());
            self.next();
        }
        if names.is_empty() {
            return Err(self.syntax(format!(
                "expected a bound variable name, found {}",
                self.peek().describe()
            )));
        }
        self.expect(Tok::Dot)?;
        let depth = self.env.len();
        self.env.extend(names.iter().cloned());
        let body = self.expr(0);
        self.env.truncate(depth);
        let body = body?;
        Ok(names.into_iter().rev().fold(body, |body, n| {
            let abs = PatternTerm::abs(n, body);
            if meta_all {
                PatternTerm::app(PatternTerm::Free(ALL.into()), abs)
            } else {
                abs
            }
        }))
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_) | Tok::Schematic(_) | Tok::Wildcard | Tok::Hole | Tok::LParen | Tok::LBracket
        )
    }

    fn application(&mut self) -> Result<PatternTerm, ParseError> {
        if !self.starts_atom() {
            return Err(self.syntax(format!("expected a term, found {}", self.peek().describe())));
        }
        let mut t = self.atom()?;
        while self.starts_atom() {
            let arg = self.atom()?;
            t = PatternTerm::app(t, arg);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<PatternTerm, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.next();
                Ok(match self.env.iter().rposition(|n| *n == name) {
                    Some(i) => PatternTerm::Bound(self.env.len() - 1 - i),
                    None => PatternTerm::Free(name),
                })
            }
            Tok::Schematic(name) => {
                if !self.opts.allow_schematic {
                    return Err(self.error_here(ParseErrorKind::SchematicNotAllowed(name)));
                }
                self.next();
                Ok(PatternTerm::Schematic(name))
            }
            Tok::Wildcard => {
                if !self.opts.allow_pattern {
                    return Err(self.error_here(ParseErrorKind::PatternSymbolNotAllowed("_")));
                }
                self.next();
                Ok(PatternTerm::Wildcard)
            }
            Tok::Hole => {
                if !self.opts.allow_pattern {
                    return Err(self.error_here(ParseErrorKind::PatternSymbolNotAllowed("□")));
                }
                self.holes += 1;
                if self.holes > 1 {
                    return Err(self.error_here(ParseErrorKind::MultipleHoles));
                }
                self.next();
                Ok(PatternTerm::Hole)
            }
            Tok::LParen => {
                self.next();
                if let (Tok::Op(op), Tok::RParen) = (self.peek().clone(), self.peek_at(1)) {
                    self.next();
                    self.next();
                    return Ok(PatternTerm::Free(op.constant().into()));
                }
                let t = self.expr(0)?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::LBracket => {
                self.next();
                let mut items = vec![self.expr(0)?];
                while *self.peek() == Tok::Comma {
                    self.next();
                    items.push(self.expr(0)?);
                }
                self.expect(Tok::RBracket)?;
                Ok(items
                    .into_iter()
                    .rev()
                    .fold(PatternTerm::Free(NIL.into()), |tail, x| {
                        PatternTerm::app(PatternTerm::app(PatternTerm::Free(CONS.into()), x), tail)
                    }))
            }
            other => Err(self.syntax(format!("expected a term, found {}", other.describe()))),
        }
    }
}

fn binop(op: Infix, lhs: PatternTerm, rhs: PatternTerm) -> PatternTerm {
    PatternTerm::app(
        PatternTerm::app(PatternTerm::Free(op.constant().into()), lhs),
        rhs,
    )
}
