//! Pattern expressions:
//!
//! ```text
//! <atom>    ::= <term> | concl | asm | prop
//! <pattern> ::= (in <atom> | at <atom> | for <names>) [<pattern>]
//! ```
//!
//! Term atoms are double-quoted; a single bare identifier or `_` is also
//! accepted as a term atom.

use std::fmt;

use super::parser::{parse_term_at, ParseOptions};
use super::pattern::PatternTerm;
use super::printer::print_pattern;
use super::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Term(PatternTerm),
    Concl,
    Asm,
    Prop,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternUnit {
    In(Atom),
    At(Atom),
    For(Vec<String>),
}

/// A non-empty sequence of units; the rightmost unit applies first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternExpr {
    pub units: Vec<PatternUnit>,
}

impl PatternExpr {
    pub fn new(units: Vec<PatternUnit>) -> Option<PatternExpr> {
        (!units.is_empty()).then_some(PatternExpr { units })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Term(t) => write!(f, "\"{}\"", print_pattern(t)),
            Atom::Concl => f.write_str("concl"),
            Atom::Asm => f.write_str("asm"),
            Atom::Prop => f.write_str("prop"),
        }
    }
}

impl fmt::Display for PatternUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternUnit::In(a) => write!(f, "in {a}"),
            PatternUnit::At(a) => write!(f, "at {a}"),
            PatternUnit::For(names) => write!(f, "for {}", names.join(" ")),
        }
    }
}

impl fmt::Display for PatternExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, u) in self.units.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{u}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Word {
    Keyword(&'static str),
    Ident(String),
    Quoted(String),
}

#[derive(Debug)]
struct Lexeme {
    word: Word,
    line: usize,
    column: usize,
}

const KEYWORDS: [&str; 6] = ["in", "at", "for", "concl", "asm", "prop"];

fn lex(text: &str) -> Result<Vec<Lexeme>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    let advance = |c: char, line: &mut usize, column: &mut usize| {
        if c == '\n' {
            *line += 1;
            *column = 1;
        } else {
            *column += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            advance(c, &mut line, &mut column);
            continue;
        }
        let (l0, c0) = (line, column);
        if c == '"' {
            chars.next();
            advance(c, &mut line, &mut column);
            let mut s = String::new();
            loop {
                match chars.next() {
                    None => {
                        return Err(ParseError::new(
                            l0,
                            c0,
                            ParseErrorKind::Syntax("unterminated string".into()),
                        ))
                    }
                    Some('"') => {
                        advance('"', &mut line, &mut column);
                        break;
                    }
                    Some('\\') if chars.peek() == Some(&'"') => {
                        chars.next();
                        advance('\\', &mut line, &mut column);
                        advance('"', &mut line, &mut column);
                        s.push('"');
                    }
                    Some(ch) => {
                        advance(ch, &mut line, &mut column);
                        s.push(ch);
                    }
                }
            }
            out.push(Lexeme {
                word: Word::Quoted(s),
                line: l0,
                column: c0,
            });
            continue;
        }
        if super::lexer::is_ident_char(c) || c == '?' {
            let mut s = String::new();
            while let Some(&ch) = chars.peek() {
                if !(super::lexer::is_ident_char(ch) || (s.is_empty() && ch == '?')) {
                    break;
                }
                s.push(ch);
                chars.next();
                advance(ch, &mut line, &mut column);
            }
            let word = match KEYWORDS.iter().find(|k| **k == s) {
                Some(k) => Word::Keyword(k),
                None => Word::Ident(s),
            };
            out.push(Lexeme {
                word,
                line: l0,
                column: c0,
            });
            continue;
        }
        return Err(ParseError::new(
            l0,
            c0,
            ParseErrorKind::Syntax(format!("unexpected character `{c}` in pattern")),
        ));
    }
    Ok(out)
}

pub fn parse_pattern_expr(text: &str) -> Result<PatternExpr, ParseError> {
    let lexemes = lex(text)?;
    if lexemes.is_empty() {
        return Err(ParseError::new(1, 1, ParseErrorKind::EmptyPattern));
    }
    let mut units = Vec::new();
    let mut it = lexemes.into_iter().peekable();
    while let Some(lx) = it.next() {
        let kw = match lx.word {
            Word::Keyword(k @ ("in" | "at" | "for")) => k,
            other => {
                return Err(ParseError::new(
                    lx.line,
                    lx.column,
                    ParseErrorKind::Syntax(format!(
                        "expected `in`, `at` or `for`, found {}",
                        describe(&other)
                    )),
                ))
            }
        };
        if kw == "for" {
            let mut names = Vec::new();
            while let Some(Lexeme {
                word: Word::Ident(_),
                ..
            }) = it.peek()
            {
                let Some(Lexeme {
                    word: Word::Ident(n),
                    line,
                    column,
                }) = it.next()
                else {
                    unreachable!()
                };
                if !super::lexer::is_identifier(&n) {
                    return Err(ParseError::new(
                        line,
                        column,
                        ParseErrorKind::Syntax(format!("`{n}` is not a variable name")),
                    ));
                }
                names.push(n);
            }
            if names.is_empty() {
                return Err(ParseError::new(
                    lx.line,
                    lx.column,
                    ParseErrorKind::Syntax("`for` needs at least one name".into()),
                ));
            }
            units.push(PatternUnit::For(names));
            continue;
        }
        let Some(arg) = it.next() else {
            return Err(ParseError::new(
                lx.line,
                lx.column,
                ParseErrorKind::Syntax(format!("`{kw}` needs an atom")),
            ));
        };
        let atom = match arg.word {
            Word::Keyword("concl") => Atom::Concl,
            Word::Keyword("asm") => Atom::Asm,
            Word::Keyword("prop") => Atom::Prop,
            Word::Quoted(s) => Atom::Term(parse_term_at(
                &s,
                ParseOptions::PATTERN,
                arg.line,
                arg.column + 1,
            )?),
            Word::Ident(s) => Atom::Term(parse_term_at(
                &s,
                ParseOptions::PATTERN,
                arg.line,
                arg.column,
            )?),
            other => {
                return Err(ParseError::new(
                    arg.line,
                    arg.column,
                    ParseErrorKind::Syntax(format!("expected an atom, found {}", describe(&other))),
                ))
            }
        };
        units.push(if kw == "in" {
            PatternUnit::In(atom)
        } else {
            PatternUnit::At(atom)
        });
    }
    Ok(PatternExpr { units })
}

fn describe(w: &Word) -> String {
    match w {
        Word::Keyword(k) => format!("keyword `{k}`"),
        Word::Ident(s) => format!("`{s}`"),
        Word::Quoted(s) => format!("\"{s}\""),
    }
}
