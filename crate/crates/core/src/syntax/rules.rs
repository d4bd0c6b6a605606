//! Rule files: one `name : lhs == rhs` per line, `#` comments.

use std::collections::BTreeSet;
use std::fmt;

use super::lexer::{is_identifier, Infix, Lexer, Tok};
use super::parser::{into_term, parse_term_at, ParseOptions};
use super::printer::print_term;
use super::{ParseError, ParseErrorKind};
use crate::term::{Term, IMP};

/// A named equation `lhs == rhs`; both sides may contain schematics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
}

impl Rule {
    pub fn new(name: impl Into<String>, lhs: Term, rhs: Term) -> Rule {
        Rule {
            name: name.into(),
            lhs,
            rhs,
        }
    }

    /// The rule with its sides swapped.
    pub fn symmetric(&self) -> Rule {
        Rule {
            name: self.name.clone(),
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
        }
    }

    pub fn schematics(&self) -> BTreeSet<String> {
        let mut s = self.lhs.schematics();
        s.extend(self.rhs.schematics());
        s
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut s = self.lhs.free_vars();
        s.extend(self.rhs.free_vars());
        s
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} : {} == {}",
            self.name,
            print_term(&self.lhs),
            print_term(&self.rhs)
        )
    }
}

pub fn parse_rules(text: &str) -> Result<Vec<Rule>, ParseError> {
    let mut rules: Vec<Rule> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let content = line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some((name_part, body)) = content.split_once(':') else {
            return Err(ParseError::new(
                line_no,
                1,
                ParseErrorKind::Syntax("expected `name : lhs == rhs`".into()),
            ));
        };
        let name = name_part.trim();
        let name_col = name_part.chars().take_while(|c| c.is_whitespace()).count() + 1;
        if !is_identifier(name) {
            return Err(ParseError::new(
                line_no,
                name_col,
                ParseErrorKind::Syntax(format!("`{name}` is not a valid rule name")),
            ));
        }
        if rules.iter().any(|r| r.name == name) {
            return Err(ParseError::new(
                line_no,
                name_col,
                ParseErrorKind::DuplicateRule(name.to_string()),
            ));
        }
        let body_col = name_part.chars().count() + 2;
        let err = |kind| ParseError::new(line_no, body_col, kind);
        let split = top_level_equiv(body, line_no, body_col)?;
        let Some((at, len)) = split else {
            return Err(err(ParseErrorKind::Syntax(
                "rule body must have the form `lhs == rhs`".into(),
            )));
        };
        let (lhs_text, rhs_text) = (&body[..at], &body[at + len..]);
        let rhs_col = body_col + body[..at + len].chars().count();
        let lhs = into_term(parse_term_at(lhs_text, ParseOptions::RULE, line_no, body_col)?);
        let rhs = into_term(parse_term_at(rhs_text, ParseOptions::RULE, line_no, rhs_col)?);
        if !lhs.is_closed() || !rhs.is_closed() {
            return Err(err(ParseErrorKind::LooseBoundInRule(name.to_string())));
        }
        if lhs.as_binop(IMP).is_some() || rhs.as_binop(IMP).is_some() {
            return Err(err(ParseErrorKind::ConditionalRule(name.to_string())));
        }
        rules.push(Rule::new(name, lhs, rhs));
    }
    Ok(rules)
}

/// Byte offset and length of the single `==` outside any brackets.
fn top_level_equiv(
    body: &str,
    line: usize,
    column: usize,
) -> Result<Option<(usize, usize)>, ParseError> {
    let tokens = Lexer::new(body, line, column).tokenize()?;
    let mut depth = 0i64;
    let mut found = None;
    for t in &tokens {
        match t.tok {
            Tok::LParen | Tok::LBracket => depth += 1,
            Tok::RParen | Tok::RBracket => depth -= 1,
            Tok::Op(Infix::Equiv) if depth == 0 => {
                if found.is_some() {
                    return Err(ParseError::new(
                        t.line,
                        t.column,
                        ParseErrorKind::Syntax("more than one top-level `==` in rule".into()),
                    ));
                }
                let len = if body[t.offset..].starts_with("==") {
                    2
                } else {
                    '≡'.len_utf8()
                };
                found = Some((t.offset, len));
            }
            _ => {}
        }
    }
    Ok(found)
}
