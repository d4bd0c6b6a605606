//! Surface syntax for terms, patterns, pattern expressions and rule files.

mod lexer;
mod parser;
mod pattern;
mod pattern_expr;
mod printer;
mod rules;

use thiserror::Error;

pub use lexer::is_identifier;
pub use parser::{
    parse_pattern, parse_schematic_term, parse_term, parse_term_with, ParseOptions,
};
pub use pattern::PatternTerm;
pub use pattern_expr::{parse_pattern_expr, Atom, PatternExpr, PatternUnit};
pub use printer::{print_marked, print_pattern, print_pattern_ascii, print_term, strip_markers};
pub use rules::{parse_rules, Rule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("schematic variable `?{0}` is not allowed here")]
    SchematicNotAllowed(String),
    #[error("pattern symbol `{0}` is not allowed here")]
    PatternSymbolNotAllowed(&'static str),
    #[error("a pattern may contain at most one hole")]
    MultipleHoles,
    #[error("empty pattern")]
    EmptyPattern,
    #[error("duplicate rule name `{0}`")]
    DuplicateRule(String),
    #[error("rule `{0}` contains a loose bound variable")]
    LooseBoundInRule(String),
    #[error("rule `{0}` is conditional; only unconditional equations are supported")]
    ConditionalRule(String),
}
