//! Pattern-based subterm selection and conversion-based single-step
//! rewriting for untyped lambda terms with de Bruijn indices.

pub mod cli;
pub mod position;
pub mod rewrite;
pub mod select;
pub mod syntax;
pub mod term;

pub use position::{Dir, Position};
pub use rewrite::{patsubst, Mode, RewriteError, RewriteReport, Substitution};
pub use select::{eval_pattern, Selection, SelectionSet};
pub use syntax::{parse_pattern_expr, parse_rules, parse_term, print_term, PatternExpr, PatternTerm, Rule};
pub use term::Term;
