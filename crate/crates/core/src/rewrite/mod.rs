//! Single-step rewriting with conversions.
//!
//! A conversion maps a term `t` to an [`Equation`] `t ≡ t'`. The basic
//! conversion [`conv_rewrite`] rewrites at the root with an instantiated
//! rule; [`conv_path`] lifts a conversion to a position by descending with
//! function, argument and abstraction steps. [`patsubst`] ties this to the
//! selection language.

mod conv;
mod matcher;
mod patsubst;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::position::Position;
use crate::select::SelectError;
use crate::syntax::{print_term, ParseError, Rule};
use crate::term::Term;

pub use conv::{conv_path, conv_rewrite, fresh_name, rewrite_at_root, Conversion};
pub use matcher::fo_match;
pub use patsubst::{patsubst, resolve_where, Mode, RewriteReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("term does not match the rule's left-hand side")]
    Mismatch,
    #[error("`?{0}` would capture a bound variable")]
    CaptureViolation(String),
    #[error("`?{0}` is not instantiated; give it with a where-binding")]
    UninstantiatedVariable(String),
    #[error("name `{0}` clashes with a free variable in scope")]
    NameClash(String),
    #[error("position {0} does not address a subterm")]
    InvalidPosition(Position),
    #[error("the pattern selects nothing")]
    EmptySelection,
    #[error("the rule applies at none of the {0} selected subterms")]
    NoApplicableSelection(usize),
    #[error("`?{0}` does not occur in the rule")]
    UnknownSchematic(String),
    #[error("`?{0}` is bound twice")]
    DuplicateBinding(String),
    #[error("where-binding for `?{name}`: {error}")]
    WhereParse { name: String, error: ParseError },
    #[error(transparent)]
    Select(#[from] SelectError),
}

/// Assignment of terms to schematic names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution(BTreeMap<String, Term>);

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn get(&self, name: &str) -> Option<&Term> {
        self.0.get(name)
    }

    pub fn insert(&mut self, name: impl Into<String>, t: Term) -> Option<Term> {
        self.0.insert(name.into(), t)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Term)> {
        self.0.iter()
    }

    /// Replaces every assigned schematic in `t`. Assigned terms are closed,
    /// so no index adjustment is needed.
    pub fn apply(&self, t: &Term) -> Term {
        match t {
            Term::Schematic(n) => self.0.get(n).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, x) => Term::app(self.apply(f), self.apply(x)),
            Term::Abs(hint, body) => Term::abs(hint.clone(), self.apply(body)),
            _ => t.clone(),
        }
    }
}

impl FromIterator<(String, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (String, Term)>>(iter: I) -> Self {
        Substitution(iter.into_iter().collect())
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (n, t)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "?{n} := {}", print_term(t))?;
        }
        f.write_str("}")
    }
}

/// `lhs ≡ rhs`, only built by the conversions in this module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    lhs: Term,
    rhs: Term,
}

impl Equation {
    pub(crate) fn new(lhs: Term, rhs: Term) -> Equation {
        Equation { lhs, rhs }
    }

    pub fn refl(t: &Term) -> Equation {
        Equation::new(t.clone(), t.clone())
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    pub fn into_rhs(self) -> Term {
        self.rhs
    }
}

/// Both sides of `r` with `σ` applied.
pub fn instantiate_rule(r: &Rule, sigma: &Substitution) -> Rule {
    Rule::new(r.name.clone(), sigma.apply(&r.lhs), sigma.apply(&r.rhs))
}
