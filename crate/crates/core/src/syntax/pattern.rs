use crate::position::{Dir, Position};
use crate::term::Term;

/// A term that may also contain wildcards (`_`) and a hole (`□`).
/// Equality ignores abstraction hints, as for [`Term`].
#[derive(Debug, Clone)]
pub enum PatternTerm {
    Free(String),
    Schematic(String),
    Bound(usize),
    App(Box<PatternTerm>, Box<PatternTerm>),
    Abs(String, Box<PatternTerm>),
    Wildcard,
    Hole,
}

impl PartialEq for PatternTerm {
    fn eq(&self, other: &Self) -> bool {
        use PatternTerm::*;
        match (self, other) {
            (Free(a), Free(b)) | (Schematic(a), Schematic(b)) => a == b,
            (Bound(i), Bound(j)) => i == j,
            (App(f, x), App(g, y)) => f == g && x == y,
            (Abs(_, s), Abs(_, t)) => s == t,
            (Wildcard, Wildcard) | (Hole, Hole) => true,
            _ => false,
        }
    }
}

impl Eq for PatternTerm {}

impl PatternTerm {
    pub fn app(f: PatternTerm, x: PatternTerm) -> PatternTerm {
        PatternTerm::App(Box::new(f), Box::new(x))
    }

    pub fn abs(hint: impl Into<String>, body: PatternTerm) -> PatternTerm {
        PatternTerm::Abs(hint.into(), Box::new(body))
    }

    pub fn hole_count(&self) -> usize {
        match self {
            PatternTerm::Hole => 1,
            PatternTerm::App(f, x) => f.hole_count() + x.hole_count(),
            PatternTerm::Abs(_, b) => b.hole_count(),
            _ => 0,
        }
    }

    pub fn has_wildcards(&self) -> bool {
        match self {
            PatternTerm::Wildcard | PatternTerm::Hole => true,
            PatternTerm::App(f, x) => f.has_wildcards() || x.has_wildcards(),
            PatternTerm::Abs(_, b) => b.has_wildcards(),
            _ => false,
        }
    }

    /// The plain term, if no wildcard or hole occurs.
    pub fn to_term(&self) -> Option<Term> {
        Some(match self {
            PatternTerm::Free(n) => Term::Free(n.clone()),
            PatternTerm::Schematic(n) => Term::Schematic(n.clone()),
            PatternTerm::Bound(i) => Term::Bound(*i),
            PatternTerm::App(f, x) => Term::app(f.to_term()?, x.to_term()?),
            PatternTerm::Abs(h, b) => Term::abs(h.clone(), b.to_term()?),
            PatternTerm::Wildcard | PatternTerm::Hole => return None,
        })
    }

    pub fn get(&self, pos: &Position) -> Option<&PatternTerm> {
        pos.dirs().iter().try_fold(self, |t, dir| match (dir, t) {
            (Dir::L, PatternTerm::App(f, _)) => Some(&**f),
            (Dir::R, PatternTerm::App(_, x)) => Some(&**x),
            (Dir::A, PatternTerm::Abs(_, b)) => Some(&**b),
            _ => None,
        })
    }

    /// `Some((l, r))` when the pattern is `Free(op) l r`.
    pub(crate) fn as_binop(&self) -> Option<(&str, &PatternTerm, &PatternTerm)> {
        let PatternTerm::App(f, r) = self else {
            return None;
        };
        let PatternTerm::App(head, l) = &**f else {
            return None;
        };
        match &**head {
            PatternTerm::Free(op) => Some((op, l, r)),
            _ => None,
        }
    }
}

impl From<&Term> for PatternTerm {
    fn from(t: &Term) -> Self {
        match t {
            Term::Free(n) => PatternTerm::Free(n.clone()),
            Term::Schematic(n) => PatternTerm::Schematic(n.clone()),
            Term::Bound(i) => PatternTerm::Bound(*i),
            Term::App(f, x) => PatternTerm::app((&**f).into(), (&**x).into()),
            Term::Abs(h, b) => PatternTerm::abs(h.clone(), (&**b).into()),
        }
    }
}

impl From<Term> for PatternTerm {
    fn from(t: Term) -> Self {
        PatternTerm::from(&t)
    }
}
