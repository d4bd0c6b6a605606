//! Untyped lambda terms with de Bruijn indices.
//!
//! A [`Bound`](Term::Bound) index `n` refers to the `n+1`-th abstraction
//! above it. Indices that point past the root of the term under
//! consideration are *loose*; a loose occurrence `Bound(k)` under `d` local
//! binders refers to missing abstraction `k - d + 1` (the innermost missing
//! abstraction is number 1).

use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::position::{Dir, Position};

/// Designated constant for meta-level universal quantification (`!!x. t`).
pub const ALL: &str = "all";
/// Designated constant for meta-level implication (`P ==> Q`).
pub const IMP: &str = "imp";
/// List constructors used by the `[t1, t2]` sugar.
pub const CONS: &str = "Cons";
pub const NIL: &str = "Nil";

#[derive(Debug, Clone)]
pub enum Term {
    /// Free variable or uninterpreted constant.
    Free(String),
    /// Rule variable `?x`.
    Schematic(String),
    Bound(usize),
    App(Box<Term>, Box<Term>),
    /// Abstraction; the hint is only a display note.
    Abs(String, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("position {0} does not address a subterm")]
    InvalidPosition(Position),
    #[error("term is not an abstraction")]
    NotAnAbstraction,
    #[error("variable `{0}` already occurs free in the abstraction")]
    NameClash(String),
}

// Equality ignores abstraction hints, which makes it alpha-equivalence.
impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Term::Free(a), Term::Free(b)) => a == b,
            (Term::Schematic(a), Term::Schematic(b)) => a == b,
            (Term::Bound(i), Term::Bound(j)) => i == j,
            (Term::App(f, x), Term::App(g, y)) => f == g && x == y,
            (Term::Abs(_, s), Term::Abs(_, t)) => s == t,
            _ => false,
        }
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        std::mem::discriminant(self).hash(state);
        match self {
            Term::Free(n) | Term::Schematic(n) => n.hash(state),
            Term::Bound(i) => i.hash(state),
            Term::App(f, x) => {
                f.hash(state);
                x.hash(state);
            }
            Term::Abs(_, body) => body.hash(state),
        }
    }
}

impl Term {
    pub fn free(name: impl Into<String>) -> Term {
        Term::Free(name.into())
    }

    pub fn schematic(name: impl Into<String>) -> Term {
        Term::Schematic(name.into())
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    /// `head a1 a2 … an`
    pub fn apps(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    /// Curried binary operator application `op l r`.
    pub fn binop(op: &str, lhs: Term, rhs: Term) -> Term {
        Term::app(Term::app(Term::free(op), lhs), rhs)
    }

    pub fn abs(hint: impl Into<String>, body: Term) -> Term {
        Term::Abs(hint.into(), Box::new(body))
    }

    pub fn alpha_eq(&self, other: &Term) -> bool {
        self == other
    }

    pub fn node_count(&self) -> usize {
        match self {
            Term::App(f, x) => 1 + f.node_count() + x.node_count(),
            Term::Abs(_, body) => 1 + body.node_count(),
            _ => 1,
        }
    }

    /// All positions of the term in pre-order: the node itself, then the
    /// function part before the argument part.
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::with_capacity(self.node_count());
        let mut cur = Position::root();
        self.collect_positions(&mut cur, &mut out);
        out
    }

    fn collect_positions(&self, cur: &mut Position, out: &mut Vec<Position>) {
        out.push(cur.clone());
        match self {
            Term::App(f, x) => {
                cur.push(Dir::L);
                f.collect_positions(cur, out);
                cur.pop();
                cur.push(Dir::R);
                x.collect_positions(cur, out);
                cur.pop();
            }
            Term::Abs(_, body) => {
                cur.push(Dir::A);
                body.collect_positions(cur, out);
                cur.pop();
            }
            _ => {}
        }
    }

    pub fn get(&self, pos: &Position) -> Option<&Term> {
        pos.dirs().iter().try_fold(self, |t, dir| match (dir, t) {
            (Dir::L, Term::App(f, _)) => Some(&**f),
            (Dir::R, Term::App(_, x)) => Some(&**x),
            (Dir::A, Term::Abs(_, body)) => Some(&**body),
            _ => None,
        })
    }

    /// The subterm at `pos`. Bound indices are not shifted, so the result
    /// may contain loose bounds.
    pub fn subterm(&self, pos: &Position) -> Result<&Term, TermError> {
        self.get(pos)
            .ok_or_else(|| TermError::InvalidPosition(pos.clone()))
    }

    pub fn is_valid_position(&self, pos: &Position) -> bool {
        self.get(pos).is_some()
    }

    pub fn is_closed(&self) -> bool {
        self.loose_depth() == 0
    }

    /// Number of abstractions that must enclose the term to close it: the
    /// largest missing-abstraction index over all loose occurrences.
    pub fn loose_depth(&self) -> usize {
        fn go(t: &Term, depth: usize) -> usize {
            match t {
                Term::Bound(k) if *k >= depth => k - depth + 1,
                Term::App(f, x) => go(f, depth).max(go(x, depth)),
                Term::Abs(_, body) => go(body, depth + 1),
                _ => 0,
            }
        }
        go(self, 0)
    }

    /// Replaces loose occurrences by whatever `replace` returns for their
    /// missing-abstraction index. The replacement must be closed; loose
    /// occurrences mapped to `None` keep their index.
    pub fn map_loose(&self, replace: &impl Fn(usize) -> Option<Term>) -> Term {
        fn go(t: &Term, depth: usize, replace: &impl Fn(usize) -> Option<Term>) -> Term {
            match t {
                Term::Bound(k) if *k >= depth => {
                    replace(k - depth + 1).unwrap_or_else(|| t.clone())
                }
                Term::App(f, x) => Term::app(go(f, depth, replace), go(x, depth, replace)),
                Term::Abs(hint, body) => Term::abs(hint.clone(), go(body, depth + 1, replace)),
                _ => t.clone(),
            }
        }
        go(self, 0, replace)
    }

    /// For `names = [v1, …, vn]` replaces `L1` by `vn`, `L2` by `v(n-1)`, …,
    /// `Ln` by `v1`. Loose bounds beyond `n` are left as they are.
    pub fn subst_loose(&self, names: &[String]) -> Term {
        let n = names.len();
        self.map_loose(&|i| (i <= n).then(|| Term::Free(names[n - i].clone())))
    }

    /// Body of an abstraction with its bound variable replaced by
    /// `Free(name)`.
    pub fn open_abs(&self, name: &str) -> Result<Term, TermError> {
        let Term::Abs(_, body) = self else {
            return Err(TermError::NotAnAbstraction);
        };
        if self.has_free(name) {
            return Err(TermError::NameClash(name.to_string()));
        }
        Ok(body.instantiate_bound(&Term::free(name)))
    }

    /// Replaces the occurrences bound by a just-removed binder (index equal
    /// to the local depth) by the closed term `value`, shifting deeper loose
    /// indices down by one.
    fn instantiate_bound(&self, value: &Term) -> Term {
        fn go(t: &Term, depth: usize, value: &Term) -> Term {
            match t {
                Term::Bound(k) if *k == depth => value.clone(),
                Term::Bound(k) if *k > depth => Term::Bound(k - 1),
                Term::App(f, x) => Term::app(go(f, depth, value), go(x, depth, value)),
                Term::Abs(hint, body) => Term::abs(hint.clone(), go(body, depth + 1, value)),
                _ => t.clone(),
            }
        }
        go(self, 0, value)
    }

    /// Abstracts over `Free(name)`, producing `Abs(hint, …)`. Inverse of
    /// [`Term::open_abs`].
    pub fn close_abs(&self, name: &str, hint: &str) -> Term {
        fn go(t: &Term, depth: usize, name: &str) -> Term {
            match t {
                Term::Free(n) if n == name => Term::Bound(depth),
                Term::Bound(k) if *k >= depth => Term::Bound(k + 1),
                Term::App(f, x) => Term::app(go(f, depth, name), go(x, depth, name)),
                Term::Abs(hint, body) => Term::abs(hint.clone(), go(body, depth + 1, name)),
                _ => t.clone(),
            }
        }
        Term::abs(hint, go(self, 0, name))
    }

    pub fn has_free(&self, name: &str) -> bool {
        match self {
            Term::Free(n) => n == name,
            Term::App(f, x) => f.has_free(name) || x.has_free(name),
            Term::Abs(_, body) => body.has_free(name),
            _ => false,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| {
            if let Term::Free(n) = t {
                out.insert(n.clone());
            }
        });
        out
    }

    pub fn schematics(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| {
            if let Term::Schematic(n) = t {
                out.insert(n.clone());
            }
        });
        out
    }

    pub fn has_schematics(&self) -> bool {
        match self {
            Term::Schematic(_) => true,
            Term::App(f, x) => f.has_schematics() || x.has_schematics(),
            Term::Abs(_, body) => body.has_schematics(),
            _ => false,
        }
    }

    /// Pre-order visit of every node.
    pub fn visit(&self, f: &mut impl FnMut(&Term)) {
        f(self);
        match self {
            Term::App(fun, arg) => {
                fun.visit(f);
                arg.visit(f);
            }
            Term::Abs(_, body) => body.visit(f),
            _ => {}
        }
    }

    /// `Some((f, x))` for `App(f, x)`.
    pub fn as_app(&self) -> Option<(&Term, &Term)> {
        match self {
            Term::App(f, x) => Some((f, x)),
            _ => None,
        }
    }

    /// `Some((l, r))` when the term is `Free(op) l r`.
    pub fn as_binop(&self, op: &str) -> Option<(&Term, &Term)> {
        let (f, r) = self.as_app()?;
        let (head, l) = f.as_app()?;
        matches!(head, Term::Free(n) if n == op).then_some((l, r))
    }

    /// `Some((hint, body))` when the term is `all (Abs(hint, body))`.
    pub fn as_all(&self) -> Option<(&str, &Term)> {
        match self.as_app()? {
            (Term::Free(n), Term::Abs(hint, body)) if n == ALL => Some((hint, body)),
            _ => None,
        }
    }
}
