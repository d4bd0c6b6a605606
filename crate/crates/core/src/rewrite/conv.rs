use std::collections::{BTreeMap, BTreeSet};

use super::{fo_match, Equation, RewriteError, Substitution};
use crate::position::{Dir, Position};
use crate::syntax::Rule;
use crate::term::Term;

pub type Conversion<'a> = dyn FnMut(&Term) -> Result<Equation, RewriteError> + 'a;

/// Rewrites `t` at its root with `rule`, starting from the bindings in
/// `seed`. Returns the equation together with the full substitution.
pub fn rewrite_at_root(
    rule: &Rule,
    seed: &Substitution,
    t: &Term,
) -> Result<(Equation, Substitution), RewriteError> {
    let sigma = fo_match(&rule.lhs, t, seed)?;
    let rhs = sigma.apply(&rule.rhs);
    if let Some(n) = rhs.schematics().into_iter().next() {
        return Err(RewriteError::UninstantiatedVariable(n));
    }
    Ok((Equation::new(t.clone(), rhs), sigma))
}

/// The basic conversion: `rule` instantiated by matching, applied at the
/// root.
pub fn conv_rewrite<'a>(
    rule: &'a Rule,
    seed: &'a Substitution,
) -> impl FnMut(&Term) -> Result<Equation, RewriteError> + 'a {
    move |t| rewrite_at_root(rule, seed, t).map(|(eq, _)| eq)
}

/// `hint` if nothing has taken it, otherwise `hint` followed by the smallest
/// numeric suffix that is free.
pub fn fresh_name(hint: &str, taken: impl Fn(&str) -> bool) -> String {
    let base = if hint.is_empty() { "x" } else { hint };
    if !taken(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|c| !taken(c))
        .expect("unbounded suffixes")
}

/// Lifts `inner` to position `pos` of `t`: `l` is a function step, `r` an
/// argument step and `a` an abstraction step. The abstraction at a-depth `k`
/// is opened with `names[k]` when given, otherwise with a fresh name that
/// is neither free in `t` nor in `avoid`.
pub fn conv_path(
    pos: &Position,
    names: &BTreeMap<usize, String>,
    avoid: &BTreeSet<String>,
    t: &Term,
    inner: &mut Conversion<'_>,
) -> Result<Equation, RewriteError> {
    if !t.is_valid_position(pos) {
        return Err(RewriteError::InvalidPosition(pos.clone()));
    }
    let mut avoid = avoid.clone();
    avoid.extend(t.free_vars());
    step(pos.dirs(), 0, names, &avoid, t, inner)
}

fn step(
    dirs: &[Dir],
    depth: usize,
    names: &BTreeMap<usize, String>,
    avoid: &BTreeSet<String>,
    t: &Term,
    inner: &mut Conversion<'_>,
) -> Result<Equation, RewriteError> {
    let Some((dir, rest)) = dirs.split_first() else {
        let eq = inner(t)?;
        debug_assert_eq!(eq.lhs(), t);
        return Ok(eq);
    };
    let eq = match (dir, t) {
        (Dir::L, Term::App(f, x)) => {
            let e = step(rest, depth, names, avoid, f, inner)?;
            Term::app(e.into_rhs(), (**x).clone())
        }
        (Dir::R, Term::App(f, x)) => {
            let e = step(rest, depth, names, avoid, x, inner)?;
            Term::app((**f).clone(), e.into_rhs())
        }
        (Dir::A, Term::Abs(hint, _)) => {
            let name = match names.get(&depth) {
                Some(n) => n.clone(),
                None => fresh_name(hint, |c| avoid.contains(c) || t.has_free(c)),
            };
            let body = t
                .open_abs(&name)
                .map_err(|_| RewriteError::NameClash(name.clone()))?;
            let e = step(rest, depth + 1, names, avoid, &body, inner)?;
            e.rhs().close_abs(&name, hint)
        }
        _ => unreachable!("position validated by conv_path"),
    };
    Ok(Equation::new(t.clone(), eq))
}
