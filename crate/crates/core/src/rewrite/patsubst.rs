use std::collections::{BTreeMap, BTreeSet};

use super::{conv_path, rewrite_at_root, RewriteError, Substitution};
use crate::position::Position;
use crate::select::{eval_pattern, Selection};
use crate::syntax::{parse_term, PatternExpr, Rule};
use crate::term::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Rewrite the first selection, in selection order, where the rule
    /// applies.
    #[default]
    First,
    /// Rewrite every selection where the rule applies, deepest first.
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteReport {
    pub position: Position,
    pub rule_name: String,
    pub substitution: Substitution,
    /// Names the pattern gave to binders above the position, by a-depth.
    pub binder_names: BTreeMap<usize, String>,
}

/// Parses `?name = text` instantiations. Binder names given by the pattern
/// stand for the opened bound variables, which carry exactly those names,
/// so the texts parse as ordinary terms.
pub fn resolve_where(
    bindings: &[(String, String)],
    rule: &Rule,
) -> Result<Substitution, RewriteError> {
    let known = rule.schematics();
    let mut sigma = Substitution::new();
    for (raw, text) in bindings {
        let name = raw.trim().trim_start_matches('?').to_string();
        if !known.contains(&name) {
            return Err(RewriteError::UnknownSchematic(name));
        }
        if sigma.contains(&name) {
            return Err(RewriteError::DuplicateBinding(name));
        }
        let t = parse_term(text).map_err(|error| RewriteError::WhereParse {
            name: name.clone(),
            error,
        })?;
        sigma.insert(name, t);
    }
    Ok(sigma)
}

/// Rewrites `root` with `rule` at the subterms selected by `pe`.
pub fn patsubst(
    root: &Term,
    pe: &PatternExpr,
    rule: &Rule,
    bindings: &[(String, String)],
    symmetric: bool,
    mode: Mode,
) -> Result<(Term, Vec<RewriteReport>), RewriteError> {
    let rule = if symmetric {
        rule.symmetric()
    } else {
        rule.clone()
    };
    let seed = resolve_where(bindings, &rule)?;
    let set = eval_pattern(pe, root)?;
    if set.is_empty() {
        return Err(RewriteError::EmptySelection);
    }
    let ctx = Context::new(&rule, &seed);
    let mut failure = None;
    let mut note = |e: RewriteError| {
        if failure.is_none() && e.is_significant() {
            failure = Some(e);
        }
    };

    match mode {
        Mode::First => {
            for sel in &set {
                match ctx.attempt(root, sel) {
                    Ok((t, report)) => return Ok((t, vec![report])),
                    Err(e) => note(e),
                }
            }
        }
        Mode::All => {
            let mut order: Vec<&Selection> = set.iter().collect();
            order.sort_by_key(|s| std::cmp::Reverse(s.pos.len()));
            let mut current = root.clone();
            let mut reports: Vec<RewriteReport> = Vec::new();
            for sel in order {
                if reports
                    .iter()
                    .any(|r| r.position.is_strict_prefix_of(&sel.pos))
                {
                    continue;
                }
                match ctx.attempt(&current, sel) {
                    Ok((t, report)) => {
                        current = t;
                        reports.push(report);
                    }
                    Err(e) => note(e),
                }
            }
            if !reports.is_empty() {
                return Ok((current, reports));
            }
        }
    }
    Err(failure.unwrap_or(RewriteError::NoApplicableSelection(set.len())))
}

impl RewriteError {
    /// Errors worth reporting over a plain "does not apply".
    fn is_significant(&self) -> bool {
        !matches!(
            self,
            RewriteError::Mismatch
                | RewriteError::CaptureViolation(_)
                | RewriteError::InvalidPosition(_)
        )
    }
}

struct Context<'a> {
    rule: &'a Rule,
    seed: &'a Substitution,
    rule_frees: BTreeSet<String>,
    where_frees: BTreeSet<String>,
}

impl<'a> Context<'a> {
    fn new(rule: &'a Rule, seed: &'a Substitution) -> Self {
        let mut where_frees = BTreeSet::new();
        for (_, t) in seed.iter() {
            where_frees.extend(t.free_vars());
        }
        Context {
            rule,
            seed,
            rule_frees: rule.free_vars(),
            where_frees,
        }
    }

    fn attempt(&self, term: &Term, sel: &Selection) -> Result<(Term, RewriteReport), RewriteError> {
        let term_frees = term.free_vars();
        for n in sel.names.values() {
            if term_frees.contains(n) || self.rule_frees.contains(n) {
                return Err(RewriteError::NameClash(n.clone()));
            }
        }
        let mut avoid = term_frees;
        avoid.extend(self.rule_frees.iter().cloned());
        avoid.extend(self.where_frees.iter().cloned());
        avoid.extend(sel.names.values().cloned());

        let mut sigma = None;
        let mut inner = |t: &Term| {
            let (eq, s) = rewrite_at_root(self.rule, self.seed, t)?;
            sigma = Some(s);
            Ok(eq)
        };
        let eq = conv_path(&sel.pos, &sel.names, &avoid, term, &mut inner)?;
        let report = RewriteReport {
            position: sel.pos.clone(),
            rule_name: self.rule.name.clone(),
            substitution: sigma.expect("inner conversion ran"),
            binder_names: sel.names.clone(),
        };
        Ok((eq.into_rhs(), report))
    }
}
