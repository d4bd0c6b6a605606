//! Subterm selection combinators and the pattern-expression evaluator.
//!
//! A [`SelectionSet`] is an ordered, duplicate-free sequence of
//! [`Selection`]s. Each selection carries its root-relative position and
//! the names given so far to binders crossed on the way down; the
//! selection's term has those binders' loose occurrences replaced by the
//! corresponding free variables.

mod eval;
mod goal;
mod matching;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use thiserror::Error;

use crate::position::{Dir, Position};
use crate::syntax::PatternTerm;
use crate::term::Term;

pub use eval::{apply_pattern, eval_pattern};
pub use goal::{strip_goal, Goal};
pub use matching::{binds_to, matches, pos_hole};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SelectError {
    #[error("name `{0}` is given twice")]
    DuplicateName(String),
    #[error("pattern has no hole")]
    NoHole,
    #[error("pattern has more than one hole")]
    MultipleHoles,
    #[error("position {0} does not address a subterm of the pattern")]
    InvalidPosition(Position),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Selection {
    pub term: Term,
    pub pos: Position,
    /// Binder names keyed by a-depth (0 = outermost abstraction on `pos`).
    pub names: BTreeMap<usize, String>,
}

impl Selection {
    pub fn root(t: &Term) -> Selection {
        Selection {
            term: t.clone(),
            pos: Position::root(),
            names: BTreeMap::new(),
        }
    }

    /// A-depths along `pos` that have not been given a name yet.
    fn unnamed_depths(&self) -> Vec<usize> {
        (0..self.pos.a_depth())
            .filter(|d| !self.names.contains_key(d))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct SelectionSet {
    items: Vec<Selection>,
    root_frees: Arc<BTreeSet<String>>,
    diagnostics: Vec<String>,
}

impl PartialEq for SelectionSet {
    fn eq(&self, other: &Self) -> bool {
        self.items == other.items
    }
}

impl SelectionSet {
    /// `{(root, ε)}`
    pub fn initial(root: &Term) -> SelectionSet {
        SelectionSet::new(root, vec![Selection::root(root)])
    }

    /// A set over `root` holding the given selections.
    pub fn new(root: &Term, items: Vec<Selection>) -> SelectionSet {
        SelectionSet {
            items: Vec::new(),
            root_frees: Arc::new(root.free_vars()),
            diagnostics: Vec::new(),
        }
        .with_items(items)
    }

    pub fn empty_like(&self) -> SelectionSet {
        self.derive(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Selection> {
        self.items.iter()
    }

    pub fn selections(&self) -> &[Selection] {
        &self.items
    }

    pub fn positions(&self) -> Vec<Position> {
        self.items.iter().map(|s| s.pos.clone()).collect()
    }

    /// Messages about selections dropped because of name clashes.
    pub fn diagnostics(&self) -> &[String] {
        &self.diagnostics
    }

    fn with_items(mut self, items: Vec<Selection>) -> SelectionSet {
        let mut seen = HashSet::new();
        self.items = items
            .into_iter()
            .filter(|s| seen.insert((s.pos.clone(), s.names.clone())))
            .collect();
        self
    }

    fn derive(&self, items: Vec<Selection>) -> SelectionSet {
        SelectionSet {
            items: Vec::new(),
            root_frees: Arc::clone(&self.root_frees),
            diagnostics: self.diagnostics.clone(),
        }
        .with_items(items)
    }

    /// Keeps the selections whose term matches `pattern`.
    pub fn term(&self, pattern: &PatternTerm) -> SelectionSet {
        self.derive(
            self.items
                .iter()
                .filter(|s| matches(&s.term, pattern))
                .cloned()
                .collect(),
        )
    }

    /// Every subterm of every selection, in pre-order.
    pub fn subterms(&self) -> SelectionSet {
        let mut out = Vec::new();
        for s in &self.items {
            for q in s.term.positions() {
                let sub = s.term.get(&q).expect("enumerated position").clone();
                out.push(Selection {
                    term: sub,
                    pos: s.pos.concat(&q),
                    names: s.names.clone(),
                });
            }
        }
        self.derive(out)
    }

    /// Descends every selection by `q`, dropping those where `q` is not a
    /// position.
    pub fn at_pos(&self, q: &Position) -> SelectionSet {
        self.derive(
            self.items
                .iter()
                .filter_map(|s| {
                    s.term.get(q).map(|sub| Selection {
                        term: sub.clone(),
                        pos: s.pos.concat(q),
                        names: s.names.clone(),
                    })
                })
                .collect(),
        )
    }

    /// Names the innermost not-yet-named binders above each selection,
    /// `names[0]` going to the outermost of them. Selections with fewer
    /// unnamed binders than names are dropped.
    pub fn bind(&self, names: &[String]) -> Result<SelectionSet, SelectError> {
        check_distinct(names)?;
        if names.is_empty() {
            return Ok(self.clone());
        }
        let mut out = self.derive(Vec::new());
        let mut kept = Vec::new();
        for s in &self.items {
            match self.bind_one(s, names) {
                Ok(Some(sel)) => kept.push(sel),
                Ok(None) => {}
                Err(msg) => out.diagnostics.push(msg),
            }
        }
        Ok(out.with_items(kept))
    }

    fn bind_one(&self, s: &Selection, names: &[String]) -> Result<Option<Selection>, String> {
        let unnamed = s.unnamed_depths();
        if names.len() > unnamed.len() {
            return Ok(None);
        }
        for n in names {
            if self.root_frees.contains(n) {
                return Err(format!(
                    "selection at {} dropped: `{n}` is already a free variable of the term",
                    s.pos
                ));
            }
            if s.names.values().any(|v| v == n) {
                return Err(format!(
                    "selection at {} dropped: `{n}` already names another bound variable",
                    s.pos
                ));
            }
        }
        let chosen = &unnamed[unnamed.len() - names.len()..];
        let a_depth = s.pos.a_depth();
        let by_depth: BTreeMap<usize, &String> = chosen.iter().copied().zip(names).collect();
        let term = s.term.map_loose(&|i| {
            let depth = a_depth.checked_sub(i)?;
            by_depth.get(&depth).map(|n| Term::free(n.as_str()))
        });
        let mut new_names = s.names.clone();
        new_names.extend(by_depth.into_iter().map(|(d, n)| (d, n.clone())));
        Ok(Some(Selection {
            term,
            pos: s.pos.clone(),
            names: new_names,
        }))
    }

    /// Filters by `pattern`, then, when it has a hole, descends to the hole
    /// and names the binders crossed after the pattern's own abstractions.
    pub fn matching(&self, pattern: &PatternTerm) -> Result<SelectionSet, SelectError> {
        match pattern.hole_count() {
            0 => Ok(self.term(pattern)),
            1 => {
                let hole = pos_hole(pattern)?;
                let binds = binds_to(pattern, &hole)?;
                self.term(pattern).at_pos(&hole).bind(&binds)
            }
            _ => Err(SelectError::MultipleHoles),
        }
    }

    /// The conclusion of each goal-shaped selection.
    pub fn concl(&self) -> SelectionSet {
        self.derive(
            self.items
                .iter()
                .map(|s| {
                    let g = strip_goal(&s.term);
                    let mut pos = s.pos.clone();
                    for _ in &g.params {
                        pos.push(Dir::R);
                        pos.push(Dir::A);
                    }
                    for _ in &g.premises {
                        pos.push(Dir::R);
                    }
                    Selection {
                        term: g.conclusion,
                        pos,
                        names: s.names.clone(),
                    }
                })
                .collect(),
        )
    }

    /// The premises of each goal-shaped selection, in order.
    pub fn asm(&self) -> SelectionSet {
        let mut out = Vec::new();
        for s in &self.items {
            let g = strip_goal(&s.term);
            let mut pos = s.pos.clone();
            for _ in &g.params {
                pos.push(Dir::R);
                pos.push(Dir::A);
            }
            for premise in g.premises {
                out.push(Selection {
                    term: premise,
                    pos: pos.child(Dir::L).child(Dir::R),
                    names: s.names.clone(),
                });
                pos.push(Dir::R);
            }
        }
        self.derive(out)
    }

    /// Strips the leading `!!`-parameters of each selection and names the
    /// last `names.len()` of them; selections with fewer parameters are
    /// dropped.
    pub fn for_params(&self, names: &[String]) -> Result<SelectionSet, SelectError> {
        check_distinct(names)?;
        let mut stripped = Vec::new();
        for s in &self.items {
            let mut term = &s.term;
            let mut pos = s.pos.clone();
            let mut params = 0;
            while let Some((_, body)) = term.as_all() {
                term = body;
                pos.push(Dir::R);
                pos.push(Dir::A);
                params += 1;
            }
            if names.len() <= params {
                stripped.push(Selection {
                    term: term.clone(),
                    pos,
                    names: s.names.clone(),
                });
            }
        }
        self.derive(stripped).bind(names)
    }
}

impl<'a> IntoIterator for &'a SelectionSet {
    type Item = &'a Selection;
    type IntoIter = std::slice::Iter<'a, Selection>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

fn check_distinct(names: &[String]) -> Result<(), SelectError> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(SelectError::DuplicateName(n.clone()));
        }
    }
    Ok(())
}
