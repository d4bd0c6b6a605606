//! Single-line printing of terms and patterns, optionally with selection
//! markers around addressed subterms.
//!
//! Loose bounds print as `L1, L2, …` by missing-abstraction index. Binder
//! hints are kept unless they clash with an enclosing binder or a free
//! name, in which case a numeric suffix is added.

use std::collections::BTreeSet;

use super::lexer::{is_identifier, Assoc, Infix};
use super::pattern::PatternTerm;
use crate::position::{Dir, Position};
use crate::term::{Term, ALL, CONS, NIL};

const APP_PREC: u32 = 900;
const ATOM_PREC: u32 = 1000;
/// Context for list elements: binders need parentheses, infix does not.
const LIST_ELEM: u32 = 1;

pub fn print_term(t: &Term) -> String {
    print_pattern(&PatternTerm::from(t))
}

pub fn print_pattern(p: &PatternTerm) -> String {
    Printer::new(p, None, false).run(p)
}

/// Like [`print_pattern`] but writes holes as `[]`.
pub fn print_pattern_ascii(p: &PatternTerm) -> String {
    Printer::new(p, None, true).run(p)
}

/// Prints `t` with every position in `marks` wrapped in `⟨…⟩`, or
/// `<<…>>` when `ascii` is set. Markers sit inside any parentheses of the
/// marked subterm, and removing them leaves text that parses back to `t`.
pub fn print_marked(t: &Term, marks: &BTreeSet<Position>, ascii: bool) -> String {
    let p = PatternTerm::from(t);
    Printer::new(&p, Some(marks), ascii).run(&p)
}

/// Removes selection markers from printed output.
pub fn strip_markers(s: &str) -> String {
    s.replace(['⟨', '⟩'], "").replace("<<", "").replace(">>", "")
}

struct Printer<'a> {
    out: String,
    marks: Option<&'a BTreeSet<Position>>,
    ascii: bool,
    env: Vec<String>,
    avoid: BTreeSet<String>,
}

enum Shape<'t> {
    Infix(Infix, &'t PatternTerm, &'t PatternTerm),
    List,
    All(&'t str, &'t PatternTerm),
    Lambda,
    App(&'t PatternTerm, &'t PatternTerm),
    Atom,
}

impl Shape<'_> {
    fn precedence(&self) -> u32 {
        match self {
            Shape::Infix(op, ..) => op.precedence(),
            Shape::All(..) | Shape::Lambda => 0,
            Shape::App(..) => APP_PREC,
            Shape::List | Shape::Atom => ATOM_PREC,
        }
    }
}

fn shape(t: &PatternTerm) -> Shape<'_> {
    match t {
        PatternTerm::Abs(..) => Shape::Lambda,
        PatternTerm::App(f, x) => {
            if let Some((op, l, r)) = t.as_binop() {
                if let Some(infix) = Infix::from_constant(op) {
                    return Shape::Infix(infix, l, r);
                }
                if op == CONS && is_list(t) {
                    return Shape::List;
                }
            }
            match (&**f, &**x) {
                (PatternTerm::Free(n), PatternTerm::Abs(hint, body)) if n == ALL => {
                    Shape::All(hint, body)
                }
                _ => Shape::App(f, x),
            }
        }
        _ => Shape::Atom,
    }
}

fn is_list(mut t: &PatternTerm) -> bool {
    loop {
        match t {
            PatternTerm::Free(n) if n == NIL => return true,
            _ => match t.as_binop() {
                Some((op, _, tail)) if op == CONS => t = tail,
                _ => return false,
            },
        }
    }
}

fn collect_free(t: &PatternTerm, out: &mut BTreeSet<String>) {
    match t {
        PatternTerm::Free(n) => {
            out.insert(n.clone());
        }
        PatternTerm::App(f, x) => {
            collect_free(f, out);
            collect_free(x, out);
        }
        PatternTerm::Abs(_, b) => collect_free(b, out),
        _ => {}
    }
}

impl<'a> Printer<'a> {
    fn new(root: &PatternTerm, marks: Option<&'a BTreeSet<Position>>, ascii: bool) -> Self {
        let mut avoid = BTreeSet::new();
        collect_free(root, &mut avoid);
        Printer {
            out: String::new(),
            marks,
            ascii,
            env: Vec::new(),
            avoid,
        }
    }

    fn run(mut self, t: &PatternTerm) -> String {
        self.expr(t, Position::root(), 0);
        self.out
    }

    fn marked(&self, pos: &Position) -> bool {
        self.marks.is_some_and(|m| m.contains(pos))
    }

    fn open(&mut self, pos: &Position) {
        if self.marked(pos) {
            self.out.push_str(if self.ascii { "<<" } else { "⟨" });
        }
    }

    fn close(&mut self, pos: &Position) {
        if self.marked(pos) {
            self.out.push_str(if self.ascii { ">>" } else { "⟩" });
        }
    }

    fn binder_name(&self, hint: &str) -> String {
        let base = if is_identifier(hint) { hint } else { "x" };
        let clash = |n: &str| self.env.iter().any(|e| e == n) || self.avoid.contains(n);
        if !clash(base) {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|c| !clash(c))
            .expect("unbounded suffix search")
    }

    fn expr(&mut self, t: &PatternTerm, pos: Position, ctx: u32) {
        let shape = shape(t);
        let parens = shape.precedence() < ctx;
        if parens {
            self.out.push('(');
        }
        self.open(&pos);
        match shape {
            Shape::Atom => self.atom(t),
            Shape::App(f, x) => {
                self.expr(f, pos.child(Dir::L), APP_PREC);
                self.out.push(' ');
                self.expr(x, pos.child(Dir::R), ATOM_PREC);
            }
            Shape::Infix(op, l, r) => {
                let prec = op.precedence();
                // nested left-associative chains keep explicit parentheses
                let (lctx, rctx) = match op.assoc() {
                    Assoc::Left => (prec + 1, prec + 1),
                    Assoc::Right => (prec + 1, prec),
                    Assoc::Non => (prec + 1, prec + 1),
                };
                let partial = pos.child(Dir::L);
                let head = partial.child(Dir::L);
                self.open(&partial);
                self.expr(l, partial.child(Dir::R), lctx);
                self.out.push(' ');
                self.open(&head);
                self.out.push_str(op.symbol());
                self.close(&head);
                self.close(&partial);
                self.out.push(' ');
                self.expr(r, pos.child(Dir::R), rctx);
            }
            Shape::List => self.list_cells(t, &pos, true),
            Shape::Lambda => self.lambda_chain(t, &pos, true),
            Shape::All(hint, body) => self.all_chain(hint, body, &pos, true),
        }
        self.close(&pos);
        if parens {
            self.out.push(')');
        }
    }

    fn atom(&mut self, t: &PatternTerm) {
        match t {
            PatternTerm::Free(n) => {
                if !is_identifier(n) {
                    if let Some(op) = Infix::from_constant(n) {
                        self.out.push('(');
                        self.out.push_str(op.symbol());
                        self.out.push(')');
                        return;
                    }
                }
                self.out.push_str(n);
            }
            PatternTerm::Schematic(n) => {
                self.out.push('?');
                self.out.push_str(n);
            }
            PatternTerm::Bound(k) => {
                let depth = self.env.len();
                if *k < depth {
                    let name = self.env[depth - 1 - k].clone();
                    self.out.push_str(&name);
                } else {
                    self.out.push_str(&format!("L{}", k - depth + 1));
                }
            }
            PatternTerm::Wildcard => self.out.push('_'),
            PatternTerm::Hole => self.out.push_str(if self.ascii { "[]" } else { "□" }),
            PatternTerm::App(..) | PatternTerm::Abs(..) => unreachable!("not an atom"),
        }
    }

    /// One `Cons x tail` cell; the cell's marker (opened by the caller for
    /// the first cell) spans from its separator to the closing bracket.
    fn list_cells(&mut self, t: &PatternTerm, pos: &Position, first: bool) {
        let (_, elem, tail) = t.as_binop().expect("list cell");
        let partial = pos.child(Dir::L);
        let head = partial.child(Dir::L);
        self.open(&partial);
        self.open(&head);
        self.out.push_str(if first { "[" } else { ", " });
        self.close(&head);
        self.expr(elem, partial.child(Dir::R), LIST_ELEM);
        self.close(&partial);
        let tail_pos = pos.child(Dir::R);
        self.open(&tail_pos);
        if matches!(tail, PatternTerm::Free(n) if n == NIL) {
            self.out.push(']');
        } else {
            self.list_cells(tail, &tail_pos, false);
        }
        self.close(&tail_pos);
    }

    fn lambda_chain(&mut self, t: &PatternTerm, pos: &Position, first: bool) {
        let PatternTerm::Abs(hint, body) = t else {
            unreachable!("lambda chain on a non-abstraction")
        };
        if first {
            self.out.push('%');
        } else {
            self.out.push(' ');
            self.open(pos);
        }
        let name = self.binder_name(hint);
        self.out.push_str(&name);
        self.env.push(name);
        let body_pos = pos.child(Dir::A);
        if matches!(**body, PatternTerm::Abs(..)) {
            self.lambda_chain(body, &body_pos, false);
        } else {
            self.out.push_str(". ");
            self.expr(body, body_pos, 0);
        }
        self.env.pop();
        if !first {
            self.close(pos);
        }
    }

    /// `all (Abs(hint, body))` at `pos`. Nested quantifiers merge into one
    /// `!!x y.` unless the inner `all` constant itself is marked.
    fn all_chain(&mut self, hint: &str, body: &PatternTerm, pos: &Position, first: bool) {
        let head = pos.child(Dir::L);
        if first {
            self.open(&head);
            self.out.push_str("!!");
            self.close(&head);
        } else {
            self.out.push(' ');
            self.open(pos);
        }
        let abs_pos = pos.child(Dir::R);
        self.open(&abs_pos);
        let name = self.binder_name(hint);
        self.out.push_str(&name);
        self.env.push(name);
        let body_pos = abs_pos.child(Dir::A);
        match shape(body) {
            Shape::All(h, b) if !self.marked(&body_pos.child(Dir::L)) => {
                self.all_chain(h, b, &body_pos, false)
            }
            _ => {
                self.out.push_str(". ");
                self.expr(body, body_pos, 0);
            }
        }
        self.env.pop();
        self.close(&abs_pos);
        if !first {
            self.close(pos);
        }
    }
}
