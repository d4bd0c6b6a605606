//! Generators, independent oracles and property checks shared by the
//! property suite and the acceptance runner.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use patsel::position::{Dir, Position};
use patsel::rewrite::{conv_path, patsubst, Equation, Mode, RewriteReport};
use patsel::select::{apply_pattern, eval_pattern, SelectionSet};
use patsel::syntax::{parse_pattern_expr, parse_rules, parse_term, print_term, PatternExpr, Rule};
use patsel::term::Term;
use proptest::prelude::*;
use proptest::sample::select;
use proptest::test_runner::TestCaseError;

// ---------------------------------------------------------------------------
// generators

const FREES: [&str; 8] = ["a", "b", "c", "f", "g", "0", "1", "+"];
const HINTS: [&str; 5] = ["x", "y", "z", "a", "v"];
const OPS: [&str; 6] = ["+", "*", "=", "<=", "imp", "=="];

fn list(items: Vec<Term>) -> Term {
    items.into_iter().rev().fold(Term::free("Nil"), |tail, x| {
        Term::apps(Term::free("Cons"), [x, tail])
    })
}

/// Wraps every out-of-range index back into scope; at depth 0 a bound
/// variable becomes the constant `c`.
fn close_up(t: &Term, depth: usize) -> Term {
    match t {
        Term::Bound(_) if depth == 0 => Term::free("c"),
        Term::Bound(k) => Term::Bound(k % depth),
        Term::App(f, x) => Term::app(close_up(f, depth), close_up(x, depth)),
        Term::Abs(h, b) => Term::abs(h.clone(), close_up(b, depth + 1)),
        _ => t.clone(),
    }
}

fn raw_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        4 => select(FREES.to_vec()).prop_map(Term::free),
        3 => (0usize..4).prop_map(Term::Bound),
    ];
    leaf.prop_recursive(5, 48, 3, |inner| {
        prop_oneof![
            3 => (inner.clone(), inner.clone()).prop_map(|(f, x)| Term::app(f, x)),
            4 => (select(OPS.to_vec()), inner.clone(), inner.clone())
                .prop_map(|(op, l, r)| Term::binop(op, l, r)),
            3 => (select(HINTS.to_vec()), inner.clone()).prop_map(|(h, b)| Term::abs(h, b)),
            1 => (select(HINTS.to_vec()), inner.clone())
                .prop_map(|(h, b)| Term::app(Term::free("all"), Term::abs(h, b))),
            1 => prop::collection::vec(inner.clone(), 0..3).prop_map(list),
        ]
    })
}

/// Closed, schematic-free terms over a small signature.
pub fn arb_term() -> impl Strategy<Value = Term> {
    raw_term().prop_map(|t| close_up(&t, 0))
}

/// Goal-shaped terms `!!x1 … xm. P1 ==> … ==> Q`.
pub fn arb_goal() -> impl Strategy<Value = Term> {
    (
        prop::collection::vec(select(HINTS.to_vec()), 0..3),
        prop::collection::vec(raw_term(), 0..3),
        raw_term(),
    )
        .prop_map(|(params, prems, concl)| {
            let body = prems
                .into_iter()
                .rev()
                .fold(concl, |q, p| Term::binop("imp", p, q));
            let t = params.into_iter().rev().fold(body, |b, h| {
                Term::app(Term::free("all"), Term::abs(h, b))
            });
            close_up(&t, 0)
        })
}

pub fn arb_root() -> impl Strategy<Value = Term> {
    prop_oneof![arb_term(), arb_goal()]
}

const ATOMS: [&str; 19] = [
    "\"_ + _\"",
    "\"_ * _\"",
    "\"f _\"",
    "\"%x. □\"",
    "\"%v. □\"",
    "\"%x y. □\"",
    "\"□ + _\"",
    "\"_ + □\"",
    "\"!!x. □\"",
    "\"!!a b. □\"",
    "\"_\"",
    "\"a\"",
    "\"x\"",
    "\"0\"",
    "\"x + _\"",
    "\"_ <= _\"",
    "concl",
    "asm",
    "prop",
];

fn arb_unit() -> impl Strategy<Value = String> {
    prop_oneof![
        4 => select(ATOMS.to_vec()).prop_map(|a| format!("in {a}")),
        4 => select(ATOMS.to_vec()).prop_map(|a| format!("at {a}")),
        1 => select(vec!["x", "v", "a", "x y", "p q"]).prop_map(|n| format!("for {n}")),
    ]
}

pub fn arb_pattern() -> impl Strategy<Value = PatternExpr> {
    prop::collection::vec(arb_unit(), 1..4)
        .prop_map(|units| parse_pattern_expr(&units.join(" ")).expect("generated pattern parses"))
}

pub const RULES: &str = "\
add_commute : ?x + ?y == ?y + ?x
mult_commute : ?x * ?y == ?y * ?x
zero_mult : 0 == 0 * ?a
add_zero : ?x + 0 == ?x
lmap_ident : ?t == lmap (%x. x) ?t
const_app : (%x. ?f) ?y == ?f
eta : (%x. f x) == f
tag : f ?y == g ?y x
wrap : ?t == k ?t
";

pub fn rules() -> Vec<Rule> {
    parse_rules(RULES).expect("rule table parses")
}

pub fn rule(name: &str) -> Rule {
    rules().into_iter().find(|r| r.name == name).expect("known rule")
}

/// A rewriting scenario: root, pattern, rule, where-bindings, orientation
/// and mode.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub root: Term,
    pub pattern: PatternExpr,
    pub rule: Rule,
    pub bindings: Vec<(String, String)>,
    pub symmetric: bool,
    pub mode: Mode,
}

/// Patterns that tend to reach subterms the rule table applies to.
const TARGETED: [&str; 13] = [
    r#"in "_""#,
    r#"in "_""#,
    r#"in "_""#,
    r#"in "_" in asm"#,
    r#"at "_ + _""#,
    r#"at "_ * _""#,
    r#"at "0""#,
    r#"at "0" in "%x. □""#,
    r#"in "%x. □""#,
    r#"in "%x y. □""#,
    r#"in asm"#,
    r#"at "f _""#,
    r#"in "_" for x"#,
];

fn arb_rewrite_pattern() -> impl Strategy<Value = PatternExpr> {
    prop_oneof![
        1 => arb_pattern(),
        3 => select(TARGETED.to_vec()).prop_map(|s| parse_pattern_expr(s).expect("targeted pattern parses")),
    ]
}

fn fill_schematics(t: &Term, fill: &[Term]) -> Term {
    match t {
        Term::Schematic(n) => fill[n.len() % fill.len()].clone(),
        Term::App(f, x) => Term::app(fill_schematics(f, fill), fill_schematics(x, fill)),
        Term::Abs(h, b) => Term::abs(h.clone(), fill_schematics(b, fill)),
        _ => t.clone(),
    }
}

/// Replaces the subterm at the `pick`-th position of `base` by `instance`.
fn plant(base: &Term, pick: usize, instance: Term) -> Term {
    let positions = base.positions();
    let p = &positions[pick % positions.len()];
    replace_at(base, p.dirs(), instance).expect("enumerated position")
}

pub fn arb_scenario() -> impl Strategy<Value = Scenario> {
    (
        arb_root(),
        arb_rewrite_pattern(),
        select(rules()),
        select(vec![vec![], vec![("?a", "x")], vec![("?a", "v + 1")], vec![("?y", "a")]]),
        any::<bool>(),
        prop_oneof![Just(Mode::First), Just(Mode::All)],
        (any::<bool>(), any::<usize>(), prop::collection::vec(arb_term(), 1..3)),
    )
        .prop_map(|(base, pattern, rule, bindings, symmetric, mode, (seeded, pick, fill))| {
            let oriented = if symmetric { rule.symmetric() } else { rule.clone() };
            let known = oriented.schematics();
            let bindings = bindings
                .into_iter()
                .filter(|(n, _)| known.contains(n.trim_start_matches('?')))
                .map(|(n, s)| (n.to_string(), s.to_string()))
                .collect();
            let root = if seeded {
                plant(&base, pick, fill_schematics(&oriented.lhs, &fill))
            } else {
                base
            };
            Scenario {
                root,
                pattern,
                rule,
                bindings,
                symmetric,
                mode,
            }
        })
}

// ---------------------------------------------------------------------------
// oracles, written against the raw de Bruijn representation only

fn navigate<'a>(t: &'a Term, dirs: &[Dir]) -> Option<&'a Term> {
    let Some((d, rest)) = dirs.split_first() else {
        return Some(t);
    };
    match (d, t) {
        (Dir::L, Term::App(f, _)) => navigate(f, rest),
        (Dir::R, Term::App(_, x)) => navigate(x, rest),
        (Dir::A, Term::Abs(_, b)) => navigate(b, rest),
        _ => None,
    }
}

fn count_nodes(t: &Term) -> usize {
    match t {
        Term::App(f, x) => 1 + count_nodes(f) + count_nodes(x),
        Term::Abs(_, b) => 1 + count_nodes(b),
        _ => 1,
    }
}

/// Replaces a loose index by the name given to its binder, when there is
/// one. `a` is the number of abstractions above the subterm.
fn name_loose(t: &Term, d: usize, a: usize, names: &BTreeMap<usize, String>) -> Term {
    match t {
        Term::Bound(k) if *k >= d => {
            let missing = k - d + 1;
            match names.get(&(a - missing)) {
                Some(n) => Term::Free(n.clone()),
                None => t.clone(),
            }
        }
        Term::App(f, x) => Term::App(
            Box::new(name_loose(f, d, a, names)),
            Box::new(name_loose(x, d, a, names)),
        ),
        Term::Abs(h, b) => Term::Abs(h.clone(), Box::new(name_loose(b, d + 1, a, names))),
        _ => t.clone(),
    }
}

/// Adds `by` to every index that points outside the `d` innermost binders.
fn shift(t: &Term, d: usize, by: isize) -> Term {
    match t {
        Term::Bound(k) if *k >= d => Term::Bound((*k as isize + by) as usize),
        Term::App(f, x) => Term::App(Box::new(shift(f, d, by)), Box::new(shift(x, d, by))),
        Term::Abs(h, b) => Term::Abs(h.clone(), Box::new(shift(b, d + 1, by))),
        _ => t.clone(),
    }
}

/// Whether `t`, sitting under `d` pattern binders, refers to any of them.
fn refers_below(t: &Term, d: usize, local: usize) -> bool {
    match t {
        Term::Bound(k) => *k >= local && *k < local + d,
        Term::App(f, x) => refers_below(f, d, local) || refers_below(x, d, local),
        Term::Abs(_, b) => refers_below(b, d, local + 1),
        _ => false,
    }
}

fn db_match(p: &Term, t: &Term, d: usize, sigma: &mut BTreeMap<String, Term>) -> bool {
    match (p, t) {
        (Term::Schematic(n), _) => {
            if refers_below(t, d, 0) {
                return false;
            }
            let v = shift(t, 0, -(d as isize));
            match sigma.get(n) {
                Some(old) => *old == v,
                None => {
                    sigma.insert(n.clone(), v);
                    true
                }
            }
        }
        (Term::Free(a), Term::Free(b)) => a == b,
        (Term::Bound(i), Term::Bound(j)) => i == j,
        (Term::App(f, x), Term::App(g, y)) => db_match(f, g, d, sigma) && db_match(x, y, d, sigma),
        (Term::Abs(_, s), Term::Abs(_, u)) => db_match(s, u, d + 1, sigma),
        _ => false,
    }
}

fn db_instantiate(t: &Term, d: usize, sigma: &BTreeMap<String, Term>) -> Option<Term> {
    Some(match t {
        Term::Schematic(n) => shift(sigma.get(n)?, 0, d as isize),
        Term::App(f, x) => Term::App(
            Box::new(db_instantiate(f, d, sigma)?),
            Box::new(db_instantiate(x, d, sigma)?),
        ),
        Term::Abs(h, b) => Term::Abs(h.clone(), Box::new(db_instantiate(b, d + 1, sigma)?)),
        _ => t.clone(),
    })
}

/// Turns free occurrences of binder names into the loose indices they stand
/// for at a subterm under `a` abstractions.
fn unname(t: &Term, local: usize, a: usize, names: &BTreeMap<usize, String>) -> Term {
    match t {
        Term::Free(n) => match names.iter().find(|(_, v)| *v == n) {
            Some((k, _)) => Term::Bound(local + (a - k) - 1),
            None => t.clone(),
        },
        Term::App(f, x) => Term::App(
            Box::new(unname(f, local, a, names)),
            Box::new(unname(x, local, a, names)),
        ),
        Term::Abs(h, b) => Term::Abs(h.clone(), Box::new(unname(b, local + 1, a, names))),
        _ => t.clone(),
    }
}

fn replace_at(t: &Term, dirs: &[Dir], new: Term) -> Option<Term> {
    let Some((d, rest)) = dirs.split_first() else {
        return Some(new);
    };
    Some(match (d, t) {
        (Dir::L, Term::App(f, x)) => Term::App(Box::new(replace_at(f, rest, new)?), x.clone()),
        (Dir::R, Term::App(f, x)) => Term::App(f.clone(), Box::new(replace_at(x, rest, new)?)),
        (Dir::A, Term::Abs(h, b)) => Term::Abs(h.clone(), Box::new(replace_at(b, rest, new)?)),
        _ => return None,
    })
}

/// Rewrites `root` at `pos` with `rule` without opening any binder: the
/// match runs on the de Bruijn subterm, where-terms have binder names
/// turned back into indices, and the instantiated right-hand side is
/// spliced in place.
pub fn splice_oracle(
    root: &Term,
    pos: &Position,
    names: &BTreeMap<usize, String>,
    rule: &Rule,
    bindings: &[(String, String)],
) -> Option<Term> {
    let target = navigate(root, pos.dirs())?;
    let a = pos.dirs().iter().filter(|d| **d == Dir::A).count();
    let mut sigma = BTreeMap::new();
    for (n, text) in bindings {
        let v = parse_term(text).ok()?;
        sigma.insert(n.trim().trim_start_matches('?').to_string(), unname(&v, 0, a, names));
    }
    if !db_match(&rule.lhs, target, 0, &mut sigma) {
        return None;
    }
    let rhs = db_instantiate(&rule.rhs, 0, &sigma)?;
    replace_at(root, pos.dirs(), rhs)
}

/// The selected term recomputed from the root alone.
pub fn selection_oracle(root: &Term, pos: &Position, names: &BTreeMap<usize, String>) -> Option<Term> {
    let sub = navigate(root, pos.dirs())?;
    let a = pos.dirs().iter().filter(|d| **d == Dir::A).count();
    Some(name_loose(sub, 0, a, names))
}

// ---------------------------------------------------------------------------
// property checks

pub fn check_selection_sound(root: &Term, pe: &PatternExpr) -> Result<(), TestCaseError> {
    let Ok(set) = eval_pattern(pe, root) else {
        return Ok(());
    };
    let frees = root.free_vars();
    for s in &set {
        let expect = selection_oracle(root, &s.pos, &s.names);
        prop_assert_eq!(expect.as_ref(), Some(&s.term), "selection at {}", s.pos);
        let a = s.pos.a_depth();
        prop_assert!(s.names.keys().all(|k| *k < a));
        let distinct: BTreeSet<&String> = s.names.values().collect();
        prop_assert_eq!(distinct.len(), s.names.len());
        prop_assert!(s.names.values().all(|n| !frees.contains(n)));
    }
    Ok(())
}

pub fn check_composition(root: &Term, pe1: &PatternExpr, pe2: &PatternExpr) -> Result<(), TestCaseError> {
    let mut units = pe1.units.clone();
    units.extend(pe2.units.iter().cloned());
    let joined = PatternExpr::new(units).expect("non-empty");
    let init = SelectionSet::initial(root);
    let whole = apply_pattern(&joined, &init);
    let stepwise = apply_pattern(pe2, &init).and_then(|s| apply_pattern(pe1, &s));
    prop_assert_eq!(whole, stepwise);
    Ok(())
}

pub fn check_in_counts_positions(t: &Term) -> Result<(), TestCaseError> {
    let all = SelectionSet::initial(t).subterms();
    prop_assert_eq!(all.len(), count_nodes(t));
    prop_assert_eq!(all.positions(), t.positions());
    Ok(())
}

pub fn check_open_close(t: &Term) -> Result<(), TestCaseError> {
    let frees = t.free_vars();
    let name = (0..)
        .map(|i| format!("n{i}"))
        .find(|n| !frees.contains(n))
        .unwrap();
    for p in t.positions() {
        let Some(sub @ Term::Abs(h, _)) = t.get(&p) else {
            continue;
        };
        if !sub.is_closed() {
            continue;
        }
        let opened = sub.open_abs(&name).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(opened.is_closed());
        prop_assert_eq!(&opened.close_abs(&name, h), sub);
    }
    let closed = t.close_abs("a", "a");
    prop_assert_eq!(closed.open_abs("a").ok(), Some(t.clone()));
    Ok(())
}

pub fn check_round_trip(t: &Term) -> Result<(), TestCaseError> {
    let printed = print_term(t);
    let back = parse_term(&printed).map_err(|e| TestCaseError::fail(format!("{printed}: {e}")))?;
    prop_assert_eq!(&back, t, "printed as {}", printed);
    Ok(())
}

/// Every name an abstraction step opens is new, and a reflexive inner
/// conversion rebuilds the input.
pub fn check_freshness(t: &Term) -> Result<(), TestCaseError> {
    let root_frees = t.free_vars();
    for p in t.positions() {
        let mut seen = None;
        let eq = conv_path(&p, &BTreeMap::new(), &BTreeSet::new(), t, &mut |s| {
            seen = Some(s.clone());
            Ok(Equation::refl(s))
        })
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(eq.lhs(), t);
        prop_assert_eq!(eq.rhs(), t);
        let opened = seen.expect("inner ran");
        prop_assert!(opened.is_closed());
        let sub = navigate(t, p.dirs()).unwrap();
        let introduced: BTreeSet<String> = opened
            .free_vars()
            .difference(&sub.free_vars())
            .cloned()
            .collect();
        prop_assert!(introduced.iter().all(|n| !root_frees.contains(n)));
        let mut loose = BTreeSet::new();
        collect_loose(sub, 0, &mut loose);
        prop_assert_eq!(introduced.len(), loose.len(), "at {}", p);
    }
    Ok(())
}

fn collect_loose(t: &Term, d: usize, out: &mut BTreeSet<usize>) {
    match t {
        Term::Bound(k) if *k >= d => {
            out.insert(k - d);
        }
        Term::App(f, x) => {
            collect_loose(f, d, out);
            collect_loose(x, d, out);
        }
        Term::Abs(_, b) => collect_loose(b, d + 1, out),
        _ => {}
    }
}

fn related(p: &Position, q: &Position) -> bool {
    p.is_prefix_of(q) || q.is_prefix_of(p)
}

/// Locality plus engine/oracle agreement for one scenario. Returns whether
/// the rewrite succeeded.
pub fn check_rewrite(sc: &Scenario) -> Result<bool, TestCaseError> {
    let Ok((out, reports)) = patsubst(
        &sc.root,
        &sc.pattern,
        &sc.rule,
        &sc.bindings,
        sc.symmetric,
        sc.mode,
    ) else {
        return Ok(false);
    };
    prop_assert!(!reports.is_empty());
    if sc.mode == Mode::First {
        prop_assert_eq!(reports.len(), 1);
    }
    let selected = eval_pattern(&sc.pattern, &sc.root).unwrap().positions();
    let oriented = if sc.symmetric {
        sc.rule.symmetric()
    } else {
        sc.rule.clone()
    };
    let mut expect = sc.root.clone();
    for RewriteReport {
        position,
        binder_names,
        rule_name,
        ..
    } in &reports
    {
        prop_assert!(selected.contains(position));
        prop_assert_eq!(rule_name, &sc.rule.name);
        let next = splice_oracle(&expect, position, binder_names, &oriented, &sc.bindings);
        prop_assert!(next.is_some(), "oracle rejects rewrite at {}", position);
        expect = next.unwrap();
    }
    prop_assert_eq!(&out, &expect);
    for p in sc.root.positions() {
        if reports.iter().any(|r| related(&r.position, &p)) {
            continue;
        }
        prop_assert_eq!(sc.root.get(&p), out.get(&p), "locality at {}", p);
    }
    Ok(true)
}

/// Lifting along `p·q` equals lifting along `p` a conversion that itself
/// lifts along `q`.
pub fn check_path_concat(t: &Term, pick: usize, split: usize, named: u8) -> Result<(), TestCaseError> {
    let positions = t.positions();
    let pq = &positions[pick % positions.len()];
    let cut = split % (pq.len() + 1);
    let p = Position::from_dirs(pq.dirs()[..cut].iter().copied());
    let q = Position::from_dirs(pq.dirs()[cut..].iter().copied());
    let names: BTreeMap<usize, String> = (0..pq.a_depth())
        .filter(|k| named & (1 << (k % 8)) != 0)
        .map(|k| (k, format!("u{k}")))
        .collect();
    let shift_by = p.a_depth();
    let outer: BTreeMap<usize, String> = names
        .iter()
        .filter(|(k, _)| **k < shift_by)
        .map(|(k, v)| (*k, v.clone()))
        .collect();
    let inner_names: BTreeMap<usize, String> = names
        .iter()
        .filter(|(k, _)| **k >= shift_by)
        .map(|(k, v)| (k - shift_by, v.clone()))
        .collect();
    let wrap = rule("wrap");
    let seed = Default::default();
    let avoid: BTreeSet<String> = names.values().cloned().collect();

    let direct = conv_path(pq, &names, &avoid, t, &mut patsel::rewrite::conv_rewrite(&wrap, &seed));
    let composed = conv_path(&p, &outer, &avoid, t, &mut |s| {
        conv_path(&q, &inner_names, &avoid, s, &mut patsel::rewrite::conv_rewrite(&wrap, &seed))
    });
    prop_assert_eq!(direct, composed);
    Ok(())
}
