use super::{SelectError, SelectionSet};
use crate::syntax::{Atom, PatternExpr, PatternUnit};
use crate::term::Term;

/// Evaluates `pe` on `{(root, ε)}`. A pattern whose last unit is `in` or
/// `at` with a term atom gets an implicit trailing `in concl`.
pub fn eval_pattern(pe: &PatternExpr, root: &Term) -> Result<SelectionSet, SelectError> {
    let mut units: Vec<&PatternUnit> = pe.units.iter().collect();
    let implicit = PatternUnit::In(Atom::Concl);
    if matches!(
        units.last(),
        Some(PatternUnit::In(Atom::Term(_)) | PatternUnit::At(Atom::Term(_)))
    ) {
        units.push(&implicit);
    }
    apply_units(&units, SelectionSet::initial(root))
}

/// Applies the units of `pe` to `set`, rightmost first, without the implicit
/// `in concl`.
pub fn apply_pattern(pe: &PatternExpr, set: &SelectionSet) -> Result<SelectionSet, SelectError> {
    let units: Vec<&PatternUnit> = pe.units.iter().collect();
    apply_units(&units, set.clone())
}

fn apply_units(units: &[&PatternUnit], set: SelectionSet) -> Result<SelectionSet, SelectError> {
    units
        .iter()
        .rev()
        .try_fold(set, |set, unit| apply_unit(unit, &set))
}

fn apply_unit(unit: &PatternUnit, set: &SelectionSet) -> Result<SelectionSet, SelectError> {
    match unit {
        PatternUnit::In(a) => Ok(apply_atom(a, set)?.subterms()),
        PatternUnit::At(a) => apply_atom(a, set),
        PatternUnit::For(names) => set.for_params(names),
    }
}

fn apply_atom(atom: &Atom, set: &SelectionSet) -> Result<SelectionSet, SelectError> {
    match atom {
        Atom::Term(p) => set.matching(p),
        Atom::Concl => Ok(set.concl()),
        Atom::Asm => Ok(set.asm()),
        Atom::Prop => Ok(set.clone()),
    }
}
