use super::SelectError;
use crate::position::{Dir, Position};
use crate::syntax::PatternTerm;
use crate::term::Term;

/// Structural match modulo alpha. Wildcards and the hole match anything,
/// including terms with loose bounds.
pub fn matches(t: &Term, p: &PatternTerm) -> bool {
    match (t, p) {
        (_, PatternTerm::Wildcard | PatternTerm::Hole) => true,
        (Term::Free(a), PatternTerm::Free(b)) => a == b,
        (Term::Bound(i), PatternTerm::Bound(j)) => i == j,
        (Term::App(f, x), PatternTerm::App(g, y)) => matches(f, g) && matches(x, y),
        (Term::Abs(_, s), PatternTerm::Abs(_, q)) => matches(s, q),
        _ => false,
    }
}

/// Position of the single hole in `p`.
pub fn pos_hole(p: &PatternTerm) -> Result<Position, SelectError> {
    fn find(p: &PatternTerm, cur: &mut Position) -> Option<Position> {
        match p {
            PatternTerm::Hole => Some(cur.clone()),
            PatternTerm::App(f, x) => {
                cur.push(Dir::L);
                let found = find(f, cur);
                cur.pop();
                found.or_else(|| {
                    cur.push(Dir::R);
                    let found = find(x, cur);
                    cur.pop();
                    found
                })
            }
            PatternTerm::Abs(_, body) => {
                cur.push(Dir::A);
                let found = find(body, cur);
                cur.pop();
                found
            }
            _ => None,
        }
    }
    match p.hole_count() {
        0 => Err(SelectError::NoHole),
        1 => Ok(find(p, &mut Position::root()).expect("one hole")),
        _ => Err(SelectError::MultipleHoles),
    }
}

/// Hints of the abstractions strictly above `q` in `p`, outermost first.
pub fn binds_to(p: &PatternTerm, q: &Position) -> Result<Vec<String>, SelectError> {
    let mut names = Vec::new();
    let mut cur = p;
    for dir in q.dirs() {
        cur = match (dir, cur) {
            (Dir::L, PatternTerm::App(f, _)) => f,
            (Dir::R, PatternTerm::App(_, x)) => x,
            (Dir::A, PatternTerm::Abs(hint, body)) => {
                names.push(hint.clone());
                body
            }
            _ => return Err(SelectError::InvalidPosition(q.clone())),
        };
    }
    Ok(names)
}
