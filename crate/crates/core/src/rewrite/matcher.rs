use super::{RewriteError, Substitution};
use crate::term::Term;

/// First-order matching of `lhs` against `t`, extending `seed`.
///
/// A schematic may only be bound to a term without loose bound variables:
/// one under binders of `lhs` must not refer to them.
pub fn fo_match(lhs: &Term, t: &Term, seed: &Substitution) -> Result<Substitution, RewriteError> {
    let mut sigma = seed.clone();
    go(lhs, t, &mut sigma)?;
    Ok(sigma)
}

fn go(p: &Term, t: &Term, sigma: &mut Substitution) -> Result<(), RewriteError> {
    match (p, t) {
        (Term::Schematic(n), _) => {
            if !t.is_closed() {
                return Err(RewriteError::CaptureViolation(n.clone()));
            }
            match sigma.get(n) {
                Some(bound) if bound == t => Ok(()),
                Some(_) => Err(RewriteError::Mismatch),
                None => {
                    sigma.insert(n.clone(), t.clone());
                    Ok(())
                }
            }
        }
        (Term::Free(a), Term::Free(b)) if a == b => Ok(()),
        (Term::Bound(i), Term::Bound(j)) if i == j => Ok(()),
        (Term::App(f, x), Term::App(g, y)) => {
            go(f, g, sigma)?;
            go(x, y, sigma)
        }
        (Term::Abs(_, s), Term::Abs(_, u)) => go(s, u, sigma),
        _ => Err(RewriteError::Mismatch),
    }
}
