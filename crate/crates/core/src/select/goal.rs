use crate::term::{Term, IMP};

/// `!!x1 … xm. P1 ==> … ==> Pn ==> Q` taken apart. Premises and
/// conclusion keep loose bounds pointing at the stripped parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Goal {
    pub params: Vec<String>,
    pub premises: Vec<Term>,
    pub conclusion: Term,
}

/// Strips leading `all (%x. …)` binders, then leading `imp P …`.
pub fn strip_goal(t: &Term) -> Goal {
    let mut params = Vec::new();
    let mut cur = t;
    while let Some((hint, body)) = cur.as_all() {
        params.push(hint.to_string());
        cur = body;
    }
    let mut premises = Vec::new();
    while let Some((p, rest)) = cur.as_binop(IMP) {
        premises.push(p.clone());
        cur = rest;
    }
    Goal {
        params,
        premises,
        conclusion: cur.clone(),
    }
}
