use std::sync::Arc;

use super::Formula;
use Formula::*;

/// Negation normal form over `True`, `False`, atoms, negated atoms, `And`, `Or`,
/// `Until` and `DualUntil`. Derived modalities are expanded.
pub fn to_nnf(phi: &Formula) -> Formula {
    pos(phi)
}

fn a(f: Formula) -> Arc<Formula> {
    Arc::new(f)
}

fn pos(phi: &Formula) -> Formula {
    match phi {
        True | False | Atom(_) => phi.clone(),
        Not(x) => neg(x),
        And(x, y) => And(a(pos(x)), a(pos(y))),
        Or(x, y) => Or(a(pos(x)), a(pos(y))),
        Until(x, y, i) => Until(a(pos(x)), a(pos(y)), *i),
        DualUntil(x, y, i) => DualUntil(a(pos(x)), a(pos(y)), *i),
        Next(i, x) => Until(a(False), a(pos(x)), *i),
        Finally(i, x) => Until(a(True), a(pos(x)), *i),
        Globally(i, x) => DualUntil(a(False), a(pos(x)), *i),
        WeakUntil(x, y, i) => {
            let (px, py) = (a(pos(x)), a(pos(y)));
            let step = And(px.clone(), a(Until(px, py.clone(), *i)));
            if i.contains_zero() {
                Or(py, a(step))
            } else {
                step
            }
        }
        WeakFinally(i, x) => {
            let px = a(pos(x));
            let strict = Until(a(True), px.clone(), *i);
            if i.contains_zero() {
                Or(px, a(strict))
            } else {
                strict
            }
        }
        WeakGlobally(i, x) => {
            let px = a(pos(x));
            let strict = DualUntil(a(False), px.clone(), *i);
            if i.contains_zero() {
                And(px, a(strict))
            } else {
                strict
            }
        }
    }
}

fn neg(phi: &Formula) -> Formula {
    match phi {
        True => False,
        False => True,
        Atom(_) => Not(a(phi.clone())),
        Not(x) => pos(x),
        And(x, y) => Or(a(neg(x)), a(neg(y))),
        Or(x, y) => And(a(neg(x)), a(neg(y))),
        Until(x, y, i) => DualUntil(a(neg(x)), a(neg(y)), *i),
        DualUntil(x, y, i) => Until(a(neg(x)), a(neg(y)), *i),
        Next(i, x) => DualUntil(a(True), a(neg(x)), *i),
        Finally(i, x) => DualUntil(a(False), a(neg(x)), *i),
        Globally(i, x) => Until(a(True), a(neg(x)), *i),
        WeakUntil(x, y, i) => {
            let (nx, ny) = (a(neg(x)), a(neg(y)));
            let step = Or(nx.clone(), a(DualUntil(nx, ny.clone(), *i)));
            if i.contains_zero() {
                And(ny, a(step))
            } else {
                step
            }
        }
        WeakFinally(i, x) => pos(&WeakGlobally(*i, a(Not(x.clone())))),
        WeakGlobally(i, x) => pos(&WeakFinally(*i, a(Not(x.clone())))),
    }
}

/// True when `phi` only uses the node kinds produced by [`to_nnf`].
pub(crate) fn is_nnf(phi: &Formula) -> bool {
    match phi {
        True | False | Atom(_) => true,
        Not(x) => matches!(**x, Atom(_)),
        And(x, y) | Or(x, y) | Until(x, y, _) | DualUntil(x, y, _) => is_nnf(x) && is_nnf(y),
        _ => false,
    }
}
