//! Deciding `msgrel` by rewriting.
//!
//! The two cancellation equations are oriented left to right:
//!
//! ```text
//! CRYPT K (DECRYPT K X)  ->  X
//! DECRYPT K (CRYPT K X)  ->  X
//! ```
//!
//! Each step removes two nodes, so rewriting terminates. The only overlaps
//! are `CRYPT K (DECRYPT K (CRYPT K X))` and its mirror, where both
//! contractions yield `CRYPT K X`, so normal forms are unique.

use super::term::FreeMsg;

/// Innermost normalization: children first, then at most one root step.
///
/// Contracting a root redex over normalized children exposes a subterm that
/// is already normal, so one root step suffices.
pub fn normalize(t: &FreeMsg) -> FreeMsg {
    match t {
        FreeMsg::Nonce(n) => FreeMsg::Nonce(*n),
        FreeMsg::MPair(x, y) => FreeMsg::MPair(Box::new(normalize(x)), Box::new(normalize(y))),
        FreeMsg::Crypt(k, x) => match normalize(x) {
            FreeMsg::Decrypt(j, inner) if j == *k => *inner,
            body => FreeMsg::Crypt(*k, Box::new(body)),
        },
        FreeMsg::Decrypt(k, x) => match normalize(x) {
            FreeMsg::Crypt(j, inner) if j == *k => *inner,
            body => FreeMsg::Decrypt(*k, Box::new(body)),
        },
    }
}

/// Contracts a redex at the root.
fn contract(t: &FreeMsg) -> Option<FreeMsg> {
    match t {
        FreeMsg::Crypt(k, x) => match &**x {
            FreeMsg::Decrypt(j, inner) if j == k => Some((**inner).clone()),
            _ => None,
        },
        FreeMsg::Decrypt(k, x) => match &**x {
            FreeMsg::Crypt(j, inner) if j == k => Some((**inner).clone()),
            _ => None,
        },
        _ => None,
    }
}

/// Contracts the leftmost-outermost redex, if any.
pub fn step_outermost(t: &FreeMsg) -> Option<FreeMsg> {
    if let Some(r) = contract(t) {
        return Some(r);
    }
    match t {
        FreeMsg::Nonce(_) => None,
        FreeMsg::MPair(x, y) => match step_outermost(x) {
            Some(x2) => Some(FreeMsg::MPair(Box::new(x2), y.clone())),
            None => step_outermost(y).map(|y2| FreeMsg::MPair(x.clone(), Box::new(y2))),
        },
        FreeMsg::Crypt(k, x) => step_outermost(x).map(|x2| FreeMsg::Crypt(*k, Box::new(x2))),
        FreeMsg::Decrypt(k, x) => step_outermost(x).map(|x2| FreeMsg::Decrypt(*k, Box::new(x2))),
    }
}

/// Normalization by repeated leftmost-outermost steps.
pub fn normalize_outermost(t: &FreeMsg) -> FreeMsg {
    let mut cur = t.clone();
    while let Some(next) = step_outermost(&cur) {
        cur = next;
    }
    cur
}

pub fn is_normal(t: &FreeMsg) -> bool {
    if t.is_redex() {
        return false;
    }
    match t {
        FreeMsg::Nonce(_) => true,
        FreeMsg::MPair(x, y) => is_normal(x) && is_normal(y),
        FreeMsg::Crypt(_, x) | FreeMsg::Decrypt(_, x) => is_normal(x),
    }
}

/// The decision procedure for `msgrel`: equal normal forms.
pub fn msg_eq(u: &FreeMsg, v: &FreeMsg) -> bool {
    normalize(u) == normalize(v)
}
