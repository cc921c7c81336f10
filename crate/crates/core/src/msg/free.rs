//! Functions on the free algebra, defined by structural recursion.

use std::collections::BTreeSet;

use super::term::FreeMsg;

/// All nonces occurring in the term; keys are ignored.
pub fn freenonces(t: &FreeMsg) -> BTreeSet<u64> {
    match t {
        FreeMsg::Nonce(n) => BTreeSet::from([*n]),
        FreeMsg::MPair(x, y) => {
            let mut s = freenonces(x);
            s.extend(freenonces(y));
            s
        }
        FreeMsg::Crypt(_, x) | FreeMsg::Decrypt(_, x) => freenonces(x),
    }
}

/// Left component of the topmost pair, looking through encryption and
/// decryption. A bare nonce is its own left part.
pub fn freeleft(t: &FreeMsg) -> FreeMsg {
    match t {
        FreeMsg::Nonce(n) => FreeMsg::Nonce(*n),
        FreeMsg::MPair(x, _) => (**x).clone(),
        FreeMsg::Crypt(_, x) | FreeMsg::Decrypt(_, x) => freeleft(x),
    }
}

/// Mirror image of [`freeleft`].
pub fn freeright(t: &FreeMsg) -> FreeMsg {
    match t {
        FreeMsg::Nonce(n) => FreeMsg::Nonce(*n),
        FreeMsg::MPair(_, y) => (**y).clone(),
        FreeMsg::Crypt(_, x) | FreeMsg::Decrypt(_, x) => freeright(x),
    }
}

/// 0 for a nonce, 1 for a pair, shifted by +2 per encryption and -2 per
/// decryption above it. Signed, so that cancelling pairs leave it unchanged.
pub fn freediscrim(t: &FreeMsg) -> i64 {
    match t {
        FreeMsg::Nonce(_) => 0,
        FreeMsg::MPair(..) => 1,
        FreeMsg::Crypt(_, x) => freediscrim(x) + 2,
        FreeMsg::Decrypt(_, x) => freediscrim(x) - 2,
    }
}

/// [`freediscrim`] computed in the naturals with truncated subtraction. This
/// variant does not respect `msgrel`; it is kept as a known-bad map for the
/// congruence checker.
pub fn freediscrim_truncated(t: &FreeMsg) -> u64 {
    match t {
        FreeMsg::Nonce(_) => 0,
        FreeMsg::MPair(..) => 1,
        FreeMsg::Crypt(_, x) => freediscrim_truncated(x) + 2,
        FreeMsg::Decrypt(_, x) => freediscrim_truncated(x).saturating_sub(2),
    }
}
