//! The quotient type of messages.

use std::collections::BTreeSet;
use std::fmt;

use super::free::{freediscrim, freeleft, freenonces, freeright};
use super::msgrel;
use super::rewrite::normalize;
use super::term::{self, FreeMsg};
use crate::equiv::{class_of, EquivClass};

/// A message: a `msgrel` class held by its redex-free representative, so
/// equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Msg(FreeMsg);

impl Msg {
    /// The class of an arbitrary free term.
    pub fn of(t: &FreeMsg) -> Self {
        Msg(normalize(t))
    }

    pub fn rep(&self) -> &FreeMsg {
        &self.0
    }

    pub fn into_rep(self) -> FreeMsg {
        self.0
    }

    pub fn class(&self) -> EquivClass<FreeMsg> {
        class_of(&msgrel(), self.0.clone()).expect("msgrel carrier is every term")
    }

    /// Injected directly: the argument is a number, not a class.
    pub fn nonce(n: u64) -> Self {
        Msg(term::nonce(n))
    }

    pub fn mpair(x: &Msg, y: &Msg) -> Self {
        Msg::of(&term::mpair(x.0.clone(), y.0.clone()))
    }

    pub fn crypt(k: u64, x: &Msg) -> Self {
        Msg::of(&term::crypt(k, x.0.clone()))
    }

    pub fn decrypt(k: u64, x: &Msg) -> Self {
        Msg::of(&term::decrypt(k, x.0.clone()))
    }

    pub fn nonces(&self) -> BTreeSet<u64> {
        freenonces(&self.0)
    }

    pub fn left(&self) -> Msg {
        Msg::of(&freeleft(&self.0))
    }

    pub fn right(&self) -> Msg {
        Msg::of(&freeright(&self.0))
    }

    pub fn discrim(&self) -> i64 {
        freediscrim(&self.0)
    }
}

impl From<FreeMsg> for Msg {
    fn from(t: FreeMsg) -> Self {
        Msg::of(&t)
    }
}

impl fmt::Display for Msg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_at_the_quotient() {
        let five = Msg::nonce(5);
        assert_eq!(Msg::crypt(1, &Msg::decrypt(1, &five)), five);
        assert_eq!(Msg::decrypt(1, &Msg::crypt(1, &five)), five);
        let p = Msg::mpair(&Msg::nonce(1), &Msg::nonce(2));
        assert_eq!(p.rep(), &term::mpair(term::nonce(1), term::nonce(2)));
    }

    #[test]
    fn lifted_functions() {
        assert_eq!(
            Msg::decrypt(2, &Msg::nonce(4)).nonces(),
            BTreeSet::from([4])
        );
        let x = Msg::crypt(1, &Msg::nonce(3));
        let y = Msg::nonce(9);
        assert_eq!(Msg::mpair(&x, &y).left(), x);
        assert_eq!(Msg::mpair(&x, &y).right(), y);
        let d = Msg::crypt(0, &Msg::mpair(&Msg::nonce(1), &Msg::nonce(2)));
        assert_eq!(d.discrim(), 3);
        assert_eq!(freediscrim(d.rep()), 3);
    }

    #[test]
    fn class_handle_agrees() {
        let a = Msg::of(&term::crypt(0, term::decrypt(0, term::nonce(1)))).class();
        let b = Msg::nonce(1).class();
        assert_eq!(a, b);
    }
}
