//! Messages with cancelling encryption and decryption.
//!
//! [`FreeMsg`] is the free algebra. `msgrel` is the least equivalence closed
//! under `CRYPT K (DECRYPT K X) ~ X`, `DECRYPT K (CRYPT K X) ~ X` and
//! congruence; it is decided by [`normalize`] and checked against the
//! brute-force [`closure_oracle`]. [`Msg`] is the quotient.

mod abs;
mod free;
mod oracle;
mod rewrite;
mod term;

use std::collections::BTreeSet;
use std::sync::{Arc, LazyLock, OnceLock};

pub use abs::Msg;
pub use free::{freediscrim, freediscrim_truncated, freeleft, freenonces, freeright};
pub use oracle::{closure_oracle, naive_closure, MsgRelClosure, MsgRelRule, UNIVERSE_LIMIT};
pub use rewrite::{is_normal, msg_eq, normalize, normalize_outermost, step_outermost};
pub use term::{crypt, decrypt, mpair, nonce, universe, universe_size, FreeMsg};

use crate::equiv::{Equivalence, Relation, RespectMap, RespectMap2};
use crate::error::Result;

/// Default enumeration domain for generators and oracle checks.
pub const DEFAULT_KEYS: [u64; 2] = [0, 1];
pub const DEFAULT_NONCES: [u64; 2] = [0, 1];

/// `msgrel` as an [`Equivalence`]: decided by normal forms, related pairs
/// drawn from the closure oracle over a bounded universe.
#[derive(Debug)]
pub struct MsgRel {
    bound: usize,
    keys: Vec<u64>,
    nonces: Vec<u64>,
    closure: OnceLock<Option<MsgRelClosure>>,
}

impl MsgRel {
    /// Generator universe of terms up to `bound` nodes. Fails early if the
    /// universe is too large for the oracle.
    pub fn new(bound: usize, keys: &[u64], nonces: &[u64]) -> Result<Self> {
        let rel = MsgRel {
            bound,
            keys: keys.to_vec(),
            nonces: nonces.to_vec(),
            closure: OnceLock::new(),
        };
        let closure = closure_oracle(bound, keys, nonces)?;
        let _ = rel.closure.set(Some(closure));
        Ok(rel)
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    fn closure(&self) -> Option<&MsgRelClosure> {
        self.closure
            .get_or_init(|| closure_oracle(self.bound, &self.keys, &self.nonces).ok())
            .as_ref()
    }
}

impl Default for MsgRel {
    fn default() -> Self {
        MsgRel {
            bound: 5,
            keys: DEFAULT_KEYS.to_vec(),
            nonces: DEFAULT_NONCES.to_vec(),
            closure: OnceLock::new(),
        }
    }
}

impl Equivalence for MsgRel {
    type Elem = FreeMsg;

    fn name(&self) -> &str {
        "msgrel"
    }

    fn related(&self, a: &FreeMsg, b: &FreeMsg) -> bool {
        msg_eq(a, b)
    }

    fn canonicalize(&self, x: &FreeMsg) -> Option<FreeMsg> {
        Some(normalize(x))
    }

    fn samples(&self, budget: usize) -> Vec<FreeMsg> {
        self.closure()
            .map(|c| c.universe().iter().take(budget).cloned().collect())
            .unwrap_or_default()
    }

    fn related_pairs(&self, budget: usize) -> Vec<(FreeMsg, FreeMsg)> {
        self.closure()
            .map(|c| c.ordered_pairs(budget))
            .unwrap_or_default()
    }
}

static MSGREL: LazyLock<Relation<FreeMsg>> = LazyLock::new(|| Arc::new(MsgRel::default()));

/// Shared handle to `msgrel` with the default generator universe.
pub fn msgrel() -> Relation<FreeMsg> {
    Arc::clone(&MSGREL)
}

fn msg_target_eq(a: &FreeMsg, b: &FreeMsg) -> bool {
    msg_eq(a, b)
}

/// The free functions paired with `msgrel`, ready for congruence checks.
pub mod maps {
    use super::*;

    pub fn nonces(source: Relation<FreeMsg>) -> RespectMap<FreeMsg, BTreeSet<u64>> {
        RespectMap::new("freenonces", source, freenonces)
    }

    pub fn left(source: Relation<FreeMsg>) -> RespectMap<FreeMsg, FreeMsg> {
        RespectMap::with_target_eq("freeleft", source, freeleft, msg_target_eq)
    }

    pub fn right(source: Relation<FreeMsg>) -> RespectMap<FreeMsg, FreeMsg> {
        RespectMap::with_target_eq("freeright", source, freeright, msg_target_eq)
    }

    pub fn discrim(source: Relation<FreeMsg>) -> RespectMap<FreeMsg, i64> {
        RespectMap::new("freediscrim", source, freediscrim)
    }

    pub fn discrim_truncated(source: Relation<FreeMsg>) -> RespectMap<FreeMsg, u64> {
        RespectMap::new("freediscrim-truncated", source, freediscrim_truncated)
    }

    pub fn crypt(source: Relation<FreeMsg>, k: u64) -> RespectMap<FreeMsg, FreeMsg> {
        RespectMap::with_target_eq(
            format!("CRYPT {k}"),
            source,
            move |x: &FreeMsg| super::crypt(k, x.clone()),
            msg_target_eq,
        )
    }

    pub fn decrypt(source: Relation<FreeMsg>, k: u64) -> RespectMap<FreeMsg, FreeMsg> {
        RespectMap::with_target_eq(
            format!("DECRYPT {k}"),
            source,
            move |x: &FreeMsg| super::decrypt(k, x.clone()),
            msg_target_eq,
        )
    }

    pub fn mpair(source: Relation<FreeMsg>) -> RespectMap2<FreeMsg, FreeMsg, FreeMsg> {
        RespectMap2::with_target_eq(
            "MPAIR",
            source.clone(),
            source,
            |x: &FreeMsg, y: &FreeMsg| super::mpair(x.clone(), y.clone()),
            msg_target_eq,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equiv::{
        check_equivalence, check_respects, check_respects2, lift1, LiftMode, Verdict,
    };

    #[test]
    fn msgrel_is_an_equivalence() {
        let report = check_equivalence(&*msgrel(), 500).unwrap();
        assert_eq!(report.verdict, Verdict::Certified);
        assert_eq!(report.budget_used, 500);
    }

    #[test]
    fn free_functions_respect_msgrel() {
        let r = msgrel();
        assert!(check_respects(&maps::nonces(r.clone()), 500)
            .unwrap()
            .is_certified());
        assert!(check_respects(&maps::left(r.clone()), 500)
            .unwrap()
            .is_certified());
        assert!(check_respects(&maps::right(r.clone()), 500)
            .unwrap()
            .is_certified());
        assert!(check_respects(&maps::discrim(r.clone()), 500)
            .unwrap()
            .is_certified());
        for k in DEFAULT_KEYS {
            assert!(check_respects(&maps::crypt(r.clone(), k), 300)
                .unwrap()
                .is_certified());
            assert!(check_respects(&maps::decrypt(r.clone(), k), 300)
                .unwrap()
                .is_certified());
        }
        assert!(check_respects2(&maps::mpair(r), 500)
            .unwrap()
            .is_certified());
    }

    #[test]
    fn truncated_discriminator_is_refuted() {
        let m = maps::discrim_truncated(msgrel());
        let report = check_respects(&m, 500).unwrap();
        assert_eq!(
            report.verdict,
            Verdict::Refuted((crypt(0, decrypt(0, nonce(0))), nonce(0)))
        );
        assert_eq!(report.budget_used, 1);
        assert!(report.revalidate(&m));
    }

    #[test]
    fn lifted_nonces_through_the_machinery() {
        let m = maps::nonces(msgrel());
        let cert = check_respects(&m, 500).unwrap();
        let nonces = lift1(&cert, &m, LiftMode::Strict).unwrap();
        let class = Msg::of(&crypt(1, nonce(5))).class();
        assert_eq!(nonces.apply(&class).unwrap(), BTreeSet::from([5]));
    }

    #[test]
    fn explicit_generator_universe() {
        let rel = MsgRel::new(3, &[0], &[0]).unwrap();
        let pairs = rel.related_pairs(100);
        assert!(!pairs.is_empty());
        assert!(pairs
            .iter()
            .all(|(a, b)| msg_eq(a, b) && a.size() <= 3 && b.size() <= 3));
        assert!(MsgRel::new(50, &[0, 1], &[0, 1]).is_err());
    }
}
