use std::fmt;

/// A term of the free message algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FreeMsg {
    Nonce(u64),
    MPair(Box<FreeMsg>, Box<FreeMsg>),
    Crypt(u64, Box<FreeMsg>),
    Decrypt(u64, Box<FreeMsg>),
}

pub fn nonce(n: u64) -> FreeMsg {
    FreeMsg::Nonce(n)
}

pub fn mpair(x: FreeMsg, y: FreeMsg) -> FreeMsg {
    FreeMsg::MPair(Box::new(x), Box::new(y))
}

pub fn crypt(k: u64, x: FreeMsg) -> FreeMsg {
    FreeMsg::Crypt(k, Box::new(x))
}

pub fn decrypt(k: u64, x: FreeMsg) -> FreeMsg {
    FreeMsg::Decrypt(k, Box::new(x))
}

impl FreeMsg {
    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match self {
            FreeMsg::Nonce(_) => 1,
            FreeMsg::MPair(x, y) => 1 + x.size() + y.size(),
            FreeMsg::Crypt(_, x) | FreeMsg::Decrypt(_, x) => 1 + x.size(),
        }
    }

    /// True for `CRYPT K (DECRYPT K _)` and `DECRYPT K (CRYPT K _)` at the root.
    pub fn is_redex(&self) -> bool {
        match self {
            FreeMsg::Crypt(k, x) => matches!(&**x, FreeMsg::Decrypt(j, _) if j == k),
            FreeMsg::Decrypt(k, x) => matches!(&**x, FreeMsg::Crypt(j, _) if j == k),
            _ => false,
        }
    }
}

impl fmt::Display for FreeMsg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FreeMsg::Nonce(n) => write!(f, "(nonce {n})"),
            FreeMsg::MPair(x, y) => write!(f, "(mpair {x} {y})"),
            FreeMsg::Crypt(k, x) => write!(f, "(crypt {k} {x})"),
            FreeMsg::Decrypt(k, x) => write!(f, "(decrypt {k} {x})"),
        }
    }
}

/// Number of terms of size at most `bound` over the given key and nonce
/// counts, saturating at `u128::MAX`.
pub fn universe_size(bound: usize, keys: usize, nonces: usize) -> u128 {
    let mut exact = vec![0u128; bound + 1];
    for s in 1..=bound {
        exact[s] = if s == 1 {
            nonces as u128
        } else {
            let unary = (2 * keys as u128).saturating_mul(exact[s - 1]);
            let pairs = (1..s - 1).fold(0u128, |acc, a| {
                acc.saturating_add(exact[a].saturating_mul(exact[s - 1 - a]))
            });
            unary.saturating_add(pairs)
        };
    }
    exact.iter().fold(0u128, |acc, n| acc.saturating_add(*n))
}

/// All terms of size at most `bound` with keys and nonces from the given
/// sets, ordered by size, then constructor (nonce, pair, crypt, decrypt),
/// then keys and children in enumeration order.
pub fn universe(bound: usize, keys: &[u64], nonces: &[u64]) -> Vec<FreeMsg> {
    let by_size = universe_by_size(bound, keys, nonces);
    by_size.into_iter().flatten().collect()
}

pub(crate) fn universe_by_size(bound: usize, keys: &[u64], nonces: &[u64]) -> Vec<Vec<FreeMsg>> {
    let mut by_size: Vec<Vec<FreeMsg>> = vec![Vec::new(); bound + 1];
    for s in 1..=bound {
        let mut level = Vec::new();
        if s == 1 {
            level.extend(nonces.iter().map(|&n| nonce(n)));
        } else {
            for a in 1..s - 1 {
                for x in &by_size[a] {
                    for y in &by_size[s - 1 - a] {
                        level.push(mpair(x.clone(), y.clone()));
                    }
                }
            }
            for &k in keys {
                level.extend(by_size[s - 1].iter().map(|x| crypt(k, x.clone())));
            }
            for &k in keys {
                level.extend(by_size[s - 1].iter().map(|x| decrypt(k, x.clone())));
            }
        }
        by_size[s] = level;
    }
    by_size
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_display() {
        let t = crypt(1, decrypt(1, nonce(5)));
        assert_eq!(t.size(), 3);
        assert!(t.is_redex());
        assert_eq!(t.to_string(), "(crypt 1 (decrypt 1 (nonce 5)))");
        assert!(!crypt(1, decrypt(2, nonce(5))).is_redex());
        assert_eq!(
            mpair(nonce(1), nonce(2)).to_string(),
            "(mpair (nonce 1) (nonce 2))"
        );
    }

    #[test]
    fn universe_counts_match_enumeration() {
        for bound in 1..=5 {
            let u = universe(bound, &[0, 1], &[0, 1]);
            assert_eq!(u.len() as u128, universe_size(bound, 2, 2));
            assert!(u.iter().all(|t| t.size() <= bound));
            let mut dedup = u.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), u.len());
        }
        // 2 + 8 + 36 + 176 + 912 + 4928 + 27472
        assert_eq!(universe_size(7, 2, 2), 33534);
        assert_eq!(universe_size(0, 2, 2), 0);
        assert_eq!(universe_size(500, 4, 4), u128::MAX);
    }
}
