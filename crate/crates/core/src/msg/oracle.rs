//! Brute-force least fixpoint of the eight `msgrel` rules over a bounded
//! universe of terms.
//!
//! Nothing here uses rewriting. [`closure_oracle`] saturates the rules with a
//! union-find: reflexivity, symmetry and transitivity are implicit in the
//! partition, the cancellation axioms seed unions, and the three congruence
//! rules are applied through a signature table until a pass adds nothing.
//! [`naive_closure`] applies all eight rules literally to an explicit pair set
//! and is only usable on tiny universes; it exists to cross-check the first.
//!
//! Restricting the rules to the universe loses nothing for terms inside it:
//! every derivation between two terms of size at most `n` can be replayed
//! through terms of size at most `n`, because both sides reach a common
//! smaller term by cancellation.

use std::collections::{HashMap, HashSet};

use super::term::{universe_by_size, universe_size, FreeMsg};
use crate::error::{Error, Result};

/// Largest universe the oracle will build.
pub const UNIVERSE_LIMIT: u128 = 2_000_000;

/// Which of the eight introduction rules a step uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MsgRelRule {
    /// `CRYPT K (DECRYPT K X) ~ X`
    Cd,
    /// `DECRYPT K (CRYPT K X) ~ X`
    Dc,
    /// `NONCE N ~ NONCE N`
    Nonce,
    /// `X ~ X', Y ~ Y'  ==>  MPAIR X Y ~ MPAIR X' Y'`
    MPair,
    /// `X ~ X'  ==>  CRYPT K X ~ CRYPT K X'`
    Crypt,
    /// `X ~ X'  ==>  DECRYPT K X ~ DECRYPT K X'`
    Decrypt,
    /// `X ~ Y  ==>  Y ~ X`
    Sym,
    /// `X ~ Y, Y ~ Z  ==>  X ~ Z`
    Trans,
}

impl MsgRelRule {
    pub const ALL: [MsgRelRule; 8] = [
        MsgRelRule::Cd,
        MsgRelRule::Dc,
        MsgRelRule::Nonce,
        MsgRelRule::MPair,
        MsgRelRule::Crypt,
        MsgRelRule::Decrypt,
        MsgRelRule::Sym,
        MsgRelRule::Trans,
    ];
}

/// A term of the universe described by the indices of its children.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Shape {
    Nonce(u64),
    Pair(usize, usize),
    Crypt(u64, usize),
    Decrypt(u64, usize),
}

/// An indexed universe of terms.
struct Universe {
    terms: Vec<FreeMsg>,
    shapes: Vec<Shape>,
    sizes: Vec<usize>,
    index: HashMap<FreeMsg, usize>,
}

impl Universe {
    fn build(bound: usize, keys: &[u64], nonces: &[u64]) -> Result<Self> {
        if bound == 0 {
            return Err(Error::ZeroBound);
        }
        let mut keys = keys.to_vec();
        keys.sort_unstable();
        keys.dedup();
        let mut nonces = nonces.to_vec();
        nonces.sort_unstable();
        nonces.dedup();
        let n = universe_size(bound, keys.len(), nonces.len());
        if n > UNIVERSE_LIMIT {
            return Err(Error::Resource {
                universe_size: n,
                limit: UNIVERSE_LIMIT,
            });
        }

        let by_size = universe_by_size(bound, &keys, &nonces);
        let mut u = Universe {
            terms: Vec::with_capacity(n as usize),
            shapes: Vec::with_capacity(n as usize),
            sizes: Vec::with_capacity(n as usize),
            index: HashMap::with_capacity(n as usize),
        };
        for (size, level) in by_size.into_iter().enumerate() {
            for t in level {
                let shape = match &t {
                    FreeMsg::Nonce(n) => Shape::Nonce(*n),
                    FreeMsg::MPair(x, y) => Shape::Pair(u.index[&**x], u.index[&**y]),
                    FreeMsg::Crypt(k, x) => Shape::Crypt(*k, u.index[&**x]),
                    FreeMsg::Decrypt(k, x) => Shape::Decrypt(*k, u.index[&**x]),
                };
                u.index.insert(t.clone(), u.terms.len());
                u.terms.push(t);
                u.shapes.push(shape);
                u.sizes.push(size);
            }
        }
        Ok(u)
    }

    /// Index of `X` when term `i` is a cancellation redex `CRYPT K (DECRYPT K X)`
    /// or `DECRYPT K (CRYPT K X)`, with the rule used.
    fn cancellation(&self, i: usize) -> Option<(MsgRelRule, usize)> {
        match self.shapes[i] {
            Shape::Crypt(k, c) => match self.shapes[c] {
                Shape::Decrypt(j, x) if j == k => Some((MsgRelRule::Cd, x)),
                _ => None,
            },
            Shape::Decrypt(k, c) => match self.shapes[c] {
                Shape::Crypt(j, x) if j == k => Some((MsgRelRule::Dc, x)),
                _ => None,
            },
            _ => None,
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // smaller index becomes the root, keeping the result order-independent
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// The relation `msgrel` restricted to a bounded universe, as a partition.
#[derive(Debug, Clone)]
pub struct MsgRelClosure {
    terms: Vec<FreeMsg>,
    sizes: Vec<usize>,
    index: HashMap<FreeMsg, usize>,
    class: Vec<u32>,
    members: Vec<Vec<usize>>,
    passes: usize,
}

/// Computes the least relation closed under the eight rules on the universe
/// of terms of size `<= bound` with the given keys and nonces.
pub fn closure_oracle(bound: usize, keys: &[u64], nonces: &[u64]) -> Result<MsgRelClosure> {
    let u = Universe::build(bound, keys, nonces)?;
    let n = u.terms.len();
    let mut uf = UnionFind::new(n);

    for i in 0..n {
        if let Some((_, x)) = u.cancellation(i) {
            uf.union(i, x);
        }
    }

    let mut passes = 0;
    loop {
        passes += 1;
        let mut changed = false;
        let mut table: HashMap<Shape, usize> = HashMap::with_capacity(n);
        for i in 0..n {
            let sig = match u.shapes[i] {
                Shape::Nonce(_) => continue,
                Shape::Pair(x, y) => Shape::Pair(uf.find(x), uf.find(y)),
                Shape::Crypt(k, x) => Shape::Crypt(k, uf.find(x)),
                Shape::Decrypt(k, x) => Shape::Decrypt(k, uf.find(x)),
            };
            match table.get(&sig) {
                Some(&j) => changed |= uf.union(i, j),
                None => {
                    table.insert(sig, i);
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut ids: HashMap<usize, u32> = HashMap::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    let class: Vec<u32> = (0..n)
        .map(|i| {
            let root = uf.find(i);
            let next = ids.len() as u32;
            let id = *ids.entry(root).or_insert(next);
            if id as usize == members.len() {
                members.push(Vec::new());
            }
            members[id as usize].push(i);
            id
        })
        .collect();

    Ok(MsgRelClosure {
        terms: u.terms,
        sizes: u.sizes,
        index: u.index,
        class,
        members,
        passes,
    })
}

impl MsgRelClosure {
    pub fn universe(&self) -> &[FreeMsg] {
        &self.terms
    }

    pub fn universe_len(&self) -> usize {
        self.terms.len()
    }

    pub fn class_count(&self) -> usize {
        self.members.len()
    }

    /// Saturation passes until the congruence rules stopped adding pairs.
    pub fn passes(&self) -> usize {
        self.passes
    }

    pub fn index_of(&self, t: &FreeMsg) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Class id of the term at index `i`.
    pub fn class_id(&self, i: usize) -> u32 {
        self.class[i]
    }

    /// Membership of `(u, v)` in the closure; `false` outside the universe.
    pub fn contains(&self, u: &FreeMsg, v: &FreeMsg) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.class[i] == self.class[j],
            _ => false,
        }
    }

    /// Number of pairs in the relation, reflexive ones included.
    pub fn pair_count(&self) -> u64 {
        self.members.iter().map(|m| (m.len() as u64).pow(2)).sum()
    }

    /// Every pair of the relation, class by class.
    pub fn pairs(&self) -> impl Iterator<Item = (&FreeMsg, &FreeMsg)> + '_ {
        self.members.iter().flat_map(move |m| {
            m.iter()
                .flat_map(move |&i| m.iter().map(move |&j| (&self.terms[i], &self.terms[j])))
        })
    }

    /// Up to `budget` related pairs `(u, v)` with `u != v`, ordered by
    /// `size(u) + size(v)`, then by the index of `v`, then of `u`.
    pub fn ordered_pairs(&self, budget: usize) -> Vec<(FreeMsg, FreeMsg)> {
        let mut out = Vec::new();
        let max = self.sizes.last().copied().unwrap_or(0) * 2;
        for total in 2..=max {
            for v in 0..self.terms.len() {
                let sv = self.sizes[v];
                if sv >= total {
                    continue;
                }
                for &u in &self.members[self.class[v] as usize] {
                    if u != v && self.sizes[u] + sv == total {
                        if out.len() == budget {
                            return out;
                        }
                        out.push((self.terms[u].clone(), self.terms[v].clone()));
                    }
                }
            }
        }
        out
    }
}

/// Literal saturation of all eight rules over an explicit set of index pairs.
/// Quadratic in the relation size per pass; for universes of a few dozen
/// terms.
pub fn naive_closure(
    bound: usize,
    keys: &[u64],
    nonces: &[u64],
) -> Result<HashSet<(FreeMsg, FreeMsg)>> {
    let u = Universe::build(bound, keys, nonces)?;
    let n = u.terms.len();
    let lookup: HashMap<Shape, usize> = u.shapes.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut rel: HashSet<(usize, usize)> = HashSet::new();

    loop {
        let mut fresh: Vec<(usize, usize)> = Vec::new();
        for rule in MsgRelRule::ALL {
            match rule {
                MsgRelRule::Cd | MsgRelRule::Dc => {
                    for i in 0..n {
                        if let Some((r, x)) = u.cancellation(i) {
                            if r == rule {
                                fresh.push((i, x));
                            }
                        }
                    }
                }
                MsgRelRule::Nonce => {
                    for i in 0..n {
                        if let Shape::Nonce(_) = u.shapes[i] {
                            fresh.push((i, i));
                        }
                    }
                }
                MsgRelRule::MPair => {
                    for &(x, x2) in &rel {
                        for &(y, y2) in &rel {
                            if let (Some(&a), Some(&b)) = (
                                lookup.get(&Shape::Pair(x, y)),
                                lookup.get(&Shape::Pair(x2, y2)),
                            ) {
                                fresh.push((a, b));
                            }
                        }
                    }
                }
                MsgRelRule::Crypt | MsgRelRule::Decrypt => {
                    for &(x, x2) in &rel {
                        for &k in keys {
                            let (s, s2) = if rule == MsgRelRule::Crypt {
                                (Shape::Crypt(k, x), Shape::Crypt(k, x2))
                            } else {
                                (Shape::Decrypt(k, x), Shape::Decrypt(k, x2))
                            };
                            if let (Some(&a), Some(&b)) = (lookup.get(&s), lookup.get(&s2)) {
                                fresh.push((a, b));
                            }
                        }
                    }
                }
                MsgRelRule::Sym => {
                    fresh.extend(rel.iter().map(|&(a, b)| (b, a)));
                }
                MsgRelRule::Trans => {
                    let mut succ: HashMap<usize, Vec<usize>> = HashMap::new();
                    for &(a, b) in &rel {
                        succ.entry(a).or_default().push(b);
                    }
                    for &(a, b) in &rel {
                        if let Some(cs) = succ.get(&b) {
                            fresh.extend(cs.iter().map(|&c| (a, c)));
                        }
                    }
                }
            }
        }
        let before = rel.len();
        rel.extend(fresh);
        if rel.len() == before {
            break;
        }
    }

    Ok(rel
        .into_iter()
        .map(|(a, b)| (u.terms[a].clone(), u.terms[b].clone()))
        .collect())
}
