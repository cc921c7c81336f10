//! Integers as classes of pairs of naturals: `(x, y)` stands for `x - y`.
//!
//! Every operation is defined on representatives by a "body" function and the
//! quotient-level operation applies the body to the canonical representative.
//! The bodies are exported so their congruence can be checked.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::sync::{Arc, LazyLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};

use crate::equiv::{class_of, EquivClass, Equivalence, Relation};

pub type Nat = BigUint;

/// A pair of naturals representing the integer `x - y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPair {
    pub x: Nat,
    pub y: Nat,
}

impl IntPair {
    pub fn new(x: impl Into<Nat>, y: impl Into<Nat>) -> Self {
        IntPair {
            x: x.into(),
            y: y.into(),
        }
    }
}

impl fmt::Display for IntPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// `(x, y) ~ (u, v)` iff `x + v = u + y`, evaluated without subtraction.
pub fn intrel_holds(p: &IntPair, q: &IntPair) -> bool {
    &p.x + &q.y == &q.x + &p.y
}

/// The representative with a zero component.
pub fn canonical(p: &IntPair) -> IntPair {
    if p.x >= p.y {
        IntPair {
            x: &p.x - &p.y,
            y: Nat::zero(),
        }
    } else {
        IntPair {
            x: Nat::zero(),
            y: &p.y - &p.x,
        }
    }
}

/// Truncated subtraction on naturals: `x - y = 0` when `x <= y`.
fn monus(x: &Nat, y: &Nat) -> Nat {
    if x > y {
        x - y
    } else {
        Nat::zero()
    }
}

pub fn neg_body(p: &IntPair) -> QInt {
    QInt::of_pair(IntPair {
        x: p.y.clone(),
        y: p.x.clone(),
    })
}

pub fn add_body(p: &IntPair, q: &IntPair) -> QInt {
    QInt::of_pair(IntPair {
        x: &p.x + &q.x,
        y: &p.y + &q.y,
    })
}

pub fn mul_body(p: &IntPair, q: &IntPair) -> QInt {
    QInt::of_pair(IntPair {
        x: &p.x * &q.x + &p.y * &q.y,
        y: &p.x * &q.y + &p.y * &q.x,
    })
}

pub fn le_body(p: &IntPair, q: &IntPair) -> bool {
    &p.x + &q.y <= &q.x + &p.y
}

pub fn nat_body(p: &IntPair) -> Nat {
    monus(&p.x, &p.y)
}

/// The relation `intrel` on `IntPair`, with its shift-pair generator.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntRel;

impl IntRel {
    /// Pairs `((x, y), (x + k, y + k))` and their mirrors, `k >= 1`, ordered
    /// by `x + y + k`.
    pub fn shift_pairs(budget: usize) -> Vec<(IntPair, IntPair)> {
        let mut out = Vec::with_capacity(budget);
        for total in 1u64.. {
            for k in 1..=total {
                for x in 0..=(total - k) {
                    let y = total - k - x;
                    let a = IntPair::new(x, y);
                    let b = IntPair::new(x + k, y + k);
                    for pair in [(a.clone(), b.clone()), (b, a)] {
                        if out.len() == budget {
                            return out;
                        }
                        out.push(pair);
                    }
                }
            }
        }
        out
    }
}

impl Equivalence for IntRel {
    type Elem = IntPair;

    fn name(&self) -> &str {
        "intrel"
    }

    fn related(&self, a: &IntPair, b: &IntPair) -> bool {
        intrel_holds(a, b)
    }

    fn canonicalize(&self, x: &IntPair) -> Option<IntPair> {
        Some(canonical(x))
    }

    fn samples(&self, budget: usize) -> Vec<IntPair> {
        let side = (budget as f64).sqrt().ceil() as u64;
        (0..side)
            .flat_map(|x| (0..side).map(move |y| IntPair::new(x, y)))
            .take(budget)
            .collect()
    }

    fn related_pairs(&self, budget: usize) -> Vec<(IntPair, IntPair)> {
        Self::shift_pairs(budget)
    }
}

static INTREL: LazyLock<Relation<IntPair>> = LazyLock::new(|| Arc::new(IntRel));

/// Shared handle to [`IntRel`].
pub fn intrel() -> Relation<IntPair> {
    Arc::clone(&INTREL)
}

/// An integer: the class of a pair of naturals, held by its canonical
/// representative (one component zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QInt(IntPair);

impl QInt {
    pub fn of_pair(p: IntPair) -> Self {
        QInt(canonical(&p))
    }

    pub fn of(x: u64, y: u64) -> Self {
        Self::of_pair(IntPair::new(x, y))
    }

    pub fn zero() -> Self {
        Self::of(0, 0)
    }

    pub fn one() -> Self {
        Self::of(1, 0)
    }

    pub fn rep(&self) -> &IntPair {
        &self.0
    }

    pub fn class(&self) -> EquivClass<IntPair> {
        class_of(&INTREL, self.0.clone()).expect("intrel carrier is every pair")
    }

    pub fn from_class(c: &EquivClass<IntPair>) -> Self {
        Self::of_pair(c.representative().clone())
    }

    pub fn neg(&self) -> Self {
        neg_body(&self.0)
    }

    pub fn add(&self, other: &Self) -> Self {
        add_body(&self.0, &other.0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        mul_body(&self.0, &other.0)
    }

    pub fn le(&self, other: &Self) -> bool {
        le_body(&self.0, &other.0)
    }

    /// Coercion to the naturals, truncating negatives to zero.
    pub fn to_nat(&self) -> Nat {
        nat_body(&self.0)
    }

    pub fn from_nat(n: Nat) -> Self {
        QInt(IntPair {
            x: n,
            y: Nat::zero(),
        })
    }

    pub fn from_native(i: i64) -> Self {
        Self::from_bigint(&BigInt::from(i))
    }

    pub fn from_bigint(i: &BigInt) -> Self {
        let mag = i.magnitude().clone();
        match i.sign() {
            Sign::Minus => QInt(IntPair {
                x: Nat::zero(),
                y: mag,
            }),
            _ => QInt(IntPair {
                x: mag,
                y: Nat::zero(),
            }),
        }
    }

    pub fn to_native(&self) -> BigInt {
        BigInt::from(self.0.x.clone()) - BigInt::from(self.0.y.clone())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_native().to_i64()
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.y.is_zero()
    }
}

impl fmt::Display for QInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_native())
    }
}

impl PartialOrd for QInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.le(other), other.le(self)) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl Neg for &QInt {
    type Output = QInt;
    fn neg(self) -> QInt {
        QInt::neg(self)
    }
}

impl Neg for QInt {
    type Output = QInt;
    fn neg(self) -> QInt {
        QInt::neg(&self)
    }
}

impl Add for &QInt {
    type Output = QInt;
    fn add(self, rhs: &QInt) -> QInt {
        QInt::add(self, rhs)
    }
}

impl Add for QInt {
    type Output = QInt;
    fn add(self, rhs: QInt) -> QInt {
        QInt::add(&self, &rhs)
    }
}

impl Mul for &QInt {
    type Output = QInt;
    fn mul(self, rhs: &QInt) -> QInt {
        QInt::mul(self, rhs)
    }
}

impl Mul for QInt {
    type Output = QInt;
    fn mul(self, rhs: QInt) -> QInt {
        QInt::mul(&self, &rhs)
    }
}
