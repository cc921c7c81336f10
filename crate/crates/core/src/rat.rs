//! Rationals as classes of integer pairs `(num, den)`, `den != 0`, under
//! cross-multiplication.
//!
//! The fraction formulas below are ordinary candidates; their congruence is
//! checked, not assumed. Reduction by gcd only picks a representative, every
//! equality claim goes through [`ratrel_holds`].

use std::fmt;
use std::sync::{Arc, LazyLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::equiv::{class_of, EquivClass, Equivalence, Relation};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPair {
    pub num: BigInt,
    pub den: BigInt,
}

impl RatPair {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        RatPair {
            num: num.into(),
            den: den.into(),
        }
    }

    fn check(&self) -> Result<()> {
        if self.den.is_zero() {
            Err(Error::Domain {
                relation: "ratrel".to_string(),
                value: self.to_string(),
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for RatPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.num, self.den)
    }
}

/// `(x, y) ~ (u, v)` iff `x*v = u*y`. Zero denominators are a domain error.
pub fn ratrel_holds(p: &RatPair, q: &RatPair) -> Result<bool> {
    p.check()?;
    q.check()?;
    Ok(&p.num * &q.den == &q.num * &p.den)
}

/// Lowest terms with a positive denominator; zero is `(0, 1)`.
pub fn rat_canonical(p: &RatPair) -> Result<RatPair> {
    p.check()?;
    let g = p.num.gcd(&p.den);
    let (mut num, mut den) = (&p.num / &g, &p.den / &g);
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    Ok(RatPair { num, den })
}

pub fn add_body(p: &RatPair, q: &RatPair) -> RatPair {
    RatPair {
        num: &p.num * &q.den + &q.num * &p.den,
        den: &p.den * &q.den,
    }
}

pub fn mul_body(p: &RatPair, q: &RatPair) -> RatPair {
    RatPair {
        num: &p.num * &q.num,
        den: &p.den * &q.den,
    }
}

pub fn neg_body(p: &RatPair) -> RatPair {
    RatPair {
        num: -&p.num,
        den: p.den.clone(),
    }
}

/// Comparison of body results; pairs leaving the carrier are never equal.
pub fn rat_target_eq(p: &RatPair, q: &RatPair) -> bool {
    ratrel_holds(p, q).unwrap_or(false)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RatRel;

impl RatRel {
    /// Reduced fractions `p/q` with `|p|, q <= h`, by increasing height `h`.
    fn reduced(limit: usize) -> Vec<RatPair> {
        let mut out = Vec::new();
        for h in 1i64.. {
            for q in 1..=h {
                for p in -h..=h {
                    if p.abs().max(q) == h && p.gcd(&q) == 1 {
                        out.push(RatPair::new(p, q));
                    }
                }
            }
            if out.len() >= limit {
                return out;
            }
        }
        out
    }

    /// Scaled copies `(k1 p, k1 q)`, `(k2 p, k2 q)` of reduced fractions with
    /// `k1 != k2` drawn from `±1..=±5`.
    pub fn scaled_pairs(budget: usize) -> Vec<(RatPair, RatPair)> {
        let ks: Vec<i64> = (1..=5).flat_map(|k| [k, -k]).collect();
        let per_base = ks.len() * (ks.len() - 1);
        let mut out = Vec::with_capacity(budget);
        for base in Self::reduced(budget / per_base + 1) {
            for &k1 in &ks {
                for &k2 in &ks {
                    if k1 == k2 {
                        continue;
                    }
                    if out.len() == budget {
                        return out;
                    }
                    out.push((
                        RatPair::new(&base.num * k1, &base.den * k1),
                        RatPair::new(&base.num * k2, &base.den * k2),
                    ));
                }
            }
        }
        out
    }
}

impl Equivalence for RatRel {
    type Elem = RatPair;

    fn name(&self) -> &str {
        "ratrel"
    }

    fn related(&self, a: &RatPair, b: &RatPair) -> bool {
        rat_target_eq(a, b)
    }

    fn contains(&self, x: &RatPair) -> bool {
        !x.den.is_zero()
    }

    fn canonicalize(&self, x: &RatPair) -> Option<RatPair> {
        rat_canonical(x).ok()
    }

    fn related_pairs(&self, budget: usize) -> Vec<(RatPair, RatPair)> {
        Self::scaled_pairs(budget)
    }
}

static RATREL: LazyLock<Relation<RatPair>> = LazyLock::new(|| Arc::new(RatRel));

pub fn ratrel() -> Relation<RatPair> {
    Arc::clone(&RATREL)
}

/// A rational number, held in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QRat(RatPair);

impl QRat {
    pub fn of_pair(p: &RatPair) -> Result<Self> {
        rat_canonical(p).map(QRat)
    }

    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        Self::of_pair(&RatPair::new(num, den))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        QRat(RatPair::new(n, 1))
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn rep(&self) -> &RatPair {
        &self.0
    }

    pub fn class(&self) -> EquivClass<RatPair> {
        class_of(&RATREL, self.0.clone()).expect("canonical pairs have nonzero denominators")
    }

    pub fn is_zero(&self) -> bool {
        self.0.num.is_zero()
    }

    fn lift(p: RatPair) -> Self {
        // nonzero denominators are closed under multiplication
        QRat(rat_canonical(&p).expect("denominator product is nonzero"))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::lift(add_body(&self.0, &other.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::lift(mul_body(&self.0, &other.0))
    }

    pub fn neg(&self) -> Self {
        Self::lift(neg_body(&self.0))
    }

    /// Multiplicative inverse; the zero class has none.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain {
                relation: "ratrel".to_string(),
                value: "inverse of 0".to_string(),
            });
        }
        Ok(Self::lift(RatPair {
            num: self.0.den.clone(),
            den: self.0.num.clone(),
        }))
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.den.is_one() {
            write!(f, "{}", self.0.num)
        } else {
            write!(f, "{}/{}", self.0.num, self.0.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equiv::{
        check_equivalence, check_respects, check_respects2, class_eq, RespectMap, RespectMap2,
        Verdict,
    };

    fn r(n: i64, d: i64) -> RatPair {
        RatPair::new(n, d)
    }

    #[test]
    fn ratrel_examples() {
        assert!(ratrel_holds(&r(1, 2), &r(2, 4)).unwrap());
        assert!(ratrel_holds(&r(0, 5), &r(0, -3)).unwrap());
        assert!(!ratrel_holds(&r(1, 2), &r(2, 3)).unwrap());
        assert!(matches!(
            ratrel_holds(&r(1, 0), &r(1, 2)),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(rat_canonical(&r(2, 4)).unwrap(), r(1, 2));
        assert_eq!(rat_canonical(&r(3, -6)).unwrap(), r(-1, 2));
        assert_eq!(rat_canonical(&r(0, 7)).unwrap(), r(0, 1));
        assert!(rat_canonical(&r(3, 0)).is_err());
    }

    #[test]
    fn zero_denominator_is_outside_the_carrier() {
        assert!(matches!(
            class_of(&ratrel(), r(1, 0)),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn arithmetic_examples() {
        let half = QRat::new(1, 2).unwrap();
        let third = QRat::new(1, 3).unwrap();
        assert_eq!(half.add(&third), QRat::new(5, 6).unwrap());
        let a = QRat::new(2, 4).unwrap();
        let b = QRat::new(3, 6).unwrap();
        assert_eq!(a.mul(&b), QRat::new(1, 4).unwrap());
        assert_eq!(half.add(&QRat::zero()), half);
        assert_eq!(half.neg(), QRat::new(-1, 2).unwrap());
        assert_eq!(
            QRat::new(-2, 3).unwrap().inv().unwrap(),
            QRat::new(-3, 2).unwrap()
        );
        assert!(QRat::zero().inv().is_err());
        assert_eq!(QRat::new(6, 3).unwrap().to_string(), "2");
        assert_eq!(half.to_string(), "1/2");
    }

    #[test]
    fn ratrel_is_an_equivalence() {
        let report = check_equivalence(&RatRel, 300).unwrap();
        assert_eq!(report.verdict, Verdict::Certified);
    }

    #[test]
    fn generator_pairs_are_related() {
        let pairs = RatRel::scaled_pairs(400);
        assert_eq!(pairs.len(), 400);
        assert!(pairs
            .iter()
            .all(|(a, b)| a != b && ratrel_holds(a, b).unwrap()));
    }

    #[test]
    fn bodies_respect_ratrel() {
        let add =
            RespectMap2::with_target_eq("rat-add", ratrel(), ratrel(), add_body, rat_target_eq);
        let mul =
            RespectMap2::with_target_eq("rat-mul", ratrel(), ratrel(), mul_body, rat_target_eq);
        let neg = RespectMap::with_target_eq("rat-neg", ratrel(), neg_body, rat_target_eq);
        assert!(check_respects2(&add, 2000).unwrap().is_certified());
        assert!(check_respects2(&mul, 2000).unwrap().is_certified());
        assert!(check_respects(&neg, 500).unwrap().is_certified());

        // numerator alone is not a function of the class
        let num = RespectMap::new("numerator", ratrel(), |p: &RatPair| p.num.clone());
        let report = check_respects(&num, 50).unwrap();
        assert!(report.revalidate(&num));
    }

    #[test]
    fn classes_compare_by_cross_multiplication() {
        let a = class_of(&ratrel(), r(2, 4)).unwrap();
        let b = class_of(&ratrel(), r(-3, -6)).unwrap();
        assert!(class_eq(&a, &b).unwrap());
        assert_eq!(a.representative(), &r(1, 2));
    }
}
