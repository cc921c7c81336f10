//! Named batches of checks, as run by `quotient check <suite>`.
//!
//! Every line of a report is either a bounded congruence or equivalence
//! check, or an exhaustive law check over a fixed grid or term universe.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Display;

use num_bigint::BigInt;

use crate::equiv::{
    check_equivalence, check_respects, check_respects2, respects2_via_commutativity,
    CongruenceReport, Element, Equivalence, EquivalenceViolation, RespectMap, RespectMap2, Verdict,
    Witness2,
};
use crate::error::{Error, Result};
use crate::int::{self, intrel, IntPair, IntRel, QInt};
use crate::msg::{
    self, closure_oracle, maps, normalize, normalize_outermost, universe, FreeMsg, Msg,
};
use crate::rat::{self, rat_target_eq, ratrel, QRat, RatPair, RatRel};

pub const SUITES: &[&str] = &[
    "equivalence",
    "int-congruence",
    "int-oracle",
    "int-laws",
    "rat-congruence",
    "rat-laws",
    "msg-congruence",
    "msg-oracle",
    "msg-theorems",
    "all",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Pairs (or pair combinations) per congruence or equivalence check.
    pub budget: usize,
    /// Term size bound for the message universe.
    pub bound: usize,
    pub keys: Vec<u64>,
    pub nonces: Vec<u64>,
    /// Include the truncated discriminator in `msg-congruence`.
    pub truncated_discrim: bool,
    /// Integer oracle grid is `[-int_range, int_range]`.
    pub int_range: i64,
    /// Shift checks use `x, y <= shift_max`, `k <= shift_k`.
    pub shift_max: u64,
    pub shift_k: u64,
    /// Law grid is `[-law_range, law_range]` (21 points at 10).
    pub law_range: i64,
    /// Rational grid uses `|num|, |den| <= rat_range`.
    pub rat_range: i64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            budget: 500,
            bound: 7,
            keys: msg::DEFAULT_KEYS.to_vec(),
            nonces: msg::DEFAULT_NONCES.to_vec(),
            truncated_discrim: false,
            int_range: 100,
            shift_max: 30,
            shift_k: 10,
            law_range: 10,
            rat_range: 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Refuted(Counterexample),
    NoSamples,
}

/// A failing case in printable form.
///
/// For congruence checks `witness` lists the related inputs (two for a unary
/// map, `x, y, u, v` for a binary one) as they would be parsed back, and
/// `images` the differing results. `revalidated` records an independent
/// re-run of the relation and the map on the witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub witness: Vec<String>,
    pub images: Vec<String>,
    pub revalidated: Option<bool>,
}

impl Counterexample {
    fn case(description: String) -> Self {
        Counterexample {
            witness: vec![description],
            images: Vec::new(),
            revalidated: None,
        }
    }
}

impl Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.witness.join(", "))?;
        if !self.images.is_empty() {
            write!(f, " -> {}", self.images.join(" vs "))?;
        }
        Ok(())
    }
}

/// Printing of map results inside counterexamples.
pub trait Render {
    fn render(&self) -> String;
}

macro_rules! render_display {
    ($($t:ty),*) => {
        $(impl Render for $t {
            fn render(&self) -> String {
                self.to_string()
            }
        })*
    };
}

render_display!(bool, i64, u64, int::Nat, QInt, FreeMsg, RatPair);

impl Render for BTreeSet<u64> {
    fn render(&self) -> String {
        let items: Vec<String> = self.iter().map(u64::to_string).collect();
        format!("{{{}}}", items.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub outcome: Outcome,
    /// Cases examined.
    pub checked: u64,
}

impl CheckLine {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub lines: Vec<CheckLine>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(CheckLine::passed)
    }

    pub fn checked(&self) -> u64 {
        self.lines.iter().map(|l| l.checked).sum()
    }
}

fn congruence_line<W>(
    report: &CongruenceReport<W>,
    refuted: impl Fn(&W) -> Counterexample,
) -> CheckLine {
    let outcome = match &report.verdict {
        Verdict::Certified => Outcome::Pass,
        Verdict::Refuted(w) => Outcome::Refuted(refuted(w)),
        Verdict::NoSamples => Outcome::NoSamples,
    };
    CheckLine {
        name: report.map.clone(),
        outcome,
        checked: report.budget_used as u64,
    }
}

pub fn respects<S, D>(map: &RespectMap<S, D>, budget: usize) -> Result<CheckLine>
where
    S: Element + Display,
    D: Render + 'static,
{
    let report = check_respects(map, budget)?;
    Ok(congruence_line(&report, |(x, y)| Counterexample {
        witness: vec![x.to_string(), y.to_string()],
        images: vec![map.apply(x).render(), map.apply(y).render()],
        revalidated: Some(report.revalidate(map)),
    }))
}

fn witness2<S1: Element + Display, S2: Element + Display, D: Render + 'static>(
    map: &RespectMap2<S1, S2, D>,
    ((x, y), (u, v)): &Witness2<S1, S2>,
) -> Counterexample {
    Counterexample {
        witness: vec![x.to_string(), y.to_string(), u.to_string(), v.to_string()],
        images: vec![map.apply(x, u).render(), map.apply(y, v).render()],
        revalidated: None,
    }
}

pub fn respects2<S1, S2, D>(map: &RespectMap2<S1, S2, D>, budget: usize) -> Result<CheckLine>
where
    S1: Element + Display,
    S2: Element + Display,
    D: Render + 'static,
{
    let report = check_respects2(map, budget)?;
    Ok(congruence_line(&report, |w| Counterexample {
        revalidated: Some(report.revalidate2(map)),
        ..witness2(map, w)
    }))
}

fn equivalence<R>(rel: &R, budget: usize) -> Result<CheckLine>
where
    R: Equivalence + ?Sized,
    R::Elem: Display,
{
    let report = check_equivalence(rel, budget)?;
    let outcome = match &report.verdict {
        Verdict::Certified => Outcome::Pass,
        Verdict::NoSamples => Outcome::NoSamples,
        Verdict::Refuted(v) => Outcome::Refuted(Counterexample::case(match v {
            EquivalenceViolation::Reflexivity(x) | EquivalenceViolation::CanonicalRelated(x) => {
                format!("{}: {x}", v.law())
            }
            EquivalenceViolation::Generator(x, y)
            | EquivalenceViolation::Symmetry(x, y)
            | EquivalenceViolation::CanonicalUnique(x, y) => format!("{}: {x}, {y}", v.law()),
            EquivalenceViolation::Transitivity(x, y, z) => format!("{}: {x}, {y}, {z}", v.law()),
        })),
    };
    Ok(CheckLine {
        name: format!("equivalence {}", report.relation),
        outcome,
        checked: report.budget_used as u64,
    })
}

/// Exhaustive check: the first failing case becomes the counterexample.
fn law<I, T>(
    name: &str,
    cases: I,
    holds: impl Fn(&T) -> bool,
    show: impl Fn(&T) -> String,
) -> CheckLine
where
    I: IntoIterator<Item = T>,
{
    let mut checked = 0;
    for case in cases {
        checked += 1;
        if !holds(&case) {
            return CheckLine {
                name: name.to_string(),
                outcome: Outcome::Refuted(Counterexample::case(show(&case))),
                checked,
            };
        }
    }
    CheckLine {
        name: name.to_string(),
        outcome: if checked == 0 {
            Outcome::NoSamples
        } else {
            Outcome::Pass
        },
        checked,
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    if cfg.budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let lines = match name {
        "equivalence" => vec![
            equivalence(&IntRel, cfg.budget)?,
            equivalence(&RatRel, cfg.budget)?,
            equivalence(&*msg::msgrel(), cfg.budget)?,
        ],
        "int-congruence" => int_congruence(cfg)?,
        "int-oracle" => int_oracle(cfg),
        "int-laws" => int_laws(cfg),
        "rat-congruence" => rat_congruence(cfg)?,
        "rat-laws" => rat_laws(cfg),
        "msg-congruence" => msg_congruence(cfg)?,
        "msg-oracle" => msg_oracle(cfg)?,
        "msg-theorems" => msg_theorems(cfg)?,
        "all" => {
            let mut all = Vec::new();
            for suite in SUITES.iter().filter(|s| **s != "all") {
                all.extend(run_suite(suite, cfg)?.lines);
            }
            all
        }
        other => {
            return Err(Error::Usage(format!(
                "unknown suite `{other}` (expected one of: {})",
                SUITES.join(", ")
            )))
        }
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        lines,
    })
}

fn int_congruence(cfg: &SuiteConfig) -> Result<Vec<CheckLine>> {
    let b = cfg.budget;
    let add = RespectMap2::new("int add", intrel(), intrel(), int::add_body);
    let mul = RespectMap2::new("int mul", intrel(), intrel(), int::mul_body);
    let mut lines = vec![
        respects(&RespectMap::new("int neg", intrel(), int::neg_body), b)?,
        respects2(&add, b)?,
        respects2(&mul, b)?,
        respects2(
            &RespectMap2::new("int le", intrel(), intrel(), int::le_body),
            b,
        )?,
        respects(&RespectMap::new("int nat", intrel(), int::nat_body), b)?,
    ];
    for m in [&add, &mul] {
        let report = respects2_via_commutativity(m, b)?;
        let mut line = congruence_line(&report, |w| Counterexample {
            revalidated: Some(report.revalidate2(m)),
            ..witness2(m, w)
        });
        line.name = format!("{} (via commutativity)", line.name);
        lines.push(line);
    }
    Ok(lines)
}

fn int_grid(r: i64) -> impl Iterator<Item = i64> + Clone {
    -r..=r
}

fn int_oracle(cfg: &SuiteConfig) -> Vec<CheckLine> {
    let r = cfg.int_range;
    let pairs = || int_grid(r).flat_map(move |i| int_grid(r).map(move |j| (i, j)));
    let q = QInt::from_native;
    let show = |(i, j): &(i64, i64)| format!("i = {i}, j = {j}");
    let native = |z: QInt| z.to_i64();
    vec![
        law(
            "oracle neg",
            int_grid(r),
            |&i| native(q(i).neg()) == Some(-i),
            |i| format!("i = {i}"),
        ),
        law(
            "oracle nat",
            int_grid(r),
            |&i| q(i).to_nat() == int::Nat::from(i.max(0) as u64),
            |i| format!("i = {i}"),
        ),
        law(
            "oracle add",
            pairs(),
            |&(i, j)| native(q(i).add(&q(j))) == Some(i + j),
            show,
        ),
        law(
            "oracle mul",
            pairs(),
            |&(i, j)| native(q(i).mul(&q(j))) == Some(i * j),
            show,
        ),
        law(
            "oracle le",
            pairs(),
            |&(i, j)| q(i).le(&q(j)) == (i <= j),
            show,
        ),
        law(
            "shift independence",
            shift_cases(cfg.shift_max, cfg.shift_k),
            |&(x, y, k)| shift_invariant(x, y, k),
            |(x, y, k)| format!("({x},{y}) shifted by {k}"),
        ),
    ]
}

fn shift_cases(max: u64, kmax: u64) -> impl Iterator<Item = (u64, u64, u64)> {
    (0..=max).flat_map(move |x| (0..=max).flat_map(move |y| (0..=kmax).map(move |k| (x, y, k))))
}

/// All five operations agree on `(x, y)` and `(x + k, y + k)`, with a fixed
/// second operand range for the binary ones.
pub fn shift_invariant(x: u64, y: u64, k: u64) -> bool {
    let p = IntPair::new(x, y);
    let s = IntPair::new(x + k, y + k);
    let others = [
        IntPair::new(0u64, 0u64),
        IntPair::new(3u64, 1u64),
        IntPair::new(2u64, 7u64),
        IntPair::new(y, x),
    ];
    int::neg_body(&p) == int::neg_body(&s)
        && int::nat_body(&p) == int::nat_body(&s)
        && others.iter().all(|o| {
            int::add_body(&p, o) == int::add_body(&s, o)
                && int::mul_body(&p, o) == int::mul_body(&s, o)
                && int::le_body(&p, o) == int::le_body(&s, o)
                && int::le_body(o, &p) == int::le_body(o, &s)
        })
}

fn int_laws(cfg: &SuiteConfig) -> Vec<CheckLine> {
    let vals: Vec<QInt> = int_grid(cfg.law_range).map(QInt::from_native).collect();
    let singles = || vals.iter();
    let doubles = || vals.iter().flat_map(|a| vals.iter().map(move |b| (a, b)));
    let triples = || doubles().flat_map(|(a, b)| vals.iter().map(move |c| (a, b, c)));
    let s1 = |z: &&QInt| format!("z = {z}");
    let s2 = |(z, w): &(&QInt, &QInt)| format!("z = {z}, w = {w}");
    let s3 = |(a, b, c): &(&QInt, &QInt, &QInt)| format!("z1 = {a}, z2 = {b}, z3 = {c}");
    vec![
        law("zminus_zminus", singles(), |z| z.neg().neg() == **z, s1),
        law(
            "zminus_zadd_distrib",
            doubles(),
            |(z, w)| z.add(w).neg() == z.neg().add(&w.neg()),
            s2,
        ),
        law(
            "zmult_zminus",
            doubles(),
            |(z, w)| z.neg().mul(w) == z.mul(w).neg(),
            s2,
        ),
        law(
            "zmult_assoc",
            triples(),
            |(a, b, c)| a.mul(b).mul(c) == a.mul(&b.mul(c)),
            s3,
        ),
        law(
            "zmult_commute",
            doubles(),
            |(z, w)| z.mul(w) == w.mul(z),
            s2,
        ),
        law(
            "zadd_zmult_distrib",
            triples(),
            |(a, b, w)| a.add(b).mul(w) == a.mul(w).add(&b.mul(w)),
            s3,
        ),
        law("le total", doubles(), |(z, w)| z.le(w) || w.le(z), s2),
        law(
            "le antisymmetric",
            doubles(),
            |(z, w)| !(z.le(w) && w.le(z)) || z == w,
            s2,
        ),
        law(
            "le transitive",
            triples(),
            |(a, b, c)| !(a.le(b) && b.le(c)) || a.le(c),
            s3,
        ),
        law(
            "add monotone",
            triples(),
            |(a, b, c)| !a.le(b) || a.add(c).le(&b.add(c)),
            s3,
        ),
        law(
            "mul monotone",
            triples(),
            |(a, b, k)| !(a.le(b) && QInt::zero().le(k)) || a.mul(k).le(&b.mul(k)),
            s3,
        ),
    ]
}

fn rat_congruence(cfg: &SuiteConfig) -> Result<Vec<CheckLine>> {
    let b = cfg.budget;
    Ok(vec![
        respects2(
            &RespectMap2::with_target_eq(
                "rat add",
                ratrel(),
                ratrel(),
                rat::add_body,
                rat_target_eq,
            ),
            b,
        )?,
        respects2(
            &RespectMap2::with_target_eq(
                "rat mul",
                ratrel(),
                ratrel(),
                rat::mul_body,
                rat_target_eq,
            ),
            b,
        )?,
        respects(
            &RespectMap::with_target_eq("rat neg", ratrel(), rat::neg_body, rat_target_eq),
            b,
        )?,
    ])
}

/// Every pair `(n, d)` with `|n|, |d| <= r`, `d != 0`.
pub fn rat_grid(r: i64) -> Vec<RatPair> {
    (-r..=r)
        .flat_map(|n| {
            (-r..=r)
                .filter(|d| *d != 0)
                .map(move |d| RatPair::new(n, d))
        })
        .collect()
}

/// Field laws compared through cross-multiplication only.
fn rat_laws(cfg: &SuiteConfig) -> Vec<CheckLine> {
    let grid = rat_grid(cfg.rat_range);
    let q: Vec<QRat> = grid
        .iter()
        .map(|p| QRat::of_pair(p).expect("grid avoids zero denominators"))
        .collect();
    let same = |a: &QRat, b: &QRat| rat_target_eq(a.rep(), b.rep());
    let pairs = || (0..q.len()).flat_map(|i| (0..q.len()).map(move |j| (i, j)));
    let show = |(i, j): &(usize, usize)| format!("{} and {}", grid[*i], grid[*j]);
    // triples over distinct values with small height; the pair laws above
    // already cover every representative
    let mut small: Vec<QRat> = Vec::new();
    for v in &q {
        let r = v.rep();
        if r.num.magnitude() <= &4u32.into() && r.den <= BigInt::from(4) && !small.contains(v) {
            small.push(v.clone());
        }
    }
    let small = &small;
    let triples = || {
        small.iter().flat_map(move |a| {
            small
                .iter()
                .flat_map(move |b| small.iter().map(move |c| (a, b, c)))
        })
    };
    let show3 = |(a, b, c): &(&QRat, &QRat, &QRat)| format!("{a}, {b}, {c}");
    vec![
        law(
            "rat add commutative",
            pairs(),
            |&(i, j)| same(&q[i].add(&q[j]), &q[j].add(&q[i])),
            show,
        ),
        law(
            "rat mul commutative",
            pairs(),
            |&(i, j)| same(&q[i].mul(&q[j]), &q[j].mul(&q[i])),
            show,
        ),
        law(
            "rat add identity",
            0..q.len(),
            |&i| same(&q[i].add(&QRat::zero()), &q[i]),
            |i| grid[*i].to_string(),
        ),
        law(
            "rat mul identity",
            0..q.len(),
            |&i| same(&q[i].mul(&QRat::one()), &q[i]),
            |i| grid[*i].to_string(),
        ),
        law(
            "rat additive inverse",
            0..q.len(),
            |&i| same(&q[i].add(&q[i].neg()), &QRat::zero()),
            |i| grid[*i].to_string(),
        ),
        law(
            "rat multiplicative inverse",
            (0..q.len()).filter(|&i| !q[i].is_zero()),
            |&i| same(&q[i].mul(&q[i].inv().expect("nonzero")), &QRat::one()),
            |i| grid[*i].to_string(),
        ),
        law(
            "rat add associative",
            triples(),
            |(a, b, c)| same(&a.add(b).add(c), &a.add(&b.add(c))),
            show3,
        ),
        law(
            "rat mul associative",
            triples(),
            |(a, b, c)| same(&a.mul(b).mul(c), &a.mul(&b.mul(c))),
            show3,
        ),
        law(
            "rat distributive",
            triples(),
            |(a, b, c)| same(&a.add(b).mul(c), &a.mul(c).add(&b.mul(c))),
            show3,
        ),
    ]
}

fn msg_congruence(cfg: &SuiteConfig) -> Result<Vec<CheckLine>> {
    let b = cfg.budget;
    let r = msg::msgrel();
    let mut lines = vec![
        respects(&maps::nonces(r.clone()), b)?,
        respects(&maps::left(r.clone()), b)?,
        respects(&maps::right(r.clone()), b)?,
        respects(&maps::discrim(r.clone()), b)?,
    ];
    if cfg.truncated_discrim {
        lines.push(respects(&maps::discrim_truncated(r.clone()), b)?);
    }
    for &k in &cfg.keys {
        lines.push(respects(&maps::crypt(r.clone(), k), b)?);
        lines.push(respects(&maps::decrypt(r.clone(), k), b)?);
    }
    lines.push(respects2(&maps::mpair(r), b)?);
    Ok(lines)
}

/// Normal-form agreement with the closure oracle on every pair of the
/// universe, plus strategy independence and idempotence.
fn msg_oracle(cfg: &SuiteConfig) -> Result<Vec<CheckLine>> {
    let closure = closure_oracle(cfg.bound, &cfg.keys, &cfg.nonces)?;
    let terms = closure.universe();
    let n = terms.len();

    let mut nf_ids: HashMap<FreeMsg, u32> = HashMap::new();
    let mut nf = Vec::with_capacity(n);
    for t in terms {
        let next = nf_ids.len() as u32;
        nf.push(*nf_ids.entry(normalize(t)).or_insert(next));
    }
    let class: Vec<u32> = (0..n).map(|i| closure.class_id(i)).collect();

    let mut checked = 0u64;
    let mut mismatch = None;
    'outer: for i in 0..n {
        for j in 0..n {
            if (nf[i] == nf[j]) != (class[i] == class[j]) {
                mismatch = Some((i, j));
                break 'outer;
            }
        }
        checked += n as u64;
    }
    let agreement = CheckLine {
        name: format!("msg_eq agrees with closure (size <= {})", cfg.bound),
        outcome: match mismatch {
            None => Outcome::Pass,
            Some((i, j)) => Outcome::Refuted(Counterexample::case(format!(
                "{} vs {}: normal forms {}, oracle {}",
                terms[i],
                terms[j],
                if nf[i] == nf[j] { "equal" } else { "differ" },
                if class[i] == class[j] {
                    "related"
                } else {
                    "unrelated"
                }
            ))),
        },
        checked,
    };

    Ok(vec![
        agreement,
        law(
            "innermost = outermost",
            terms.iter(),
            |t| normalize(t) == normalize_outermost(t),
            |t| t.to_string(),
        ),
        law(
            "normalize idempotent",
            terms.iter(),
            |t| {
                let once = normalize(t);
                normalize(&once) == once && msg::is_normal(&once)
            },
            |t| t.to_string(),
        ),
    ])
}

fn msg_theorems(cfg: &SuiteConfig) -> Result<Vec<CheckLine>> {
    let t = MsgTheorems::new(cfg.bound, &cfg.keys, &cfg.nonces)?;
    Ok(t.run())
}

/// Freeness, cancellation and recursion equations for [`Msg`], quantified
/// over the classes of a bounded term universe. Binary statements range over
/// pairs whose combined term stays inside the universe.
pub struct MsgTheorems {
    keys: Vec<u64>,
    nonces: Vec<u64>,
    unary: Vec<Msg>,
    binary: Vec<(Msg, Msg)>,
}

impl MsgTheorems {
    pub fn new(bound: usize, keys: &[u64], nonces: &[u64]) -> Result<Self> {
        if bound == 0 {
            return Err(Error::ZeroBound);
        }
        if msg::universe_size(bound, keys.len(), nonces.len()) > msg::UNIVERSE_LIMIT {
            return Err(Error::Resource {
                universe_size: msg::universe_size(bound, keys.len(), nonces.len()),
                limit: msg::UNIVERSE_LIMIT,
            });
        }
        let terms = universe(bound, keys, nonces);
        let mut seen = BTreeSet::new();
        let unary: Vec<Msg> = terms
            .iter()
            .map(Msg::of)
            .filter(|m| seen.insert(m.clone()))
            .collect();
        let mut pairs = BTreeSet::new();
        for t in &terms {
            if let FreeMsg::MPair(x, y) = t {
                pairs.insert((Msg::of(x), Msg::of(y)));
            }
        }
        Ok(MsgTheorems {
            keys: keys.to_vec(),
            nonces: nonces.to_vec(),
            unary,
            binary: pairs.into_iter().collect(),
        })
    }

    pub fn run(&self) -> Vec<CheckLine> {
        let keyed = || {
            self.keys
                .iter()
                .flat_map(|&k| self.unary.iter().map(move |x| (k, x)))
        };
        let show_kx = |(k, x): &(u64, &Msg)| format!("K = {k}, X = {x}");
        let show_xy = |(x, y): &&(Msg, Msg)| format!("X = {x}, Y = {y}");
        let key_pairs = || {
            self.keys
                .iter()
                .flat_map(|&k| {
                    self.keys
                        .iter()
                        .filter(move |&&j| j != k)
                        .map(move |&j| (k, j))
                })
                .flat_map(|(k, j)| self.unary.iter().map(move |x| (k, j, x)))
        };
        let nonce_pairs = || {
            self.nonces
                .iter()
                .flat_map(|&m| self.nonces.iter().map(move |&n| (m, n)))
        };

        vec![
            law(
                "CD_eq",
                keyed(),
                |(k, x)| Msg::crypt(*k, &Msg::decrypt(*k, x)) == **x,
                show_kx,
            ),
            law(
                "DC_eq",
                keyed(),
                |(k, x)| Msg::decrypt(*k, &Msg::crypt(*k, x)) == **x,
                show_kx,
            ),
            injective(
                "MPair injective",
                self.binary.iter(),
                |(x, y)| Msg::mpair(x, y),
                |(x, y)| format!("({x}, {y})"),
            ),
            injective(
                "Nonce injective",
                self.nonces.iter(),
                |n| Msg::nonce(**n),
                |n| n.to_string(),
            ),
            injective_per_key("Crypt injective", &self.keys, &self.unary, Msg::crypt),
            injective_per_key("Decrypt injective", &self.keys, &self.unary, Msg::decrypt),
            law(
                "Crypt not injective in the key",
                key_pairs(),
                |(k, j, x)| {
                    let a = Msg::crypt(*k, &Msg::decrypt(*k, x));
                    let b = Msg::crypt(*j, &Msg::decrypt(*j, x));
                    a == b && a == **x
                },
                |(k, j, x)| format!("K = {k}, K' = {j}, X = {x}"),
            ),
            law(
                "Nonce N != MPair X Y",
                self.nonces
                    .iter()
                    .flat_map(|&n| self.binary.iter().map(move |p| (n, p))),
                |(n, (x, y))| Msg::nonce(*n) != Msg::mpair(x, y),
                |(n, (x, y))| format!("N = {n}, X = {x}, Y = {y}"),
            ),
            law(
                "Crypt K (Nonce M) != Nonce N",
                self.keys
                    .iter()
                    .flat_map(|&k| nonce_pairs().map(move |(m, n)| (k, m, n))),
                |(k, m, n)| Msg::crypt(*k, &Msg::nonce(*m)) != Msg::nonce(*n),
                |(k, m, n)| format!("K = {k}, M = {m}, N = {n}"),
            ),
            // nonces
            law(
                "nonces (Nonce N)",
                self.nonces.iter(),
                |n| Msg::nonce(**n).nonces() == BTreeSet::from([**n]),
                |n| n.to_string(),
            ),
            law(
                "nonces (MPair X Y)",
                self.binary.iter(),
                |(x, y)| {
                    Msg::mpair(x, y).nonces() == x.nonces().union(&y.nonces()).copied().collect()
                },
                show_xy,
            ),
            law(
                "nonces (Crypt K X)",
                keyed(),
                |(k, x)| Msg::crypt(*k, x).nonces() == x.nonces(),
                show_kx,
            ),
            law(
                "nonces (Decrypt K X)",
                keyed(),
                |(k, x)| Msg::decrypt(*k, x).nonces() == x.nonces(),
                show_kx,
            ),
            // left
            law(
                "left (Nonce N)",
                self.nonces.iter(),
                |n| Msg::nonce(**n).left() == Msg::nonce(**n),
                |n| n.to_string(),
            ),
            law(
                "left (MPair X Y)",
                self.binary.iter(),
                |(x, y)| Msg::mpair(x, y).left() == *x,
                show_xy,
            ),
            law(
                "left (Crypt K X)",
                keyed(),
                |(k, x)| Msg::crypt(*k, x).left() == x.left(),
                show_kx,
            ),
            law(
                "left (Decrypt K X)",
                keyed(),
                |(k, x)| Msg::decrypt(*k, x).left() == x.left(),
                show_kx,
            ),
            // right
            law(
                "right (Nonce N)",
                self.nonces.iter(),
                |n| Msg::nonce(**n).right() == Msg::nonce(**n),
                |n| n.to_string(),
            ),
            law(
                "right (MPair X Y)",
                self.binary.iter(),
                |(x, y)| Msg::mpair(x, y).right() == *y,
                show_xy,
            ),
            law(
                "right (Crypt K X)",
                keyed(),
                |(k, x)| Msg::crypt(*k, x).right() == x.right(),
                show_kx,
            ),
            law(
                "right (Decrypt K X)",
                keyed(),
                |(k, x)| Msg::decrypt(*k, x).right() == x.right(),
                show_kx,
            ),
            // discrim
            law(
                "discrim (Nonce N)",
                self.nonces.iter(),
                |n| Msg::nonce(**n).discrim() == 0,
                |n| n.to_string(),
            ),
            law(
                "discrim (MPair X Y)",
                self.binary.iter(),
                |(x, y)| Msg::mpair(x, y).discrim() == 1,
                show_xy,
            ),
            law(
                "discrim (Crypt K X)",
                keyed(),
                |(k, x)| Msg::crypt(*k, x).discrim() == x.discrim() + 2,
                show_kx,
            ),
            law(
                "discrim (Decrypt K X)",
                keyed(),
                |(k, x)| Msg::decrypt(*k, x).discrim() == x.discrim() - 2,
                show_kx,
            ),
        ]
    }
}

/// `f a = f b  <=>  a = b` over all pairs of inputs, via collision detection.
fn injective<T, I>(
    name: &str,
    inputs: I,
    f: impl Fn(&T) -> Msg,
    show: impl Fn(&T) -> String,
) -> CheckLine
where
    T: Eq,
    I: Iterator<Item = T>,
{
    let mut seen: HashMap<Msg, T> = HashMap::new();
    let mut checked = 0;
    for x in inputs {
        checked += 1;
        let image = f(&x);
        if let Some(prev) = seen.get(&image) {
            if *prev != x {
                return CheckLine {
                    name: name.to_string(),
                    outcome: Outcome::Refuted(Counterexample::case(format!(
                        "{} and {} both map to {image}",
                        show(prev),
                        show(&x)
                    ))),
                    checked,
                };
            }
        }
        seen.insert(image, x);
    }
    CheckLine {
        name: name.to_string(),
        outcome: Outcome::Pass,
        checked,
    }
}

fn injective_per_key(
    name: &str,
    keys: &[u64],
    xs: &[Msg],
    f: impl Fn(u64, &Msg) -> Msg,
) -> CheckLine {
    let mut total = 0;
    for &k in keys {
        let line = injective(name, xs.iter(), |x| f(k, x), |x| x.to_string());
        total += line.checked;
        if !line.passed() {
            return line;
        }
    }
    CheckLine {
        name: name.to_string(),
        outcome: Outcome::Pass,
        checked: total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            budget: 200,
            bound: 5,
            int_range: 10,
            shift_max: 5,
            shift_k: 3,
            law_range: 3,
            rat_range: 4,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn every_suite_passes_on_small_config() {
        for suite in SUITES {
            let report = run_suite(suite, &small()).unwrap();
            let failed: Vec<_> = report.lines.iter().filter(|l| !l.passed()).collect();
            assert!(failed.is_empty(), "{suite}: {failed:?}");
        }
    }

    #[test]
    fn truncated_discriminator_refutes_the_suite() {
        let cfg = SuiteConfig {
            truncated_discrim: true,
            ..small()
        };
        let report = run_suite("msg-congruence", &cfg).unwrap();
        assert!(!report.passed());
        let bad = report.lines.iter().find(|l| !l.passed()).unwrap();
        assert_eq!(bad.name, "freediscrim-truncated");
        assert_eq!(
            bad.outcome,
            Outcome::Refuted(Counterexample {
                witness: vec!["(crypt 0 (decrypt 0 (nonce 0)))".into(), "(nonce 0)".into()],
                images: vec!["2".into(), "0".into()],
                revalidated: Some(true),
            })
        );
    }

    #[test]
    fn unknown_suite_is_usage_error() {
        assert!(matches!(run_suite("nope", &small()), Err(Error::Usage(_))));
        let cfg = SuiteConfig {
            budget: 0,
            ..small()
        };
        assert!(matches!(
            run_suite("equivalence", &cfg),
            Err(Error::ZeroBudget)
        ));
    }
}
