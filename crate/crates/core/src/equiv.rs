//! Equivalence relations, equivalence classes and congruence checking.
//!
//! A relation is given executably: a decider, a carrier test, an optional
//! canonicalizer and a generator of related pairs. Classes are stored as a
//! single representative together with the relation that owns them.
//!
//! Congruence ("`f` respects `r`") is tested over a bounded number of related
//! pairs. A [`Verdict::Certified`] result therefore means "no counterexample
//! within the budget", never a proof. Lifting a function to the quotient
//! applies it to the stored representative, which agrees with the
//! union-over-the-class definition exactly when the function respects the
//! relation.

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Bounds shared by everything that can sit in a carrier set.
pub trait Element: Clone + fmt::Debug + Eq + Hash + Send + Sync + 'static {}

impl<T: Clone + fmt::Debug + Eq + Hash + Send + Sync + 'static> Element for T {}

/// An executable equivalence relation over a carrier set.
pub trait Equivalence: Send + Sync {
    type Elem: Element;

    /// Identity of the relation. Classes over relations with different names
    /// never compare.
    fn name(&self) -> &str;

    fn related(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// Membership in the carrier set.
    fn contains(&self, _x: &Self::Elem) -> bool {
        true
    }

    fn canonicalize(&self, _x: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// Carrier elements for the Cartesian-product fallback generator.
    fn samples(&self, _budget: usize) -> Vec<Self::Elem> {
        Vec::new()
    }

    /// Up to `budget` related pairs `(a, b)` with `a != b`, in a fixed order.
    ///
    /// The default filters the Cartesian product of [`Equivalence::samples`].
    fn related_pairs(&self, budget: usize) -> Vec<(Self::Elem, Self::Elem)> {
        filtered_product(self, &self.samples(budget), budget)
    }
}

/// Cartesian product of `samples` filtered by the decider, diagonal excluded.
pub fn filtered_product<R>(rel: &R, samples: &[R::Elem], budget: usize) -> Vec<(R::Elem, R::Elem)>
where
    R: Equivalence + ?Sized,
{
    let mut out = Vec::new();
    for a in samples {
        for b in samples {
            if out.len() >= budget {
                return out;
            }
            if a != b && rel.related(a, b) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Shared handle to a relation, as stored inside classes and maps.
pub type Relation<T> = Arc<dyn Equivalence<Elem = T>>;

type Decider<T> = Arc<dyn Fn(&T, &T) -> bool + Send + Sync>;
type Predicate<T> = Arc<dyn Fn(&T) -> bool + Send + Sync>;
type Canonicalizer<T> = Arc<dyn Fn(&T) -> T + Send + Sync>;
type Sampler<T> = Arc<dyn Fn(usize) -> Vec<T> + Send + Sync>;
type PairGen<T> = Arc<dyn Fn(usize) -> Vec<(T, T)> + Send + Sync>;

/// A relation assembled from closures. Useful for ad-hoc relations and for
/// exercising the checkers on things that are not equivalences.
#[derive(Clone)]
pub struct FnRelation<T> {
    name: String,
    decider: Decider<T>,
    carrier: Option<Predicate<T>>,
    canon: Option<Canonicalizer<T>>,
    sampler: Option<Sampler<T>>,
    pairs: Option<PairGen<T>>,
}

impl<T> FnRelation<T> {
    pub fn new(
        name: impl Into<String>,
        decider: impl Fn(&T, &T) -> bool + Send + Sync + 'static,
    ) -> Self {
        FnRelation {
            name: name.into(),
            decider: Arc::new(decider),
            carrier: None,
            canon: None,
            sampler: None,
            pairs: None,
        }
    }

    pub fn with_carrier(mut self, carrier: impl Fn(&T) -> bool + Send + Sync + 'static) -> Self {
        self.carrier = Some(Arc::new(carrier));
        self
    }

    pub fn with_canonicalizer(mut self, canon: impl Fn(&T) -> T + Send + Sync + 'static) -> Self {
        self.canon = Some(Arc::new(canon));
        self
    }

    pub fn with_samples(
        mut self,
        sampler: impl Fn(usize) -> Vec<T> + Send + Sync + 'static,
    ) -> Self {
        self.sampler = Some(Arc::new(sampler));
        self
    }

    pub fn with_pairs(
        mut self,
        pairs: impl Fn(usize) -> Vec<(T, T)> + Send + Sync + 'static,
    ) -> Self {
        self.pairs = Some(Arc::new(pairs));
        self
    }
}

impl<T: Element> Equivalence for FnRelation<T> {
    type Elem = T;

    fn name(&self) -> &str {
        &self.name
    }

    fn related(&self, a: &T, b: &T) -> bool {
        (self.decider)(a, b)
    }

    fn contains(&self, x: &T) -> bool {
        self.carrier.as_ref().is_none_or(|c| c(x))
    }

    fn canonicalize(&self, x: &T) -> Option<T> {
        self.canon.as_ref().map(|c| c(x))
    }

    fn samples(&self, budget: usize) -> Vec<T> {
        self.sampler.as_ref().map_or_else(Vec::new, |s| s(budget))
    }

    fn related_pairs(&self, budget: usize) -> Vec<(T, T)> {
        match &self.pairs {
            Some(p) => {
                let mut v = p(budget);
                v.truncate(budget);
                v
            }
            None => filtered_product(self, &self.samples(budget), budget),
        }
    }
}

/// A quotient value: one representative plus the relation it is a class of.
#[derive(Clone)]
pub struct EquivClass<T: Element> {
    rep: T,
    relation: Relation<T>,
}

impl<T: Element> EquivClass<T> {
    pub fn representative(&self) -> &T {
        &self.rep
    }

    pub fn relation(&self) -> &Relation<T> {
        &self.relation
    }

    pub fn into_representative(self) -> T {
        self.rep
    }
}

impl<T: Element> fmt::Debug for EquivClass<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}]_{}", self.rep, self.relation.name())
    }
}

/// Equality of classes over the same relation; classes of different relations
/// are never equal.
impl<T: Element> PartialEq for EquivClass<T> {
    fn eq(&self, other: &Self) -> bool {
        class_eq(self, other).unwrap_or(false)
    }
}

/// Builds the class of `x`, canonicalizing the representative when the
/// relation has a canonicalizer.
pub fn class_of<T: Element>(rel: &Relation<T>, x: T) -> Result<EquivClass<T>> {
    if !rel.contains(&x) {
        return Err(Error::Domain {
            relation: rel.name().to_string(),
            value: format!("{x:?}"),
        });
    }
    let rep = rel.canonicalize(&x).unwrap_or(x);
    Ok(EquivClass {
        rep,
        relation: Arc::clone(rel),
    })
}

pub fn class_eq<T: Element>(a: &EquivClass<T>, b: &EquivClass<T>) -> Result<bool> {
    if a.relation.name() != b.relation.name() {
        return Err(Error::RelationMismatch {
            left: a.relation.name().to_string(),
            right: b.relation.name().to_string(),
        });
    }
    Ok(a.relation.related(&a.rep, &b.rep))
}

/// Outcome of a bounded check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    /// No counterexample among the pairs examined.
    Certified,
    Refuted(W),
    /// The generator produced nothing to check; vacuous, not certified.
    NoSamples,
}

impl<W> Verdict<W> {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified)
    }

    pub fn counterexample(&self) -> Option<&W> {
        match self {
            Verdict::Refuted(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Certified => "certified",
            Verdict::Refuted(_) => "refuted",
            Verdict::NoSamples => "no-samples",
        }
    }
}

/// Which law of an equivalence failed, with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceViolation<T> {
    /// The generator emitted a pair that is unrelated or leaves the carrier.
    Generator(T, T),
    Reflexivity(T),
    Symmetry(T, T),
    Transitivity(T, T, T),
    /// `canonicalize(x)` is not related to `x`.
    CanonicalRelated(T),
    /// Related elements with different canonical forms.
    CanonicalUnique(T, T),
}

impl<T> EquivalenceViolation<T> {
    pub fn law(&self) -> &'static str {
        match self {
            EquivalenceViolation::Generator(..) => "generator",
            EquivalenceViolation::Reflexivity(_) => "reflexivity",
            EquivalenceViolation::Symmetry(..) => "symmetry",
            EquivalenceViolation::Transitivity(..) => "transitivity",
            EquivalenceViolation::CanonicalRelated(_) => "canonical-related",
            EquivalenceViolation::CanonicalUnique(..) => "canonical-unique",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport<T> {
    pub relation: String,
    pub verdict: Verdict<EquivalenceViolation<T>>,
    /// Related pairs drawn from the generator.
    pub budget_used: usize,
    pub samples: usize,
}

/// Tests reflexivity, symmetry and transitivity (plus canonicalizer
/// coherence) on elements drawn from the relation's generators.
pub fn check_equivalence<R>(rel: &R, budget: usize) -> Result<EquivalenceReport<R::Elem>>
where
    R: Equivalence + ?Sized,
{
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let pairs = rel.related_pairs(budget);
    let report = |verdict| EquivalenceReport {
        relation: rel.name().to_string(),
        verdict,
        budget_used: pairs.len(),
        samples: 0,
    };

    for (a, b) in &pairs {
        if !rel.related(a, b) || !rel.contains(a) || !rel.contains(b) {
            return Ok(report(Verdict::Refuted(EquivalenceViolation::Generator(
                a.clone(),
                b.clone(),
            ))));
        }
    }

    let mut seen = HashSet::new();
    let mut samples = Vec::new();
    let mut push = |x: R::Elem, samples: &mut Vec<R::Elem>| {
        if rel.contains(&x) && seen.insert(x.clone()) {
            samples.push(x);
        }
    };
    for (a, b) in &pairs {
        push(a.clone(), &mut samples);
        push(b.clone(), &mut samples);
    }
    let originals = samples.clone();
    for x in &originals {
        if let Some(c) = rel.canonicalize(x) {
            push(c, &mut samples);
        }
    }
    for x in rel.samples(budget) {
        push(x, &mut samples);
    }

    if samples.is_empty() {
        return Ok(report(Verdict::NoSamples));
    }
    let n = samples.len();
    let with_samples = |verdict| EquivalenceReport {
        samples: n,
        ..report(verdict)
    };

    for x in &samples {
        if !rel.related(x, x) {
            return Ok(with_samples(Verdict::Refuted(
                EquivalenceViolation::Reflexivity(x.clone()),
            )));
        }
    }

    // related[i] lists the sample indices related to sample i.
    let mut related = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i != j && rel.related(&samples[i], &samples[j]) {
                related[i].push(j);
            }
        }
    }

    for i in 0..n {
        for &j in &related[i] {
            if !related[j].contains(&i) {
                return Ok(with_samples(Verdict::Refuted(
                    EquivalenceViolation::Symmetry(samples[i].clone(), samples[j].clone()),
                )));
            }
        }
    }

    for i in 0..n {
        for &j in &related[i] {
            for &k in &related[j] {
                if k != i && !related[i].contains(&k) {
                    return Ok(with_samples(Verdict::Refuted(
                        EquivalenceViolation::Transitivity(
                            samples[i].clone(),
                            samples[j].clone(),
                            samples[k].clone(),
                        ),
                    )));
                }
            }
        }
    }

    for x in &samples {
        if let Some(c) = rel.canonicalize(x) {
            if !rel.related(x, &c) {
                return Ok(with_samples(Verdict::Refuted(
                    EquivalenceViolation::CanonicalRelated(x.clone()),
                )));
            }
        }
    }
    for (a, b) in &pairs {
        if let (Some(ca), Some(cb)) = (rel.canonicalize(a), rel.canonicalize(b)) {
            if ca != cb {
                return Ok(with_samples(Verdict::Refuted(
                    EquivalenceViolation::CanonicalUnique(a.clone(), b.clone()),
                )));
            }
        }
    }

    Ok(with_samples(Verdict::Certified))
}

type TargetEq<D> = Arc<dyn Fn(&D, &D) -> bool + Send + Sync>;

/// A function on representatives together with the relation on its domain
/// and the equality used to compare its results.
pub struct RespectMap<S: Element, D> {
    name: String,
    function: Arc<dyn Fn(&S) -> D + Send + Sync>,
    source: Relation<S>,
    target_eq: TargetEq<D>,
}

impl<S: Element, D> Clone for RespectMap<S, D> {
    fn clone(&self) -> Self {
        RespectMap {
            name: self.name.clone(),
            function: Arc::clone(&self.function),
            source: Arc::clone(&self.source),
            target_eq: Arc::clone(&self.target_eq),
        }
    }
}

impl<S: Element, D: 'static> RespectMap<S, D> {
    /// A map whose results are compared with `==`.
    pub fn new(
        name: impl Into<String>,
        source: Relation<S>,
        function: impl Fn(&S) -> D + Send + Sync + 'static,
    ) -> Self
    where
        D: PartialEq,
    {
        Self::with_target_eq(name, source, function, |a: &D, b: &D| a == b)
    }

    pub fn with_target_eq(
        name: impl Into<String>,
        source: Relation<S>,
        function: impl Fn(&S) -> D + Send + Sync + 'static,
        target_eq: impl Fn(&D, &D) -> bool + Send + Sync + 'static,
    ) -> Self {
        RespectMap {
            name: name.into(),
            function: Arc::new(function),
            source,
            target_eq: Arc::new(target_eq),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Relation<S> {
        &self.source
    }

    pub fn apply(&self, x: &S) -> D {
        (self.function)(x)
    }

    pub fn target_eq(&self, a: &D, b: &D) -> bool {
        (self.target_eq)(a, b)
    }
}

type Body2<S1, S2, D> = Arc<dyn Fn(&S1, &S2) -> D + Send + Sync>;

/// Two-argument analogue of [`RespectMap`].
pub struct RespectMap2<S1: Element, S2: Element, D> {
    name: String,
    function: Body2<S1, S2, D>,
    left: Relation<S1>,
    right: Relation<S2>,
    target_eq: TargetEq<D>,
}

impl<S1: Element, S2: Element, D> Clone for RespectMap2<S1, S2, D> {
    fn clone(&self) -> Self {
        RespectMap2 {
            name: self.name.clone(),
            function: Arc::clone(&self.function),
            left: Arc::clone(&self.left),
            right: Arc::clone(&self.right),
            target_eq: Arc::clone(&self.target_eq),
        }
    }
}

impl<S1: Element, S2: Element, D: 'static> RespectMap2<S1, S2, D> {
    pub fn new(
        name: impl Into<String>,
        left: Relation<S1>,
        right: Relation<S2>,
        function: impl Fn(&S1, &S2) -> D + Send + Sync + 'static,
    ) -> Self
    where
        D: PartialEq,
    {
        Self::with_target_eq(name, left, right, function, |a: &D, b: &D| a == b)
    }

    pub fn with_target_eq(
        name: impl Into<String>,
        left: Relation<S1>,
        right: Relation<S2>,
        function: impl Fn(&S1, &S2) -> D + Send + Sync + 'static,
        target_eq: impl Fn(&D, &D) -> bool + Send + Sync + 'static,
    ) -> Self {
        RespectMap2 {
            name: name.into(),
            function: Arc::new(function),
            left,
            right,
            target_eq: Arc::new(target_eq),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn left(&self) -> &Relation<S1> {
        &self.left
    }

    pub fn right(&self) -> &Relation<S2> {
        &self.right
    }

    pub fn apply(&self, a: &S1, b: &S2) -> D {
        (self.function)(a, b)
    }

    pub fn target_eq(&self, a: &D, b: &D) -> bool {
        (self.target_eq)(a, b)
    }
}

/// Result of a bounded congruence check. `W` is the witness type: a related
/// pair for one-argument maps, a pair of related pairs for two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport<W> {
    pub map: String,
    pub verdict: Verdict<W>,
    pub budget_requested: usize,
    /// Number of cases actually examined; below the request when the
    /// generator ran dry.
    pub budget_used: usize,
    pub notes: Vec<String>,
}

impl<W> CongruenceReport<W> {
    pub fn is_certified(&self) -> bool {
        self.verdict.is_certified()
    }
}

pub type Witness1<S> = (S, S);
pub type Witness2<S1, S2> = ((S1, S1), (S2, S2));

impl<S: Element> CongruenceReport<Witness1<S>> {
    /// Re-checks a refutation against the map: the witness must be related
    /// and its images must differ. `false` for non-refuted reports.
    pub fn revalidate<D: 'static>(&self, map: &RespectMap<S, D>) -> bool {
        match &self.verdict {
            Verdict::Refuted((x, y)) => {
                map.source().related(x, y) && !map.target_eq(&map.apply(x), &map.apply(y))
            }
            _ => false,
        }
    }
}

impl<S1: Element, S2: Element> CongruenceReport<Witness2<S1, S2>> {
    pub fn revalidate2<D: 'static>(&self, map: &RespectMap2<S1, S2, D>) -> bool {
        match &self.verdict {
            Verdict::Refuted(((x, y), (u, v))) => {
                map.left().related(x, y)
                    && map.right().related(u, v)
                    && !map.target_eq(&map.apply(x, u), &map.apply(y, v))
            }
            _ => false,
        }
    }
}

/// Checks `target_eq(f x, f y)` for related pairs `(x, y)` drawn from the
/// source relation, stopping at the first failure.
pub fn check_respects<S, D>(
    map: &RespectMap<S, D>,
    budget: usize,
) -> Result<CongruenceReport<Witness1<S>>>
where
    S: Element,
    D: 'static,
{
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let pairs = map.source().related_pairs(budget);
    let mut report = CongruenceReport {
        map: map.name().to_string(),
        verdict: Verdict::NoSamples,
        budget_requested: budget,
        budget_used: 0,
        notes: Vec::new(),
    };
    for (x, y) in pairs.into_iter().take(budget) {
        report.budget_used += 1;
        if !map.target_eq(&map.apply(&x), &map.apply(&y)) {
            report.verdict = Verdict::Refuted((x, y));
            return Ok(report);
        }
    }
    if report.budget_used > 0 {
        report.verdict = Verdict::Certified;
    }
    Ok(report)
}

/// Index pairs `(i, j)` with `i < n`, `j < m`, in order of increasing `i + j`.
fn diagonal(n: usize, m: usize) -> impl Iterator<Item = (usize, usize)> {
    let max = if n == 0 || m == 0 { 0 } else { n + m - 1 };
    (0..max).flat_map(move |s| {
        let lo = s.saturating_sub(m.saturating_sub(1));
        let hi = s.min(n.saturating_sub(1));
        (lo..=hi).map(move |i| (i, s - i))
    })
}

/// Checks `f x u ~ f y v` for `x ~ y` and `u ~ v`, walking the product of the
/// two pair streams diagonally so both arguments vary early.
pub fn check_respects2<S1, S2, D>(
    map: &RespectMap2<S1, S2, D>,
    budget: usize,
) -> Result<CongruenceReport<Witness2<S1, S2>>>
where
    S1: Element,
    S2: Element,
    D: 'static,
{
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let left = map.left().related_pairs(budget);
    let right = map.right().related_pairs(budget);
    let mut report = CongruenceReport {
        map: map.name().to_string(),
        verdict: Verdict::NoSamples,
        budget_requested: budget,
        budget_used: 0,
        notes: Vec::new(),
    };
    for (i, j) in diagonal(left.len(), right.len()).take(budget) {
        report.budget_used += 1;
        let (x, y) = &left[i];
        let (u, v) = &right[j];
        if !map.target_eq(&map.apply(x, u), &map.apply(y, v)) {
            report.verdict = Verdict::Refuted(((x.clone(), y.clone()), (u.clone(), v.clone())));
            return Ok(report);
        }
    }
    if report.budget_used > 0 {
        report.verdict = Verdict::Certified;
    }
    Ok(report)
}

/// Certifies two-argument respect from commutativity plus respect in the
/// first argument. When `f` is not commutative on the samples the full
/// [`check_respects2`] runs instead and a note records the fallback.
pub fn respects2_via_commutativity<S, D>(
    map: &RespectMap2<S, S, D>,
    budget: usize,
) -> Result<CongruenceReport<Witness2<S, S>>>
where
    S: Element,
    D: 'static,
{
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    if map.left().name() != map.right().name() {
        return Err(Error::Usage(format!(
            "commutativity shortcut needs one relation on both arguments, got {} and {}",
            map.left().name(),
            map.right().name()
        )));
    }
    let pairs = map.left().related_pairs(budget);
    let mut seen = HashSet::new();
    let samples: Vec<S> = pairs
        .iter()
        .flat_map(|(a, b)| [a.clone(), b.clone()])
        .filter(|x| seen.insert(x.clone()))
        .collect();

    let mut report = CongruenceReport {
        map: map.name().to_string(),
        verdict: Verdict::NoSamples,
        budget_requested: budget,
        budget_used: 0,
        notes: Vec::new(),
    };
    if pairs.is_empty() {
        return Ok(report);
    }

    let commutative = diagonal(samples.len(), samples.len())
        .take(budget)
        .all(|(i, j)| {
            let (a, b) = (&samples[i], &samples[j]);
            map.target_eq(&map.apply(a, b), &map.apply(b, a))
        });
    if !commutative {
        let mut full = check_respects2(map, budget)?;
        full.notes
            .push("not commutative; ran the full two-argument check".to_string());
        return Ok(full);
    }
    report.notes.push("commutative on samples".to_string());

    for (i, j) in diagonal(pairs.len(), samples.len()).take(budget) {
        report.budget_used += 1;
        let (x, y) = &pairs[i];
        let u = &samples[j];
        if !map.target_eq(&map.apply(x, u), &map.apply(y, u)) {
            report.verdict = Verdict::Refuted(((x.clone(), y.clone()), (u.clone(), u.clone())));
            return Ok(report);
        }
    }
    report.verdict = Verdict::Certified;
    report
        .notes
        .push("certified via commutativity and one-argument respect".to_string());
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LiftMode {
    /// Lifting requires a certified report.
    #[default]
    Strict,
    /// Lift regardless; the result is tagged as unchecked.
    Unchecked,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LiftError<W: fmt::Debug> {
    #[error("congruence refuted by {0:?}")]
    Refuted(W),
    #[error("congruence check found nothing to check")]
    NoSamples,
    #[error("report is for `{report}`, not `{map}`")]
    WrongReport { report: String, map: String },
}

fn admit<W: Clone + fmt::Debug>(
    cert: &CongruenceReport<W>,
    map_name: &str,
    mode: LiftMode,
) -> std::result::Result<bool, LiftError<W>> {
    if mode == LiftMode::Unchecked {
        return Ok(true);
    }
    if cert.map != map_name {
        return Err(LiftError::WrongReport {
            report: cert.map.clone(),
            map: map_name.to_string(),
        });
    }
    match &cert.verdict {
        Verdict::Certified => Ok(false),
        Verdict::Refuted(w) => Err(LiftError::Refuted(w.clone())),
        Verdict::NoSamples => Err(LiftError::NoSamples),
    }
}

/// A one-argument function on classes obtained from a congruent map.
pub struct Lifted1<S: Element, D> {
    map: RespectMap<S, D>,
    unchecked: bool,
}

impl<S: Element, D: 'static> Lifted1<S, D> {
    pub fn apply(&self, class: &EquivClass<S>) -> Result<D> {
        if class.relation().name() != self.map.source().name() {
            return Err(Error::RelationMismatch {
                left: class.relation().name().to_string(),
                right: self.map.source().name().to_string(),
            });
        }
        Ok(self.map.apply(class.representative()))
    }

    /// True when the lift was made without a certificate.
    pub fn is_unchecked(&self) -> bool {
        self.unchecked
    }
}

pub fn lift1<S, D, W>(
    cert: &CongruenceReport<W>,
    map: &RespectMap<S, D>,
    mode: LiftMode,
) -> std::result::Result<Lifted1<S, D>, LiftError<W>>
where
    S: Element,
    D: 'static,
    W: Clone + fmt::Debug,
{
    let unchecked = admit(cert, map.name(), mode)?;
    Ok(Lifted1 {
        map: map.clone(),
        unchecked,
    })
}

pub struct Lifted2<S1: Element, S2: Element, D> {
    map: RespectMap2<S1, S2, D>,
    unchecked: bool,
}

impl<S1: Element, S2: Element, D: 'static> Lifted2<S1, S2, D> {
    pub fn apply(&self, a: &EquivClass<S1>, b: &EquivClass<S2>) -> Result<D> {
        for (class, rel) in [
            (a.relation().name(), self.map.left().name()),
            (b.relation().name(), self.map.right().name()),
        ] {
            if class != rel {
                return Err(Error::RelationMismatch {
                    left: class.to_string(),
                    right: rel.to_string(),
                });
            }
        }
        Ok(self.map.apply(a.representative(), b.representative()))
    }

    pub fn is_unchecked(&self) -> bool {
        self.unchecked
    }
}

pub fn lift2<S1, S2, D, W>(
    cert: &CongruenceReport<W>,
    map: &RespectMap2<S1, S2, D>,
    mode: LiftMode,
) -> std::result::Result<Lifted2<S1, S2, D>, LiftError<W>>
where
    S1: Element,
    S2: Element,
    D: 'static,
    W: Clone + fmt::Debug,
{
    let unchecked = admit(cert, map.name(), mode)?;
    Ok(Lifted2 {
        map: map.clone(),
        unchecked,
    })
}
