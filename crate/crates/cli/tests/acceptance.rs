//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Oracles here are independent of the code under test: native
//! machine integers, the closure fixpoint, and cross-multiplication.

mod common;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::Instant;

use quotient::equiv::{check_respects, class_eq, Verdict};
use quotient::int::{self, intrel, IntPair, QInt};
use quotient::msg::{
    closure_oracle, freediscrim_truncated, maps, msg_eq, msgrel, normalize, normalize_outermost,
    universe, FreeMsg, Msg,
};
use quotient::rat::QRat;

const KEYS: [u64; 2] = [0, 1];
const NONCES: [u64; 2] = [0, 1];
const BOUND: usize = 7;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Criterion 1: Integer operations agree with native signed arithmetic on [-100, 100]².
fn int_oracle() -> Outcome {
    let q = QInt::from_native;
    let back = |z: &QInt| -> i64 { z.to_native().try_into().expect("small") };
    let mut cases = 0u64;
    for i in -100i64..=100 {
        let zi = q(i);
        ensure(back(&zi.neg()) == -i, || format!("neg {i}"))?;
        ensure(
            zi.to_nat() == num_bigint::BigUint::from(i.max(0) as u64),
            || format!("to_nat {i}"),
        )?;
        ensure(back(&zi) == i, || format!("round trip {i}"))?;
        for j in -100i64..=100 {
            let zj = q(j);
            ensure(back(&zi.add(&zj)) == i + j, || format!("add {i} {j}"))?;
            ensure(back(&zi.mul(&zj)) == i * j, || format!("mul {i} {j}"))?;
            ensure(zi.le(&zj) == (i <= j), || format!("le {i} {j}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} pairs per binary op"))
}

/// Criterion 2: All five operations are invariant under (x, y) -> (x + k, y + k).
fn int_shifts() -> Outcome {
    let same = |a: &QInt, b: &QInt| class_eq(&a.class(), &b.class()).expect("same relation");
    let pair = |x: u64, y: u64| IntPair::new(x, y);
    let mut cases = 0u64;
    for x in 0..=30u64 {
        for y in 0..=30u64 {
            let p = pair(x, y);
            for k in 0..=10u64 {
                let s = pair(x + k, y + k);
                ensure(intrel().related(&p, &s), || {
                    format!("({x},{y}) not related to its shift")
                })?;
                ensure(same(&int::neg_body(&p), &int::neg_body(&s)), || {
                    format!("neg ({x},{y})+{k}")
                })?;
                ensure(int::nat_body(&p) == int::nat_body(&s), || {
                    format!("nat ({x},{y})+{k}")
                })?;
                // the other operand is shifted independently
                for (u, v, l) in [
                    (0u64, 0u64, 3u64),
                    (4, 1, 0),
                    (2, 9, 7),
                    (y, x, k),
                    (x, x, 10 - k),
                ] {
                    let o = pair(u, v);
                    let os = pair(u + l, v + l);
                    ensure(
                        same(&int::add_body(&p, &o), &int::add_body(&s, &os)),
                        || format!("add ({x},{y})+{k} ({u},{v})+{l}"),
                    )?;
                    ensure(
                        same(&int::mul_body(&p, &o), &int::mul_body(&s, &os)),
                        || format!("mul ({x},{y})+{k} ({u},{v})+{l}"),
                    )?;
                    ensure(int::le_body(&p, &o) == int::le_body(&s, &os), || {
                        format!("le ({x},{y})+{k} ({u},{v})+{l}")
                    })?;
                    ensure(int::le_body(&o, &p) == int::le_body(&os, &s), || {
                        format!("le ({u},{v})+{l} ({x},{y})+{k}")
                    })?;
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} shifted representatives"))
}

/// Criterion 3: The six ring laws on a 21³ grid.
fn ring_laws() -> Outcome {
    let grid: Vec<QInt> = (-10i64..=10).map(QInt::from_native).collect();
    let mut cases = 0u64;
    for z1 in &grid {
        for z2 in &grid {
            for z3 in &grid {
                let at = || format!("z1 = {z1}, z2 = {z2}, z3 = {z3}");
                ensure(z1.neg().neg() == *z1, || format!("zminus_zminus: {}", at()))?;
                ensure(z1.add(z2).neg() == z1.neg().add(&z2.neg()), || {
                    format!("zminus_zadd_distrib: {}", at())
                })?;
                ensure(z1.neg().mul(z2) == z1.mul(z2).neg(), || {
                    format!("zmult_zminus: {}", at())
                })?;
                ensure(z1.mul(z2).mul(z3) == z1.mul(&z2.mul(z3)), || {
                    format!("zmult_assoc: {}", at())
                })?;
                ensure(z1.mul(z2) == z2.mul(z1), || {
                    format!("zmult_commute: {}", at())
                })?;
                ensure(z1.add(z2).mul(z3) == z1.mul(z3).add(&z2.mul(z3)), || {
                    format!("zadd_zmult_distrib: {}", at())
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} triples, 6 laws"))
}

/// Criterion 4: `msg_eq` agrees with the closure oracle on every pair of the universe.
///
/// `msg_eq u v` is equality of normal forms, so normal forms are interned
/// once per term and all n² pairs compared by id. `msg_eq` itself is then
/// called directly on every related pair and on a stride of unrelated ones.
fn msgrel_decision() -> Outcome {
    let closure = closure_oracle(BOUND, &KEYS, &NONCES).map_err(|e| e.to_string())?;
    let terms = closure.universe();
    let n = terms.len();
    let mut ids: HashMap<FreeMsg, u32> = HashMap::new();
    let nf: Vec<u32> = terms
        .iter()
        .map(|t| {
            let next = ids.len() as u32;
            *ids.entry(normalize(t)).or_insert(next)
        })
        .collect();
    let class: Vec<u32> = (0..n).map(|i| closure.class_id(i)).collect();
    for i in 0..n {
        for j in 0..n {
            if (nf[i] == nf[j]) != (class[i] == class[j]) {
                return Err(format!(
                    "{} vs {}: decision {}, oracle {}",
                    terms[i],
                    terms[j],
                    nf[i] == nf[j],
                    class[i] == class[j]
                ));
            }
        }
    }
    let mut direct = 0u64;
    for (u, v) in closure.pairs() {
        ensure(msg_eq(u, v), || format!("msg_eq rejects related {u}, {v}"))?;
        direct += 1;
    }
    for i in (0..n).step_by(97) {
        for j in (0..n).step_by(89) {
            ensure(
                msg_eq(&terms[i], &terms[j]) == closure.contains(&terms[i], &terms[j]),
                || format!("msg_eq on {}, {}", terms[i], terms[j]),
            )?;
            direct += 1;
        }
    }
    Ok(format!(
        "{n} terms, {} pairs, {} classes, {direct} direct calls",
        (n as u64) * (n as u64),
        closure.class_count()
    ))
}

/// Criterion 5: Innermost and outermost normalization agree; normalization is idempotent.
fn confluence() -> Outcome {
    let terms = universe(BOUND, &KEYS, &NONCES);
    for t in &terms {
        let inner = normalize(t);
        ensure(inner == normalize_outermost(t), || {
            format!("strategies differ on {t}")
        })?;
        ensure(normalize(&inner) == inner, || {
            format!("not idempotent on {t}")
        })?;
    }
    Ok(format!("{} terms", terms.len()))
}

/// Criterion 6: Freeness, cancellation and recursion equations over the universe.
fn msg_theorems() -> Outcome {
    let terms = universe(BOUND, &KEYS, &NONCES);
    let msgs: BTreeSet<Msg> = terms.iter().map(Msg::of).collect();
    let pairs: BTreeSet<(Msg, Msg)> = terms
        .iter()
        .filter_map(|t| match t {
            FreeMsg::MPair(x, y) => Some((Msg::of(x), Msg::of(y))),
            _ => None,
        })
        .collect();
    let nonce = Msg::nonce;
    let mut cases = 0u64;

    for &k in &KEYS {
        let mut crypt_images = HashSet::new();
        let mut decrypt_images = HashSet::new();
        for x in &msgs {
            let c = Msg::crypt(k, x);
            let d = Msg::decrypt(k, x);
            ensure(Msg::crypt(k, &Msg::decrypt(k, x)) == *x, || {
                format!("CD_eq K={k} X={x}")
            })?;
            ensure(Msg::decrypt(k, &Msg::crypt(k, x)) == *x, || {
                format!("DC_eq K={k} X={x}")
            })?;
            ensure(crypt_images.insert(c.clone()), || {
                format!("Crypt not injective at K={k} X={x}")
            })?;
            ensure(decrypt_images.insert(d.clone()), || {
                format!("Decrypt not injective at K={k} X={x}")
            })?;
            ensure(c.nonces() == x.nonces() && d.nonces() == x.nonces(), || {
                format!("nonces K={k} X={x}")
            })?;
            ensure(c.left() == x.left() && d.left() == x.left(), || {
                format!("left K={k} X={x}")
            })?;
            ensure(c.right() == x.right() && d.right() == x.right(), || {
                format!("right K={k} X={x}")
            })?;
            ensure(c.discrim() == x.discrim() + 2, || {
                format!("discrim Crypt K={k} X={x}")
            })?;
            ensure(d.discrim() == x.discrim() - 2, || {
                format!("discrim Decrypt K={k} X={x}")
            })?;
            for &j in KEYS.iter().filter(|&&j| j != k) {
                ensure(
                    Msg::crypt(j, &Msg::decrypt(j, x)) == Msg::crypt(k, &Msg::decrypt(k, x)),
                    || format!("key non-injectivity K={k} K'={j} X={x}"),
                )?;
            }
            for &m in &NONCES {
                for &n in &NONCES {
                    ensure(Msg::crypt(k, &nonce(m)) != nonce(n), || {
                        format!("Crypt {k} (Nonce {m}) = Nonce {n}")
                    })?;
                }
            }
            cases += 1;
        }
    }

    let mut pair_images = HashSet::new();
    for (x, y) in &pairs {
        let p = Msg::mpair(x, y);
        ensure(pair_images.insert(p.clone()), || {
            format!("MPair not injective at {x}, {y}")
        })?;
        ensure(
            p.nonces() == x.nonces().union(&y.nonces()).copied().collect(),
            || format!("nonces MPair {x} {y}"),
        )?;
        ensure(p.left() == *x && p.right() == *y, || {
            format!("left/right MPair {x} {y}")
        })?;
        ensure(p.discrim() == 1, || format!("discrim MPair {x} {y}"))?;
        for &n in &NONCES {
            ensure(nonce(n) != p, || format!("Nonce {n} = MPair {x} {y}"))?;
        }
        cases += 1;
    }

    let nonce_images: HashSet<Msg> = NONCES.iter().map(|&n| nonce(n)).collect();
    ensure(nonce_images.len() == NONCES.len(), || {
        "Nonce not injective".into()
    })?;
    for &n in &NONCES {
        let m = nonce(n);
        ensure(m.nonces() == BTreeSet::from([n]), || {
            format!("nonces (Nonce {n})")
        })?;
        ensure(m.left() == m && m.right() == m, || {
            format!("left/right (Nonce {n})")
        })?;
        ensure(m.discrim() == 0, || format!("discrim (Nonce {n})"))?;
    }
    Ok(format!(
        "{} classes, {} pair arguments, {cases} cases",
        msgs.len(),
        pairs.len()
    ))
}

/// Criterion 7: The truncated discriminator is refuted within 500 pairs and its
/// witness re-validates against the oracle; the signed one is certified.
fn discrim_soundness() -> Outcome {
    let truncated = maps::discrim_truncated(msgrel());
    let report = check_respects(&truncated, 500).map_err(|e| e.to_string())?;
    let Verdict::Refuted((u, v)) = &report.verdict else {
        return Err(format!(
            "truncated discriminator not refuted: {:?}",
            report.verdict
        ));
    };
    ensure(report.budget_used <= 500, || {
        format!("used {} pairs", report.budget_used)
    })?;
    let oracle =
        closure_oracle(u.size().max(v.size()), &KEYS, &NONCES).map_err(|e| e.to_string())?;
    ensure(oracle.contains(u, v), || {
        format!("witness {u}, {v} is not related by the closure")
    })?;
    ensure(freediscrim_truncated(u) != freediscrim_truncated(v), || {
        format!("witness {u}, {v} has equal images")
    })?;

    let signed = check_respects(&maps::discrim(msgrel()), 500).map_err(|e| e.to_string())?;
    ensure(
        signed.verdict == Verdict::Certified && signed.budget_used == 500,
        || {
            format!(
                "signed discriminator: {:?} after {}",
                signed.verdict, signed.budget_used
            )
        },
    )?;
    Ok(format!(
        "refuted after {} pair(s) by {u} ~ {v} (images {} vs {}); signed certified on 500",
        report.budget_used,
        freediscrim_truncated(u),
        freediscrim_truncated(v)
    ))
}

/// Criterion 8: Field laws, judged only by cross-multiplication, over |num|, |den| <= 12.
fn rational_laws() -> Outcome {
    // oracle: (a, b) ~ (c, d) iff a*d == c*b, on raw machine integers
    type Frac = (i128, i128);
    let rel = |p: Frac, q: Frac| p.0 * q.1 == q.0 * p.1;
    let frac = |q: &QRat| -> Frac {
        let r = q.rep();
        (
            i128::try_from(&r.num).expect("small"),
            i128::try_from(&r.den).expect("small"),
        )
    };
    let grid: Vec<Frac> = (-12i128..=12)
        .flat_map(|n| (-12i128..=12).filter(|d| *d != 0).map(move |d| (n, d)))
        .collect();
    let q: Vec<QRat> = grid
        .iter()
        .map(|&(n, d)| QRat::new(n as i64, d as i64).expect("nonzero"))
        .collect();

    let mut cases = 0u64;
    for (i, &p) in grid.iter().enumerate() {
        ensure(rel(frac(&q[i]), p), || format!("class of {p:?}"))?;
        ensure(rel(frac(&q[i].neg()), (-p.0, p.1)), || format!("neg {p:?}"))?;
        ensure(rel(frac(&q[i].add(&q[i].neg())), (0, 1)), || {
            format!("additive inverse {p:?}")
        })?;
        ensure(rel(frac(&q[i].add(&QRat::zero())), p), || {
            format!("additive identity {p:?}")
        })?;
        ensure(rel(frac(&q[i].mul(&QRat::one())), p), || {
            format!("multiplicative identity {p:?}")
        })?;
        if p.0 != 0 {
            let inv = q[i].inv().map_err(|e| e.to_string())?;
            ensure(rel(frac(&inv), (p.1, p.0)), || format!("inv {p:?}"))?;
            ensure(rel(frac(&q[i].mul(&inv)), (1, 1)), || {
                format!("multiplicative inverse {p:?}")
            })?;
        } else {
            ensure(q[i].inv().is_err(), || format!("inverse of {p:?} accepted"))?;
        }
        for (j, &r) in grid.iter().enumerate() {
            let sum = (p.0 * r.1 + r.0 * p.1, p.1 * r.1);
            let prod = (p.0 * r.0, p.1 * r.1);
            ensure(rel(frac(&q[i].add(&q[j])), sum), || {
                format!("add {p:?} {r:?}")
            })?;
            ensure(rel(frac(&q[i].mul(&q[j])), prod), || {
                format!("mul {p:?} {r:?}")
            })?;
            ensure(rel(frac(&q[i].add(&q[j])), frac(&q[j].add(&q[i]))), || {
                format!("add commutes {p:?} {r:?}")
            })?;
            ensure(rel(frac(&q[i].mul(&q[j])), frac(&q[j].mul(&q[i]))), || {
                format!("mul commutes {p:?} {r:?}")
            })?;
            ensure(q[i].class() == q[j].class() || !rel(p, r), || {
                format!("classes split {p:?} {r:?}")
            })?;
            cases += 1;
        }
    }

    // associativity and distributivity over one representative per value;
    // the pair checks above already tie every representative to its value
    let mut values: Vec<QRat> = Vec::new();
    for v in &q {
        if !values.iter().any(|w| rel(frac(w), frac(v))) {
            values.push(v.clone());
        }
    }
    for a in &values {
        for b in &values {
            let ab_sum = a.add(b);
            let ab_prod = a.mul(b);
            for c in &values {
                let at = || format!("{a}, {b}, {c}");
                ensure(rel(frac(&ab_sum.add(c)), frac(&a.add(&b.add(c)))), || {
                    format!("add assoc {}", at())
                })?;
                ensure(rel(frac(&ab_prod.mul(c)), frac(&a.mul(&b.mul(c)))), || {
                    format!("mul assoc {}", at())
                })?;
                ensure(
                    rel(frac(&ab_sum.mul(c)), frac(&a.mul(c).add(&b.mul(c)))),
                    || format!("distrib {}", at()),
                )?;
                cases += 1;
            }
        }
    }
    Ok(format!(
        "{} representatives, {} values, {cases} cases",
        grid.len(),
        values.len()
    ))
}

/// Criterion 9: Every golden invocation reproduces its recorded JSON byte for byte.
fn cli_golden() -> Outcome {
    let cases = common::cases();
    let failures: Vec<String> = cases
        .iter()
        .filter_map(|c| common::golden_matches(c).err())
        .collect();
    if failures.is_empty() {
        Ok(format!("{} invocations, each run twice", cases.len()))
    } else {
        Err(failures.join("\n"))
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 integer oracle equivalence", int_oracle),
        ("2 integer representative independence", int_shifts),
        ("3 ring laws on 21^3 grid", ring_laws),
        (
            "4 msg_eq = closure oracle on every pair (size <= 7)",
            msgrel_decision,
        ),
        ("5 innermost = outermost, normalize idempotent", confluence),
        ("6 message theorem suite", msg_theorems),
        (
            "7 congruence checker soundness (discriminators)",
            discrim_soundness,
        ),
        (
            "8 rational field laws vs cross-multiplication",
            rational_laws,
        ),
        ("9 CLI golden determinism", cli_golden),
    ];

    let mut failed = 0;
    for (name, criterion) in criteria {
        let start = Instant::now();
        let outcome = criterion();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{secs:.2}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} [{secs:.2}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
