//! Acceptance suite. Prints one line per criterion with its timing against a
//! pinned budget, then exits non-zero if any criterion fails for a reason not
//! listed in `KNOWN_UNATTAINABLE`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use cforge_core::cover::{branched_cover, Affine, IndexRange, Infection, PatternSpec, WordTemplate};
use cforge_core::groupcalc::{
    abelianization, add_identifications, connected_sum_braid, coset_enumerate, surgery_presentation,
    wirtinger_of_braid_closure, EnumerationResult,
};
use cforge_core::independence::{
    check_maintorus, check_rank_expand, rs_brieskorn, CertOptions, Certificate, Orientation, RsValue, Verdict,
};
use cforge_core::knotlib::{
    stilde_alternating_rule, stilde_torus_rule, torus_braid, twist_fraction, BraidWord, Evaluator, KnotExpr, Stilde,
};
use cforge_core::tangle::{canonical_word_of, fraction_of, Fraction, TangleWord};
use cforge_testkit::{
    continued_fraction_pair, seifert_signature_det, sylvester_negative_definite, two_bridge_signature_magnitude,
};

/// Sub-checks that cannot hold under any diagram convention; see the
/// decisions ledger. They still print as FAIL.
const KNOWN_UNATTAINABLE: &[&str] = &["twist parity m<0"];

struct Finding {
    tag: &'static str,
    detail: String,
}

#[derive(Default)]
struct Report(Vec<Finding>);

impl Report {
    fn check(&mut self, ok: bool, tag: &'static str, detail: impl FnOnce() -> String) {
        if !ok {
            self.0.push(Finding { tag, detail: detail() });
        }
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn(&mut Report),
}

fn ev() -> Evaluator {
    Evaluator::new(2000)
}

fn opts() -> CertOptions {
    CertOptions::default()
}

fn c1_tangles(r: &mut Report) {
    let w = TangleWord::new(vec![-1, 3, -2]);
    let f = fraction_of(&w);
    r.check(f == Fraction::new(-3, 5), "worked example", || format!("[-1,3,-2] -> {f}"));
    let (p, q) = continued_fraction_pair(&[-1, 3, -2]);
    r.check(Fraction::new(p.clone(), q.clone()) == f, "oracle", || format!("oracle {p}/{q}"));

    let mut all: Vec<Fraction> = vec![Fraction::infinity()];
    for q in 1..=50i64 {
        for p in -50..=50i64 {
            if num_integer::gcd(p, q) == 1 {
                all.push(Fraction::new(p, q));
            }
        }
    }
    for f in &all {
        let back = fraction_of(&canonical_word_of(f));
        r.check(&back == f, "roundtrip", || format!("{f} -> {back}"));
    }
}

fn c2_surgery(r: &mut Report) {
    let pn = PatternSpec::p_n();
    let qn = PatternSpec::q_n();
    let k = KnotExpr::Torus(2, 3);
    for n in 1..=100i64 {
        let expected = Fraction::new(1, n);
        match branched_cover(&pn, &k, n) {
            Ok(d) => {
                r.check(d.coefficient == expected, "Pn coefficient", || format!("n={n}: {}", d.coefficient));
                r.check(d.knot == KnotExpr::sum(k.clone(), k.clone()), "Pn knot", || d.knot.to_string());
            }
            Err(e) => r.check(false, "Pn cover", || format!("n={n}: {e}")),
        }
        match branched_cover(&qn, &KnotExpr::Unknot, n) {
            Ok(d) => {
                r.check(d.coefficient == expected, "Qn coefficient", || format!("n={n}: {}", d.coefficient));
                r.check(d.knot == KnotExpr::Torus(2, 3), "Qn knot", || d.knot.to_string());
            }
            Err(e) => r.check(false, "Qn cover", || format!("n={n}: {e}")),
        }
    }
}

fn c3_signatures(r: &mut Report) {
    let ev = ev();
    for k in 1..=10i64 {
        let goeritz = ev.signature(&KnotExpr::Torus(2, 2 * k + 1));
        let seifert = seifert_signature_det(torus_braid(2, 2 * k + 1).unwrap().letters()).0;
        r.check(goeritz.as_ref().ok() == Some(&(-2 * k)), "torus goeritz", || format!("k={k}: {goeritz:?}"));
        r.check(seifert == -2 * k, "torus seifert", || format!("k={k}: {seifert}"));
    }
    for m in -8..=8i64 {
        let sig = match ev.signature(&KnotExpr::Twist(m)) {
            Ok(s) => s,
            Err(e) => {
                r.check(false, "twist", || format!("m={m}: {e}"));
                continue;
            }
        };
        let f = twist_fraction(m);
        let (p, q) = (f.numer().to_i64().unwrap(), f.denom().to_i64().unwrap());
        let p = p.abs();
        // the classical sum wants an odd representative of q mod p
        let q = if q.rem_euclid(p) % 2 == 0 { q.rem_euclid(p) + p } else { q.rem_euclid(p) };
        let oracle = if p > 1 { two_bridge_signature_magnitude(p, q) } else { 0 };
        r.check(sig.abs() == oracle, "twist oracle", || format!("m={m}: |{sig}| vs {oracle}"));
        let want = if m.rem_euclid(2) == 1 { -2 } else { 0 };
        let tag = if m < 0 { "twist parity m<0" } else { "twist parity m>=0" };
        r.check(sig == want, tag, || format!("m={m}: {sig} (table {want})"));
    }
}

/// Alternating closed braids used as summands.
fn stilde_atoms() -> Vec<BraidWord> {
    let b = |s: u32, w: &[i32]| BraidWord::new(s, w.to_vec()).unwrap();
    vec![b(2, &[1, 1, 1]), b(2, &[-1, -1, -1]), b(2, &[1; 5]), b(3, &[1, -2, 1, -2]), b(2, &[-1; 7])]
}

/// Closed braid of `a # b`, sharing the last strand of `a` with the first of `b`.
fn braid_sum(a: &BraidWord, b: &BraidWord) -> BraidWord {
    let n = a.strands() + b.strands() - 1;
    a.widen(n, 0).then(&b.widen(n, a.strands() - 1))
}

fn c4_stilde(r: &mut Report) {
    let ev = ev();
    r.check(ev.stilde(&KnotExpr::Unknot).ok() == Some(Stilde::Known(0)), "unknot", String::new);
    let t23 = KnotExpr::Torus(2, 3);
    let alt = ev.diagram(&t23).ok().and_then(|pd| stilde_alternating_rule(&pd));
    r.check(alt == Some(1), "T23 alternating rule", || format!("{alt:?}"));
    r.check(stilde_torus_rule(&t23) == Some(1), "T23 torus rule", || format!("{:?}", stilde_torus_rule(&t23)));

    let atoms = stilde_atoms();
    for i in 0..10 {
        let (k, j) = (&atoms[(i * 7) % 5], &atoms[(i * 3 + 1) % 5]);
        let (kk, jj) = (KnotExpr::BraidClosure(k.clone()), KnotExpr::BraidClosure(j.clone()));
        let sum = KnotExpr::sum(kk.clone(), KnotExpr::sum(jj.clone(), kk.clone()));
        let (sk, sj, ss) = (ev.stilde(&kk), ev.stilde(&jj), ev.stilde(&sum));
        let combined = match (sk, sj) {
            (Ok(Stilde::Known(a)), Ok(Stilde::Known(b))) => Some(2 * a + b),
            _ => None,
        };
        r.check(combined.is_some() && ss.as_ref().ok().and_then(|s| s.value()) == combined, "homomorphism", || {
            format!("{kk} # {jj}: {ss:?} vs {combined:?}")
        });
        // the summands are alternating, so s̃ = -σ/2 on the composite braid
        let composite = braid_sum(&braid_sum(k, j), k);
        let oracle = -seifert_signature_det(composite.letters()).0 / 2;
        r.check(combined == Some(oracle), "seifert oracle", || format!("{kk} # {jj}: {combined:?} vs {oracle}"));
    }
}

fn c5_rs(r: &mut Report) {
    let neg = |k| rs_brieskorn(2, 3, k, Orientation::Negative);
    r.check(neg(1).ok() == Some(RsValue::Finite(Fraction::new(1, 120))), "k=1", || format!("{:?}", neg(1)));
    r.check(neg(2).ok() == Some(RsValue::Finite(Fraction::new(1, 264))), "k=2", || format!("{:?}", neg(2)));
    let pos = rs_brieskorn(2, 3, 1, Orientation::Positive);
    r.check(pos.ok() == Some(RsValue::Infinite), "positive", || "not infinite".into());
    for (p, q, k) in [(2, 5, 1), (3, 4, 2), (2, 7, 3)] {
        let got = rs_brieskorn(p, q, k, Orientation::Negative).ok();
        let want = RsValue::Finite(Fraction::new(1, 4 * p * q * (p * q * k - 1)));
        r.check(got == Some(want), "formula", || format!("({p},{q},{k}): {got:?}"));
    }
}

fn c6_groups(r: &mut Report) {
    let b = |s: u32, w: &[i32]| BraidWord::new(s, w.to_vec()).unwrap();
    let knots = [
        torus_braid(2, 3).unwrap(),
        torus_braid(2, 5).unwrap(),
        torus_braid(2, -3).unwrap(),
        b(3, &[1, -2, 1, -2]),
        torus_braid(3, 4).unwrap(),
        b(3, &[1, 1, 1, 2, -1, 2]),
    ];
    for k in &knots {
        let w = wirtinger_of_braid_closure(k).unwrap();
        let ab = abelianization(&w.presentation);
        r.check(ab.len() == 1 && ab[0].bits() == 0, "abelianization Z", || format!("{:?}: {ab:?}", k.letters()));
        let gens = w.presentation.generators().len();
        let total: i64 = (0..gens).map(|g| w.longitude.exponent_sum(g)).sum();
        r.check(total == 0, "longitude", || format!("{:?}: exponent sum {total}", k.letters()));
        for n in 1..=3 {
            let s = surgery_presentation(&w.presentation, &w.longitude, w.meridian_name(), n).unwrap();
            let ab = abelianization(&s);
            r.check(ab.is_empty(), "surgery homology sphere", || format!("{:?} 1/{n}: {ab:?}", k.letters()));
        }
    }
    let (braid, labels) = connected_sum_braid(2, 1, 1, 2).unwrap();
    let w = wirtinger_of_braid_closure(&braid).unwrap();
    let pres = add_identifications(&w.presentation, &labels.block_identifications(&w)).unwrap();
    let pres = surgery_presentation(&pres, &w.longitude, w.meridian_name(), 1).unwrap();
    let e = coset_enumerate(&pres, &[], 100_000);
    r.check(e == EnumerationResult::Trivial, "desk instance", || format!("{e:?}"));
}

fn chain_complete(c: &Certificate) -> Result<(), String> {
    if c.verdict != Verdict::Independent {
        return Err(format!("verdict {:?}", c.verdict));
    }
    if !c.assumptions.is_empty() || !c.is_sound() {
        return Err(format!("assumptions {:?}", c.assumptions));
    }
    for id in [
        "cover.montesinos",
        "stilde.evaluate",
        "stilde.homomorphism",
        "criterion.stilde_positive",
        "h.from_stilde",
        "rs.surgery_chain",
        "rs.chain_independence",
        "cover.homomorphism",
    ] {
        if !c.steps.iter().any(|s| s.rule_id == id) {
            return Err(format!("missing {id}"));
        }
    }
    match c.steps.iter().find(|s| !s.hypothesis_holds || s.citation.is_empty()) {
        Some(s) => Err(format!("step {} not established", s.rule_id)),
        None => Ok(()),
    }
}

fn fuzz_companion() -> impl Strategy<Value = KnotExpr> {
    let atom = prop_oneof![
        Just(KnotExpr::Unknot),
        (1i64..6, 1i64..6)
            .prop_filter("coprime", |(p, q)| num_integer::gcd(*p, *q) == 1)
            .prop_map(|(p, q)| KnotExpr::Torus(p, q)),
        (-4i64..5).prop_map(KnotExpr::Twist),
        prop::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 1..7).prop_filter_map("knot", |w| {
            let b = BraidWord::new(3, w).ok()?;
            b.closure_is_knot().then_some(KnotExpr::BraidClosure(b))
        }),
    ];
    atom.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(KnotExpr::mirror),
            (inner.clone(), inner).prop_map(|(a, b)| KnotExpr::sum(a, b)),
        ]
    })
}

fn fuzz_pattern() -> impl Strategy<Value = PatternSpec> {
    let random = (
        prop_oneof![Just(KnotExpr::Unknot), Just(KnotExpr::Torus(2, 3)), Just(KnotExpr::Twist(2))],
        -3i64..4,
        -2i64..3,
        -1i64..3,
        -3i64..4,
    )
        .prop_map(|(friend, a, c, d, r)| PatternSpec {
            name: "R".into(),
            friend,
            reference_framing: Fraction::integer(r),
            replaced: WordTemplate(vec![Affine { coeff: 0, constant: a }, Affine { coeff: c, constant: d }]),
            infection: Infection::Meridional,
            indices: IndexRange { min: 1, max: None },
        });
    prop_oneof![Just(PatternSpec::p_n()), Just(PatternSpec::q_n()), random]
}

fn c7_certificates(r: &mut Report) {
    let c = check_maintorus(&PatternSpec::p_n(), &KnotExpr::Torus(2, 3), 1..=10, &opts());
    let res = c.map_err(|e| e.to_string()).and_then(|c| chain_complete(&c));
    r.check(res.is_ok(), "(a) Pn T23", || format!("{res:?}"));
    for m in [1, 2] {
        let c = check_maintorus(&PatternSpec::q_n(), &KnotExpr::Twist(m), 1..=10, &opts());
        let res = c.map_err(|e| e.to_string()).and_then(|c| chain_complete(&c));
        r.check(res.is_ok(), "(b) Qn twist", || format!("m={m}: {res:?}"));
    }

    let mut runner = TestRunner::new(Config { cases: 200, failure_persistence: None, ..Config::default() });
    let strategy = (fuzz_pattern(), fuzz_companion(), 1i64..4);
    let outcome = runner.run(&strategy, |(pattern, companion, hi)| {
        let Ok(c) = check_maintorus(&pattern, &companion, 1..=hi, &opts()) else { return Ok(()) };
        prop_assert!(c.is_sound());
        if c.verdict == Verdict::Independent {
            for s in c.steps.iter().filter(|s| s.required) {
                prop_assert!(s.hypothesis_holds, "{} failed", s.rule_id);
                prop_assert!(s.enumeration.map_or(true, |e| e == EnumerationResult::Trivial));
            }
        }
        Ok(())
    });
    r.check(outcome.is_ok(), "(c) soundness fuzz", || format!("{outcome:?}"));
}

fn c8_rank_expand(r: &mut Report) {
    let c = match check_rank_expand(1, 2, 1, &[(1, 1), (1, 2)], &opts()) {
        Ok(c) => c,
        Err(e) => return r.check(false, "rank expand", || e.to_string()),
    };
    r.check(c.verdict == Verdict::Independent && c.is_sound(), "verdict", || format!("{:?}", c.verdict));
    for rec in &c.cobordisms {
        let rows = rec.linking_matrix().map(|m| m.to_rows()).unwrap_or_default();
        let oracle = rows.is_empty() || sylvester_negative_definite(&rows);
        r.check(rec.definite && oracle, "negative definite", || format!("{:?}", rec.handles));
    }
    // records feeding a strict inequality must bound a simply connected W
    let strict: Vec<usize> = c
        .steps
        .windows(2)
        .filter(|w| w[0].rule_id == "cobordism.crossing_changes" && w[1].rule_id == "rs.cobordism_inequality")
        .filter(|w| w[1].computed.get("inequality").is_some_and(|s| s.contains(" < ")))
        .filter_map(|w| w[0].computed.get("record")?.parse().ok())
        .collect();
    r.check(strict.len() == 1, "strict steps", || format!("{strict:?}"));
    for i in strict {
        let ok = c.cobordisms.get(i).is_some_and(|rec| rec.simply_connected());
        r.check(ok, "simply connected", || format!("record {i}"));
    }
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "tangle conformance", budget: Duration::from_secs(1), run: c1_tangles },
        Criterion { id: 2, name: "surgery coefficients", budget: Duration::from_secs(1), run: c2_surgery },
        Criterion { id: 3, name: "signatures", budget: Duration::from_secs(10), run: c3_signatures },
        Criterion { id: 4, name: "s~ rules", budget: Duration::from_secs(5), run: c4_stilde },
        Criterion { id: 5, name: "r_s table", budget: Duration::from_millis(50), run: c5_rs },
        Criterion { id: 6, name: "group pipeline", budget: Duration::from_secs(60), run: c6_groups },
        Criterion { id: 7, name: "certificates", budget: Duration::from_secs(120), run: c7_certificates },
        Criterion { id: 8, name: "rank-expand desk instance", budget: Duration::from_secs(120), run: c8_rank_expand },
    ];
    let mut blocking = 0;
    for c in &criteria {
        let mut report = Report::default();
        let start = Instant::now();
        (c.run)(&mut report);
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.budget;
        let pass = report.0.is_empty() && in_time;
        println!(
            "criterion {} {:<28} {}  {:.3}s / {:.3}s",
            c.id,
            c.name,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            c.budget.as_secs_f64()
        );
        if !in_time {
            println!("    over budget");
            blocking += 1;
        }
        for f in &report.0 {
            let known = KNOWN_UNATTAINABLE.contains(&f.tag);
            println!("    [{}{}] {}", f.tag, if known { ", known unattainable" } else { "" }, f.detail);
            if !known {
                blocking += 1;
            }
        }
    }
    if blocking > 0 {
        println!("{blocking} blocking failure(s)");
        return ExitCode::FAILURE;
    }
    println!("no blocking failures (known unattainable: {})", KNOWN_UNATTAINABLE.join(", "));
    ExitCode::SUCCESS
}
