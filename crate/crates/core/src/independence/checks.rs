use std::ops::RangeInclusive;

use itertools::Itertools;

use super::certificate::{rules, Certificate, RsBound, Step, Verdict};
use super::cobordism::{build_expand_cobordism, descending_changes, sum_surgery, CobordismRecord, Pi1Check};
use super::rs::{rs_brieskorn, Orientation, RsValue};
use super::IndependenceError;
use crate::cover::{branched_cover, PatternSpec, SurgeryDesc};
use crate::groupcalc::DEFAULT_MAX_COSETS;
use crate::knotlib::{closed_braid, Evaluator, KnotExpr, Stilde, StildeStep, Summand};

#[derive(Debug, Clone, Copy)]
pub struct CertOptions {
    pub evaluator: Evaluator,
    pub max_cosets: usize,
    /// Accept `h(S³₁(K#J#K)) < 0` as a user assertion when the s̃ route
    /// does not establish it.
    pub assume_h_negative: bool,
}

impl Default for CertOptions {
    fn default() -> Self {
        CertOptions { evaluator: Evaluator::default(), max_cosets: DEFAULT_MAX_COSETS, assume_h_negative: false }
    }
}

fn trace_string(trace: &[StildeStep]) -> String {
    trace
        .iter()
        .map(|s| match s.value {
            Stilde::Known(v) => format!("{} {} = {v}", s.rule, s.knot),
            Stilde::Unknown => format!("{} {} = unknown", s.rule, s.knot),
        })
        .join("; ")
}

fn stilde_step(ev: &Evaluator, role: &str, k: &KnotExpr) -> Result<(Option<i64>, Step), IndependenceError> {
    let (v, trace) = ev.stilde_traced(k)?;
    let value = v.value();
    let step = Step::new(rules::STILDE_EVALUATE, value.is_some())
        .input(role, k)
        .computed("stilde", value.map_or("unknown".into(), |v| v.to_string()))
        .computed("rules", trace_string(&trace));
    Ok((value, step))
}

/// Cover step; the chain rules need coefficient `1/n'` with `n' >= 1`.
fn cover_step(
    pattern: &PatternSpec,
    companion: &KnotExpr,
    n: i64,
) -> Result<(SurgeryDesc, Option<i64>, Step), IndependenceError> {
    let d = branched_cover(pattern, companion, n)?;
    let inv = d.inverse_integer().filter(|&m| m >= 1);
    let step = Step::new(rules::COVER_MONTESINOS, inv.is_some())
        .input("pattern", &pattern.name)
        .input("companion", companion)
        .input("n", n)
        .computed("knot", &d.knot)
        .computed("coefficient", d.coefficient.to_ratio_string());
    Ok((d, inv, step))
}

fn family_claim(count: usize, members: &str) -> String {
    if count == 1 {
        format!("{members} has infinite order in the smooth concordance group")
    } else {
        format!("{members} are linearly independent in the smooth concordance group")
    }
}

/// Independence of `{P_n(K)}` over `indices` through the s̃ criterion
/// `2s̃(K) + s̃(J) > 0` on the friend `J`.
pub fn check_maintorus(
    pattern: &PatternSpec,
    companion: &KnotExpr,
    indices: RangeInclusive<i64>,
    opts: &CertOptions,
) -> Result<Certificate, IndependenceError> {
    if indices.is_empty() {
        return Err(IndependenceError::InvalidParameters("empty index range".into()));
    }
    let (lo, hi) = (*indices.start(), *indices.end());
    let members = format!("{}({companion}), n = {lo}..{hi}", pattern.name);
    let mut cert = Certificate::new(family_claim(indices.clone().count(), &members), &members);

    let mut inverse = Vec::new();
    let mut cover_knot = None;
    for n in indices {
        let (d, inv, step) = cover_step(pattern, companion, n)?;
        cert.push(step);
        inverse.extend(inv);
        cover_knot.get_or_insert(d.knot);
    }
    let cover_knot = cover_knot.expect("nonempty range");

    let ev = &opts.evaluator;
    let (sk, step_k) = stilde_step(ev, "companion", companion)?;
    let (sj, step_j) = stilde_step(ev, "friend", &pattern.friend)?;
    let total = sk.zip(sj).map(|(a, b)| 2 * a + b);
    let homomorphism = Step::new(rules::STILDE_HOMOMORPHISM, total.is_some())
        .input("knot", &cover_knot)
        .computed("stilde", total.map_or("unknown".into(), |t| t.to_string()));
    let positive = total.is_some_and(|t| t > 0);
    let criterion = Step::new(rules::STILDE_CRITERION, positive)
        .computed("2s(K)+s(J)", total.map_or("unknown".into(), |t| t.to_string()));
    let h_step = Step::new(rules::H_FROM_STILDE, positive)
        .input("knot", &cover_knot)
        .computed("h(S^3_1)", if positive { "negative" } else { "not established" });
    let mut route = vec![step_k, step_j, homomorphism, criterion, h_step];
    if !positive && opts.assume_h_negative {
        for s in &mut route {
            s.required = false;
        }
        cert.steps.extend(route);
        let statement = format!("h(S^3_1({cover_knot})) < 0");
        let mut s = Step::new(rules::H_ASSUMED, true).input("knot", &cover_knot).computed("h(S^3_1)", "negative");
        s.assumed = true;
        cert.push(s);
        cert.assume(statement);
    } else {
        cert.steps.extend(route);
    }

    let distinct = inverse.iter().all_unique();
    let chain = inverse.iter().sorted().map(|m| format!("r_s(S^3_{{1/{m}}})")).join(" > ");
    cert.push(
        Step::new(rules::RS_SURGERY_CHAIN, distinct)
            .input("knot", &cover_knot)
            .computed("chain", format!("inf > {chain}"))
            .computed("mirrors", "r_s(-S^3_{1/n}) = inf"),
    );
    cert.push(Step::new(rules::RS_CHAIN_INDEPENDENCE, distinct).computed("length", inverse.len()));
    cert.push(Step::new(rules::COVER_HOMOMORPHISM, true).input("family", &members));
    Ok(cert.conclude(Verdict::Independent))
}

fn positive_torus(s: &Summand) -> Option<(i64, i64)> {
    match s.atom {
        KnotExpr::Torus(p, q) if !s.mirrored && p >= 2 && q >= 2 => Some((p, q)),
        _ => None,
    }
}

/// A crossing-change cobordism from `S³_{1/n}(T(p,q))` to `cover`: one
/// positive torus summand is kept and every other summand, each a closed
/// positive braid, is unknotted. Among the torus summands the one with
/// the smallest Brieskorn value is kept.
fn torus_route(
    cover: &SurgeryDesc,
    n: i64,
) -> Result<Option<(CobordismRecord, (i64, i64), RsValue)>, IndependenceError> {
    let summands = cover.knot.summands();
    let mut braids = Vec::new();
    for s in &summands {
        match closed_braid(&s.to_expr()) {
            Some(b) if b.letters().iter().all(|&l| l > 0) => braids.push(b),
            _ => return Ok(None),
        }
    }
    let mut best: Option<(usize, (i64, i64), RsValue)> = None;
    for (i, s) in summands.iter().enumerate() {
        if let Some((p, q)) = positive_torus(s) {
            let v = rs_brieskorn(p, q, n, Orientation::Negative)?;
            if best.as_ref().map_or(true, |b| v < b.2) {
                best = Some((i, (p, q), v));
            }
        }
    }
    let Some((keep, (p, q), bound)) = best else { return Ok(None) };
    let mut purposes = Vec::new();
    for (i, (s, b)) in summands.iter().zip(&braids).enumerate() {
        if i == keep {
            continue;
        }
        for t in descending_changes(b) {
            purposes.push(format!("unknot summand {} ({}), crossing {}", i + 1, s.to_expr(), t + 1));
        }
    }
    let from = SurgeryDesc { knot: KnotExpr::Torus(p, q), coefficient: cover.coefficient.clone() };
    let rec = CobordismRecord::minus_one_handles(from, cover.clone(), purposes, Pi1Check::NotAttempted);
    Ok(Some((rec, (p, q), bound)))
}

/// Non-sliceness of `P_n(K)` from a finite upper bound on `r_s` of its cover.
pub fn check_not_slice(
    pattern: &PatternSpec,
    companion: &KnotExpr,
    n: i64,
    _opts: &CertOptions,
) -> Result<Certificate, IndependenceError> {
    let member = format!("{}({companion}) at n = {n}", pattern.name);
    let mut cert = Certificate::new(format!("{member} is not slice"), &member);
    let (d, inv, step) = cover_step(pattern, companion, n)?;
    cert.push(step);

    let route = match inv {
        Some(m) => torus_route(&d, m)?,
        None => None,
    };
    let Some((rec, (p, q), bound)) = route else {
        cert.push(
            Step::new(rules::COBORDISM_HANDLES, false)
                .input("to", &d.knot)
                .computed("route", "no crossing-change route to a positive torus knot"),
        );
        return Ok(cert.conclude(Verdict::NotSlice));
    };
    let m = inv.expect("route implies 1/n form");
    let handles = rec.handles.len();
    let definite = rec.definite;
    let idx = cert.record(rec);
    cert.push(
        Step::new(rules::COBORDISM_HANDLES, definite)
            .input("from", format!("S^3_{{1/{m}}}(T({p},{q}))"))
            .input("to", format!("S^3_{{1/{m}}}({})", d.knot))
            .computed("record", idx)
            .computed("handles", handles)
            .computed("negative_definite", definite),
    );
    cert.push(
        Step::new(rules::RS_BRIESKORN, true)
            .input("p", p)
            .input("q", q)
            .input("k", m)
            .computed("r_s(-Sigma)", bound.to_ratio_string()),
    );
    cert.push(
        Step::new(rules::RS_COBORDISM, definite)
            .input("record", idx)
            .computed("inequality", format!("r_s(cover) <= {}", bound.to_ratio_string())),
    );
    cert.push(
        Step::new(rules::RS_S3_SEPARATION, bound.is_finite())
            .computed("r_s(cover)", format!("<= {}", bound.to_ratio_string()))
            .computed("r_s(S^3)", "inf"),
    );
    cert.push(Step::new(rules::COVER_HOMOMORPHISM, true).input("knot", &member));
    cert.rs_bounds.push(RsBound { manifold: format!("S^3_{{1/{m}}}({})", d.knot), upper: bound });
    Ok(cert.conclude(Verdict::NotSlice))
}

/// Independence of `{P_n(m·T(p, q+kp))}` over `(m, k)` in `members`.
pub fn check_rank_expand(
    n: i64,
    p: u32,
    q: i64,
    members: &[(u32, u32)],
    opts: &CertOptions,
) -> Result<Certificate, IndependenceError> {
    if members.is_empty() {
        return Err(IndependenceError::InvalidParameters("the family is empty".into()));
    }
    if p < 2 || q < 1 || n < 1 {
        return Err(IndependenceError::InvalidParameters(format!(
            "need p >= 2, q >= 1, n >= 1; got p={p} q={q} n={n}"
        )));
    }
    if num_integer::gcd(p as i64, q) != 1 {
        return Err(IndependenceError::NotCoprime(p as i64, q));
    }
    let sorted: Vec<(u32, u32)> = members.iter().copied().sorted_by_key(|&(_, k)| k).collect();
    if !sorted.iter().map(|&(_, k)| k).all_unique() {
        return Err(IndependenceError::InvalidParameters("each k may appear once".into()));
    }
    if sorted.windows(2).any(|w| w[1].0 < w[0].0) {
        return Err(IndependenceError::InvalidParameters("m_k must be nondecreasing in k".into()));
    }
    if let Some(&(m, k)) = sorted.iter().find(|&&(m, k)| m == 0 || q + ((k * p) as i64) < 2) {
        return Err(IndependenceError::InvalidParameters(format!("member (m={m}, k={k}) is the unknot")));
    }

    let qk = |k: u32| q + (k * p) as i64;
    let label = |(m, k): (u32, u32)| format!("Pn({m}T({p},{}))", qk(k));
    let family = format!("Pn(m_k T({p},{q}+kp)) at n = {n}, (m_k,k) in {sorted:?}");
    let listed = sorted.iter().map(|&mk| label(mk)).join(", ");
    let mut cert = Certificate::new(family_claim(sorted.len(), &format!("{{{listed}}}")), family);
    let pn = PatternSpec::p_n();

    let mut bounds = Vec::new();
    for &(m, k) in &sorted {
        let (d, inv, step) = cover_step(&pn, &KnotExpr::multiple(m, KnotExpr::Torus(p as i64, qk(k))), n)?;
        let expected = sum_surgery(p, q, k, 2 * m, n);
        let matches = inv == Some(n) && d.knot.summands() == expected.knot.summands();
        let mut step = step.computed("matches_record_boundary", matches);
        step.hypothesis_holds &= matches;
        cert.push(step);

        let (s, st) = stilde_step(&opts.evaluator, "knot", &expected.knot)?;
        let positive = s.is_some_and(|v| v > 0);
        cert.push(st);
        cert.push(Step::new(rules::H_FROM_STILDE, positive).input("knot", &expected.knot));
        cert.push(
            Step::new(rules::RS_SURGERY_CHAIN, positive)
                .input("knot", &expected.knot)
                .computed("mirror", format!("r_s(-S^3_{{1/{n}}}) = inf")),
        );

        // upper bound: unknot all but one summand, then the Brieskorn value
        let rec = build_expand_cobordism(p, qk(k), (0, 1), (0, 2 * m), n, opts.max_cosets)?;
        let definite = rec.definite;
        let handles = rec.handles.len();
        let idx = cert.record(rec);
        cert.push(
            Step::new(rules::COBORDISM_HANDLES, definite)
                .input("from", format!("S^3_{{1/{n}}}(T({p},{}))", qk(k)))
                .input("to", format!("S^3_{{1/{n}}}({})", expected.knot))
                .computed("record", idx)
                .computed("handles", handles),
        );
        let b = rs_brieskorn(p as i64, qk(k), n, Orientation::Negative)?;
        cert.push(
            Step::new(rules::RS_BRIESKORN, true)
                .input("p", p)
                .input("q", qk(k))
                .input("k", n)
                .computed("r_s(-Sigma)", b.to_ratio_string()),
        );
        cert.push(
            Step::new(rules::RS_COBORDISM, definite)
                .input("record", idx)
                .computed("inequality", format!("r_s({}) <= {}", label((m, k)), b.to_ratio_string())),
        );
        cert.rs_bounds.push(RsBound { manifold: format!("S^3_{{1/{n}}}({})", expected.knot), upper: b.clone() });
        bounds.push(b);
    }

    for (w, bw) in sorted.windows(2).zip(bounds.windows(2)) {
        let ((m0, k0), (m1, k1)) = (w[0], w[1]);
        let rec = build_expand_cobordism(p, q, (k0, 2 * m0), (k1, 2 * m1), n, opts.max_cosets)?;
        let (definite, simply) = (rec.definite, rec.simply_connected());
        let enumeration = match rec.pi1_check {
            Pi1Check::Enumerated(r) => r,
            Pi1Check::NotAttempted => unreachable!("k increases between members"),
        };
        let handles = rec.handles.len();
        let idx = cert.record(rec);
        cert.push(
            Step::new(rules::COBORDISM_HANDLES, definite)
                .input("from", label((m0, k0)))
                .input("to", label((m1, k1)))
                .computed("record", idx)
                .computed("handles", handles)
                .enumeration(enumeration),
        );
        cert.push(
            Step::new(rules::RS_COBORDISM, definite && simply && bw[0].is_finite())
                .input("record", idx)
                .computed("inequality", format!("r_s({}) < r_s({})", label((m1, k1)), label((m0, k0)))),
        );
    }

    let ordered = bounds.windows(2).all(|w| w[1] < w[0]);
    cert.push(
        Step::new(rules::RS_CHAIN_INDEPENDENCE, ordered)
            .computed("length", sorted.len())
            .computed("upper_bounds", bounds.iter().map(RsValue::to_ratio_string).join(" > ")),
    );
    cert.push(Step::new(rules::COVER_HOMOMORPHISM, true).input("family", listed));
    Ok(cert.conclude(Verdict::Independent))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::Fraction;

    #[test]
    fn not_slice_bound() {
        let opts = CertOptions::default();
        let c = check_not_slice(&PatternSpec::p_n(), &KnotExpr::Torus(2, 3), 2, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::NotSlice);
        assert_eq!(c.rs_bounds[0].upper, RsValue::Finite(Fraction::new(1, 4 * 6 * 11)));
        assert_eq!(c.cobordisms[0].handles.len(), 1);
        let c = check_not_slice(&PatternSpec::p_n(), &KnotExpr::Unknot, 1, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn rank_expand_rejects() {
        let opts = CertOptions::default();
        assert!(check_rank_expand(1, 2, 1, &[], &opts).is_err());
        assert!(check_rank_expand(1, 2, 1, &[(2, 1), (1, 2)], &opts).is_err());
        assert!(check_rank_expand(1, 2, 1, &[(1, 1), (1, 1)], &opts).is_err());
        assert!(check_rank_expand(1, 2, 1, &[(1, 0)], &opts).is_err());
        assert!(check_rank_expand(1, 2, 2, &[(1, 1)], &opts).is_err());
    }
}
