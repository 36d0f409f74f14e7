use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use cforge_core::cover::branched_cover;
use cforge_core::groupcalc::{
    add_identifications, connected_sum_braid, coset_enumerate, surgery_presentation, wirtinger_of_braid_closure,
    EnumerationResult,
};
use cforge_core::independence::{
    check_maintorus, check_not_slice, check_rank_expand, CertOptions, Certificate, Verdict,
};
use cforge_core::knotlib::{closed_braid, Evaluator, Stilde};
use cforge_core::tangle::{canonical_word_of, fraction_of, parse_tangle_word, Fraction};

use crate::args::{CertCmd, Command, CoverCmd, Global, GroupCmd, Invariant, KnotCmd, TangleCmd};
use crate::inputs::{self, Request};

pub const SCHEMA: &str = "cforge/1";

#[derive(Serialize)]
pub struct Envelope<'a> {
    pub schema: &'static str,
    pub command: &'static str,
    pub result: &'a Value,
}

/// Result of one command: the JSON body, its text rendering, and whether
/// the outcome was mathematically inconclusive.
pub struct Outcome {
    pub command: &'static str,
    pub result: Value,
    pub text: String,
    pub inconclusive: bool,
    pub warnings: Vec<String>,
}

impl Outcome {
    fn new(command: &'static str, result: impl Serialize, text: String) -> Result<Self> {
        Ok(Outcome { command, result: serde_json::to_value(result)?, text, inconclusive: false, warnings: Vec::new() })
    }

    pub fn envelope(&self) -> Envelope<'_> {
        Envelope { schema: SCHEMA, command: self.command, result: &self.result }
    }
}

fn options(g: &Global) -> CertOptions {
    CertOptions {
        evaluator: Evaluator::new(g.max_crossings as usize),
        max_cosets: g.max_cosets as usize,
        assume_h_negative: false,
    }
}

pub fn run(cmd: &Command, g: &Global) -> Result<Outcome> {
    match cmd {
        Command::Tangle(TangleCmd::Eval { word }) => {
            let w = parse_tangle_word(word).with_context(|| format!("word `{word}`"))?;
            let f = fraction_of(&w);
            Outcome::new("tangle-eval", json!({ "word": w.to_string(), "fraction": f }), f.to_string())
        }
        Command::Tangle(TangleCmd::Canon { fraction }) => {
            let f: Fraction = fraction.parse().with_context(|| format!("fraction `{fraction}`"))?;
            let w = canonical_word_of(&f);
            Outcome::new("tangle-canon", json!({ "fraction": f, "word": w.exponents() }), w.to_string())
        }
        Command::Knot(KnotCmd::Invariant { input, what }) => knot_invariant(input, *what, g),
        Command::Cover(CoverCmd::Compute { pattern, companion, n }) => {
            let p = inputs::pattern("--pattern", pattern)?;
            let k = inputs::knot("--companion", companion)?;
            let d = branched_cover(&p, &k, *n)?;
            let text = format!("S^3_{{{}}}({})", d.coefficient, d.knot);
            Outcome::new("cover-compute", &d, text)
        }
        Command::Group(GroupCmd::Present { knot, sum, identify, n }) => group_present(knot, sum, *identify, *n),
        Command::Group(GroupCmd::Enumerate { input, subgroup }) => {
            let pres = inputs::presentation(input)?;
            let words = subgroup
                .iter()
                .map(|w| pres.parse_word(w).with_context(|| format!("--subgroup `{w}`")))
                .collect::<Result<Vec<_>>>()?;
            let r = coset_enumerate(&pres, &words, g.max_cosets as usize);
            let mut out = Outcome::new("group-enumerate", r, format!("{r:?}"))?;
            out.inconclusive = matches!(r, EnumerationResult::Unknown { .. });
            Ok(out)
        }
        Command::Cert(CertCmd::Batch { input }) => batch(input, g),
        Command::Cert(c) => {
            let req = match c {
                CertCmd::Maintorus { pattern, companion, from, to, assume_h_negative } => Request::Maintorus {
                    pattern: inputs::PatternRef::Uri(pattern.clone()),
                    companion: inputs::knot("--companion", companion)?,
                    from: *from,
                    to: *to,
                    assume_h_negative: *assume_h_negative,
                },
                CertCmd::Notslice { pattern, companion, n } => Request::Notslice {
                    pattern: inputs::PatternRef::Uri(pattern.clone()),
                    companion: inputs::knot("--companion", companion)?,
                    n: *n,
                },
                CertCmd::Rankexpand { n, p, q, members } => {
                    Request::Rankexpand { n: *n, p: *p, q: *q, members: inputs::members(members)? }
                }
                CertCmd::Batch { .. } => unreachable!(),
            };
            let (name, cert) = certify(&req, &options(g), "--pattern")?;
            let mut out = Outcome::new(name, &cert, cert.render())?;
            out.inconclusive = cert.verdict == Verdict::Inconclusive;
            if !cert.assumptions.is_empty() {
                out.warnings.push(format!("certificate rests on {} unproved assumption(s)", cert.assumptions.len()));
            }
            Ok(out)
        }
    }
}

fn certify(req: &Request, opts: &CertOptions, origin: &str) -> Result<(&'static str, Certificate)> {
    Ok(match req {
        Request::Maintorus { pattern, companion, from, to, assume_h_negative } => {
            companion.validate().with_context(|| format!("{origin}: invalid companion"))?;
            let o = CertOptions { assume_h_negative: *assume_h_negative, ..*opts };
            ("cert-maintorus", check_maintorus(&pattern.resolve(origin)?, companion, *from..=*to, &o)?)
        }
        Request::Notslice { pattern, companion, n } => {
            companion.validate().with_context(|| format!("{origin}: invalid companion"))?;
            ("cert-notslice", check_not_slice(&pattern.resolve(origin)?, companion, *n, opts)?)
        }
        Request::Rankexpand { n, p, q, members } => ("cert-rankexpand", check_rank_expand(*n, *p, *q, members, opts)?),
    })
}

fn batch(path: &std::path::Path, g: &Global) -> Result<Outcome> {
    let requests = inputs::batch(path)?;
    let opts = options(g);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(g.jobs as usize).build()?;
    let results: Vec<Result<(&'static str, Certificate)>> = pool.install(|| {
        requests
            .par_iter()
            .enumerate()
            .map(|(i, r)| certify(r, &opts, &format!("--in {} [{i}]", path.display())))
            .collect()
    });
    let mut certs = Vec::new();
    let mut text = String::new();
    for (i, r) in results.into_iter().enumerate() {
        let (_, cert) = r?;
        text.push_str(&format!("== request {i} ==\n{}", cert.render()));
        certs.push(cert);
    }
    let inconclusive = certs.iter().any(|c| c.verdict == Verdict::Inconclusive);
    let assumed = certs.iter().filter(|c| !c.assumptions.is_empty()).count();
    let mut out = Outcome::new("cert-batch", &certs, text)?;
    out.inconclusive = inconclusive;
    if assumed > 0 {
        out.warnings.push(format!("{assumed} certificate(s) rest on unproved assumptions"));
    }
    Ok(out)
}

fn knot_invariant(input: &str, what: Invariant, g: &Global) -> Result<Outcome> {
    let k = inputs::knot("--in", input)?;
    let ev = Evaluator::new(g.max_crossings as usize);
    let mut body = serde_json::Map::new();
    let mut text = String::new();
    let mut inconclusive = false;
    body.insert("knot".into(), serde_json::to_value(&k)?);
    if matches!(what, Invariant::Sigma | Invariant::All) {
        let s = ev.signature(&k)?;
        body.insert("signature".into(), json!(s));
        text.push_str(&format!("signature   {s}\n"));
    }
    if matches!(what, Invariant::Det | Invariant::All) {
        let d = ev.determinant(&k)?;
        body.insert("determinant".into(), json!(d.to_string()));
        text.push_str(&format!("determinant {d}\n"));
    }
    if matches!(what, Invariant::Stilde | Invariant::All) {
        let (s, trace) = ev.stilde_traced(&k)?;
        let shown = match s {
            Stilde::Known(v) => v.to_string(),
            Stilde::Unknown => "unknown".into(),
        };
        inconclusive = s == Stilde::Unknown;
        body.insert("stilde".into(), json!(s.value()));
        body.insert("stilde_rules".into(), serde_json::to_value(&trace)?);
        text.push_str(&format!("stilde      {shown}\n"));
    }
    let mut out = Outcome::new("knot-invariant", Value::Object(body), text.trim_end().to_string())?;
    out.inconclusive = inconclusive;
    Ok(out)
}

fn group_present(knot: &Option<String>, sum: &Option<String>, identify: bool, n: Option<u32>) -> Result<Outcome> {
    let (braid, labels) = match (knot, sum) {
        (Some(k), _) => {
            let k = inputs::knot("--knot", k)?;
            let Some(b) = closed_braid(&k) else {
                bail!("--knot: no closed braid is known for {k}");
            };
            (b, None)
        }
        (None, Some(s)) => {
            let (p, q, k, c) = inputs::sum_spec(s)?;
            let (b, l) = connected_sum_braid(p, q, k, c).context("--sum")?;
            (b, Some(l))
        }
        (None, None) => bail!("one of --knot or --sum is required"),
    };
    let w = wirtinger_of_braid_closure(&braid)?;
    let mut pres = w.presentation.clone();
    if identify {
        let labels = labels.expect("clap enforces --sum");
        pres = add_identifications(&pres, &labels.block_identifications(&w))?;
    }
    if let Some(n) = n {
        pres = surgery_presentation(&pres, &w.longitude, w.meridian_name(), n)?;
    }
    let body = json!({
        "presentation": pres,
        "meridian": w.meridian_name(),
        "longitude": w.presentation.format_word(&w.longitude),
    });
    Outcome::new("group-present", body, pres.to_string())
}
