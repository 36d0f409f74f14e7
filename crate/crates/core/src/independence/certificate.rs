use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::cobordism::CobordismRecord;
use super::rs::RsValue;
use crate::groupcalc::EnumerationResult;

/// A rule the engine may apply, with the statement it relies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rule {
    pub id: &'static str,
    pub citation: &'static str,
}

pub mod rules {
    use super::Rule;

    pub const COVER_MONTESINOS: Rule = Rule {
        id: "cover.montesinos",
        citation: "Montesinos trick: the branched double cover of a satellite whose pattern has rational \
                   unknotting number one is Dehn surgery on the infected friend K # J # K",
    };
    pub const COVER_HOMOMORPHISM: Rule = Rule {
        id: "cover.homomorphism",
        citation: "the branched double cover defines a homomorphism from the smooth concordance group to \
                   the Z/2 homology cobordism group, so a relation among knots gives one among covers",
    };
    pub const STILDE_EVALUATE: Rule = Rule {
        id: "stilde.evaluate",
        citation: "slice-torus invariant by rules: 0 on the unknot, additive, odd under mirroring, \
                   -sigma/2 on alternating knots, (p-1)(q-1)/2 on positive torus knots",
    };
    pub const STILDE_HOMOMORPHISM: Rule = Rule {
        id: "stilde.homomorphism",
        citation: "the slice-torus invariant is a concordance homomorphism, so s(K # J # K) = 2s(K) + s(J)",
    };
    pub const STILDE_CRITERION: Rule = Rule {
        id: "criterion.stilde_positive",
        citation: "independence criterion for covers of K # J # K: 2s(K) + s(J) > 0",
    };
    pub const H_FROM_STILDE: Rule = Rule {
        id: "h.from_stilde",
        citation: "a knot K with positive slice-torus invariant has Froyshov invariant h(S^3_1(K)) < 0",
    };
    pub const H_ASSUMED: Rule = Rule { id: "h.assumed", citation: "h(S^3_1(K)) < 0 asserted by the user, not derived" };
    pub const RS_SURGERY_CHAIN: Rule = Rule {
        id: "rs.surgery_chain",
        citation: "if h(S^3_1(K)) < 0 then inf > r_s(S^3_1(K)) > r_s(S^3_{1/2}(K)) > ... and \
                   r_s(-S^3_{1/n}(K)) = inf for every n >= 1",
    };
    pub const RS_CHAIN_INDEPENDENCE: Rule = Rule {
        id: "rs.chain_independence",
        citation: "homology spheres Y_1, Y_2, ... with inf > r_s(Y_1) > r_s(Y_2) > ... and r_s(-Y_i) = inf \
                   are linearly independent in the integral homology cobordism group",
    };
    pub const RS_BRIESKORN: Rule = Rule {
        id: "rs.brieskorn",
        citation: "S^3_{1/k}(T(p,q)) = -Sigma(p,q,pqk-1) and r_s(-Sigma(p,q,pqk-1)) = 1/(4pq(pqk-1)), \
                   r_s(Sigma(p,q,pqk-1)) = inf",
    };
    pub const COBORDISM_HANDLES: Rule = Rule {
        id: "cobordism.crossing_changes",
        citation: "a positive-to-negative crossing change is a -1 framed 2-handle along an unknot around \
                   the crossing; the linking matrix of the handles is the intersection form",
    };
    pub const RS_COBORDISM: Rule = Rule {
        id: "rs.cobordism_inequality",
        citation: "a negative definite cobordism W with boundary Y1 and -Y2 gives r_s(Y2) <= r_s(Y1), \
                   strictly if pi_1(W) = 1 and r_s(Y1) < inf",
    };
    pub const RS_S3_SEPARATION: Rule = Rule {
        id: "rs.s3_separation",
        citation: "r_s(S^3) = inf and r_s is a homology cobordism invariant; a finite value rules out \
                   bounding a homology ball, so the knot is not slice",
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Independent,
    NotSlice,
    Inconclusive,
}

fn is_true(b: &bool) -> bool {
    *b
}

fn is_false(b: &bool) -> bool {
    !*b
}

fn yes() -> bool {
    true
}

/// One rule application. `hypothesis_holds` records whether the premises
/// of the rule were established; steps that are not `required` are kept
/// for the record only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule_id: String,
    pub citation: String,
    pub inputs: BTreeMap<String, String>,
    pub computed: BTreeMap<String, String>,
    pub hypothesis_holds: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub assumed: bool,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub required: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<EnumerationResult>,
}

impl Step {
    pub fn new(rule: Rule, hypothesis_holds: bool) -> Self {
        Step {
            rule_id: rule.id.into(),
            citation: rule.citation.into(),
            inputs: BTreeMap::new(),
            computed: BTreeMap::new(),
            hypothesis_holds,
            assumed: false,
            required: true,
            enumeration: None,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    pub fn computed(mut self, key: &str, value: impl ToString) -> Self {
        self.computed.insert(key.into(), value.to_string());
        self
    }

    pub fn enumeration(mut self, r: EnumerationResult) -> Self {
        self.enumeration = Some(r);
        self
    }

    /// Whether this step blocks a conclusive verdict.
    pub fn blocks(&self) -> bool {
        self.required && (!self.hypothesis_holds || self.enumeration.is_some_and(|r| r != EnumerationResult::Trivial))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RsBound {
    pub manifold: String,
    pub upper: RsValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub family: String,
    pub steps: Vec<Step>,
    pub assumptions: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cobordisms: Vec<CobordismRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rs_bounds: Vec<RsBound>,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn new(claim: impl Into<String>, family: impl Into<String>) -> Self {
        Certificate {
            claim: claim.into(),
            family: family.into(),
            steps: Vec::new(),
            assumptions: Vec::new(),
            cobordisms: Vec::new(),
            rs_bounds: Vec::new(),
            verdict: Verdict::Inconclusive,
        }
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    /// Stores a record and returns its index.
    pub fn record(&mut self, rec: CobordismRecord) -> usize {
        self.cobordisms.push(rec);
        self.cobordisms.len() - 1
    }

    pub fn assume(&mut self, statement: impl Into<String>) {
        self.assumptions.push(statement.into());
    }

    /// True when nothing blocks a conclusive verdict.
    pub fn gate_passes(&self) -> bool {
        !self.steps.is_empty() && !self.steps.iter().any(Step::blocks)
    }

    /// Sets the verdict to `target` if the gate passes, else `Inconclusive`.
    pub fn conclude(mut self, target: Verdict) -> Self {
        self.verdict = if self.gate_passes() { target } else { Verdict::Inconclusive };
        self
    }

    /// Re-checks the emitted certificate: a conclusive verdict needs a
    /// passing gate, and assumed steps must be listed as assumptions.
    pub fn is_sound(&self) -> bool {
        let assumed = self.steps.iter().any(|s| s.assumed);
        if assumed && self.assumptions.is_empty() {
            return false;
        }
        self.verdict == Verdict::Inconclusive || self.gate_passes()
    }

    /// Plain-text rendering for terminals.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "claim:   {}", self.claim);
        let _ = writeln!(out, "family:  {}", self.family);
        let _ = writeln!(out, "verdict: {:?}", self.verdict);
        if !self.assumptions.is_empty() {
            let _ = writeln!(out, "ASSUMPTIONS (not derived):");
            for a in &self.assumptions {
                let _ = writeln!(out, "  ! {a}");
            }
        }
        for (i, s) in self.steps.iter().enumerate() {
            let mark = match (s.hypothesis_holds, s.assumed, s.required) {
                (_, true, _) => "assumed",
                (true, _, _) => "ok",
                (false, _, true) => "FAILED",
                (false, _, false) => "unused",
            };
            let _ = writeln!(out, "{:>3}. [{mark}] {}", i + 1, s.rule_id);
            let _ = writeln!(out, "       {}", s.citation);
            for (k, v) in s.inputs.iter().chain(&s.computed) {
                let _ = writeln!(out, "       {k} = {v}");
            }
            if let Some(r) = s.enumeration {
                let _ = writeln!(out, "       pi1 enumeration = {r:?}");
            }
        }
        for b in &self.rs_bounds {
            let _ = writeln!(out, "r_s({}) <= {}", b.manifold, b.upper);
        }
        out
    }
}
