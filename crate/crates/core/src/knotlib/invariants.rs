use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::braid::{torus_braid, BraidWord};
use super::expr::KnotExpr;
use super::goeritz::goeritz_signature_det;
use super::pd::{alternating, PdCode};
use super::wiring::{braid_closure_wiring, TangleDiagram};
use super::KnotError;
use crate::tangle::{canonical_word_of, fraction_of, Fraction, TangleWord};

pub const DEFAULT_MAX_CROSSINGS: usize = 2000;

/// Closure of `b` as a PD code.
pub fn pd_of_braid_closure(b: &BraidWord) -> Result<PdCode, KnotError> {
    braid_closure_wiring(b).to_pd()
}

/// Numerator closure of the canonical diagram of `f`.
pub fn pd_of_rational_knot(f: &Fraction) -> Result<PdCode, KnotError> {
    if f.is_finite() && !f.numer().bit(0) {
        return Err(KnotError::TwoComponentLink(f.clone()));
    }
    TangleDiagram::of_word(&canonical_word_of(f)).numerator_closure().to_pd()
}

/// Tangle word of the twist knot `K_m`: `m` horizontal half twists with a
/// clasp of two vertical crossings, `[-m, -2]`.
pub fn twist_word(m: i64) -> TangleWord {
    TangleWord::new(vec![-m, -2])
}

pub fn twist_fraction(m: i64) -> Fraction {
    fraction_of(&twist_word(m))
}

/// Outcome of the rule-based slice-torus evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stilde {
    Known(i64),
    Unknown,
}

impl Stilde {
    pub fn value(self) -> Option<i64> {
        match self {
            Stilde::Known(v) => Some(v),
            Stilde::Unknown => None,
        }
    }
}

/// One rule application in an s̃ evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StildeStep {
    pub rule: String,
    pub knot: String,
    pub value: Stilde,
}

/// Evaluates invariants of knot expressions under a crossing budget for
/// generated diagrams.
#[derive(Debug, Clone, Copy)]
pub struct Evaluator {
    pub max_crossings: usize,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator { max_crossings: DEFAULT_MAX_CROSSINGS }
    }
}

impl Evaluator {
    pub fn new(max_crossings: usize) -> Self {
        Evaluator { max_crossings }
    }

    fn budget(&self, crossings: u64) -> Result<(), KnotError> {
        if crossings > self.max_crossings as u64 {
            return Err(KnotError::TooManyCrossings { crossings, limit: self.max_crossings });
        }
        Ok(())
    }

    /// Diagram of an atomic expression (or a mirror of one).
    pub fn diagram(&self, k: &KnotExpr) -> Result<PdCode, KnotError> {
        k.validate()?;
        match k {
            KnotExpr::Unknot => Ok(PdCode::unknot()),
            KnotExpr::Torus(p, q) => {
                let (a, b) = ((*p).min(*q), (*p).max(*q));
                if a == 1 {
                    return Ok(PdCode::unknot());
                }
                self.budget(((a - 1) * b) as u64)?;
                pd_of_braid_closure(&torus_braid(a, b)?)
            }
            KnotExpr::Twist(m) => self.diagram(&KnotExpr::RationalKnot(twist_fraction(*m))),
            KnotExpr::BraidClosure(b) => {
                self.budget(b.len() as u64)?;
                pd_of_braid_closure(b)
            }
            KnotExpr::RationalKnot(f) => {
                self.budget(canonical_word_of(f).crossing_count())?;
                pd_of_rational_knot(f)
            }
            KnotExpr::Mirror(inner) => Ok(self.diagram(inner)?.mirror()),
            KnotExpr::Sum(..) | KnotExpr::Multiple(..) => Err(KnotError::NoDiagram(k.to_string())),
        }
    }

    pub fn signature(&self, k: &KnotExpr) -> Result<i64, KnotError> {
        match k {
            KnotExpr::Unknot => Ok(0),
            KnotExpr::Sum(a, b) => Ok(self.signature(a)? + self.signature(b)?),
            KnotExpr::Mirror(inner) => Ok(-self.signature(inner)?),
            KnotExpr::Multiple(n, inner) => Ok(*n as i64 * self.signature(inner)?),
            atom => Ok(goeritz_signature_det(&self.diagram(atom)?).0),
        }
    }

    pub fn determinant(&self, k: &KnotExpr) -> Result<BigUint, KnotError> {
        match k {
            KnotExpr::Unknot => Ok(BigUint::one()),
            KnotExpr::Sum(a, b) => Ok(self.determinant(a)? * self.determinant(b)?),
            KnotExpr::Mirror(inner) => self.determinant(inner),
            KnotExpr::Multiple(n, inner) => Ok(self.determinant(inner)?.pow(*n)),
            atom => Ok(goeritz_signature_det(&self.diagram(atom)?).1),
        }
    }

    pub fn stilde(&self, k: &KnotExpr) -> Result<Stilde, KnotError> {
        Ok(self.stilde_traced(k)?.0)
    }

    /// s̃ together with the rule applied at every node, innermost first.
    pub fn stilde_traced(&self, k: &KnotExpr) -> Result<(Stilde, Vec<StildeStep>), KnotError> {
        let mut trace = Vec::new();
        let v = self.stilde_rec(k, &mut trace)?;
        Ok((v, trace))
    }

    fn stilde_rec(&self, k: &KnotExpr, trace: &mut Vec<StildeStep>) -> Result<Stilde, KnotError> {
        let (rule, value) = match k {
            KnotExpr::Unknot => ("stilde.unknot", Stilde::Known(0)),
            KnotExpr::Sum(a, b) => {
                let va = self.stilde_rec(a, trace)?;
                let vb = self.stilde_rec(b, trace)?;
                let v = match (va, vb) {
                    (Stilde::Known(x), Stilde::Known(y)) => Stilde::Known(x + y),
                    _ => Stilde::Unknown,
                };
                ("stilde.additive", v)
            }
            KnotExpr::Mirror(inner) => {
                let v = match self.stilde_rec(inner, trace)? {
                    Stilde::Known(x) => Stilde::Known(-x),
                    Stilde::Unknown => Stilde::Unknown,
                };
                ("stilde.mirror", v)
            }
            KnotExpr::Multiple(n, inner) => {
                let v = match self.stilde_rec(inner, trace)? {
                    Stilde::Known(x) => Stilde::Known(*n as i64 * x),
                    Stilde::Unknown => Stilde::Unknown,
                };
                ("stilde.multiple", v)
            }
            atom => {
                let pd = self.diagram(atom)?;
                if let Some(v) = stilde_alternating_rule(&pd) {
                    ("stilde.alternating", Stilde::Known(v))
                } else if let Some(v) = stilde_torus_rule(atom) {
                    ("stilde.torus", Stilde::Known(v))
                } else {
                    ("stilde.none", Stilde::Unknown)
                }
            }
        };
        trace.push(StildeStep { rule: rule.into(), knot: k.to_string(), value });
        Ok(value)
    }
}

/// `-σ/2` when the diagram is alternating.
pub fn stilde_alternating_rule(pd: &PdCode) -> Option<i64> {
    alternating(pd).then(|| -goeritz_signature_det(pd).0 / 2)
}

/// `(p-1)(q-1)/2` on positive torus knots.
pub fn stilde_torus_rule(k: &KnotExpr) -> Option<i64> {
    match k {
        KnotExpr::Torus(p, q) if *p >= 1 && *q >= 1 => Some((p - 1) * (q - 1) / 2),
        _ => None,
    }
}

pub fn signature(k: &KnotExpr) -> Result<i64, KnotError> {
    Evaluator::default().signature(k)
}

pub fn determinant(k: &KnotExpr) -> Result<BigUint, KnotError> {
    Evaluator::default().determinant(k)
}

pub fn stilde(k: &KnotExpr) -> Result<Stilde, KnotError> {
    Evaluator::default().stilde(k)
}

/// A closed braid representing `k`, when one is known without search:
/// torus knots, braid closures, and sums and mirrors of these. Summands are
/// placed side by side and joined by one positive crossing.
pub fn closed_braid(k: &KnotExpr) -> Option<BraidWord> {
    if k.is_trivially_unknot() {
        return Some(BraidWord::trivial(1));
    }
    match k {
        KnotExpr::Torus(p, q) => torus_braid(*p, *q).ok(),
        KnotExpr::BraidClosure(b) => Some(b.clone()),
        KnotExpr::Mirror(inner) => closed_braid(inner).map(|b| b.mirror()),
        KnotExpr::Sum(a, b) => Some(braid_sum(&closed_braid(a)?, &closed_braid(b)?)),
        KnotExpr::Multiple(n, inner) => {
            let b = closed_braid(inner)?;
            Some((1..*n).fold(b.clone(), |acc, _| braid_sum(&acc, &b)))
        }
        _ => None,
    }
}

fn braid_sum(a: &BraidWord, b: &BraidWord) -> BraidWord {
    let strands = a.strands() + b.strands();
    let mut letters = a.widen(strands, 0).letters().to_vec();
    letters.extend_from_slice(b.widen(strands, a.strands()).letters());
    letters.push(a.strands() as i32);
    BraidWord::new(strands, letters).expect("generators in range")
}
