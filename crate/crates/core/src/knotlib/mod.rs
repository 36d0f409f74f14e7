//! Knots: expressions, braid and rational diagrams, PD codes, and the
//! classical invariants used by the certificate engine.

mod braid;
mod expr;
mod goeritz;
mod invariants;
mod matrix;
mod pd;
mod wiring;

pub use braid::{half_twist_braid, torus_braid, BraidWord};
pub use expr::{KnotExpr, Summand};
pub use goeritz::{goeritz, goeritz_signature_det, GoeritzData, Shading};
pub use invariants::{
    closed_braid, determinant, pd_of_braid_closure, pd_of_rational_knot, signature, stilde, stilde_alternating_rule,
    stilde_torus_rule, twist_fraction, twist_word, Evaluator, Stilde, StildeStep, DEFAULT_MAX_CROSSINGS,
};
pub use matrix::IntMatrix;
pub use pd::{alternating, PdCode};

use crate::tangle::Fraction;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KnotError {
    #[error("invalid braid: {0}")]
    InvalidBraid(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parameters {0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("the closure is a link with {components} components, not a knot")]
    MultiComponent { components: usize },
    #[error("the rational tangle {0} closes to a two-component link")]
    TwoComponentLink(Fraction),
    #[error("invalid PD code: {0}")]
    InvalidPd(String),
    #[error("diagram would need {crossings} crossings, above the limit of {limit}")]
    TooManyCrossings { crossings: u64, limit: usize },
    #[error("no single diagram is generated for the composite knot {0}")]
    NoDiagram(String),
}
