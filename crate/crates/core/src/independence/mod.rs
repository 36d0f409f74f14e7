//! Certificates for independence and non-sliceness claims.
//!
//! `r_s` is never computed. It enters only through exact Brieskorn values,
//! the cobordism inequality and the surgery chain, each recorded as a rule
//! application whose premises are computed or checked here.

mod certificate;
mod checks;
mod cobordism;
mod rs;

pub use certificate::{rules, Certificate, RsBound, Rule, Step, Verdict};
pub use checks::{check_maintorus, check_not_slice, check_rank_expand, CertOptions};
pub use cobordism::{
    build_expand_cobordism, build_rank_expand_cobordism, descending_changes, identity_cobordism, sum_surgery,
    CobordismRecord, Handle, Pi1Check,
};
pub use rs::{rs_brieskorn, Orientation, RsValue};

use crate::cover::CoverError;
use crate::groupcalc::GroupError;
use crate::knotlib::KnotError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IndependenceError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
