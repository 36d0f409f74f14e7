//! Finitely presented groups: Wirtinger presentations of braid closures,
//! surgery and identification relators, abelianization and coset
//! enumeration.

mod coset;
mod presentation;
mod snf;
mod wirtinger;

pub use coset::{coset_enumerate, EnumerationResult, DEFAULT_MAX_COSETS};
pub use presentation::{add_identifications, surgery_presentation, GroupPresentation, Word};
pub use snf::{abelianization, relation_matrix, smith_diagonal};
pub use wirtinger::{connected_sum_braid, wirtinger_of_braid_closure, ArcCrossing, SumLabels, Wirtinger};

use crate::knotlib::KnotError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("generator {0} is declared twice")]
    DuplicateGenerator(String),
    #[error("`{0}` is not a valid generator name")]
    InvalidName(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Knot(#[from] KnotError),
}
