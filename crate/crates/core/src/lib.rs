//! Rational tangles, knot invariants, branched double covers as surgeries,
//! group presentations, and certificates for linear independence of
//! satellite knots in the smooth concordance group.

pub mod cover;
pub mod groupcalc;
pub mod independence;
pub mod knotlib;
pub mod tangle;
