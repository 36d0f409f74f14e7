//! Branched double covers of satellites by the Montesinos trick.
//!
//! For a pattern that unknots after replacing one rational tangle `r/s` by
//! `p'/q'`, the branched double cover of the satellite with companion `K`
//! is `p/q` surgery on the infected friend, where `p/q = p'/q' - r/s`. With
//! meridional infection the infected knot is `K # J # K`.

mod pattern;

pub use pattern::{Affine, IndexRange, Infection, PatternSpec, WordTemplate};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::groupcalc::{surgery_presentation, wirtinger_of_braid_closure, GroupError, GroupPresentation};
use crate::knotlib::{closed_braid, KnotError, KnotExpr};
use crate::tangle::Fraction;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("surgery coefficients need finite fractions, got {0}")]
    Infinite(Fraction),
    #[error("index {n} gives surgery coefficient 0")]
    ZeroCoefficient { n: i64 },
    #[error("index {n} is outside the range of pattern {pattern}")]
    IndexOutOfRange { pattern: String, n: i64 },
    #[error("unsupported infection: {0}")]
    Unsupported(String),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("no builtin pattern named {0}")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `p/q` surgery on a knot in `S³`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryDesc {
    pub knot: KnotExpr,
    pub coefficient: Fraction,
}

impl SurgeryDesc {
    /// `±1/n` surgeries are integer homology spheres.
    pub fn is_homology_sphere(&self) -> bool {
        self.coefficient.is_finite() && self.coefficient.numer().magnitude().is_one()
    }

    /// Surgery on an evident unknot with coefficient `±1/n` is `S³`.
    pub fn is_s3(&self) -> bool {
        self.is_homology_sphere() && self.knot.is_trivially_unknot()
    }

    /// The `n` with coefficient `1/n`, if it has that form.
    pub fn inverse_integer(&self) -> Option<i64> {
        if !self.is_homology_sphere() {
            return None;
        }
        (self.coefficient.denom() * self.coefficient.numer()).to_i64()
    }

    /// Presentation of the fundamental group of a `1/n` surgery, through a
    /// closed braid of the knot. `None` when the coefficient is not `1/n` or
    /// no braid is known for the knot.
    pub fn group(&self) -> Result<Option<GroupPresentation>, CoverError> {
        let Some(n) = self.inverse_integer() else { return Ok(None) };
        let Some(b) = closed_braid(&self.knot) else { return Ok(None) };
        let w = wirtinger_of_braid_closure(&b)?;
        let longitude = if n < 0 { w.longitude.inverse() } else { w.longitude.clone() };
        let exp = u32::try_from(n.unsigned_abs())
            .map_err(|_| CoverError::InvalidPattern(format!("surgery index {n} is too large")))?;
        Ok(Some(surgery_presentation(&w.presentation, &longitude, w.meridian_name(), exp)?))
    }
}

/// `p'/q' - r/s`.
pub fn surgery_coefficient(replaced: &Fraction, reference: &Fraction) -> Result<Fraction, CoverError> {
    for f in [replaced, reference] {
        if f.is_infinite() {
            return Err(CoverError::Infinite(f.clone()));
        }
    }
    Ok(replaced.checked_sub(reference).expect("finite operands"))
}

/// The knot `J_{μ,K}` obtained by infecting the friend along a meridian.
pub fn infect(friend: &KnotExpr, companion: &KnotExpr, mode: &Infection) -> Result<KnotExpr, CoverError> {
    match mode {
        Infection::Meridional => Ok(KnotExpr::sum(companion.clone(), KnotExpr::sum(friend.clone(), companion.clone()))),
        Infection::General { note } => {
            Err(CoverError::Unsupported(format!("non-meridional infection ({note}) has no implemented normal form")))
        }
    }
}

pub fn branched_cover(pattern: &PatternSpec, companion: &KnotExpr, n: i64) -> Result<SurgeryDesc, CoverError> {
    pattern.validate()?;
    companion.validate()?;
    if !pattern.indices.contains(n) {
        return Err(CoverError::IndexOutOfRange { pattern: pattern.name.clone(), n });
    }
    let knot = infect(&pattern.friend, companion, &pattern.infection)?;
    let coefficient = surgery_coefficient(&pattern.replaced_fraction(n), &pattern.reference_framing)?;
    if coefficient.is_zero() {
        return Err(CoverError::ZeroCoefficient { n });
    }
    log::debug!("cover of {}({companion}) at n={n}: S3_{coefficient}({knot})", pattern.name);
    Ok(SurgeryDesc { knot, coefficient })
}

/// `1/n`; `1/0` is `∞`.
pub fn one_over(n: i64) -> Fraction {
    Fraction::new(BigInt::one(), BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients() {
        let n = 7;
        let q = surgery_coefficient(&Fraction::new(3 * n + 1, n), &Fraction::integer(3)).unwrap();
        assert_eq!(q, Fraction::new(1, n));
        assert_eq!(surgery_coefficient(&Fraction::new(1, 5), &Fraction::zero()).unwrap(), Fraction::new(1, 5));
        assert!(surgery_coefficient(&Fraction::integer(2), &Fraction::integer(2)).unwrap().is_zero());
        assert!(surgery_coefficient(&Fraction::infinity(), &Fraction::zero()).is_err());
    }

    #[test]
    fn infections() {
        let t = KnotExpr::Torus(2, 3);
        let m = Infection::Meridional;
        assert_eq!(infect(&KnotExpr::Unknot, &t, &m).unwrap(), KnotExpr::Sum(Box::new(t.clone()), Box::new(t.clone())));
        assert_eq!(infect(&KnotExpr::Unknot, &KnotExpr::Unknot, &m).unwrap(), KnotExpr::Unknot);
        let general = Infection::General { note: "twisted".into() };
        assert!(matches!(infect(&t, &t, &general), Err(CoverError::Unsupported(_))));
    }

    #[test]
    fn trivial_cover_flag() {
        let d = branched_cover(&PatternSpec::p_n(), &KnotExpr::Unknot, 3).unwrap();
        assert!(d.is_s3());
        assert_eq!(d.coefficient, Fraction::new(1, 3));
        let d = branched_cover(&PatternSpec::p_n(), &KnotExpr::Torus(2, 3), 3).unwrap();
        assert!(!d.is_s3());
        assert!(branched_cover(&PatternSpec::p_n(), &KnotExpr::Unknot, 0).is_err());
    }
}
