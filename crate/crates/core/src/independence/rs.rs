use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::IndependenceError;
use crate::tangle::Fraction;

/// Value of the homology cobordism invariant `r_s`: a positive rational or `∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RsValue {
    Finite(Fraction),
    Infinite,
}

impl RsValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, RsValue::Finite(_))
    }

    /// `num/den`, or `inf`.
    pub fn to_ratio_string(&self) -> String {
        match self {
            RsValue::Finite(f) => f.to_ratio_string(),
            RsValue::Infinite => "inf".into(),
        }
    }
}

impl Ord for RsValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (RsValue::Infinite, RsValue::Infinite) => Ordering::Equal,
            (RsValue::Infinite, _) => Ordering::Greater,
            (_, RsValue::Infinite) => Ordering::Less,
            (RsValue::Finite(a), RsValue::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for RsValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RsValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RsValue::Finite(v) => write!(f, "{v}"),
            RsValue::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for RsValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_ratio_string())
    }
}

impl<'de> Deserialize<'de> for RsValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "inf" {
            return Ok(RsValue::Infinite);
        }
        let f: Fraction = s.parse().map_err(serde::de::Error::custom)?;
        if f.is_infinite() || f.signum() <= 0 {
            return Err(serde::de::Error::custom(format!("r_s values are positive, got {s}")));
        }
        Ok(RsValue::Finite(f))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn from_sign(sign: i32) -> Option<Self> {
        match sign {
            1 => Some(Orientation::Positive),
            -1 => Some(Orientation::Negative),
            _ => None,
        }
    }
}

/// `r_s(∓Σ(p, q, pqk-1))`. The negatively oriented sphere, which is
/// `1/k` surgery on `T(p,q)`, has the finite value `1/(4pq(pqk-1))`; the
/// positively oriented one has `∞`.
pub fn rs_brieskorn(p: i64, q: i64, k: i64, orientation: Orientation) -> Result<RsValue, IndependenceError> {
    if p < 2 || q < 2 || k < 1 {
        return Err(IndependenceError::InvalidParameters(format!(
            "Σ(p,q,pqk-1) needs p,q >= 2 and k >= 1, got p={p} q={q} k={k}"
        )));
    }
    if num_integer::gcd(p, q) != 1 {
        return Err(IndependenceError::NotCoprime(p, q));
    }
    Ok(match orientation {
        Orientation::Positive => RsValue::Infinite,
        Orientation::Negative => {
            let pq = BigInt::from(p) * BigInt::from(q);
            let den = BigInt::from(4) * &pq * (&pq * BigInt::from(k) - 1);
            RsValue::Finite(Fraction::new(1, den))
        }
    })
}
