//! Exact rationals extended by a single point at infinity.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element of `Q ∪ {∞}`.
///
/// Always stored in lowest terms with a non-negative denominator. The single
/// point at infinity is `1/0`; there is no signed infinity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: BigInt,
    den: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FractionParseError {
    #[error("empty fraction")]
    Empty,
    #[error("invalid integer {0:?} in fraction")]
    BadInteger(String),
    #[error("0/0 is not a fraction")]
    Indeterminate,
}

impl Fraction {
    /// Builds `num/den`, reducing to lowest terms. `x/0` with `x != 0` is `∞`.
    ///
    /// Panics on `0/0`.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self::try_new(num.into(), den.into()).expect("0/0 is not a fraction")
    }

    pub fn try_new(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            return if num.is_zero() { None } else { Some(Self::infinity()) };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / &g, den / &g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Some(Fraction { num, den })
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Fraction { num: n.into(), den: BigInt::one() }
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn infinity() -> Self {
        Fraction { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// Sign of a finite value; `∞` has no sign and reports 0.
    pub fn signum(&self) -> i32 {
        if self.is_infinite() {
            0
        } else if self.num.is_positive() {
            1
        } else if self.num.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Projective reciprocal: `1/0 = ∞` and `1/∞ = 0`.
    pub fn recip(&self) -> Self {
        if self.is_infinite() {
            Self::zero()
        } else if self.is_zero() {
            Self::infinity()
        } else {
            Self::new(self.den.clone(), self.num.clone())
        }
    }

    /// Sum with `x + ∞ = ∞` for finite `x`; `∞ + ∞` is undefined.
    pub fn checked_add(&self, other: &Fraction) -> Option<Fraction> {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => None,
            (true, false) | (false, true) => Some(Self::infinity()),
            (false, false) => Some(Self::new(&self.num * &other.den + &other.num * &self.den, &self.den * &other.den)),
        }
    }

    pub fn checked_sub(&self, other: &Fraction) -> Option<Fraction> {
        self.checked_add(&-other)
    }

    /// Product; `0 · ∞` is undefined.
    pub fn checked_mul(&self, other: &Fraction) -> Option<Fraction> {
        match (self.is_infinite(), other.is_infinite()) {
            (false, false) => Some(Self::new(&self.num * &other.num, &self.den * &other.den)),
            (true, true) => Some(Self::infinity()),
            (true, false) if !other.is_zero() => Some(Self::infinity()),
            (false, true) if !self.is_zero() => Some(Self::infinity()),
            _ => None,
        }
    }

    /// Largest integer not exceeding a finite value.
    pub fn floor(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.num.div_floor(&self.den))
    }

    /// Serialization used in every JSON artifact: always `num/den`, `∞` as `1/0`.
    pub fn to_ratio_string(&self) -> String {
        format!("{}/{}", self.num, self.den)
    }
}

impl std::ops::Neg for Fraction {
    type Output = Fraction;
    fn neg(self) -> Fraction {
        -&self
    }
}

impl std::ops::Neg for &Fraction {
    type Output = Fraction;
    fn neg(self) -> Fraction {
        if self.is_infinite() {
            Fraction::infinity()
        } else {
            Fraction { num: -&self.num, den: self.den.clone() }
        }
    }
}

impl From<i64> for Fraction {
    fn from(n: i64) -> Self {
        Fraction::integer(n)
    }
}

/// Finite values are ordered as rationals; `∞` sorts above every finite value.
impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.num * &other.den).cmp(&(&other.num * &self.den)),
        }
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else if self.is_integer() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fraction({})", self)
    }
}

impl FromStr for Fraction {
    type Err = FractionParseError;

    /// Accepts `p`, `p/q`, `inf`, `∞`, and `1/0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(FractionParseError::Empty);
        }
        if s == "inf" || s == "∞" {
            return Ok(Fraction::infinity());
        }
        let parse =
            |t: &str| t.trim().parse::<BigInt>().map_err(|_| FractionParseError::BadInteger(t.trim().to_string()));
        match s.split_once('/') {
            None => Ok(Fraction::integer(parse(s)?)),
            Some((n, d)) => Fraction::try_new(parse(n)?, parse(d)?).ok_or(FractionParseError::Indeterminate),
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_ratio_string())
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Fraction {
        s.parse().unwrap()
    }

    #[test]
    fn normalizes() {
        assert_eq!(Fraction::new(6, -4), f("-3/2"));
        assert_eq!(Fraction::new(-5, 0), Fraction::infinity());
        assert_eq!(Fraction::infinity().numer(), &BigInt::one());
        assert_eq!(Fraction::new(0, -7).to_ratio_string(), "0/1");
    }

    #[test]
    fn projective_arithmetic() {
        assert_eq!(Fraction::zero().recip(), Fraction::infinity());
        assert_eq!(Fraction::infinity().recip(), Fraction::zero());
        assert_eq!(f("2").checked_add(&Fraction::infinity()), Some(Fraction::infinity()));
        assert_eq!(Fraction::infinity().checked_add(&Fraction::infinity()), None);
        assert_eq!(Fraction::zero().checked_mul(&Fraction::infinity()), None);
        assert_eq!(f("7/2").checked_sub(&f("3")), Some(f("1/2")));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(f("inf"), Fraction::infinity());
        assert_eq!(f("1/0"), Fraction::infinity());
        assert_eq!(f(" -3 / 5 ").to_string(), "-3/5");
        assert_eq!(f("4/2").to_string(), "2");
        assert!("0/0".parse::<Fraction>().is_err());
        assert!("x".parse::<Fraction>().is_err());
    }

    #[test]
    fn ordering_places_infinity_last() {
        let mut v = vec![Fraction::infinity(), f("1/120"), f("-3"), f("1/264")];
        v.sort();
        assert_eq!(v, vec![f("-3"), f("1/264"), f("1/120"), Fraction::infinity()]);
    }

    #[test]
    fn serde_uses_ratio_strings() {
        let json = serde_json::to_string(&f("3")).unwrap();
        assert_eq!(json, "\"3/1\"");
        let back: Fraction = serde_json::from_str("\"-3/5\"").unwrap();
        assert_eq!(back, f("-3/5"));
    }
}
