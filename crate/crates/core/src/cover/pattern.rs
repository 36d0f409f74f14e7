use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CoverError;
use crate::knotlib::KnotExpr;
use crate::tangle::{fraction_of, Fraction, TangleWord};

/// One exponent of a word template: `coeff·n + constant`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Affine {
    pub coeff: i64,
    pub constant: i64,
}

impl Affine {
    pub fn at(self, n: i64) -> i64 {
        self.coeff * n + self.constant
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coeff {
            0 => return write!(f, "{}", self.constant),
            1 => write!(f, "n")?,
            -1 => write!(f, "-n")?,
            c => write!(f, "{c}n")?,
        }
        match self.constant {
            0 => Ok(()),
            c if c > 0 => write!(f, "+{c}"),
            c => write!(f, "{c}"),
        }
    }
}

impl FromStr for Affine {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || format!("bad template entry `{s}`");
        let Some((head, tail)) = s.split_once('n') else {
            return Ok(Affine { coeff: 0, constant: s.parse().map_err(|_| bad())? });
        };
        let coeff = match head {
            "" | "+" => 1,
            "-" => -1,
            h => h.parse().map_err(|_| bad())?,
        };
        let constant = match tail {
            "" => 0,
            t if t.starts_with('+') || t.starts_with('-') => t.parse().map_err(|_| bad())?,
            _ => return Err(bad()),
        };
        Ok(Affine { coeff, constant })
    }
}

/// A tangle word whose exponents depend affinely on the family index, such
/// as `[3,n]` for `3 + 1/n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordTemplate(pub Vec<Affine>);

impl WordTemplate {
    pub fn word(&self, n: i64) -> TangleWord {
        TangleWord::new(self.0.iter().map(|a| a.at(n)).collect())
    }

    pub fn fraction(&self, n: i64) -> Fraction {
        fraction_of(&self.word(n))
    }
}

impl fmt::Display for WordTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for WordTemplate {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| format!("template `{s}` must be bracketed"))?;
        if inner.trim().is_empty() {
            return Ok(WordTemplate(Vec::new()));
        }
        inner.split(',').map(str::parse).collect::<Result<_, _>>().map(WordTemplate)
    }
}

impl Serialize for WordTemplate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for WordTemplate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Infection {
    Meridional,
    /// Declared for completeness; not computable here.
    General {
        note: String,
    },
}

/// Inclusive range of family indices; `max = None` is unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexRange {
    pub min: i64,
    #[serde(default)]
    pub max: Option<i64>,
}

impl IndexRange {
    pub fn contains(&self, n: i64) -> bool {
        n >= self.min && self.max.map_or(true, |m| n <= m)
    }
}

/// A pattern with rational unknotting number one, described by the output
/// of the Montesinos trick: the friend `J`, the framing `r/s` of the
/// original tangle, and the family of replaced tangles `p'/q'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternSpec {
    pub name: String,
    pub friend: KnotExpr,
    pub reference_framing: Fraction,
    pub replaced: WordTemplate,
    pub infection: Infection,
    pub indices: IndexRange,
}

impl PatternSpec {
    pub fn replaced_fraction(&self, n: i64) -> Fraction {
        self.replaced.fraction(n)
    }

    pub fn validate(&self) -> Result<(), CoverError> {
        if self.reference_framing.is_infinite() {
            return Err(CoverError::InvalidPattern(format!("{}: the reference framing must be finite", self.name)));
        }
        self.friend.validate()?;
        Ok(())
    }

    /// `P_n`: friend `U`, framing `0`, replaced tangle `1/n`.
    pub fn p_n() -> Self {
        PatternSpec {
            name: "Pn".into(),
            friend: KnotExpr::Unknot,
            reference_framing: Fraction::zero(),
            replaced: "[0,n]".parse().expect("static template"),
            infection: Infection::Meridional,
            indices: IndexRange { min: 1, max: None },
        }
    }

    /// `Q_n`: friend `T(2,3)`, framing `3`, replaced tangle `3 + 1/n`.
    pub fn q_n() -> Self {
        PatternSpec {
            name: "Qn".into(),
            friend: KnotExpr::Torus(2, 3),
            reference_framing: Fraction::integer(3),
            replaced: "[3,n]".parse().expect("static template"),
            infection: Infection::Meridional,
            indices: IndexRange { min: 1, max: None },
        }
    }

    pub fn builtin(name: &str) -> Result<Self, CoverError> {
        match name {
            "Pn" | "P" => Ok(Self::p_n()),
            "Qn" | "Q" => Ok(Self::q_n()),
            other => Err(CoverError::UnknownBuiltin(other.to_string())),
        }
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &["Pn", "Qn"]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_entries() {
        for (text, coeff, constant) in
            [("3", 0, 3), ("n", 1, 0), ("-n", -1, 0), ("2n+1", 2, 1), ("-3n-2", -3, -2), ("-4", 0, -4)]
        {
            let a: Affine = text.parse().unwrap();
            assert_eq!(a, Affine { coeff, constant });
            assert_eq!(a.to_string(), text);
        }
        assert!("n2".parse::<Affine>().is_err());
        assert!("x".parse::<Affine>().is_err());
    }

    #[test]
    fn templates() {
        let t: WordTemplate = "[3, n]".parse().unwrap();
        assert_eq!(t.fraction(4), Fraction::new(13, 4));
        assert_eq!(t.to_string(), "[3,n]");
        assert_eq!("[]".parse::<WordTemplate>().unwrap().fraction(2), Fraction::zero());
        assert!("3,n".parse::<WordTemplate>().is_err());
    }

    #[test]
    fn builtin_json() {
        let p = PatternSpec::q_n();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<PatternSpec>(&json).unwrap(), p);
        assert!(PatternSpec::builtin("Rn").is_err());
    }
}
