use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::braid::BraidWord;
use super::KnotError;
use crate::tangle::Fraction;

/// Expression tree naming a knot.
///
/// JSON uses serde's external tagging: `"Unknot"`, `{"Torus":[2,3]}`,
/// `{"Twist":-1}`, `{"BraidClosure":{"strands":2,"word":[1,1,1]}}`,
/// `{"RationalKnot":"5/2"}`, `{"Mirror":…}`, `{"Sum":[…,…]}`,
/// `{"Multiple":[2,…]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KnotExpr {
    Unknot,
    /// Positive torus knot; both parameters positive and coprime.
    Torus(i64, i64),
    /// Twist knot `K_m`.
    Twist(i64),
    BraidClosure(BraidWord),
    RationalKnot(Fraction),
    Mirror(Box<KnotExpr>),
    Sum(Box<KnotExpr>, Box<KnotExpr>),
    Multiple(u32, Box<KnotExpr>),
}

/// One prime-or-atomic piece of a connected sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Summand {
    pub atom: KnotExpr,
    pub mirrored: bool,
}

impl Summand {
    pub fn to_expr(&self) -> KnotExpr {
        if self.mirrored {
            KnotExpr::mirror(self.atom.clone())
        } else {
            self.atom.clone()
        }
    }
}

impl KnotExpr {
    pub fn torus(p: i64, q: i64) -> KnotExpr {
        KnotExpr::Torus(p, q)
    }

    /// Connected sum that drops unknotted summands.
    pub fn sum(a: KnotExpr, b: KnotExpr) -> KnotExpr {
        match (a.is_trivially_unknot(), b.is_trivially_unknot()) {
            (true, true) => KnotExpr::Unknot,
            (true, false) => b,
            (false, true) => a,
            (false, false) => KnotExpr::Sum(Box::new(a), Box::new(b)),
        }
    }

    /// Mirror image, cancelling double mirrors.
    pub fn mirror(k: KnotExpr) -> KnotExpr {
        match k {
            KnotExpr::Mirror(inner) => *inner,
            KnotExpr::Unknot => KnotExpr::Unknot,
            other => KnotExpr::Mirror(Box::new(other)),
        }
    }

    pub fn multiple(count: u32, k: KnotExpr) -> KnotExpr {
        if count == 0 || k.is_trivially_unknot() {
            KnotExpr::Unknot
        } else if count == 1 {
            k
        } else {
            KnotExpr::Multiple(count, Box::new(k))
        }
    }

    /// Checks parameter constraints that serde cannot express.
    pub fn validate(&self) -> Result<(), KnotError> {
        match self {
            KnotExpr::Unknot | KnotExpr::Twist(_) => Ok(()),
            KnotExpr::Torus(p, q) => {
                if *p < 1 || *q < 1 {
                    return Err(KnotError::InvalidParameters(format!(
                        "Torus({p},{q}): parameters must be positive; write mirrors as Mirror(Torus(..))"
                    )));
                }
                if num_integer::gcd(*p, *q) != 1 {
                    return Err(KnotError::NotCoprime(*p, *q));
                }
                Ok(())
            }
            KnotExpr::BraidClosure(b) => {
                let components = b.closure_components();
                if components != 1 {
                    return Err(KnotError::MultiComponent { components });
                }
                Ok(())
            }
            KnotExpr::RationalKnot(f) => {
                if f.is_finite() && !f.numer().bit(0) {
                    return Err(KnotError::TwoComponentLink(f.clone()));
                }
                Ok(())
            }
            KnotExpr::Mirror(k) | KnotExpr::Multiple(_, k) => k.validate(),
            KnotExpr::Sum(a, b) => {
                a.validate()?;
                b.validate()
            }
        }
    }

    /// Recognizes unknots that need no computation.
    pub fn is_trivially_unknot(&self) -> bool {
        match self {
            KnotExpr::Unknot | KnotExpr::Twist(0) => true,
            KnotExpr::Twist(_) => false,
            KnotExpr::Torus(p, q) => (*p).min(*q) == 1,
            KnotExpr::BraidClosure(b) => b.strands() == 1,
            KnotExpr::Mirror(k) => k.is_trivially_unknot(),
            KnotExpr::Multiple(n, k) => *n == 0 || k.is_trivially_unknot(),
            KnotExpr::Sum(a, b) => a.is_trivially_unknot() && b.is_trivially_unknot(),
            KnotExpr::RationalKnot(f) => f.is_infinite() || f.numer().magnitude().is_one(),
        }
    }

    /// Flattens sums, multiples and mirrors into atomic summands, leaving
    /// out trivially unknotted ones. Order follows a left-to-right reading.
    pub fn summands(&self) -> Vec<Summand> {
        let mut out = Vec::new();
        self.collect_summands(false, &mut out);
        out
    }

    fn collect_summands(&self, mirrored: bool, out: &mut Vec<Summand>) {
        if self.is_trivially_unknot() {
            return;
        }
        match self {
            KnotExpr::Mirror(k) => k.collect_summands(!mirrored, out),
            KnotExpr::Sum(a, b) => {
                a.collect_summands(mirrored, out);
                b.collect_summands(mirrored, out);
            }
            KnotExpr::Multiple(n, k) => {
                for _ in 0..*n {
                    k.collect_summands(mirrored, out);
                }
            }
            atom => out.push(Summand { atom: atom.clone(), mirrored }),
        }
    }

    /// Rebuilds the expression from its summands as a left-nested sum.
    pub fn normalize(&self) -> KnotExpr {
        self.summands().iter().fold(KnotExpr::Unknot, |acc, s| KnotExpr::sum(acc, s.to_expr()))
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => write!(f, "U"),
            KnotExpr::Torus(p, q) => write!(f, "T({p},{q})"),
            KnotExpr::Twist(m) => write!(f, "K_{m}"),
            KnotExpr::BraidClosure(b) => {
                write!(f, "closure[{}](", b.strands())?;
                for (i, l) in b.letters().iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{l}")?;
                }
                write!(f, ")")
            }
            KnotExpr::RationalKnot(r) => write!(f, "N({r})"),
            KnotExpr::Mirror(k) => write!(f, "-({k})"),
            KnotExpr::Sum(a, b) => write!(f, "{a} # {b}"),
            KnotExpr::Multiple(n, k) => write!(f, "{n}({k})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shapes() {
        let k: KnotExpr = serde_json::from_str(r#"{"Torus":[2,3]}"#).unwrap();
        assert_eq!(k, KnotExpr::Torus(2, 3));
        let k: KnotExpr = serde_json::from_str(r#""Unknot""#).unwrap();
        assert_eq!(k, KnotExpr::Unknot);
        let k: KnotExpr = serde_json::from_str(r#"{"Sum":[{"Twist":2},{"Mirror":{"RationalKnot":"5/2"}}]}"#).unwrap();
        assert_eq!(
            k,
            KnotExpr::Sum(
                Box::new(KnotExpr::Twist(2)),
                Box::new(KnotExpr::Mirror(Box::new(KnotExpr::RationalKnot("5/2".parse().unwrap()))))
            )
        );
        let k: KnotExpr = serde_json::from_str(r#"{"Multiple":[2,{"Torus":[2,3]}]}"#).unwrap();
        assert_eq!(serde_json::to_string(&k).unwrap(), r#"{"Multiple":[2,{"Torus":[2,3]}]}"#);
    }

    #[test]
    fn validation() {
        assert!(KnotExpr::Torus(2, 4).validate().is_err());
        assert!(KnotExpr::Torus(-2, 3).validate().is_err());
        assert!(KnotExpr::Torus(2, 1).validate().is_ok());
        assert!(KnotExpr::RationalKnot("4/3".parse().unwrap()).validate().is_err());
        let link = KnotExpr::BraidClosure(BraidWord::new(2, vec![1, 1]).unwrap());
        assert!(KnotExpr::mirror(link).validate().is_err());
    }

    #[test]
    fn smart_constructors() {
        let t = KnotExpr::Torus(2, 3);
        assert_eq!(KnotExpr::sum(KnotExpr::Unknot, t.clone()), t);
        assert_eq!(KnotExpr::mirror(KnotExpr::mirror(t.clone())), t);
        assert_eq!(KnotExpr::multiple(0, t.clone()), KnotExpr::Unknot);
        assert_eq!(KnotExpr::sum(KnotExpr::Unknot, KnotExpr::Torus(2, 1)), KnotExpr::Unknot);
    }

    #[test]
    fn summand_flattening() {
        let t = KnotExpr::Torus(2, 3);
        let k = KnotExpr::Mirror(Box::new(KnotExpr::Sum(
            Box::new(KnotExpr::Multiple(2, Box::new(t.clone()))),
            Box::new(KnotExpr::Mirror(Box::new(KnotExpr::Twist(1)))),
        )));
        let s = k.summands();
        assert_eq!(s.len(), 3);
        assert!(s[0].mirrored && s[1].mirrored && !s[2].mirrored);
        assert_eq!(s[2].atom, KnotExpr::Twist(1));
        assert_eq!(k.normalize().to_string(), "-(T(2,3)) # -(T(2,3)) # K_1");
    }
}
