//! Rational tangle calculus.
//!
//! A rational tangle is named by a word of twist exponents `(a1, ..., an)`
//! and classified by the continued fraction
//! `[a1, ..., an] = a1 + 1/(a2 + 1/(... + 1/an))` in `Q ∪ {∞}`.

mod fraction;
mod word;

pub use fraction::{Fraction, FractionParseError};
pub use word::{parse_tangle_word, Axis, TangleWord};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// A syntax error at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at offset {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError { position, message: message.into() }
    }
}

/// Evaluates the continued fraction of `word` exactly.
///
/// Division by zero is projective, so the empty word is `0` and `[0, 0]` is `∞`.
pub fn fraction_of(word: &TangleWord) -> Fraction {
    let mut exps = word.exponents().iter().rev();
    let Some(&last) = exps.next() else {
        return Fraction::zero();
    };
    exps.fold(Fraction::integer(last), |tail, &a| {
        Fraction::integer(a).checked_add(&tail.recip()).expect("integer plus a projective value is always defined")
    })
}

/// Continued-fraction expansion of `f` by repeated Euclidean division.
///
/// Every exponent has the sign of `f` (zero counts as positive), so all
/// interior exponents are nonzero; `a1` is zero exactly when `|f| < 1`.
/// `∞` maps to [`TangleWord::infinity`].
pub fn canonical_word_of(f: &Fraction) -> TangleWord {
    if f.is_infinite() {
        return TangleWord::infinity();
    }
    if f.is_zero() {
        return TangleWord::default();
    }
    let negative = f.numer().is_negative();
    let mut num: BigInt = f.numer().abs();
    let mut den: BigInt = f.denom().clone();
    let mut exponents = Vec::new();
    while !den.is_zero() {
        let q = &num / &den;
        let r = &num % &den;
        let a = q.to_i64().expect("continued fraction exponent exceeds i64");
        exponents.push(if negative { -a } else { a });
        num = den;
        den = r;
    }
    TangleWord::new(exponents)
}

/// Two rational tangles are isotopic iff their fractions agree.
pub fn tangle_equal(w1: &TangleWord, w2: &TangleWord) -> bool {
    fraction_of(w1) == fraction_of(w2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> TangleWord {
        s.parse().unwrap()
    }

    fn f(s: &str) -> Fraction {
        s.parse().unwrap()
    }

    #[test]
    fn figure_two_values() {
        assert_eq!(fraction_of(&w("[-1,3,-2]")), f("-3/5"));
        assert_eq!(fraction_of(&w("[3]")), f("3"));
    }

    #[test]
    fn base_cases() {
        assert_eq!(fraction_of(&w("[]")), Fraction::zero());
        assert_eq!(fraction_of(&TangleWord::infinity()), Fraction::infinity());
        assert_eq!(canonical_word_of(&Fraction::zero()), w("[]"));
        assert_eq!(canonical_word_of(&Fraction::infinity()), TangleWord::infinity());
    }

    #[test]
    fn projective_intermediate_steps() {
        // 1 + 1/(0 + 1/2) = 3
        assert_eq!(fraction_of(&w("[1,0,2]")), f("3"));
        assert_eq!(fraction_of(&w("[5,0]")), Fraction::infinity());
        assert_eq!(fraction_of(&w("[2,0,0]")), f("2"));
    }

    #[test]
    fn canonical_expansions() {
        assert_eq!(canonical_word_of(&f("-3/5")), w("[0,-1,-1,-2]"));
        assert_eq!(canonical_word_of(&f("7/3")), w("[2,3]"));
        assert_eq!(canonical_word_of(&f("1/4")), w("[0,4]"));
        for s in ["-3/5", "7/3", "1/4", "-12/7", "100"] {
            let word = canonical_word_of(&f(s));
            assert!(word.is_canonical());
            assert_eq!(fraction_of(&word), f(s));
        }
    }

    #[test]
    fn equality_by_fraction() {
        assert!(tangle_equal(&w("[-1,3,-2]"), &canonical_word_of(&f("-3/5"))));
        assert!(tangle_equal(&w("[3]"), &w("[3]")));
        assert!(!tangle_equal(&w("[3]"), &w("[]")));
    }

    #[test]
    fn large_values_stay_exact() {
        let word = TangleWord::new(vec![i64::MAX; 6]);
        let value = fraction_of(&word);
        assert!(value.numer() > &BigInt::from(i64::MAX));
        assert_eq!(canonical_word_of(&value), word);
    }
}
