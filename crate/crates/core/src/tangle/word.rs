use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ParseError;

/// Twist exponents `(a1, ..., an)` of a rational tangle word.
///
/// `a1` counts horizontal twists, `a2` vertical, alternating from there on.
/// Words produced by arithmetic (e.g. [`super::canonical_word_of`]) have
/// nonzero interior exponents; parsed words may be raw.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TangleWord {
    exponents: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl TangleWord {
    pub fn new(exponents: Vec<i64>) -> Self {
        TangleWord { exponents }
    }

    /// The word `[0, 0]`, whose fraction is `∞`.
    pub fn infinity() -> Self {
        TangleWord::new(vec![0, 0])
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn axis(index: usize) -> Axis {
        if index % 2 == 0 {
            Axis::Horizontal
        } else {
            Axis::Vertical
        }
    }

    /// True when no interior exponent is zero.
    pub fn is_canonical(&self) -> bool {
        let n = self.exponents.len();
        n < 3 || self.exponents[1..n - 1].iter().all(|&a| a != 0)
    }

    /// Number of crossings in the standard diagram of this word.
    pub fn crossing_count(&self) -> u64 {
        self.exponents.iter().map(|a| a.unsigned_abs()).sum()
    }
}

impl fmt::Display for TangleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for TangleWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_tangle_word(s)
    }
}

impl Serialize for TangleWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TangleWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses either the bracket form `[a1,...,an]` or a letter word such as
/// `v^2 h^-3`.
///
/// Letter words are written in application order from right to left, so
/// the rightmost letter carries `a1` and must be horizontal. A word whose
/// rightmost letter is vertical gets an implicit `h^0`. Whitespace is
/// ignored everywhere.
pub fn parse_tangle_word(text: &str) -> Result<TangleWord, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    match chars.first() {
        Some((_, '[')) => parse_bracket(&chars, text.len()),
        _ => parse_letters(&chars, text.len()),
    }
}

fn parse_bracket(chars: &[(usize, char)], end: usize) -> Result<TangleWord, ParseError> {
    let last = chars.last().copied();
    if last.map(|(_, c)| c) != Some(']') {
        return Err(ParseError::new(last.map_or(end, |(p, _)| p), "expected closing ']'"));
    }
    let body = &chars[1..chars.len() - 1];
    if body.is_empty() {
        return Ok(TangleWord::default());
    }
    let mut exponents = Vec::new();
    for field in body.split(|&(_, c)| c == ',') {
        let pos = field.first().map_or(chars[chars.len() - 1].0, |&(p, _)| p);
        exponents.push(parse_int(field, pos)?);
    }
    Ok(TangleWord::new(exponents))
}

fn parse_letters(chars: &[(usize, char)], end: usize) -> Result<TangleWord, ParseError> {
    let mut letters: Vec<(usize, Axis, i64)> = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let axis = match c {
            'h' | 'H' => Axis::Horizontal,
            'v' | 'V' => Axis::Vertical,
            _ => return Err(ParseError::new(pos, format!("unexpected character {c:?}"))),
        };
        if chars.get(i + 1).map(|&(_, c)| c) != Some('^') {
            let at = chars.get(i + 1).map_or(end, |&(p, _)| p);
            return Err(ParseError::new(at, "expected '^' after twist letter"));
        }
        let start = i + 2;
        let mut stop = start;
        while stop < chars.len()
            && (chars[stop].1.is_ascii_digit() || (stop == start && matches!(chars[stop].1, '-' | '+')))
        {
            stop += 1;
        }
        let at = chars.get(start).map_or(end, |&(p, _)| p);
        let exponent = parse_int(&chars[start..stop], at)?;
        letters.push((pos, axis, exponent));
        i = stop;
    }

    // rightmost letter is a1
    letters.reverse();
    let mut exponents = Vec::with_capacity(letters.len() + 1);
    if let Some(&(_, Axis::Vertical, _)) = letters.first() {
        exponents.push(0);
    }
    for (k, &(pos, axis, a)) in letters.iter().enumerate() {
        if k > 0 && letters[k - 1].1 == axis {
            return Err(ParseError::new(pos, "consecutive twists on the same axis must be merged"));
        }
        exponents.push(a);
    }
    Ok(TangleWord::new(exponents))
}

fn parse_int(field: &[(usize, char)], pos: usize) -> Result<i64, ParseError> {
    let s: String = field.iter().map(|&(_, c)| c).collect();
    if s.is_empty() {
        return Err(ParseError::new(pos, "missing exponent"));
    }
    s.parse::<i64>().map_err(|_| ParseError::new(pos, format!("malformed exponent {s:?}")))
}
