use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// A group word as signed 1-based generator ids: `3` is the third
/// generator, `-3` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn new(letters: Vec<i32>) -> Self {
        debug_assert!(!letters.contains(&0));
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// The generator with 0-based index `g`.
    pub fn generator(g: usize) -> Self {
        Word(vec![g as i32 + 1])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: i32) {
        debug_assert!(letter != 0);
        self.0.push(letter);
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn then(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Word(out)
    }

    /// `self^k`; negative powers invert.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        Word(base.0.iter().copied().cycle().take(base.len() * k.unsigned_abs() as usize).collect())
    }

    /// Cancels adjacent inverse pairs.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Free and cyclic reduction, for relators.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce().0;
        let mut lo = 0;
        let mut hi = w.len();
        while hi - lo >= 2 && w[lo] == -w[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        Word(w[lo..hi].to_vec())
    }

    /// Exponent sum of the generator with 0-based index `g`.
    pub fn exponent_sum(&self, g: usize) -> i64 {
        let id = g as i32 + 1;
        self.0
            .iter()
            .map(|&l| {
                if l == id {
                    1
                } else if l == -id {
                    -1
                } else {
                    0
                }
            })
            .sum()
    }

    fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }
}

/// A finite presentation `<generators | relators>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation")]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl TryFrom<RawPresentation> for GroupPresentation {
    type Error = GroupError;
    fn try_from(raw: RawPresentation) -> Result<Self, GroupError> {
        GroupPresentation::new(raw.generators, raw.relators)
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, GroupError> {
        for (i, name) in generators.iter().enumerate() {
            if !valid_name(name) {
                return Err(GroupError::InvalidName(name.clone()));
            }
            if generators[..i].contains(name) {
                return Err(GroupError::DuplicateGenerator(name.clone()));
            }
        }
        if let Some(w) = relators.iter().find(|w| w.max_generator() > generators.len()) {
            return Err(GroupError::UnknownGenerator(format!(
                "relator uses generator #{} of {}",
                w.max_generator(),
                generators.len()
            )));
        }
        Ok(GroupPresentation { generators, relators })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Result<usize, GroupError> {
        self.generators.iter().position(|g| g == name).ok_or_else(|| GroupError::UnknownGenerator(name.to_string()))
    }

    pub fn with_relator(&self, w: Word) -> Result<GroupPresentation, GroupError> {
        let mut relators = self.relators.clone();
        relators.push(w);
        GroupPresentation::new(self.generators.clone(), relators)
    }

    /// Text form of a single word; `1` for the empty word.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let g = letters[i].unsigned_abs();
            let mut exp = 0i64;
            while i < letters.len() && letters[i].unsigned_abs() == g {
                exp += letters[i].signum() as i64;
                i += 1;
            }
            let name = &self.generators[g as usize - 1];
            match exp {
                0 => {}
                1 => parts.push(name.clone()),
                -1 => parts.push(format!("{name}-")),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// Parses a word in this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word, GroupError> {
        parse_word_line(&self.generators, text, 0)
    }

    /// Parses the plain-text format: the first non-blank line lists the
    /// generators, each later line is one relator. Tokens are `x`, `x-`,
    /// `x^k` and `x^-k`; `1` is the empty word; `#` starts a comment.
    pub fn parse(text: &str) -> Result<GroupPresentation, GroupError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let Some((_, head)) = lines.next() else {
            return Err(GroupError::Syntax { line: 1, message: "missing generator line".into() });
        };
        let generators: Vec<String> =
            head.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(String::from).collect();
        let relators = lines.map(|(n, l)| parse_word_line(&generators, l, n)).collect::<Result<Vec<_>, _>>()?;
        GroupPresentation::new(generators, relators)
    }
}

fn parse_word_line(generators: &[String], line: &str, line_no: usize) -> Result<Word, GroupError> {
    let err = |message: String| GroupError::Syntax { line: line_no, message };
    let mut w = Word::empty();
    for token in line.split_whitespace() {
        if token == "1" {
            continue;
        }
        let (name, exp) = if let Some((name, e)) = token.split_once('^') {
            let e: i64 = e.parse().map_err(|_| err(format!("bad exponent in `{token}`")))?;
            (name, e)
        } else if let Some(name) = token.strip_suffix('-') {
            (name, -1)
        } else {
            (token, 1)
        };
        let g = generators.iter().position(|x| x == name).ok_or_else(|| err(format!("unknown generator `{name}`")))?;
        w = w.then(&Word::generator(g).pow(exp));
    }
    Ok(w)
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.generators.join(" "))?;
        for r in &self.relators {
            writeln!(f, "{}", self.format_word(r))?;
        }
        Ok(())
    }
}

/// Appends the relator `longitude^n · meridian`, the relation killed by
/// `1/n` surgery.
pub fn surgery_presentation(
    pres: &GroupPresentation,
    longitude: &Word,
    meridian: &str,
    n: u32,
) -> Result<GroupPresentation, GroupError> {
    let m = pres.generator_index(meridian)?;
    pres.with_relator(longitude.pow(n as i64).then(&Word::generator(m)))
}

/// Appends `a b⁻¹` for every pair.
pub fn add_identifications(
    pres: &GroupPresentation,
    pairs: &[(String, String)],
) -> Result<GroupPresentation, GroupError> {
    let mut relators = pres.relators.clone();
    for (a, b) in pairs {
        let (a, b) = (pres.generator_index(a)?, pres.generator_index(b)?);
        relators.push(Word::generator(a).then(&Word::generator(b).inverse()));
    }
    GroupPresentation::new(pres.generators.clone(), relators)
}
