use serde::{Deserialize, Serialize};

use super::KnotError;

/// A braid word in Artin generators, stored as signed 1-based indices
/// (`2` is `σ2`, `-2` is `σ2⁻¹`). `σi` is a positive crossing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBraid", into = "RawBraid")]
pub struct BraidWord {
    strands: u32,
    letters: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBraid {
    strands: u32,
    word: Vec<i32>,
}

impl TryFrom<RawBraid> for BraidWord {
    type Error = KnotError;
    fn try_from(raw: RawBraid) -> Result<Self, KnotError> {
        BraidWord::new(raw.strands, raw.word)
    }
}

impl From<BraidWord> for RawBraid {
    fn from(b: BraidWord) -> Self {
        RawBraid { strands: b.strands, word: b.letters }
    }
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<i32>) -> Result<Self, KnotError> {
        if strands == 0 {
            return Err(KnotError::InvalidBraid("a braid needs at least one strand".into()));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() >= strands) {
            return Err(KnotError::InvalidBraid(format!("generator {bad} is out of range for {strands} strands")));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn trivial(strands: u32) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// Concatenation `self · other` on the same number of strands.
    pub fn then(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "braids on different strand counts");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands, letters }
    }

    pub fn pow(&self, k: u32) -> BraidWord {
        BraidWord { strands: self.strands, letters: (0..k).flat_map(|_| self.letters.iter().copied()).collect() }
    }

    /// Crossing change at every letter.
    pub fn mirror(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().map(|l| -l).collect() }
    }

    /// Embeds the word on a wider braid, shifting every generator by `offset`.
    pub fn widen(&self, strands: u32, offset: u32) -> BraidWord {
        assert!(self.strands + offset <= strands);
        let shift = offset as i32;
        BraidWord { strands, letters: self.letters.iter().map(|&l| l + l.signum() * shift).collect() }
    }

    /// `perm[j]` is the bottom position that ends at top position `j`
    /// after reading the word left to right.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands as usize).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        at
    }

    /// Number of components of the closure.
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
            }
        }
        cycles
    }

    pub fn closure_is_knot(&self) -> bool {
        self.closure_components() == 1
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// `(σ1 σ2 ⋯ σ(p-1))^q` on `p` strands, whose closure is the torus knot
/// `T(p,q)`. Negative `q` gives the mirror word.
pub fn torus_braid(p: i64, q: i64) -> Result<BraidWord, KnotError> {
    if p < 2 {
        return Err(KnotError::InvalidParameters(format!("torus braid needs p >= 2, got {p}")));
    }
    if gcd(p, q) != 1 {
        return Err(KnotError::NotCoprime(p, q));
    }
    let cycle: Vec<i32> = (1..p as i32).collect();
    let word = BraidWord::new(p as u32, cycle)?.pow(q.unsigned_abs() as u32);
    Ok(if q < 0 { word.mirror() } else { word })
}

/// The positive half twist `σ1 (σ2 σ1) ⋯ (σ(p-1) ⋯ σ1)`.
pub fn half_twist_braid(p: u32) -> Result<BraidWord, KnotError> {
    if p < 2 {
        return Err(KnotError::InvalidParameters(format!("half twist needs p >= 2, got {p}")));
    }
    let letters = (1..p as i32).flat_map(|top| (1..=top).rev()).collect();
    BraidWord::new(p, letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_words() {
        assert_eq!(torus_braid(2, 3).unwrap().letters(), &[1, 1, 1]);
        assert_eq!(torus_braid(3, 4).unwrap().letters(), &[1, 2, 1, 2, 1, 2, 1, 2]);
        assert_eq!(torus_braid(2, -3).unwrap().letters(), &[-1, -1, -1]);
        assert!(matches!(torus_braid(2, 4), Err(KnotError::NotCoprime(2, 4))));
        assert!(torus_braid(1, 3).is_err());
    }

    #[test]
    fn half_twists() {
        assert_eq!(half_twist_braid(2).unwrap().letters(), &[1]);
        assert_eq!(half_twist_braid(3).unwrap().letters(), &[1, 2, 1]);
        for p in 2..8u32 {
            let h = half_twist_braid(p).unwrap();
            assert_eq!(h.len() as u32, p * (p - 1) / 2);
            // a half twist reverses the strands
            let perm = h.permutation();
            assert!(perm.iter().enumerate().all(|(j, &b)| b == p as usize - 1 - j));
        }
    }

    #[test]
    fn closures() {
        assert!(torus_braid(2, 3).unwrap().closure_is_knot());
        assert_eq!(BraidWord::new(2, vec![1, 1]).unwrap().closure_components(), 2);
        assert!(BraidWord::trivial(1).closure_is_knot());
        assert!(!BraidWord::trivial(2).closure_is_knot());
    }

    #[test]
    fn rejects_bad_letters() {
        assert!(BraidWord::new(2, vec![2]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert!(BraidWord::new(0, vec![]).is_err());
    }

    #[test]
    fn serde_shape() {
        let b = BraidWord::new(3, vec![1, -2]).unwrap();
        let json = serde_json::to_string(&b).unwrap();
        assert_eq!(json, r#"{"strands":3,"word":[1,-2]}"#);
        assert!(serde_json::from_str::<BraidWord>(r#"{"strands":2,"word":[3]}"#).is_err());
    }
}
