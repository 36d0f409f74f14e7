use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::KnotError;

/// Planar diagram code of a knot.
///
/// Each crossing lists its four edge labels counterclockwise, starting at
/// the incoming under-strand. Labels follow the orientation: the under-strand
/// leaves a crossing on the label after the one it entered on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<[u64; 4]>", into = "Vec<[u64; 4]>")]
pub struct PdCode {
    crossings: Vec<[u64; 4]>,
}

impl TryFrom<Vec<[u64; 4]>> for PdCode {
    type Error = KnotError;
    fn try_from(tuples: Vec<[u64; 4]>) -> Result<Self, KnotError> {
        PdCode::new(tuples)
    }
}

impl From<PdCode> for Vec<[u64; 4]> {
    fn from(pd: PdCode) -> Self {
        pd.crossings
    }
}

/// Darts are `4 * crossing + slot`.
#[derive(Debug, Clone)]
pub(crate) struct Layout {
    pub partner: Vec<usize>,
    /// slot at which the over-strand enters (1 or 3)
    pub over_entry: Vec<usize>,
    /// traversal order as a sequence of entering darts
    pub walk: Vec<usize>,
}

impl Layout {
    pub fn crossings(&self) -> usize {
        self.over_entry.len()
    }

    /// `+1` when the over-strand runs from slot 3 to slot 1.
    pub fn sign(&self, c: usize) -> i64 {
        if self.over_entry[c] == 3 {
            1
        } else {
            -1
        }
    }

    /// Faces as lists of corners; corner `(c, k)` sits between slots `k`
    /// and `k + 1` of crossing `c`. Returns the face index of every corner.
    pub fn faces(&self) -> (usize, Vec<usize>) {
        let n = self.crossings();
        let mut face_of = vec![usize::MAX; 4 * n];
        let mut count = 0;
        for corner in 0..4 * n {
            if face_of[corner] != usize::MAX {
                continue;
            }
            let mut k = corner;
            while face_of[k] == usize::MAX {
                face_of[k] = count;
                // leave the corner along its second slot, arrive at the
                // partner dart, continue into the next corner
                let out = 4 * (k / 4) + (k % 4 + 1) % 4;
                k = self.partner[out];
            }
            count += 1;
        }
        (count, face_of)
    }
}

impl PdCode {
    /// Validates a PD code: labels are `2n` consecutive integers each used
    /// twice, the labels run consecutively along one component in the
    /// orientation given by the under-strands, and the diagram is planar.
    pub fn new(crossings: Vec<[u64; 4]>) -> Result<Self, KnotError> {
        let pd = PdCode { crossings };
        pd.layout()?;
        Ok(pd)
    }

    pub(crate) fn from_tuples_unchecked(crossings: Vec<[u64; 4]>) -> Self {
        let pd = PdCode { crossings };
        debug_assert!(pd.layout().is_ok(), "generated an invalid PD code: {:?}", pd.crossings);
        pd
    }

    pub fn unknot() -> Self {
        PdCode { crossings: Vec::new() }
    }

    pub fn tuples(&self) -> &[[u64; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub(crate) fn layout(&self) -> Result<Layout, KnotError> {
        let n = self.crossings.len();
        let bad = |msg: String| Err(KnotError::InvalidPd(msg));
        if n == 0 {
            return Ok(Layout { partner: vec![], over_entry: vec![], walk: vec![] });
        }
        let mut where_: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (c, t) in self.crossings.iter().enumerate() {
            for (s, &l) in t.iter().enumerate() {
                where_.entry(l).or_default().push(4 * c + s);
            }
        }
        if where_.len() != 2 * n {
            return bad(format!("{} distinct labels for {} crossings, expected {}", where_.len(), n, 2 * n));
        }
        let lo = *where_.keys().next().unwrap();
        let hi = *where_.keys().next_back().unwrap();
        if hi - lo + 1 != 2 * n as u64 {
            return bad(format!("labels {lo}..{hi} are not consecutive"));
        }
        if let Some((l, v)) = where_.iter().find(|(_, v)| v.len() != 2) {
            return bad(format!("label {l} appears {} times", v.len()));
        }
        let mut partner = vec![0usize; 4 * n];
        for v in where_.values() {
            partner[v[0]] = v[1];
            partner[v[1]] = v[0];
        }

        // orient by walking from crossing 0's outgoing under-strand
        let label = |d: usize| self.crossings[d / 4][d % 4];
        let succ = |l: u64| if l == hi { lo } else { l + 1 };
        let mut over_entry = vec![usize::MAX; n];
        let mut under_seen = vec![false; n];
        let mut walk = Vec::with_capacity(2 * n);
        let mut exit = 2;
        for _ in 0..2 * n {
            let enter = partner[exit];
            let (c, s) = (enter / 4, enter % 4);
            if s == 2 {
                return bad(format!("crossing {c} is entered against its under-strand"));
            }
            if s == 0 {
                if under_seen[c] {
                    return bad(format!("crossing {c} is visited twice along its under-strand"));
                }
                under_seen[c] = true;
            } else {
                if over_entry[c] != usize::MAX {
                    return bad(format!("crossing {c} is visited twice along its over-strand"));
                }
                over_entry[c] = s;
            }
            walk.push(enter);
            let out = 4 * c + (s + 2) % 4;
            if label(out) != succ(label(enter)) {
                return bad(format!("labels {} -> {} at crossing {c} are not consecutive", label(enter), label(out)));
            }
            exit = out;
            if exit == 2 && walk.len() < 2 * n {
                return Err(KnotError::MultiComponent { components: 2 });
            }
        }
        if exit != 2 {
            return bad("traversal does not close up".into());
        }

        let layout = Layout { partner, over_entry, walk };
        let (faces, _) = layout.faces();
        if faces != n + 2 {
            return bad(format!("{faces} faces for {n} crossings; the code is not planar"));
        }
        Ok(layout)
    }

    /// Crossing signs in tuple order.
    pub fn signs(&self) -> Vec<i64> {
        let layout = self.layout().expect("validated PD code");
        (0..self.crossing_count()).map(|c| layout.sign(c)).collect()
    }

    pub fn writhe(&self) -> i64 {
        self.signs().iter().sum()
    }

    /// Changes every crossing. Each tuple is restarted at the incoming end
    /// of the old over-strand, which becomes the new under-strand.
    pub fn mirror(&self) -> PdCode {
        let layout = self.layout().expect("validated PD code");
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .map(|(c, t)| {
                let o = layout.over_entry[c];
                [t[o], t[(o + 1) % 4], t[(o + 2) % 4], t[(o + 3) % 4]]
            })
            .collect();
        PdCode { crossings }
    }
}

/// True iff the strand alternates over and under along the whole knot.
pub fn alternating(pd: &PdCode) -> bool {
    let layout = pd.layout().expect("validated PD code");
    let walk = &layout.walk;
    let under = |d: usize| d % 4 == 0;
    (0..walk.len()).all(|i| under(walk[i]) != under(walk[(i + 1) % walk.len()]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> PdCode {
        // left-handed in KnotTheory's table; all crossings share one sign
        PdCode::new(vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap()
    }

    #[test]
    fn accepts_standard_trefoil() {
        let pd = trefoil();
        let signs = pd.signs();
        assert!(signs.iter().all(|&s| s == signs[0]));
        assert!(alternating(&pd));
        assert_eq!(pd.mirror().writhe(), -pd.writhe());
    }

    #[test]
    fn figure_eight_has_zero_writhe() {
        let pd = PdCode::new(vec![[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]).unwrap();
        assert_eq!(pd.writhe(), 0);
        assert!(alternating(&pd));
    }

    #[test]
    fn kink() {
        let pd = PdCode::new(vec![[1, 1, 2, 2]]).unwrap();
        assert_eq!(pd.crossing_count(), 1);
        assert!(alternating(&pd));
    }

    #[test]
    fn rejects_malformed() {
        assert!(PdCode::new(vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 7]]).is_err());
        assert!(PdCode::new(vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 6]]).is_err());
        // under-strand orientation reversed at one crossing
        assert!(PdCode::new(vec![[2, 5, 1, 4], [3, 6, 4, 1], [5, 2, 6, 3]]).is_err());
        // Hopf link
        assert!(PdCode::new(vec![[1, 3, 2, 4], [3, 1, 4, 2]]).is_err());
    }

    #[test]
    fn serde_as_tuples() {
        let pd = trefoil();
        let json = serde_json::to_string(&pd).unwrap();
        assert_eq!(json, "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]");
        assert_eq!(serde_json::from_str::<PdCode>(&json).unwrap(), pd);
        assert!(serde_json::from_str::<PdCode>("[[1,1,1,1]]").is_err());
    }
}
