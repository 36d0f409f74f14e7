use serde::{Deserialize, Serialize};

use super::presentation::{GroupPresentation, Word};
use super::GroupError;
use crate::knotlib::{half_twist_braid, torus_braid, BraidWord, KnotError};

/// Arcs meeting at one crossing, as 0-based generator indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcCrossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i32,
}

/// Wirtinger presentation of a braid closure together with the peripheral
/// data needed for surgery.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Wirtinger {
    pub presentation: GroupPresentation,
    /// Read along the knot from the bottom of strand 1; commutes with the
    /// meridian.
    pub longitude: Word,
    /// Generator of the arc at the bottom of strand 1.
    pub meridian: usize,
    /// Generator of the arc crossing the bottom of each strand position.
    pub bottom_arcs: Vec<usize>,
    pub crossings: Vec<ArcCrossing>,
}

impl Wirtinger {
    pub fn name(&self, g: usize) -> &str {
        &self.presentation.generators()[g]
    }

    pub fn meridian_name(&self) -> &str {
        self.name(self.meridian)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Builds the Wirtinger presentation of the closure of `b`.
///
/// Strands run upward. At `σi` the strand from position `i` crosses over
/// to `i+1`; at `σi⁻¹` the strand from `i+1` crosses over to `i`. Every
/// under-pass starts a new arc, and the arcs at the top are glued to those
/// at the bottom.
pub fn wirtinger_of_braid_closure(b: &BraidWord) -> Result<Wirtinger, GroupError> {
    let components = b.closure_components();
    if components != 1 {
        return Err(KnotError::MultiComponent { components }.into());
    }
    let strands = b.strands() as usize;
    let mut cur: Vec<usize> = (0..strands).collect();
    let mut total = strands;
    // raw arc ids: (over, under_in, under_out, sign)
    let mut raw = Vec::with_capacity(b.len());
    for &l in b.letters() {
        let i = l.unsigned_abs() as usize - 1;
        let new = total;
        total += 1;
        if l > 0 {
            let (over, under) = (cur[i], cur[i + 1]);
            raw.push((over, under, new, 1));
            cur[i] = new;
            cur[i + 1] = over;
        } else {
            let (over, under) = (cur[i + 1], cur[i]);
            raw.push((over, under, new, -1));
            cur[i + 1] = new;
            cur[i] = over;
        }
    }
    let mut parent: Vec<usize> = (0..total).collect();
    for (j, &top) in cur.iter().enumerate() {
        let (a, c) = (find(&mut parent, top), find(&mut parent, j));
        if a != c {
            parent[a.max(c)] = a.min(c);
        }
    }
    let mut index = vec![usize::MAX; total];
    let mut count = 0;
    let mut gen_of = vec![0; total];
    for arc in 0..total {
        let root = find(&mut parent, arc);
        if index[root] == usize::MAX {
            index[root] = count;
            count += 1;
        }
        gen_of[arc] = index[root];
    }

    let crossings: Vec<ArcCrossing> = raw
        .iter()
        .map(|&(o, i, u, s)| ArcCrossing { over: gen_of[o], under_in: gen_of[i], under_out: gen_of[u], sign: s })
        .collect();
    let relators = crossings
        .iter()
        .map(|c| {
            let a = Word::generator(c.over).pow(c.sign as i64);
            Word::generator(c.under_out).inverse().then(&a.inverse()).then(&Word::generator(c.under_in)).then(&a)
        })
        .collect();
    let generators = (1..=count).map(|i| format!("a{i}")).collect();
    let presentation = GroupPresentation::new(generators, relators)?;

    let bottom_arcs: Vec<usize> = (0..strands).map(|j| gen_of[j]).collect();
    let meridian = bottom_arcs[0];
    let mut longitude = Word::empty();
    let mut pos = 0;
    loop {
        for (t, &l) in b.letters().iter().enumerate() {
            let i = l.unsigned_abs() as usize - 1;
            if pos != i && pos != i + 1 {
                continue;
            }
            let under_from = if l > 0 { i + 1 } else { i };
            if pos == under_from {
                let c = crossings[t];
                longitude.push(c.sign * (c.over as i32 + 1));
            }
            pos = if pos == i { i + 1 } else { i };
        }
        if pos == 0 {
            break;
        }
    }
    let longitude = longitude.then(&Word::generator(meridian).pow(-b.writhe())).free_reduce();
    Ok(Wirtinger { presentation, longitude, meridian, bottom_arcs, crossings })
}

/// Positions in a connected-sum braid that carry the distinguished arcs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumLabels {
    /// `x[i][j]`: bottom strand position of arc `x_{i+1,j+1}`.
    pub x: Vec<Vec<usize>>,
    /// `y[i]`: index of the crossing joining block `i+1` to block `i+2`;
    /// its outgoing under-arc is the connecting arc.
    pub y: Vec<usize>,
    /// Crossing indices of the first half twist in each block.
    pub first_half_twist: Vec<Vec<usize>>,
}

impl SumLabels {
    /// Generator names of the `x_{i,j}` arcs in a Wirtinger presentation of
    /// the same braid.
    pub fn x_generators(&self, w: &Wirtinger) -> Vec<Vec<String>> {
        self.x.iter().map(|row| row.iter().map(|&pos| w.name(w.bottom_arcs[pos]).to_string()).collect()).collect()
    }

    pub fn y_generators(&self, w: &Wirtinger) -> Vec<String> {
        self.y.iter().map(|&t| w.name(w.crossings[t].under_out).to_string()).collect()
    }

    /// Identifications `x_{i,1} = x_{i,j}` within each block.
    pub fn block_identifications(&self, w: &Wirtinger) -> Vec<(String, String)> {
        self.x_generators(w)
            .into_iter()
            .flat_map(|row| {
                let first = row[0].clone();
                row.into_iter().skip(1).map(move |g| (first.clone(), g))
            })
            .collect()
    }
}

/// `copies` blocks of `Δ_H^{2k} · Δ_p^q` side by side, joined by one positive
/// crossing between neighbouring blocks. The closure is the connected sum of
/// `copies` copies of `T(p, q+kp)`.
pub fn connected_sum_braid(p: u32, q: i64, k: u32, copies: u32) -> Result<(BraidWord, SumLabels), GroupError> {
    if copies == 0 {
        return Err(KnotError::InvalidParameters("need at least one copy".into()).into());
    }
    let half = half_twist_braid(p)?;
    let block = half.pow(2 * k).then(&torus_braid(p as i64, q)?);
    let strands = p * copies;
    let mut letters = Vec::new();
    let mut x = Vec::new();
    let mut first_half_twist = Vec::new();
    for i in 0..copies {
        let start = letters.len();
        letters.extend_from_slice(block.widen(strands, i * p).letters());
        first_half_twist.push(if k > 0 { (start..start + half.len()).collect() } else { Vec::new() });
        x.push((0..p as usize).map(|j| (i * p) as usize + j).collect());
    }
    let mut y = Vec::new();
    for i in 1..copies {
        y.push(letters.len());
        letters.push((i * p) as i32);
    }
    let braid = BraidWord::new(strands, letters)?;
    Ok((braid, SumLabels { x, y, first_half_twist }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_arcs() {
        let w = wirtinger_of_braid_closure(&torus_braid(2, 3).unwrap()).unwrap();
        assert_eq!(w.presentation.generators().len(), 3);
        assert_eq!(w.presentation.relators().len(), 3);
        let total: i64 = (0..3).map(|g| w.longitude.exponent_sum(g)).sum();
        assert_eq!(total, 0);
    }

    #[test]
    fn unknot_has_no_relators() {
        let w = wirtinger_of_braid_closure(&BraidWord::trivial(1)).unwrap();
        assert_eq!(w.presentation.generators().len(), 1);
        assert!(w.presentation.relators().is_empty());
        assert!(w.longitude.is_empty());
    }

    #[test]
    fn links_rejected() {
        let b = BraidWord::new(2, vec![1, 1]).unwrap();
        assert!(matches!(
            wirtinger_of_braid_closure(&b),
            Err(GroupError::Knot(KnotError::MultiComponent { components: 2 }))
        ));
    }

    #[test]
    fn sum_braid_shape() {
        let (b, labels) = connected_sum_braid(2, 1, 1, 2).unwrap();
        assert_eq!(b.letters(), &[1, 1, 1, 3, 3, 3, 2]);
        assert_eq!(labels.x, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(labels.y, vec![6]);
        assert_eq!(labels.first_half_twist, vec![vec![0], vec![3]]);
        assert!(b.closure_is_knot());
        assert!(connected_sum_braid(2, 2, 1, 1).is_err());
        assert!(connected_sum_braid(3, 1, 2, 4).unwrap().0.closure_is_knot());
    }
}
