//! Combinatorial diagram assembly.
//!
//! A diagram under construction is a set of nodes with numbered darts and a
//! partner map pairing darts into edges. Crossings have four darts in
//! counterclockwise order with the under-strand on slots 0 and 2; beads have
//! two darts and only stand in for crossing-free stretches of strand. Beads
//! are dropped when the closed diagram is converted to a PD code.

use super::braid::BraidWord;
use super::pd::PdCode;
use super::KnotError;
use crate::tangle::TangleWord;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Node {
    Crossing,
    Bead,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Wiring {
    nodes: Vec<(Node, usize)>,
    /// node index of each dart and slot within that node
    owner: Vec<(usize, usize)>,
    partner: Vec<usize>,
}

impl Wiring {
    fn add(&mut self, kind: Node) -> usize {
        let first = self.partner.len();
        let node = self.nodes.len();
        let arity = match kind {
            Node::Crossing => 4,
            Node::Bead => 2,
        };
        self.nodes.push((kind, first));
        for s in 0..arity {
            self.owner.push((node, s));
            self.partner.push(NONE);
        }
        first
    }

    fn glue(&mut self, a: usize, b: usize) {
        debug_assert!(self.partner[a] == NONE && self.partner[b] == NONE);
        self.partner[a] = b;
        self.partner[b] = a;
    }

    #[cfg(test)]
    fn crossing_count(&self) -> usize {
        self.nodes.iter().filter(|(k, _)| *k == Node::Crossing).count()
    }

    /// Dart through which a strand entering at `d` leaves its node.
    fn through(&self, d: usize) -> usize {
        let (node, slot) = self.owner[d];
        let (kind, first) = self.nodes[node];
        match kind {
            Node::Crossing => first + (slot + 2) % 4,
            Node::Bead => first + 1 - slot,
        }
    }

    /// Crossing change everywhere: slot `s` becomes slot `s - 1`, which
    /// swaps the roles of the two strands and keeps the cyclic order.
    fn mirror_dart(&self, d: usize) -> usize {
        let (node, slot) = self.owner[d];
        match self.nodes[node] {
            (Node::Crossing, first) => first + (slot + 3) % 4,
            (Node::Bead, _) => d,
        }
    }

    fn mirror(&mut self) {
        let map: Vec<usize> = (0..self.partner.len()).map(|d| self.mirror_dart(d)).collect();
        let mut partner = vec![NONE; self.partner.len()];
        for (d, &p) in self.partner.iter().enumerate() {
            partner[map[d]] = if p == NONE { NONE } else { map[p] };
        }
        self.partner = partner;
    }

    /// Converts a closed wiring of a knot to a PD code.
    ///
    /// Traversal starts by entering crossing 0 along its under-strand at
    /// slot 0, so that direction fixes the orientation; edges are labelled
    /// `1..=2n` in traversal order beginning with the edge leaving that
    /// crossing.
    pub(crate) fn to_pd(&self) -> Result<PdCode, KnotError> {
        assert!(self.partner.iter().all(|&p| p != NONE), "open darts in a closed wiring");
        let crossings: Vec<usize> =
            self.nodes.iter().filter(|(k, _)| *k == Node::Crossing).map(|&(_, first)| first).collect();
        let mut seen = vec![false; self.partner.len()];
        let mut components = 0;

        let mut tuples = vec![[0u64; 4]; crossings.len()];
        let mut index_of = vec![NONE; self.nodes.len()];
        for (i, &first) in crossings.iter().enumerate() {
            index_of[self.owner[first].0] = i;
        }

        if let Some(&start) = crossings.first() {
            components += 1;
            // labels at each dart, filled as we walk
            let mut label = vec![0u64; self.partner.len()];
            let mut under_entry = vec![NONE; crossings.len()];
            let mut next_label = 1u64;
            let mut enter = start;
            loop {
                seen[enter] = true;
                let (node, slot) = self.owner[enter];
                if slot % 2 == 0 {
                    under_entry[index_of[node]] = slot;
                }
                let exit = self.through(enter);
                seen[exit] = true;
                // walk over beads to the next crossing
                let mut d = self.partner[exit];
                while self.nodes[self.owner[d].0].0 == Node::Bead {
                    seen[d] = true;
                    let out = self.through(d);
                    seen[out] = true;
                    d = self.partner[out];
                }
                label[exit] = next_label;
                label[d] = next_label;
                next_label += 1;
                enter = d;
                if enter == start {
                    break;
                }
            }
            for (i, &first) in crossings.iter().enumerate() {
                let u = under_entry[i];
                if u == NONE {
                    // the under-strand was never entered, so the crossing
                    // lies on another component
                    continue;
                }
                for k in 0..4 {
                    tuples[i][k] = label[first + (u + k) % 4];
                }
            }
        }

        // whatever is left over forms further components
        for d in 0..self.partner.len() {
            if !seen[d] {
                components += 1;
                let mut e = d;
                loop {
                    seen[e] = true;
                    let out = self.through(e);
                    seen[out] = true;
                    e = self.partner[out];
                    if e == d {
                        break;
                    }
                }
            }
        }
        if crossings.is_empty() && components == 0 {
            components = 1;
        }
        if components != 1 {
            return Err(KnotError::MultiComponent { components });
        }
        Ok(PdCode::from_tuples_unchecked(tuples))
    }
}

/// A rational tangle diagram with its four ends.
#[derive(Debug, Clone)]
pub(crate) struct TangleDiagram {
    wiring: Wiring,
    nw: usize,
    ne: usize,
    sw: usize,
    se: usize,
}

impl TangleDiagram {
    fn zero() -> Self {
        let mut wiring = Wiring::default();
        let top = wiring.add(Node::Bead);
        let bottom = wiring.add(Node::Bead);
        TangleDiagram { wiring, nw: top, ne: top + 1, sw: bottom, se: bottom + 1 }
    }

    /// One crossing with slots `[SW, SE, NE, NW]`: under-strand SW–NE,
    /// over-strand NW–SE.
    fn unit() -> Self {
        let mut wiring = Wiring::default();
        let c = wiring.add(Node::Crossing);
        TangleDiagram { wiring, sw: c, se: c + 1, ne: c + 2, nw: c + 3 }
    }

    fn integer(a: i64) -> Self {
        let mut t = TangleDiagram::zero();
        for _ in 0..a.unsigned_abs() {
            t = t.plus(TangleDiagram::unit());
        }
        if a < 0 {
            t.mirror();
        }
        t
    }

    fn mirror(&mut self) {
        self.wiring.mirror();
        for end in [&mut self.nw, &mut self.ne, &mut self.sw, &mut self.se] {
            *end = self.wiring.mirror_dart(*end);
        }
    }

    /// Quarter turn counterclockwise.
    fn rotate(&mut self) {
        let (nw, ne, sw, se) = (self.nw, self.ne, self.sw, self.se);
        self.nw = ne;
        self.sw = nw;
        self.se = sw;
        self.ne = se;
    }

    /// `1/T`, the mirror image of the rotated tangle.
    fn invert(mut self) -> Self {
        self.rotate();
        self.mirror();
        self
    }

    /// Horizontal sum `self + other`.
    fn plus(self, other: TangleDiagram) -> Self {
        let mut wiring = self.wiring;
        let shift = wiring.partner.len();
        let node_shift = wiring.nodes.len();
        wiring.nodes.extend(other.wiring.nodes.iter().map(|&(k, f)| (k, f + shift)));
        wiring.owner.extend(other.wiring.owner.iter().map(|&(n, s)| (n + node_shift, s)));
        wiring.partner.extend(other.wiring.partner.iter().map(|&p| if p == NONE { NONE } else { p + shift }));
        wiring.glue(self.ne, other.nw + shift);
        wiring.glue(self.se, other.sw + shift);
        TangleDiagram { wiring, nw: self.nw, sw: self.sw, ne: other.ne + shift, se: other.se + shift }
    }

    /// Standard diagram of `[a1, ..., an] = a1 + 1/(a2 + ...)`.
    pub(crate) fn of_word(word: &TangleWord) -> Self {
        let exps = word.exponents();
        let Some((&last, rest)) = exps.split_last() else {
            return TangleDiagram::zero();
        };
        rest.iter().rev().fold(TangleDiagram::integer(last), |tail, &a| TangleDiagram::integer(a).plus(tail.invert()))
    }

    pub(crate) fn numerator_closure(mut self) -> Wiring {
        self.wiring.glue(self.nw, self.ne);
        self.wiring.glue(self.sw, self.se);
        self.wiring
    }

    #[cfg(test)]
    pub(crate) fn crossing_count(&self) -> usize {
        self.wiring.crossing_count()
    }
}

/// Closed braid diagram, strands oriented upwards.
///
/// `σi` uses slots `[SE, NE, NW, SW]` (under-strand SE–NW, positive);
/// `σi⁻¹` uses `[SW, SE, NE, NW]` (under-strand SW–NE, negative).
pub(crate) fn braid_closure_wiring(b: &BraidWord) -> Wiring {
    let n = b.strands() as usize;
    let mut wiring = Wiring::default();
    let bottoms: Vec<usize> = (0..n).map(|_| wiring.add(Node::Bead)).collect();
    let mut top: Vec<usize> = bottoms.iter().map(|&d| d + 1).collect();
    for &letter in b.letters() {
        let i = letter.unsigned_abs() as usize - 1;
        let c = wiring.add(Node::Crossing);
        let (se, ne, nw, sw) = if letter > 0 { (c, c + 1, c + 2, c + 3) } else { (c + 1, c + 2, c + 3, c) };
        wiring.glue(top[i], sw);
        wiring.glue(top[i + 1], se);
        top[i] = nw;
        top[i + 1] = ne;
    }
    for j in 0..n {
        wiring.glue(top[j], bottoms[j]);
    }
    wiring
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_tangles_have_expected_size() {
        for a in -4..=4 {
            assert_eq!(TangleDiagram::integer(a).crossing_count(), a.unsigned_abs() as usize);
        }
    }

    #[test]
    fn braid_closure_components() {
        let b = BraidWord::new(2, vec![1, 1]).unwrap();
        assert!(matches!(braid_closure_wiring(&b).to_pd(), Err(KnotError::MultiComponent { components: 2 })));
        let b = BraidWord::new(3, vec![1, -2]).unwrap();
        assert_eq!(braid_closure_wiring(&b).to_pd().unwrap().crossing_count(), 2);
    }

    #[test]
    fn zero_tangle_closure_is_one_loop() {
        let w = TangleDiagram::zero().numerator_closure();
        assert!(matches!(w.to_pd(), Err(KnotError::MultiComponent { components: 2 })));
        let mut inf = TangleDiagram::zero();
        inf.rotate();
        assert_eq!(inf.numerator_closure().to_pd().unwrap().crossing_count(), 0);
    }
}
