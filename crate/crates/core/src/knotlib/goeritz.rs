//! Signature and determinant from a checkerboard shading
//! (Gordon–Litherland).

use std::collections::VecDeque;

use num_bigint::BigUint;

use super::matrix::IntMatrix;
use super::pd::{Layout, PdCode};

/// Which colour class of faces is treated as white.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shading {
    /// faces of the class containing corner 0 of crossing 0
    First,
    Second,
}

/// Goeritz data for one shading.
#[derive(Debug, Clone)]
pub struct GoeritzData {
    /// reduced Goeritz matrix (first white face dropped)
    pub matrix: IntMatrix,
    /// Gordon–Litherland correction, summed over type II crossings
    pub correction: i64,
}

impl GoeritzData {
    pub fn signature(&self) -> i64 {
        self.matrix.signature() - self.correction
    }

    pub fn determinant(&self) -> BigUint {
        self.matrix.determinant().magnitude().clone()
    }
}

/// Shading parity of every crossing: corner `k` of crossing `c` has colour
/// `(k + parity[c]) % 2`.
fn corner_parity(layout: &Layout, face_of: &[usize], faces: usize) -> Vec<usize> {
    let n = layout.crossings();
    let mut at_face: Vec<Vec<usize>> = vec![Vec::new(); faces];
    for (corner, &f) in face_of.iter().enumerate() {
        at_face[f].push(corner);
    }
    let mut colour = vec![usize::MAX; faces];
    let mut parity = vec![usize::MAX; n];
    let mut queue = VecDeque::from([0usize]);
    parity[0] = 0;
    while let Some(c) = queue.pop_front() {
        for k in 0..4 {
            let f = face_of[4 * c + k];
            let col = (k + parity[c]) % 2;
            if colour[f] == usize::MAX {
                colour[f] = col;
                for &corner in &at_face[f] {
                    let (c2, k2) = (corner / 4, corner % 4);
                    if parity[c2] == usize::MAX {
                        parity[c2] = (col + 2 - k2 % 2) % 2;
                        queue.push_back(c2);
                    }
                }
            }
            debug_assert_eq!(colour[f], col, "planar diagrams are two-colourable");
        }
    }
    parity
}

pub fn goeritz(pd: &PdCode, shading: Shading) -> GoeritzData {
    let layout = pd.layout().expect("validated PD code");
    let n = layout.crossings();
    if n == 0 {
        return GoeritzData { matrix: IntMatrix::zeros(0, 0), correction: 0 };
    }
    let (faces, face_of) = layout.faces();
    let parity = corner_parity(&layout, &face_of, faces);
    let white = match shading {
        Shading::First => 0,
        Shading::Second => 1,
    };

    let mut index = vec![usize::MAX; faces];
    let mut whites = 0;
    for corner in 0..4 * n {
        let f = face_of[corner];
        if (corner % 4 + parity[corner / 4]) % 2 == white && index[f] == usize::MAX {
            index[f] = whites;
            whites += 1;
        }
    }

    let mut full = IntMatrix::zeros(whites, whites);
    let mut correction = 0;
    for c in 0..n {
        // white corners are {0, 2} or {1, 3}
        let k = (white + 2 - parity[c]) % 2;
        let eta = if k == 1 { -1 } else { 1 };
        let (a, b) = (index[face_of[4 * c + k]], index[face_of[4 * c + k + 2]]);
        if a != b {
            full.add_to(a, b, -eta);
            full.add_to(b, a, -eta);
            full.add_to(a, a, eta);
            full.add_to(b, b, eta);
        }
        let type_two = (k == 1) == (layout.sign(c) < 0);
        if type_two {
            correction += eta;
        }
    }
    GoeritzData { matrix: full.minor(0, 0), correction }
}

/// Signature and determinant of the knot, computed with the first shading.
pub fn goeritz_signature_det(pd: &PdCode) -> (i64, BigUint) {
    let g = goeritz(pd, Shading::First);
    (g.signature(), g.determinant())
}
