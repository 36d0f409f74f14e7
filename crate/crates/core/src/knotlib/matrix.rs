use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix { rows: rows.len(), cols, entries: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Submatrix without row `r` and column `c`.
    pub fn minor(&self, r: usize, c: usize) -> IntMatrix {
        let rows: Vec<Vec<i64>> = (0..self.rows)
            .filter(|&i| i != r)
            .map(|i| (0..self.cols).filter(|&j| j != c).map(|j| self.get(i, j)).collect())
            .collect();
        if rows.is_empty() {
            IntMatrix::zeros(0, self.cols.saturating_sub(1))
        } else {
            IntMatrix::from_rows(&rows)
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).iter().map(|&v| BigInt::from(v)).collect()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Signs of a diagonalization by congruence: `(positive, negative, zero)`.
    pub fn inertia(&self) -> (usize, usize, usize) {
        assert!(self.is_symmetric(), "inertia of a non-symmetric matrix");
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> =
            (0..n).map(|i| self.row(i).iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect();
        let (mut pos, mut neg) = (0, 0);
        let mut live: Vec<usize> = (0..n).collect();
        while !live.is_empty() {
            let pivot = match live.iter().position(|&i| !a[i][i].is_zero()) {
                Some(p) => p,
                None => {
                    // all remaining diagonal entries vanish; add a row/column
                    // with a nonzero off-diagonal entry to create a pivot
                    let found = live
                        .iter()
                        .enumerate()
                        .find_map(|(pi, &i)| live.iter().find(|&&j| j != i && !a[i][j].is_zero()).map(|&j| (pi, i, j)));
                    let Some((pi, i, j)) = found else { break };
                    for t in 0..n {
                        let v = a[j][t].clone();
                        a[i][t] += v;
                    }
                    for t in 0..n {
                        let v = a[t][j].clone();
                        a[t][i] += v;
                    }
                    pi
                }
            };
            let p = live.remove(pivot);
            let d = a[p][p].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for &i in &live {
                if a[i][p].is_zero() {
                    continue;
                }
                let f = &a[i][p] / &d;
                for &j in &live {
                    let v = &f * &a[p][j];
                    a[i][j] -= v;
                }
            }
            for &i in &live {
                a[i][p] = BigRational::zero();
                a[p][i] = BigRational::zero();
            }
        }
        (pos, neg, n - pos - neg)
    }

    pub fn signature(&self) -> i64 {
        let (p, n, _) = self.inertia();
        p as i64 - n as i64
    }

    pub fn is_negative_definite(&self) -> bool {
        let (_, neg, _) = self.inertia();
        neg == self.rows
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}
