use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::presentation::GroupPresentation;

/// Nonzero diagonal entries `d1 | d2 | ...` of the Smith normal form of `a`,
/// all positive.
pub fn smith_diagonal(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| m[i][j].abs().cmp(&m[k][l].abs()))
        else {
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for j in t..cols {
                    let v = &q * &m[t][j];
                    m[i][j] -= v;
                }
                if !m[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for i in t..rows {
                    let v = &q * &m[i][t];
                    m[i][j] -= v;
                }
                if !m[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // the pivot must divide the whole trailing block
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&m[t][t])));
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..cols {
                            let v = m[i][j].clone();
                            m[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row t / column t to the pivot
            let col_min =
                (t..rows).filter(|&i| !m[i][t].is_zero()).min_by(|&i, &k| m[i][t].abs().cmp(&m[k][t].abs())).unwrap();
            m.swap(t, col_min);
            let row_min =
                (t..cols).filter(|&j| !m[t][j].is_zero()).min_by(|&j, &l| m[t][j].abs().cmp(&m[t][l].abs())).unwrap();
            for row in m.iter_mut() {
                row.swap(t, row_min);
            }
        }
        diag.push(m[t][t].abs());
    }
    diag
}

/// Relator exponent matrix: one row per relator, one column per generator.
pub fn relation_matrix(pres: &GroupPresentation) -> Vec<Vec<BigInt>> {
    let n = pres.generators().len();
    pres.relators().iter().map(|w| (0..n).map(|g| BigInt::from(w.exponent_sum(g))).collect()).collect()
}

/// Invariants of the abelianization: the non-unit Smith normal form entries
/// followed by one `0` per free summand. Empty means trivial.
pub fn abelianization(pres: &GroupPresentation) -> Vec<BigUint> {
    let diag = smith_diagonal(&relation_matrix(pres));
    let free = pres.generators().len() - diag.len();
    diag.iter()
        .filter(|d| !d.is_one())
        .map(|d| d.magnitude().clone())
        .chain(std::iter::repeat(BigUint::zero()).take(free))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn small_diagonals() {
        assert_eq!(smith_diagonal(&big(&[&[2, 0], &[0, 3]])), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(smith_diagonal(&big(&[&[4, 6]])), vec![BigInt::from(2)]);
        assert_eq!(smith_diagonal(&big(&[&[0, 0]])), Vec::<BigInt>::new());
        assert_eq!(
            smith_diagonal(&big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
    }

    #[test]
    fn cyclic_groups() {
        let p = GroupPresentation::parse("x\nx^2").unwrap();
        assert_eq!(abelianization(&p), vec![BigUint::from(2u32)]);
        let p = GroupPresentation::parse("x\nx").unwrap();
        assert!(abelianization(&p).is_empty());
        let p = GroupPresentation::parse("x y\nx y x- y-").unwrap();
        assert_eq!(abelianization(&p), vec![BigUint::zero(), BigUint::zero()]);
    }
}
