//! Reference computations used only by tests.
//!
//! Everything here is written independently of `cforge-core` and favours
//! directness over speed: Seifert matrices of braid closures, characteristic
//! polynomials with Descartes' rule of signs, determinantal divisors, and
//! plain rational elimination.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Seifert matrix of the closure of a braid, from Seifert's algorithm on the
/// braid diagram (Seifert circles are the strands, bands are the letters).
///
/// Letters are signed 1-based generator indices; `σi` is a positive crossing.
pub fn seifert_matrix(letters: &[i32]) -> Vec<Vec<i64>> {
    let x = letters;
    let m = x.len();
    // for each letter, the next letter using the same generator
    let next: Vec<Option<usize>> = (0..m).map(|i| (i + 1..m).find(|&k| x[k].abs() == x[i].abs())).collect();
    let bands: Vec<usize> = (0..m).filter(|&i| next[i].is_some()).collect();
    let sign = |v: i32| v.signum() as i64;
    let d = bands.len();
    let mut a = vec![vec![0i64; d]; d];
    for (ii, &i) in bands.iter().enumerate() {
        let hi = next[i].unwrap();
        a[ii][ii] = -(sign(x[i]) + sign(x[hi])) / 2;
        for (jj, &j) in bands.iter().enumerate().skip(ii + 1) {
            let hj = next[j].unwrap();
            if hi > hj || hi < j {
                continue;
            }
            if hi == j {
                if x[j] > 0 {
                    a[ii][jj] = 1;
                } else {
                    a[jj][ii] = -1;
                }
                continue;
            }
            let (ai, aj) = (x[i].abs(), x[j].abs());
            if ai - aj == 1 {
                a[jj][ii] = -1;
            } else if aj - ai == 1 {
                a[ii][jj] = 1;
            }
        }
    }
    a
}

pub fn symmetrize(v: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = v.len();
    (0..n).map(|i| (0..n).map(|j| v[i][j] + v[j][i]).collect()).collect()
}

fn to_q(a: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    a.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect()).collect()
}

/// Characteristic polynomial `det(tI - A)` by Faddeev–LeVerrier, low degree first.
pub fn char_poly(a: &[Vec<i64>]) -> Vec<BigRational> {
    let n = a.len();
    let aq = to_q(a);
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigRational::zero();
                for t in 0..n {
                    s += &aq[i][t] * &m[t][j];
                }
                if i == j {
                    s += &coeffs[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = BigRational::zero();
        for i in 0..n {
            for t in 0..n {
                tr += &aq[i][t] * &m[t][i];
            }
        }
        coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k as i64));
    }
    coeffs
}

fn sign_changes(c: &[BigRational]) -> usize {
    let signs: Vec<bool> = c.iter().filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Signature of a symmetric integer matrix. All roots of its characteristic
/// polynomial are real, so Descartes' rule counts them exactly.
pub fn signature_by_descartes(a: &[Vec<i64>]) -> i64 {
    let c = char_poly(a);
    let zeros = c.iter().take_while(|v| v.is_zero()).count();
    let c = &c[zeros..];
    let positive = sign_changes(c);
    let flipped: Vec<BigRational> =
        c.iter().enumerate().map(|(i, v)| if (i + zeros) % 2 == 1 { -v } else { v.clone() }).collect();
    let negative = sign_changes(&flipped);
    positive as i64 - negative as i64
}

/// Determinant by Gaussian elimination over the rationals.
pub fn det_rational(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    let mut m = to_q(a);
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= &m[k][k];
        for i in k + 1..n {
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let v = &f * &m[k][j];
                m[i][j] -= v;
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer()
}

/// Determinant by cofactor expansion along the first row.
pub fn det_cofactor(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if a[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> =
            a[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
        let term = BigInt::from(a[0][j]) * det_cofactor(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `(signature, |det|)` of `V + Vᵀ` for the closure of a braid.
pub fn seifert_signature_det(letters: &[i32]) -> (i64, BigInt) {
    let s = symmetrize(&seifert_matrix(letters));
    (signature_by_descartes(&s), det_rational(&s).abs())
}

/// Sylvester's criterion: `A` is negative definite iff the leading principal
/// minors of `-A` are all positive.
pub fn sylvester_negative_definite(a: &[Vec<i64>]) -> bool {
    let neg: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|v| -v).collect()).collect();
    (1..=a.len()).all(|k| {
        let lead: Vec<Vec<i64>> = neg[..k].iter().map(|r| r[..k].to_vec()).collect();
        det_cofactor(&lead).is_positive()
    })
}

fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors of an integer matrix from its determinantal divisors
/// (gcds of all `k × k` minors). Exponential; meant for small matrices.
pub fn invariant_factors(a: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut divisors = vec![BigInt::one()];
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| a[r][c]).collect()).collect();
                g = gcd(&g, &det_cofactor(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| &w[1] / &w[0]).collect()
}

/// Abelian group presented by the rows of `a` as relations among its columns,
/// written as cyclic orders with `0` for each free summand; trivial factors
/// are omitted.
pub fn abelian_invariants(a: &[Vec<i64>], generators: usize) -> Vec<BigInt> {
    let factors = invariant_factors(a);
    let rank = factors.len();
    let mut out: Vec<BigInt> = factors.into_iter().filter(|f| !f.is_one()).collect();
    out.extend(std::iter::repeat(BigInt::zero()).take(generators - rank));
    out
}

/// Value of `[a1, ..., an]` via the product of `[[ai, 1], [1, 0]]`, as an
/// unreduced pair `(num, den)`; the empty word is `0/1`.
pub fn continued_fraction_pair(word: &[i64]) -> (BigInt, BigInt) {
    if word.is_empty() {
        return (BigInt::zero(), BigInt::one());
    }
    let (mut p, mut q) = (BigInt::one(), BigInt::zero());
    for &a in word.iter().rev() {
        let np = BigInt::from(a) * &p + &q;
        q = p;
        p = np;
    }
    (p, q)
}

/// Signature of the two-bridge knot `N(p/q)` up to global sign, from the
/// classical sum of `(-1)^⌊iq/p⌋`.
pub fn two_bridge_signature_magnitude(p: i64, q: i64) -> i64 {
    let s: i64 = (1..p).map(|i| if (i * q).div_euclid(p) % 2 == 0 { 1 } else { -1 }).sum();
    s.abs()
}
