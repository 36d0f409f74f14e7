use serde::{Deserialize, Serialize};

use super::IndependenceError;
use crate::cover::{one_over, SurgeryDesc};
use crate::groupcalc::{
    add_identifications, connected_sum_braid, coset_enumerate, surgery_presentation, wirtinger_of_braid_closure,
    EnumerationResult,
};
use crate::knotlib::{BraidWord, IntMatrix, KnotExpr};

/// A 2-handle given by its framing and its row of the linking matrix. The
/// diagonal entry of the row repeats the framing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Handle {
    pub framing: i64,
    pub linking_row: Vec<i64>,
    pub purpose: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pi1Check {
    Enumerated(EnumerationResult),
    NotAttempted,
}

/// A cobordism `W` built from `to_boundary × I` by attaching 2-handles, so
/// that `∂W = from_boundary ⊔ -to_boundary`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CobordismRecord {
    pub from_boundary: SurgeryDesc,
    pub to_boundary: SurgeryDesc,
    pub handles: Vec<Handle>,
    pub pi1_check: Pi1Check,
    pub definite: bool,
}

impl CobordismRecord {
    /// Attaches one handle per entry of `purposes`, each with framing `-1`
    /// and unlinked from the others.
    pub fn minus_one_handles(
        from_boundary: SurgeryDesc,
        to_boundary: SurgeryDesc,
        purposes: Vec<String>,
        pi1_check: Pi1Check,
    ) -> Self {
        let h = purposes.len();
        let handles = purposes
            .into_iter()
            .enumerate()
            .map(|(i, purpose)| {
                let mut linking_row = vec![0; h];
                linking_row[i] = -1;
                Handle { framing: -1, linking_row, purpose }
            })
            .collect();
        Self::new(from_boundary, to_boundary, handles, pi1_check)
    }

    pub fn new(
        from_boundary: SurgeryDesc,
        to_boundary: SurgeryDesc,
        handles: Vec<Handle>,
        pi1_check: Pi1Check,
    ) -> Self {
        let mut rec = CobordismRecord { from_boundary, to_boundary, handles, pi1_check, definite: false };
        rec.definite = rec.linking_matrix().is_some_and(|m| m.rows() == 0 || m.is_negative_definite());
        rec
    }

    /// `None` if the rows do not form a symmetric square matrix whose
    /// diagonal is the framings.
    pub fn linking_matrix(&self) -> Option<IntMatrix> {
        let h = self.handles.len();
        let rows: Vec<Vec<i64>> = self.handles.iter().map(|x| x.linking_row.clone()).collect();
        if rows.iter().any(|r| r.len() != h) {
            return None;
        }
        if self.handles.iter().enumerate().any(|(i, x)| x.linking_row[i] != x.framing) {
            return None;
        }
        let m = IntMatrix::from_rows(&rows);
        (h == 0 || m.is_symmetric()).then_some(m)
    }

    pub fn simply_connected(&self) -> bool {
        self.pi1_check == Pi1Check::Enumerated(EnumerationResult::Trivial)
    }

    pub fn is_identity(&self) -> bool {
        self.handles.is_empty() && self.from_boundary == self.to_boundary
    }
}

fn expand_params(p: u32, q: i64, n: i64) -> Result<(), IndependenceError> {
    if p < 2 || q < 1 || n < 1 {
        return Err(IndependenceError::InvalidParameters(format!(
            "need p >= 2, q >= 1, n >= 1; got p={p} q={q} n={n}"
        )));
    }
    if num_integer::gcd(p as i64, q) != 1 {
        return Err(IndependenceError::NotCoprime(p as i64, q));
    }
    Ok(())
}

/// `S³_{1/n}(copies · T(p, q+kp))`.
pub fn sum_surgery(p: u32, q: i64, k: u32, copies: u32, n: i64) -> SurgeryDesc {
    SurgeryDesc {
        knot: KnotExpr::multiple(copies, KnotExpr::Torus(p as i64, q + k as i64 * p as i64)),
        coefficient: one_over(n),
    }
}

/// Unknotting number of `T(a, b)`.
fn torus_unknotting(a: i64, b: i64) -> usize {
    ((a - 1) * (b - 1) / 2) as usize
}

/// Cobordism from `S³_{1/n}(c·T(p,q+kp))` to `S³_{1/n}(c'·T(p,q+k'p))` with
/// `c <= c'` and `k <= k'`. In each of the `c'` blocks of the braid
/// `Δ_H^{2k'}Δ_p^q`, `k'-k` half twists are turned into negative ones, each
/// by `p(p-1)/2` crossing changes; the `c'-c` surplus summands are then
/// unknotted. Every change is positive to negative and costs one `-1`
/// framed handle.
///
/// When half twists change, `π1(W)` is checked by coset enumeration. The
/// handle around a crossing of a block identifies the two meridians there,
/// so the arcs entering each block at the bottom are identified. Relations
/// from the unknotting handles are left out; they only make the group
/// smaller, so `Trivial` is still a proof.
pub fn build_expand_cobordism(
    p: u32,
    q: i64,
    (k_from, copies_from): (u32, u32),
    (k_to, copies_to): (u32, u32),
    n: i64,
    max_cosets: usize,
) -> Result<CobordismRecord, IndependenceError> {
    expand_params(p, q, n)?;
    if copies_from == 0 || copies_to < copies_from || k_to < k_from {
        return Err(IndependenceError::InvalidParameters(format!(
            "cannot expand ({k_from}, {copies_from} copies) to ({k_to}, {copies_to} copies)"
        )));
    }
    let from = sum_surgery(p, q, k_from, copies_from, n);
    let to = sum_surgery(p, q, k_to, copies_to, n);

    let per_twist = (p * (p - 1) / 2) as usize;
    let mut purposes = Vec::new();
    for block in 1..=copies_to {
        for t in 0..k_to - k_from {
            for c in 1..=per_twist {
                purposes.push(format!("block {block}, half twist {}, crossing {c}", t + 1));
            }
        }
    }
    let u = torus_unknotting(p as i64, q + k_from as i64 * p as i64);
    for copy in copies_from + 1..=copies_to {
        for c in 1..=u {
            purposes.push(format!("unknot summand {copy}, crossing {c}"));
        }
    }

    let pi1 = if k_to > k_from {
        let (braid, labels) = connected_sum_braid(p, q, k_to, copies_to)?;
        let w = wirtinger_of_braid_closure(&braid)?;
        let pres = add_identifications(&w.presentation, &labels.block_identifications(&w))?;
        let exp = u32::try_from(n).map_err(|_| IndependenceError::InvalidParameters(format!("n={n} is too large")))?;
        let pres = surgery_presentation(&pres, &w.longitude, w.meridian_name(), exp)?;
        let r = coset_enumerate(&pres, &[], max_cosets);
        log::debug!("pi1 of expansion cobordism p={p} q={q} k={k_from}->{k_to} copies={copies_to}: {r:?}");
        Pi1Check::Enumerated(r)
    } else {
        Pi1Check::NotAttempted
    };
    Ok(CobordismRecord::minus_one_handles(from, to, purposes, pi1))
}

/// The cobordism between consecutive members of the rank-expanding family:
/// from `copies_from` copies of `T(p, q+kp)` to `copies_to` copies of
/// `T(p, q+(k+1)p)`, both with `1/n` surgery.
pub fn build_rank_expand_cobordism(
    p: u32,
    q: i64,
    k: u32,
    copies_from: u32,
    copies_to: u32,
    n: i64,
    max_cosets: usize,
) -> Result<CobordismRecord, IndependenceError> {
    build_expand_cobordism(p, q, (k, copies_from), (k + 1, copies_to), n, max_cosets)
}

/// `Y × I`.
pub fn identity_cobordism(y: SurgeryDesc) -> CobordismRecord {
    CobordismRecord::new(y.clone(), y, Vec::new(), Pi1Check::NotAttempted)
}

/// Crossings of the closure of `b` that are first reached as under-passes
/// when walking from the bottom of strand 1. Changing them leaves a
/// descending diagram, which is an unknot.
pub fn descending_changes(b: &BraidWord) -> Vec<usize> {
    let mut first_under: Vec<Option<bool>> = vec![None; b.len()];
    let mut pos = 0;
    loop {
        for (t, &l) in b.letters().iter().enumerate() {
            let i = l.unsigned_abs() as usize - 1;
            if pos != i && pos != i + 1 {
                continue;
            }
            let under_from = if l > 0 { i + 1 } else { i };
            first_under[t].get_or_insert(pos == under_from);
            pos = if pos == i { i + 1 } else { i };
        }
        if pos == 0 {
            break;
        }
    }
    first_under.iter().enumerate().filter_map(|(t, u)| (*u == Some(true)).then_some(t)).collect()
}
