//! Todd–Coxeter coset enumeration, HLT strategy.
//!
//! Cosets are processed in definition order. For each live coset every
//! relator is scanned with new definitions made as needed, then the
//! remaining gaps in its row are filled. When the table is full a
//! lookahead pass scans all relators at all cosets without defining,
//! and dead cosets are compacted away; if that frees too little room the
//! run stops with `Unknown`.

use serde::{Deserialize, Serialize};

use super::presentation::{GroupPresentation, Word};

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnumerationResult {
    Trivial,
    FiniteOfOrder(u64),
    Unknown { cosets_used: u64 },
}

impl EnumerationResult {
    /// Index of the subgroup, if the table closed.
    pub fn index(self) -> Option<u64> {
        match self {
            EnumerationResult::Trivial => Some(1),
            EnumerationResult::FiniteOfOrder(n) => Some(n),
            EnumerationResult::Unknown { .. } => None,
        }
    }
}

const NONE: u32 = u32::MAX;

struct Full;

struct Table {
    width: usize,
    rows: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    defined: u64,
    limit: usize,
    queue: Vec<u32>,
}

fn column(letter: i32) -> usize {
    2 * (letter.unsigned_abs() as usize - 1) + usize::from(letter < 0)
}

impl Table {
    fn new(generators: usize, limit: usize) -> Self {
        let width = 2 * generators;
        Table { width, rows: vec![NONE; width], parent: vec![0], live: 1, defined: 1, limit, queue: Vec::new() }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.rows[c as usize * self.width + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.rows[c as usize * self.width + x] = d;
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, Full> {
        if self.len() >= self.limit {
            return Err(Full);
        }
        let d = self.len() as u32;
        self.rows.extend(std::iter::repeat(NONE).take(self.width));
        self.parent.push(d);
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        self.live += 1;
        self.defined += 1;
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi as usize] = lo;
        self.live -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.width {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.set(d, x ^ 1, NONE);
                let (mu, nu) = (self.rep(g), self.rep(d));
                let mx = self.get(mu, x);
                if mx != NONE {
                    self.merge(nu, mx);
                    continue;
                }
                let nx = self.get(nu, x ^ 1);
                if nx != NONE {
                    self.merge(mu, nx);
                } else {
                    self.set(mu, x, nu);
                    self.set(nu, x ^ 1, mu);
                }
            }
        }
        self.queue.clear();
    }

    /// Scans `w` (as columns) at coset `c`, defining new cosets when
    /// `fill` is set. Deductions and coincidences are applied either way.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) -> Result<(), Full> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j && self.get(f, w[i as usize]) != NONE {
                f = self.get(f, w[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, w[j as usize] ^ 1) != NONE {
                b = self.get(b, w[j as usize] ^ 1);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            let x = w[i as usize];
            if i == j {
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, x)?;
        }
    }

    fn lookahead(&mut self, relators: &[Vec<usize>]) {
        let mut c = 0;
        while c < self.len() as u32 {
            for r in relators {
                if !self.alive(c) {
                    break;
                }
                // scanning without definitions never overflows
                let _ = self.scan(c, r, false);
            }
            c += 1;
        }
    }

    /// Renumbers live cosets consecutively in order; returns the new
    /// index of the first live coset at or after `at`.
    fn compact(&mut self, at: u32) -> u32 {
        let mut new_index = vec![NONE; self.len()];
        let mut next = 0u32;
        let mut at_new = None;
        for c in 0..self.len() as u32 {
            if c == at {
                at_new = Some(next);
            }
            if self.alive(c) {
                new_index[c as usize] = next;
                next += 1;
            }
        }
        let mut rows = Vec::with_capacity(next as usize * self.width);
        for c in 0..self.len() {
            if new_index[c] == NONE {
                continue;
            }
            rows.extend(self.rows[c * self.width..(c + 1) * self.width].iter().map(|&d| {
                if d == NONE {
                    NONE
                } else {
                    new_index[d as usize]
                }
            }));
        }
        self.rows = rows;
        self.parent = (0..next).collect();
        at_new.unwrap_or(next)
    }

    /// Tries to make room; returns the new position of `at`, or `None` if
    /// too little space was recovered.
    fn recover(&mut self, relators: &[Vec<usize>], at: u32) -> Option<u32> {
        self.lookahead(relators);
        let before = self.len();
        let at = self.compact(at);
        let freed = before - self.len();
        (freed >= (self.limit / 64).max(1)).then_some(at)
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the
/// group presented by `pres`, using at most `max_cosets` table rows at a
/// time. With an empty `subgroup` the index is the order of the group.
pub fn coset_enumerate(pres: &GroupPresentation, subgroup: &[Word], max_cosets: usize) -> EnumerationResult {
    assert!(max_cosets >= 1, "max_cosets must be positive");
    let to_columns = |w: &Word| w.letters().iter().map(|&l| column(l)).collect::<Vec<_>>();
    let mut relators: Vec<Vec<usize>> =
        pres.relators().iter().map(Word::cyclic_reduce).filter(|w| !w.is_empty()).map(|w| to_columns(&w)).collect();
    relators.sort_by_key(Vec::len);
    relators.dedup();
    let subgroup: Vec<Vec<usize>> = subgroup.iter().map(Word::free_reduce).map(|w| to_columns(&w)).collect();

    let mut table = Table::new(pres.generators().len(), max_cosets);
    let unknown = |t: &Table| EnumerationResult::Unknown { cosets_used: t.defined };

    let mut s = 0;
    while s < subgroup.len() {
        match table.scan(0, &subgroup[s], true) {
            Ok(()) => s += 1,
            Err(Full) => {
                if table.recover(&relators, 0).is_none() {
                    return unknown(&table);
                }
            }
        }
    }

    let mut c = 0u32;
    while (c as usize) < table.len() {
        if !table.alive(c) {
            c += 1;
            continue;
        }
        let step = (|| {
            for r in &relators {
                table.scan(c, r, true)?;
                if !table.alive(c) {
                    return Ok(());
                }
            }
            for x in 0..table.width {
                if table.get(c, x) == NONE {
                    table.define(c, x)?;
                }
            }
            Ok(())
        })();
        match step {
            Ok(()) => c += 1,
            Err(Full) => match table.recover(&relators, c) {
                Some(at) => c = at,
                None => return unknown(&table),
            },
        }
    }
    log::debug!("coset enumeration closed: {} cosets, {} defined", table.live, table.defined);
    match table.live {
        1 => EnumerationResult::Trivial,
        n => EnumerationResult::FiniteOfOrder(n as u64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enumerate(text: &str) -> EnumerationResult {
        coset_enumerate(&GroupPresentation::parse(text).unwrap(), &[], 10_000)
    }

    #[test]
    fn small_groups() {
        assert_eq!(enumerate("x\nx"), EnumerationResult::Trivial);
        assert_eq!(enumerate("x\nx^5"), EnumerationResult::FiniteOfOrder(5));
        // S3
        assert_eq!(enumerate("a b\na^2\nb^3\na b a b"), EnumerationResult::FiniteOfOrder(6));
        // quaternion group
        assert_eq!(enumerate("i j\ni^4\ni^2 j^-2\nj- i j i"), EnumerationResult::FiniteOfOrder(8));
        // A5 as the (2,3,5) triangle group
        assert_eq!(enumerate("a b\na^2\nb^3\na b a b a b a b a b"), EnumerationResult::FiniteOfOrder(60));
    }

    #[test]
    fn infinite_groups_run_out() {
        assert!(matches!(enumerate("a"), EnumerationResult::Unknown { .. }));
        assert!(matches!(enumerate("a b\na b a- b-"), EnumerationResult::Unknown { .. }));
    }

    #[test]
    fn subgroup_index() {
        let p = GroupPresentation::parse("a b\na^2\nb^3\na b a b").unwrap();
        let h = [p.parse_word("b").unwrap()];
        assert_eq!(coset_enumerate(&p, &h, 100), EnumerationResult::FiniteOfOrder(2));
        let h = [p.parse_word("a").unwrap()];
        assert_eq!(coset_enumerate(&p, &h, 100), EnumerationResult::FiniteOfOrder(3));
    }
}
