//! Sparse elimination with unit pivots.
//!
//! Two strategies live here. [`Echelon`] is incremental: columns are reduced
//! one at a time against the pivots found so far, each pivot only against
//! earlier ones, which keeps track of how a vector decomposes and suits
//! kernels and coordinates. [`eliminate_units`] is right-looking: it picks
//! unit pivots by a Markowitz rule and replaces the remaining columns by their
//! Schur complement, which keeps fill-in low on large boundary matrices.
//!
//! Every unit pivot contributes an invariant factor equal to one, and the
//! columns left over (those without a unit entry off the pivot rows) carry
//! the remaining invariant factors. Over a field every nonzero entry is a
//! unit, so nothing is left over and the pivot count is the rank.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::int::Int;

pub type SparseVec<E> = Vec<(u32, E)>;

/// Arithmetic used by the eliminator.
pub trait Arith: Sync {
    type E: Clone + Send + Sync + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    /// Inverse of `a` when `a` is a unit.
    fn unit_inverse(&self, a: &Self::E) -> Option<Self::E>;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// `s - a * b`
    fn sub_mul(&self, s: &Self::E, a: &Self::E, b: &Self::E) -> Self::E;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct IntArith;

impl Arith for IntArith {
    type E = Int;
    #[inline]
    fn zero(&self) -> Int {
        Int::ZERO
    }
    #[inline]
    fn is_zero(&self, a: &Int) -> bool {
        a.is_zero()
    }
    #[inline]
    fn unit_inverse(&self, a: &Int) -> Option<Int> {
        if a.is_unit() {
            Some(a.clone())
        } else {
            None
        }
    }
    #[inline]
    fn mul(&self, a: &Int, b: &Int) -> Int {
        a.mul(b)
    }
    #[inline]
    fn neg(&self, a: &Int) -> Int {
        a.neg()
    }
    #[inline]
    fn sub_mul(&self, s: &Int, a: &Int, b: &Int) -> Int {
        s.sub_mul(a, b)
    }
}

/// Arithmetic in `Z/p` for a prime `p < 2^31`, residues kept in `0..p`.
#[derive(Clone, Copy, Debug)]
pub struct ModArith {
    p: u64,
}

impl ModArith {
    pub fn new(p: u64) -> Self {
        assert!((2..(1 << 31)).contains(&p), "modulus out of range");
        ModArith { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, v: &Int) -> u64 {
        match v.to_i64() {
            Some(s) => s.rem_euclid(self.p as i64) as u64,
            None => v.rem_euclid(&Int::Small(self.p as i64)).to_i64().unwrap() as u64,
        }
    }

    pub fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl Arith for ModArith {
    type E = u64;
    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn unit_inverse(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.inv(*a))
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    #[inline]
    fn sub_mul(&self, s: &u64, a: &u64, b: &u64) -> u64 {
        (s + self.p - a * b % self.p) % self.p
    }
}

/// `v - c * w` on sorted sparse vectors.
pub fn axpy<A: Arith>(arith: &A, v: &[(u32, A::E)], c: &A::E, w: &[(u32, A::E)]) -> SparseVec<A::E> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() && j < w.len() {
        let (ri, ref vi) = v[i];
        let (rj, ref wj) = w[j];
        if ri < rj {
            out.push((ri, vi.clone()));
            i += 1;
        } else if rj < ri {
            let x = arith.neg(&arith.mul(c, wj));
            if !arith.is_zero(&x) {
                out.push((rj, x));
            }
            j += 1;
        } else {
            let x = arith.sub_mul(vi, c, wj);
            if !arith.is_zero(&x) {
                out.push((ri, x));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend(v[i..].iter().cloned());
    for (rj, wj) in &w[j..] {
        let x = arith.neg(&arith.mul(c, wj));
        if !arith.is_zero(&x) {
            out.push((*rj, x));
        }
    }
    out
}

const NONE: u32 = u32::MAX;

/// Dense scratch vector with a list of touched rows.
struct Workspace<E> {
    vals: Vec<E>,
    present: Vec<bool>,
    touched: Vec<u32>,
}

impl<E: Clone> Workspace<E> {
    fn new<A: Arith<E = E>>(arith: &A, rows: usize) -> Self {
        Workspace {
            vals: vec![arith.zero(); rows],
            present: vec![false; rows],
            touched: Vec::new(),
        }
    }

    fn grow<A: Arith<E = E>>(&mut self, arith: &A, rows: usize) {
        if rows > self.vals.len() {
            self.vals.resize(rows, arith.zero());
            self.present.resize(rows, false);
        }
    }

    #[inline]
    fn set(&mut self, r: u32, e: E) {
        if !self.present[r as usize] {
            self.present[r as usize] = true;
            self.touched.push(r);
        }
        self.vals[r as usize] = e;
    }

    fn drain<A: Arith<E = E>>(&mut self, arith: &A) -> SparseVec<E> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &r in &self.touched {
            let slot = std::mem::replace(&mut self.vals[r as usize], arith.zero());
            self.present[r as usize] = false;
            if !arith.is_zero(&slot) {
                out.push((r, slot));
            }
        }
        self.touched.clear();
        out
    }
}

#[derive(Clone, Debug)]
struct Pivot<E> {
    row: u32,
    /// Inverse of the pivot entry.
    inv: E,
    vec: SparseVec<E>,
}

/// What happened to a column handed to [`Echelon::insert`].
#[derive(Debug)]
pub enum Insert<E> {
    /// Became pivot number `usize`.
    Pivot(usize),
    /// Reduced to zero on the eligible rows; the reduced vector is returned
    /// (it is empty unless rows beyond the pivot limit are in use).
    Dependent(SparseVec<E>),
    /// Nonzero on eligible rows but without a unit there.
    Residue(SparseVec<E>),
}

/// Incremental sparse echelon basis.
///
/// Only rows below `pivot_limit` may carry pivots; rows at or beyond it are
/// carried along untouched by pivot selection, which lets callers append
/// bookkeeping coordinates (an identity block for kernels, tags for
/// coordinates in a subquotient).
pub struct Echelon<A: Arith> {
    arith: A,
    /// Workspace size: the declared rows, or more when pivots carry
    /// coordinates beyond them.
    rows: usize,
    pivot_limit: u32,
    workspace: Option<Workspace<A::E>>,
    pivot_of_row: Vec<u32>,
    pivots: Vec<Pivot<A::E>>,
}

impl<A: Arith> Echelon<A> {
    pub fn new(arith: A, rows: usize) -> Self {
        Self::with_limit(arith, rows, rows)
    }

    pub fn with_limit(arith: A, rows: usize, pivot_limit: usize) -> Self {
        assert!(pivot_limit <= rows);
        Echelon {
            arith,
            rows,
            pivot_limit: pivot_limit as u32,
            workspace: None,
            pivot_of_row: vec![NONE; pivot_limit],
            pivots: Vec::new(),
        }
    }

    pub fn arith(&self) -> &A {
        &self.arith
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.iter().map(|p| p.row as usize)
    }

    pub fn is_pivot_row(&self, row: usize) -> bool {
        row < self.pivot_limit as usize && self.pivot_of_row[row] != NONE
    }

    /// Reduces `v` against every pivot, in creation order.
    pub fn reduce(&self, v: SparseVec<A::E>) -> SparseVec<A::E> {
        let rows = v.last().map_or(0, |e| e.0 as usize + 1).max(self.rows);
        let mut ws = Workspace::new(&self.arith, rows);
        self.reduce_in(v, &mut ws)
    }

    /// Pivots are applied to a dense accumulator so each step costs only the
    /// length of the pivot.
    fn reduce_in(&self, v: SparseVec<A::E>, ws: &mut Workspace<A::E>) -> SparseVec<A::E> {
        let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::new();
        for (r, e) in v {
            if r < self.pivot_limit {
                let k = self.pivot_of_row[r as usize];
                if k != NONE {
                    heap.push(Reverse(k));
                }
            }
            ws.set(r, e);
        }
        let mut last = None;
        while let Some(Reverse(k)) = heap.pop() {
            if last == Some(k) {
                continue;
            }
            last = Some(k);
            let piv = &self.pivots[k as usize];
            let current = &ws.vals[piv.row as usize];
            if !ws.present[piv.row as usize] || self.arith.is_zero(current) {
                continue;
            }
            let coeff = self.arith.mul(current, &piv.inv);
            for (r, e) in &piv.vec {
                let r = *r;
                if !ws.present[r as usize] {
                    ws.set(r, self.arith.zero());
                }
                let slot = &mut ws.vals[r as usize];
                *slot = self.arith.sub_mul(slot, &coeff, e);
                if r < self.pivot_limit {
                    let j = self.pivot_of_row[r as usize];
                    if j != NONE && j > k {
                        heap.push(Reverse(j));
                    }
                }
            }
        }
        ws.drain(&self.arith)
    }

    /// Reduces `v` and records it as a new pivot when it has a unit entry on
    /// a non-pivot eligible row.
    pub fn insert(&mut self, v: SparseVec<A::E>) -> Insert<A::E> {
        let needed = v.last().map_or(0, |e| e.0 as usize + 1).max(self.rows);
        let mut ws = self.workspace.take().unwrap_or_else(|| Workspace::new(&self.arith, self.rows));
        ws.grow(&self.arith, needed);
        let v = self.reduce_in(v, &mut ws);
        self.workspace = Some(ws);
        self.insert_reduced(v)
    }

    /// As [`insert`](Self::insert) for a vector already reduced against the
    /// current pivots.
    pub fn insert_reduced(&mut self, v: SparseVec<A::E>) -> Insert<A::E> {
        let limit = self.pivot_limit;
        let eligible = v.iter().take_while(|(r, _)| *r < limit).count();
        if eligible == 0 {
            return Insert::Dependent(v);
        }
        let mut best: Option<(usize, A::E)> = None;
        for (pos, (_, e)) in v[..eligible].iter().enumerate() {
            if let Some(inv) = self.arith.unit_inverse(e) {
                best = Some((pos, inv));
                break;
            }
        }
        match best {
            Some((pos, inv)) => {
                let row = v[pos].0;
                let k = self.pivots.len();
                self.pivot_of_row[row as usize] = k as u32;
                self.rows = self.rows.max(v.last().map_or(0, |e| e.0 as usize + 1));
                self.pivots.push(Pivot { row, inv, vec: v });
                Insert::Pivot(k)
            }
            None => Insert::Residue(v),
        }
    }
}

/// Result of eliminating all unit pivots from an integer matrix.
#[derive(Debug)]
pub struct UnitElimination {
    /// Number of unit pivots, each one an invariant factor equal to one.
    pub unit_rank: usize,
    /// Leftover columns, supported on non-pivot rows and free of units.
    pub residue: Vec<SparseVec<Int>>,
}

/// Eliminates unit pivots from the columns of an integer matrix.
pub fn eliminate_units(rows: usize, columns: &[Vec<(u32, Int)>]) -> UnitElimination {
    let (unit_rank, residue) = schur_eliminate(&IntArith, rows, columns.to_vec());
    UnitElimination { unit_rank, residue }
}

/// Rank over `Z/p`.
pub fn rank_mod_p(rows: usize, columns: &[Vec<(u32, Int)>], p: u64) -> usize {
    let arith = ModArith::new(p);
    let cols = columns
        .iter()
        .map(|c| {
            c.iter()
                .map(|(r, x)| (*r, arith.reduce(x)))
                .filter(|(_, x)| *x != 0)
                .collect()
        })
        .collect();
    schur_eliminate(&arith, rows, cols).0
}

/// Rank of columns whose entries already lie in `1..p`.
pub fn rank_fp(rows: usize, columns: Vec<SparseVec<u64>>, p: u64) -> usize {
    schur_eliminate(&ModArith::new(p), rows, columns).0
}

/// How many of the shortest columns are examined when choosing a pivot.
const MARKOWITZ_SEARCH: usize = 4;

/// Right-looking elimination on unit pivots chosen by a Markowitz rule:
/// among the shortest columns, the unit entry minimising
/// `(column length - 1)(row count - 1)` is pivoted on and the rest of the
/// matrix is replaced by its Schur complement. Returns the number of pivots
/// and the leftover nonzero columns, which carry no units.
fn schur_eliminate<A: Arith>(arith: &A, rows: usize, mut cols: Vec<SparseVec<A::E>>) -> (usize, Vec<SparseVec<A::E>>) {
    let n = cols.len();
    let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); rows];
    let mut row_count = vec![0u32; rows];
    for (j, c) in cols.iter().enumerate() {
        for (r, _) in c {
            row_cols[*r as usize].push(j as u32);
            row_count[*r as usize] += 1;
        }
    }
    let mut alive = vec![true; n];
    let mut heap: BinaryHeap<Reverse<(u32, u32)>> = cols
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .map(|(j, c)| Reverse((c.len() as u32, j as u32)))
        .collect();
    let mut rank = 0;
    let mut candidates: Vec<u32> = Vec::with_capacity(MARKOWITZ_SEARCH);
    loop {
        candidates.clear();
        while candidates.len() < MARKOWITZ_SEARCH {
            let Some(Reverse((len, j))) = heap.pop() else { break };
            let c = &cols[j as usize];
            if !alive[j as usize] || c.len() as u32 != len || c.is_empty() {
                continue;
            }
            if c.iter().any(|(_, e)| arith.unit_inverse(e).is_some()) {
                candidates.push(j);
            }
            // Columns without units wait until an update changes them.
        }
        if candidates.is_empty() {
            break;
        }
        let mut best: Option<(u64, u32, usize)> = None;
        for &j in &candidates {
            let c = &cols[j as usize];
            for (pos, (r, e)) in c.iter().enumerate() {
                if arith.unit_inverse(e).is_none() {
                    continue;
                }
                let cost = (c.len() as u64 - 1) * (row_count[*r as usize] as u64 - 1);
                if best.is_none_or(|b| cost < b.0) {
                    best = Some((cost, j, pos));
                }
            }
        }
        let (_, pj, pos) = best.expect("candidates carry units");
        for &j in &candidates {
            if j != pj {
                heap.push(Reverse((cols[j as usize].len() as u32, j)));
            }
        }
        let pivot = std::mem::take(&mut cols[pj as usize]);
        alive[pj as usize] = false;
        let (prow, ref pval) = pivot[pos];
        let inv = arith.unit_inverse(pval).expect("unit pivot");
        for (r, _) in &pivot {
            row_count[*r as usize] -= 1;
        }
        let others = std::mem::take(&mut row_cols[prow as usize]);
        for j in others {
            let ju = j as usize;
            if !alive[ju] {
                continue;
            }
            let c = &cols[ju];
            let Ok(at) = c.binary_search_by_key(&prow, |e| e.0) else { continue };
            let coeff = arith.mul(&c[at].1, &inv);
            let updated = axpy(arith, c, &coeff, &pivot);
            // Row bookkeeping: compare old and new supports.
            let (old, new) = (&cols[ju], &updated);
            let (mut a, mut b) = (0, 0);
            while a < old.len() || b < new.len() {
                let ra = old.get(a).map_or(u32::MAX, |e| e.0);
                let rb = new.get(b).map_or(u32::MAX, |e| e.0);
                if ra == rb {
                    a += 1;
                    b += 1;
                } else if ra < rb {
                    row_count[ra as usize] -= 1;
                    a += 1;
                } else {
                    row_count[rb as usize] += 1;
                    row_cols[rb as usize].push(j);
                    b += 1;
                }
            }
            cols[ju] = updated;
            if cols[ju].is_empty() {
                alive[ju] = false;
            } else {
                heap.push(Reverse((cols[ju].len() as u32, j)));
            }
        }
        rank += 1;
    }
    let residue = cols
        .into_iter()
        .zip(alive)
        .filter(|(c, a)| *a && !c.is_empty())
        .map(|(c, _)| c)
        .collect();
    (rank, residue)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(entries: &[(u32, i64)]) -> SparseVec<Int> {
        entries.iter().map(|(r, v)| (*r, Int::Small(*v))).collect()
    }

    #[test]
    fn axpy_cancels() {
        let a = IntArith;
        let v = col(&[(0, 2), (3, 1)]);
        let w = col(&[(0, 1), (2, 5)]);
        assert_eq!(axpy(&a, &v, &Int::Small(2), &w), col(&[(2, -10), (3, 1)]));
    }

    #[test]
    fn unit_elimination_leaves_torsion() {
        // [[2,4],[6,8]] has no unit entries at all.
        let cols = vec![col(&[(0, 2), (1, 6)]), col(&[(0, 4), (1, 8)])];
        let e = eliminate_units(2, &cols);
        assert_eq!(e.unit_rank, 0);
        assert_eq!(e.residue.len(), 2);
        // [[1,2],[3,4]] eliminates one pivot and leaves a 2.
        let cols = vec![col(&[(0, 1), (1, 3)]), col(&[(0, 2), (1, 4)])];
        let e = eliminate_units(2, &cols);
        assert_eq!(e.unit_rank, 1);
        assert_eq!(e.residue, vec![col(&[(1, -2)])]);
    }

    #[test]
    fn modular_rank() {
        let cols = vec![col(&[(0, 2), (1, 6)]), col(&[(0, 4), (1, 8)])];
        assert_eq!(rank_mod_p(2, &cols, 2), 0);
        assert_eq!(rank_mod_p(2, &cols, 3), 2);
        assert_eq!(rank_mod_p(2, &cols, 5), 2);
        let cols = vec![col(&[(0, 1), (1, 3)]), col(&[(0, 2), (1, 6)])];
        assert_eq!(rank_mod_p(2, &cols, 7), 1);
    }

    #[test]
    fn pivot_limit_tracks_kernel() {
        let arith = ModArith::new(5);
        // Columns of [1 1] with an identity appended below the limit.
        let mut ech = Echelon::with_limit(arith, 3, 1);
        assert!(matches!(ech.insert(vec![(0, 1), (1, 1)]), Insert::Pivot(0)));
        match ech.insert(vec![(0, 1), (2, 1)]) {
            Insert::Dependent(v) => assert_eq!(v, vec![(1, 4), (2, 1)]),
            other => panic!("unexpected {other:?}"),
        }
    }
}
