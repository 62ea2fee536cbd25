//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use cyclehom::complexes::ChainComplex;
use cyclehom::{FgAbelianGroup, Int, IntMatrix};
use proptest::prelude::*;

/// Elementary pieces `Z` in one degree or `Z --m--> Z` across two, mixed by
/// a unimodular change of basis in each degree.
pub fn chain_complex(pieces: &[(usize, i64)], top: usize, mix: &[(usize, usize, usize, i64)]) -> ChainComplex {
    let mut ranks = vec![0usize; top + 1];
    let mut entries: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); top + 1];
    for &(k, m) in pieces {
        if m == 0 || k == top {
            ranks[k] += 1;
        } else {
            let (lo, hi) = (ranks[k], ranks[k + 1]);
            ranks[k] += 1;
            ranks[k + 1] += 1;
            entries[k + 1].push((lo, hi, m));
        }
    }
    let mut diffs: Vec<Vec<Vec<i64>>> = (1..=top).map(|i| vec![vec![0; ranks[i]]; ranks[i - 1]]).collect();
    for i in 1..=top {
        for &(r, c, m) in &entries[i] {
            diffs[i - 1][r][c] = m;
        }
    }
    // Change of basis `P = I + c E_ab` in degree k: `d_{k+1} ↦ P d_{k+1}`
    // and `d_k ↦ d_k P⁻¹`.
    for &(k, a, b, c) in mix {
        let k = k % (top + 1);
        if ranks[k] < 2 {
            continue;
        }
        let (a, b) = (a % ranks[k], b % ranks[k]);
        if a == b {
            continue;
        }
        if k < top {
            let d = &mut diffs[k];
            let row_b = d[b].clone();
            for (x, y) in d[a].iter_mut().zip(row_b) {
                *x += c * y;
            }
        }
        if k >= 1 {
            for row in diffs[k - 1].iter_mut() {
                row[b] -= c * row[a];
            }
        }
    }
    let diffs = diffs
        .iter()
        .enumerate()
        .map(|(j, rows)| {
            let data: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&x| Int::Small(x)).collect()).collect();
            IntMatrix::from_dense(ranks[j], ranks[j + 1], &data)
        })
        .collect();
    ChainComplex::new(ranks, diffs, false).unwrap()
}

pub fn pieces() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..3, prop_oneof![Just(0i64), Just(1), Just(2), Just(3), Just(6)]), 1..4)
}

pub fn mixes() -> impl Strategy<Value = Vec<(usize, usize, usize, i64)>> {
    prop::collection::vec((0usize..3, 0usize..6, 0usize..6, -2i64..=2), 0..5)
}

/// Rank over `Q` by fraction-free (Bareiss) elimination in `i128`.
pub fn rank_q(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (m, n) = (a.len(), a.first().map_or(0, Vec::len));
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..n {
        let Some(p) = (rank..m).find(|&r| a[r][col] != 0) else { continue };
        a.swap(rank, p);
        for r in rank + 1..m {
            for c in col + 1..n {
                a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
            }
            a[r][col] = 0;
        }
        prev = a[rank][col];
        rank += 1;
    }
    rank
}

/// Rank over `F_p` by plain Gaussian elimination.
pub fn rank_fp(rows: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect()).collect();
    let (m, n) = (a.len(), a.first().map_or(0, Vec::len));
    let inv = |x: i64| (1..p).find(|y| x * y % p == 1).expect("nonzero residues are invertible");
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..m).find(|&r| a[r][col] != 0) else { continue };
        a.swap(rank, piv);
        let s = inv(a[rank][col]);
        for c in 0..n {
            a[rank][c] = a[rank][c] * s % p;
        }
        for r in 0..m {
            if r != rank && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..n {
                    a[r][c] = (a[r][c] - f * a[rank][c]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `H_i(Z/m; Z)`: `Z` in degree 0, `Z/m` in odd degrees, zero otherwise.
pub fn cyclic_homology(m: i64, i: usize) -> FgAbelianGroup {
    match i {
        0 => FgAbelianGroup::free(1),
        i if i % 2 == 1 => FgAbelianGroup::cyclic(m),
        _ => FgAbelianGroup::trivial(),
    }
}

pub fn dense(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_i64_rows().expect("small entries")
}

pub fn int_rows(rows: &[Vec<i64>]) -> Vec<Vec<Int>> {
    rows.iter().map(|r| r.iter().map(|&x| Int::Small(x)).collect()).collect()
}
