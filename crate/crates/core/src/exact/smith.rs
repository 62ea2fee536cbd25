//! Smith normal form.

use rayon::prelude::*;

use super::eliminate::eliminate_units;
use super::int::Int;
use super::matrix::IntMatrix;

/// Matrices at least this large in either dimension go through sparse unit
/// elimination before the dense pass.
pub const DENSE_CUTOFF: usize = 64;

/// `left * m * right` is the diagonal of `diag` padded with zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    /// Nonzero invariant factors, positive, each dividing the next.
    pub diag: Vec<Int>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub left_inverse: IntMatrix,
    pub right_inverse: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// The padded diagonal matrix `left * m * right` should equal.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let (r, c) = (self.left.rows(), self.right.cols());
        IntMatrix::from_triplets(r, c, self.diag.iter().enumerate().map(|(i, d)| (i, i, d.clone())))
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = m.shape();
    let res = snf_dense(m.to_dense(), rows, cols, true);
    let t = res.transforms.expect("transforms requested");
    let rank = res.diag.len();
    SmithDecomposition {
        diag: res.diag,
        left: IntMatrix::from_dense(rows, rows, &t.left),
        right: IntMatrix::from_dense(cols, cols, &t.right),
        left_inverse: IntMatrix::from_dense(rows, rows, &t.left_inv),
        right_inverse: IntMatrix::from_dense(cols, cols, &t.right_inv),
        rank,
    }
}

/// Nonzero invariant factors of `m`, ones included.
pub fn invariant_factors(m: &IntMatrix) -> Vec<Int> {
    let (rows, cols) = m.shape();
    if rows < DENSE_CUTOFF && cols < DENSE_CUTOFF {
        return snf_dense(m.to_dense(), rows, cols, false).diag;
    }
    // Eliminating along the shorter side leaves fewer dependent vectors to
    // carry through the Schur complement.
    let elim = if cols > rows {
        eliminate_units(cols, m.transpose().columns())
    } else {
        eliminate_units(rows, m.columns())
    };
    let mut diag = vec![Int::ONE; elim.unit_rank];
    diag.extend(residue_factors(rows.max(cols), elim.residue));
    diag
}

/// Invariant factors of a unit-free leftover block.
fn residue_factors(rows: usize, residue: Vec<Vec<(u32, Int)>>) -> Vec<Int> {
    if residue.is_empty() {
        return Vec::new();
    }
    // Compress to the rows actually touched.
    let mut used: Vec<u32> = residue.iter().flat_map(|c| c.iter().map(|e| e.0)).collect();
    used.sort_unstable();
    used.dedup();
    let mut index = vec![u32::MAX; rows];
    for (k, r) in used.iter().enumerate() {
        index[*r as usize] = k as u32;
    }
    let n = residue.len();
    let mut dense = vec![vec![Int::ZERO; n]; used.len()];
    for (j, col) in residue.iter().enumerate() {
        for (r, v) in col {
            dense[index[*r as usize] as usize][j] = v.clone();
        }
    }
    snf_dense(dense, used.len(), n, false).diag
}

pub(crate) type Dense = Vec<Vec<Int>>;

pub(crate) struct Transforms {
    pub left: Dense,
    pub left_inv: Dense,
    pub right: Dense,
    pub right_inv: Dense,
}

pub(crate) struct DenseSnf {
    pub diag: Vec<Int>,
    pub transforms: Option<Transforms>,
}

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::ONE } else { Int::ZERO }).collect())
        .collect()
}

/// `dst -= q * src` on rows.
fn row_sub(a: &mut Dense, dst: usize, src: usize, q: &Int, from: usize) {
    let (d, s) = if dst < src {
        let (lo, hi) = a.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for k in from..d.len() {
        if !s[k].is_zero() {
            d[k] = d[k].sub_mul(q, &s[k]);
        }
    }
}

/// `col dst -= q * col src`
fn col_sub(a: &mut Dense, dst: usize, src: usize, q: &Int, from: usize) {
    for row in a.iter_mut().skip(from) {
        if !row[src].is_zero() {
            row[dst] = row[dst].sub_mul(q, &row[src]);
        }
    }
}

fn swap_cols(a: &mut Dense, i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// Dense Smith normal form by pivoting on the entry of least absolute value.
pub(crate) fn snf_dense(mut a: Dense, rows: usize, cols: usize, track: bool) -> DenseSnf {
    let mut tr = track.then(|| Transforms {
        left: identity(rows),
        left_inv: identity(rows),
        right: identity(cols),
        right_inv: identity(cols),
    });
    let steps = rows.min(cols);
    let mut diag = Vec::new();
    let minus_one = Int::Small(-1);

    for t in 0..steps {
        // Global pivot: smallest nonzero magnitude in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = &a[i][j];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| v.cmp_abs(&a[bi][bj]).is_lt()) {
                    best = Some((i, j));
                    if v.is_unit() {
                        break;
                    }
                }
            }
            if best.is_some_and(|(bi, bj)| a[bi][bj].is_unit()) {
                break;
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows_tracked(&mut a, &mut tr, t, pi);
        swap_cols_tracked(&mut a, &mut tr, t, pj);

        loop {
            let pivot = a[t][t].clone();
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_round(&pivot);
                if !q.is_zero() {
                    row_sub(&mut a, i, t, &q, t);
                    if let Some(tr) = tr.as_mut() {
                        row_sub(&mut tr.left, i, t, &q, 0);
                        col_sub(&mut tr.left_inv, t, i, &q.neg(), 0);
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_round(&pivot);
                if !q.is_zero() {
                    col_sub(&mut a, j, t, &q, t);
                    if let Some(tr) = tr.as_mut() {
                        col_sub(&mut tr.right, j, t, &q, 0);
                        row_sub(&mut tr.right_inv, t, j, &q.neg(), 0);
                    }
                }
            }
            // A smaller remainder in the pivot row or column becomes the new pivot.
            let mut smaller: Option<(bool, usize)> = None;
            let mut best_val = pivot.clone();
            for i in t + 1..rows {
                if !a[i][t].is_zero() && a[i][t].cmp_abs(&best_val).is_lt() {
                    best_val = a[i][t].clone();
                    smaller = Some((true, i));
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && a[t][j].cmp_abs(&best_val).is_lt() {
                    best_val = a[t][j].clone();
                    smaller = Some((false, j));
                }
            }
            match smaller {
                Some((true, i)) => {
                    swap_rows_tracked(&mut a, &mut tr, t, i);
                    continue;
                }
                Some((false, j)) => {
                    swap_cols_tracked(&mut a, &mut tr, t, j);
                    continue;
                }
                None => {}
            }
            let clean = (t + 1..rows).all(|i| a[i][t].is_zero()) && (t + 1..cols).all(|j| a[t][j].is_zero());
            if !clean {
                continue;
            }
            // Enforce divisibility: fold an offending row into the pivot row.
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_divisible_by(&pivot)));
            match offending {
                Some(i) => {
                    row_sub(&mut a, t, i, &minus_one, t);
                    if let Some(tr) = tr.as_mut() {
                        row_sub(&mut tr.left, t, i, &minus_one, 0);
                        col_sub(&mut tr.left_inv, i, t, &Int::ONE, 0);
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for k in t..cols {
                a[t][k] = a[t][k].neg();
            }
            if let Some(tr) = tr.as_mut() {
                for v in tr.left[t].iter_mut() {
                    *v = v.neg();
                }
                for row in tr.left_inv.iter_mut() {
                    row[t] = row[t].neg();
                }
            }
        }
        diag.push(a[t][t].clone());
    }
    DenseSnf { diag, transforms: tr }
}

fn swap_rows_tracked(a: &mut Dense, tr: &mut Option<Transforms>, i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    if let Some(tr) = tr.as_mut() {
        tr.left.swap(i, j);
        swap_cols(&mut tr.left_inv, i, j);
    }
}

fn swap_cols_tracked(a: &mut Dense, tr: &mut Option<Transforms>, i: usize, j: usize) {
    if i == j {
        return;
    }
    swap_cols(a, i, j);
    if let Some(tr) = tr.as_mut() {
        swap_cols(&mut tr.right, i, j);
        tr.right_inv.swap(i, j);
    }
}

/// Invariant factors of many matrices at once.
pub fn invariant_factors_many(ms: &[&IntMatrix]) -> Vec<Vec<Int>> {
    ms.par_iter().map(|m| invariant_factors(m)).collect()
}
