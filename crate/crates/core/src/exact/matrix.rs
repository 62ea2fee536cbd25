use std::fmt;

use serde::{Deserialize, Serialize};

use super::int::Int;
use crate::error::{Error, Result};

/// Sparse integer matrix stored column by column.
///
/// Every column is sorted by row index and holds only nonzero entries, so
/// structural equality is matrix equality.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(u32, Int)>>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows <= 16 && self.cols <= 16 {
            write!(f, "IntMatrix{:?}", self.to_dense())
        } else {
            write!(f, "IntMatrix({}x{}, nnz={})", self.rows, self.cols, self.nnz())
        }
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows < u32::MAX as usize, "row count exceeds index width");
        IntMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Int::ONE)
    }

    pub fn scalar(n: usize, value: Int) -> Self {
        let mut m = Self::zeros(n, n);
        if !value.is_zero() {
            for (j, col) in m.columns.iter_mut().enumerate() {
                col.push((j as u32, value.clone()));
            }
        }
        m
    }

    /// Builds from row-major small integers.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.columns[j].push((i as u32, Int::Small(v)));
                }
            }
        }
        m
    }

    pub fn from_dense(rows: usize, cols: usize, data: &[Vec<Int>]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, row) in data.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.columns[j].push((i as u32, v.clone()));
                }
            }
        }
        m
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, Int)>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, j, v) in triplets {
            assert!(i < rows && j < cols, "triplet ({i},{j}) outside {rows}x{cols}");
            m.columns[j].push((i as u32, v));
        }
        for col in &mut m.columns {
            normalize_column(col);
        }
        m
    }

    /// Builds from sparse columns; each column may be unsorted and contain
    /// duplicates or zeros.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(u32, Int)>>) -> Self {
        let cols = columns.len();
        let mut m = IntMatrix { rows, cols, columns };
        for col in &mut m.columns {
            normalize_column(col);
            if let Some(&(r, _)) = col.last() {
                assert!((r as usize) < rows, "row index {r} out of range");
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn column(&self, j: usize) -> &[(u32, Int)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<(u32, Int)>] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<Vec<(u32, Int)>> {
        self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> Int {
        let col = &self.columns[j];
        match col.binary_search_by_key(&(i as u32), |e| e.0) {
            Ok(k) => col[k].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Int)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i as usize, j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        let mut d = vec![vec![Int::ZERO; self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.to_dense()
            .into_iter()
            .map(|r| r.iter().map(Int::to_i64).collect())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t: Vec<Vec<(u32, Int)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                t[*i as usize].push((j as u32, v.clone()));
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            columns: t,
        }
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let columns = rhs
            .columns
            .iter()
            .map(|rcol| {
                let mut acc: Vec<(u32, Int)> = Vec::new();
                for (k, b) in rcol {
                    for (i, a) in &self.columns[*k as usize] {
                        acc.push((*i, a.mul(b)));
                    }
                }
                normalize_column(&mut acc);
                acc
            })
            .collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: rhs.cols,
            columns,
        })
    }

    /// Matrix-vector product for a dense vector.
    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Int::ZERO; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (i, a) in col {
                out[*i as usize] = out[*i as usize].add(&a.mul(&v[j]));
            }
        }
        out
    }

    pub fn add(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.combine(rhs, true)
    }

    fn combine(&self, rhs: &IntMatrix, negate: bool) -> Result<IntMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let columns = self
            .columns
            .iter()
            .zip(&rhs.columns)
            .map(|(a, b)| {
                let mut acc = a.clone();
                acc.extend(b.iter().map(|(i, v)| (*i, if negate { v.neg() } else { v.clone() })));
                normalize_column(&mut acc);
                acc
            })
            .collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            columns,
        })
    }

    pub fn scale(&self, c: &Int) -> IntMatrix {
        let columns = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(i, v)| (*i, v.mul(c)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            columns,
        }
    }

    /// Entries replaced by their residues in `0..n`.
    pub fn reduce_mod(&self, n: u64) -> IntMatrix {
        let modulus = Int::Small(n as i64);
        let columns = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(i, v)| (*i, v.rem_euclid(&modulus)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            columns,
        }
    }

    /// True when every entry is divisible by `n` (`n = 0` means exactly zero).
    pub fn is_zero_mod(&self, n: u64) -> bool {
        if n == 0 {
            return self.is_zero();
        }
        let modulus = Int::Small(n as i64);
        self.entries().all(|(_, _, v)| v.is_divisible_by(&modulus))
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, rhs.rows
            )));
        }
        let mut columns = self.columns.clone();
        columns.extend(rhs.columns.iter().cloned());
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols + rhs.cols,
            columns,
        })
    }

    /// `[self ; rhs]`
    pub fn vstack(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, rhs.cols
            )));
        }
        let off = self.rows as u32;
        let columns = self
            .columns
            .iter()
            .zip(&rhs.columns)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.extend(b.iter().map(|(i, v)| (i + off, v.clone())));
                c
            })
            .collect();
        Ok(IntMatrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            columns,
        })
    }

    /// Assembles a block matrix; `None` blocks are zero. All blocks in a
    /// block row must agree on height and all blocks in a block column on
    /// width, given by `row_sizes` and `col_sizes`.
    pub fn block(row_sizes: &[usize], col_sizes: &[usize], blocks: &[Vec<Option<&IntMatrix>>]) -> Result<IntMatrix> {
        let rows: usize = row_sizes.iter().sum();
        let cols: usize = col_sizes.iter().sum();
        let mut columns: Vec<Vec<(u32, Int)>> = vec![Vec::new(); cols];
        let mut roff = 0;
        for (bi, brow) in blocks.iter().enumerate() {
            let mut coff = 0;
            for (bj, blk) in brow.iter().enumerate() {
                if let Some(m) = blk {
                    if m.shape() != (row_sizes[bi], col_sizes[bj]) {
                        return Err(Error::DimensionMismatch(format!(
                            "block ({bi},{bj}) is {}x{}, expected {}x{}",
                            m.rows, m.cols, row_sizes[bi], col_sizes[bj]
                        )));
                    }
                    for (j, col) in m.columns.iter().enumerate() {
                        columns[coff + j].extend(col.iter().map(|(i, v)| (*i + roff as u32, v.clone())));
                    }
                }
                coff += col_sizes[bj];
            }
            roff += row_sizes[bi];
        }
        for col in &mut columns {
            col.sort_by_key(|e| e.0);
        }
        Ok(IntMatrix { rows, cols, columns })
    }

    /// Columns selected by index, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: idx.len(),
            columns: idx.iter().map(|&j| self.columns[j].clone()).collect(),
        }
    }

    /// Rows selected by index, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut map = vec![u32::MAX; self.rows];
        for (new, &old) in idx.iter().enumerate() {
            map[old] = new as u32;
        }
        let columns = self
            .columns
            .iter()
            .map(|col| {
                let mut c: Vec<(u32, Int)> = col
                    .iter()
                    .filter(|(i, _)| map[*i as usize] != u32::MAX)
                    .map(|(i, v)| (map[*i as usize], v.clone()))
                    .collect();
                c.sort_by_key(|e| e.0);
                c
            })
            .collect();
        IntMatrix {
            rows: idx.len(),
            cols: self.cols,
            columns,
        }
    }

    /// Matrix of the map sending basis vector `j` to basis vector `images[j]`.
    pub fn from_index_map(target_dim: usize, images: &[usize]) -> IntMatrix {
        IntMatrix {
            rows: target_dim,
            cols: images.len(),
            columns: images.iter().map(|&i| vec![(i as u32, Int::ONE)]).collect(),
        }
    }

    /// If every column is a single entry equal to one, the index map it encodes.
    pub fn as_index_map(&self) -> Option<Vec<usize>> {
        self.columns
            .iter()
            .map(|c| match c.as_slice() {
                [(i, v)] if *v == Int::ONE => Some(*i as usize),
                _ => None,
            })
            .collect()
    }
}

/// Sorts by row, sums duplicates, drops zeros.
pub(crate) fn normalize_column(col: &mut Vec<(u32, Int)>) {
    if col.is_empty() {
        return;
    }
    col.sort_by_key(|e| e.0);
    let mut out: Vec<(u32, Int)> = Vec::with_capacity(col.len());
    for (i, v) in col.drain(..) {
        match out.last_mut() {
            Some((li, lv)) if *li == i => *lv = lv.add(&v),
            _ => {
                if let Some((_, lv)) = out.last() {
                    if lv.is_zero() {
                        out.pop();
                    }
                }
                out.push((i, v));
            }
        }
    }
    if let Some((_, lv)) = out.last() {
        if lv.is_zero() {
            out.pop();
        }
    }
    *col = out;
}

/// Row-major small-integer view used for serialization and tests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenseRows(pub Vec<Vec<i64>>);
