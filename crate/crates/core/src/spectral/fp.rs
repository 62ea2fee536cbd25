use crate::exact::eliminate::{rank_fp, Echelon, Insert, ModArith, SparseVec};
use crate::exact::IntMatrix;

pub(crate) type FpVec = SparseVec<u64>;

/// A matrix over `F_p` stored by columns.
#[derive(Clone, Debug)]
pub(crate) struct FpMatrix {
    rows: usize,
    cols: Vec<FpVec>,
}

impl FpMatrix {
    pub fn from_columns(rows: usize, cols: Vec<FpVec>) -> Self {
        FpMatrix { rows, cols }
    }

    /// `m^T` reduced mod `p`.
    pub fn transpose_of(m: &IntMatrix, arith: &ModArith) -> Self {
        let mut cols: Vec<FpVec> = vec![Vec::new(); m.rows()];
        for (j, col) in m.columns().iter().enumerate() {
            for (r, x) in col {
                let e = arith.reduce(x);
                if e != 0 {
                    cols[*r as usize].push((j as u32, e));
                }
            }
        }
        FpMatrix { rows: m.cols(), cols }
    }

    pub fn columns(&self) -> &[FpVec] {
        &self.cols
    }

    pub fn apply(&self, x: &FpVec, p: u64) -> FpVec {
        let mut acc = vec![0u64; self.rows];
        for (j, c) in x {
            for (r, e) in &self.cols[*j as usize] {
                let slot = &mut acc[*r as usize];
                *slot = (*slot + c * e) % p;
            }
        }
        acc.into_iter()
            .enumerate()
            .filter(|(_, e)| *e != 0)
            .map(|(r, e)| (r as u32, e))
            .collect()
    }

    pub fn rank(&self, p: u64) -> usize {
        rank_fp(self.rows, self.cols.clone(), p)
    }

    /// A basis of the null space.
    pub fn kernel(&self, p: u64) -> Vec<FpVec> {
        let n = self.cols.len();
        let mut ech = Echelon::with_limit(ModArith::new(p), self.rows + n, self.rows);
        let shift = self.rows as u32;
        let mut out = Vec::new();
        for (j, c) in self.cols.iter().enumerate() {
            let mut v = c.clone();
            v.push((shift + j as u32, 1));
            if let Insert::Dependent(w) = ech.insert(v) {
                out.push(w.into_iter().map(|(r, e)| (r - shift, e)).collect());
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        let mut d = vec![vec![0; self.cols.len()]; self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (r, e) in c {
                d[*r as usize][j] = *e;
            }
        }
        d
    }
}

/// `Z / B` for subspaces `B ⊆ Z` of `F_p^n`, with chosen representatives
/// and coordinates of classes.
pub(crate) struct FpSubquotient {
    ambient: usize,
    p: u64,
    echelon: Echelon<ModArith>,
    representatives: Vec<FpVec>,
}

impl FpSubquotient {
    /// `relations` span `B` and `cycles` span `Z`; only `B ⊆ span(cycles)`
    /// is assumed.
    pub fn new(p: u64, ambient: usize, relations: &[FpVec], cycles: &[FpVec]) -> Self {
        let mut echelon = Echelon::with_limit(ModArith::new(p), ambient, ambient);
        for b in relations {
            echelon.insert(b.clone());
        }
        let mut representatives = Vec::new();
        for z in cycles {
            // The tag records how the pivot decomposes over representatives.
            let mut v = z.clone();
            v.push(((ambient + representatives.len()) as u32, 1));
            if let Insert::Pivot(_) = echelon.insert(v) {
                representatives.push(z.clone());
            }
        }
        FpSubquotient {
            ambient,
            p,
            echelon,
            representatives,
        }
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[FpVec] {
        &self.representatives
    }

    /// Coordinates of the class of `x`, or `None` when `x` is not in `Z`.
    pub fn coordinates(&self, x: &FpVec) -> Option<Vec<u64>> {
        let reduced = self.echelon.reduce(x.clone());
        let mut coords = vec![0; self.representatives.len()];
        for (r, e) in reduced {
            let r = r as usize;
            if r < self.ambient {
                return None;
            }
            coords[r - self.ambient] = (self.p - e) % self.p;
        }
        Some(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_coordinates() {
        // Columns (1,1,0), (0,1,1), (1,2,1) over F_3.
        let m = FpMatrix::from_columns(3, vec![vec![(0, 1), (1, 1)], vec![(1, 1), (2, 1)], vec![(0, 1), (1, 2), (2, 1)]]);
        assert_eq!(m.rank(3), 2);
        let k = m.kernel(3);
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0], 3).is_empty());
        // F_3^2 modulo the line through (1,1).
        let sq = FpSubquotient::new(3, 2, &[vec![(0, 1), (1, 1)]], &[vec![(0, 1)], vec![(1, 1)]]);
        assert_eq!(sq.dim(), 1);
        assert_eq!(sq.coordinates(&vec![(0, 2), (1, 2)]), Some(vec![0]));
        let c = sq.coordinates(&vec![(1, 1)]).unwrap();
        let r = sq.coordinates(&vec![(0, 1)]).unwrap();
        assert_eq!((c[0] + r[0]) % 3, 0);
    }
}
