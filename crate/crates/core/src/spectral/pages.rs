use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::double::{total_differential, total_offsets, total_range, total_rank, DoubleComplex};
use super::fp::{FpMatrix, FpSubquotient, FpVec};
use crate::error::{Error, Result};
use crate::exact::eliminate::{Echelon, ModArith};
use crate::exact::{CoefficientRing, FgAbelianGroup, Int};

/// Which differential is taken first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// `E_1` is the cohomology of the columns (`d_v`), `d_1` comes from `d_h`.
    #[default]
    VerticalFirst,
    /// `E_1` is the cohomology of the rows (`d_h`), `d_1` comes from `d_v`.
    HorizontalFirst,
}

/// A page `E_r`, `r ∈ {1, 2}`, of the cohomological spectral sequence of
/// `Hom(A, Z/ℓ)`. Each entry is `(Z/ℓ)^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPage {
    r: usize,
    prime: u64,
    orientation: Orientation,
    /// `dims[s][t]`
    dims: Vec<Vec<usize>>,
    /// On `E_1`, `differentials[s][t]` is `d_1` out of `(s, t)` as a dense
    /// matrix with entries in `0..ℓ`.
    differentials: Option<Vec<Vec<Vec<Vec<u64>>>>>,
}

impl SpectralPage {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn max_s(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn max_t(&self) -> usize {
        self.dims[0].len() - 1
    }

    /// Dimension of `E_r^{s,t}`, zero outside the grid.
    pub fn dim(&self, s: usize, t: usize) -> usize {
        self.dims.get(s).and_then(|c| c.get(t)).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[Vec<usize>] {
        &self.dims
    }

    pub fn entry(&self, s: usize, t: usize) -> FgAbelianGroup {
        FgAbelianGroup::from_orders(0, (0..self.dim(s, t)).map(|_| Int::Small(self.prime as i64)))
    }

    /// `d_1` out of `(s, t)`; `None` on `E_2`.
    pub fn differential(&self, s: usize, t: usize) -> Option<&[Vec<u64>]> {
        self.differentials.as_ref().map(|d| d[s][t].as_slice())
    }

    /// Rows indexed by `t`, each listing the dimensions for increasing `s`.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..=self.max_t()).map(|t| (0..=self.max_s()).map(|s| self.dims[s][t]).collect()).collect()
    }
}

fn prime_of(coeff: CoefficientRing) -> Result<u64> {
    coeff.validate()?;
    match coeff {
        CoefficientRing::ModN(n) => coeff.prime_field().ok_or(Error::CompositeModulus(n)),
        other => Err(Error::InvalidCoefficients(format!(
            "spectral pages are computed over Z/ℓ for a prime ℓ, got {other}"
        ))),
    }
}

/// `δ_v: A^{s,t} → A^{s,t+1}`
fn delta_v(dc: &DoubleComplex, arith: &ModArith, s: usize, t: usize) -> FpMatrix {
    FpMatrix::transpose_of(&dc.v(s, t + 1), arith)
}

/// `δ_h: A^{s,t} → A^{s+1,t}`
fn delta_h(dc: &DoubleComplex, arith: &ModArith, s: usize, t: usize) -> FpMatrix {
    FpMatrix::transpose_of(&dc.h(s + 1, t), arith)
}

/// `E_1^{s,t}` for the vertical-first orientation: `ker δ_v / im δ_v`.
fn e1_entry(dc: &DoubleComplex, arith: &ModArith, s: usize, t: usize) -> FpSubquotient {
    let p = arith.modulus();
    let cycles = delta_v(dc, arith, s, t).kernel(p);
    let relations = match t {
        0 => Vec::new(),
        _ => delta_v(dc, arith, s, t - 1).columns().to_vec(),
    };
    FpSubquotient::new(p, dc.rank(s, t), &relations, &cycles)
}

/// `d_1: E_1^{s,t} → E_1^{s+1,t}` induced by `δ_h`.
fn d1_matrix(dc: &DoubleComplex, arith: &ModArith, s: usize, t: usize, src: &FpSubquotient, dst: &FpSubquotient) -> FpMatrix {
    let p = arith.modulus();
    let dh = delta_h(dc, arith, s, t);
    let cols = src
        .representatives()
        .iter()
        .map(|z| {
            let coords = dst
                .coordinates(&dh.apply(z, p))
                .expect("δ_h commutes with δ_v, so it maps cycles to cycles");
            dense_to_sparse(&coords)
        })
        .collect();
    FpMatrix::from_columns(dst.dim(), cols)
}

fn dense_to_sparse(v: &[u64]) -> FpVec {
    v.iter()
        .enumerate()
        .filter(|(_, e)| **e != 0)
        .map(|(r, e)| (r as u32, *e))
        .collect()
}

/// `(E_1 dims, d_1 matrices, E_2 dims)` in the vertical-first orientation.
fn vertical_first(dc: &DoubleComplex, p: u64) -> (Vec<Vec<usize>>, Vec<Vec<FpMatrix>>, Vec<Vec<usize>>) {
    let arith = ModArith::new(p);
    let (ms, mt) = (dc.max_s(), dc.max_t());
    let cells: Vec<(usize, usize)> = (0..=ms).flat_map(|s| (0..=mt).map(move |t| (s, t))).collect();
    let e1: Vec<FpSubquotient> = cells.par_iter().map(|&(s, t)| e1_entry(dc, &arith, s, t)).collect();
    let at = |s: usize, t: usize| &e1[s * (mt + 1) + t];
    let empty = FpSubquotient::new(p, 0, &[], &[]);
    let d1: Vec<FpMatrix> = cells
        .par_iter()
        .map(|&(s, t)| {
            let dst = if s < ms { at(s + 1, t) } else { &empty };
            d1_matrix(dc, &arith, s, t, at(s, t), dst)
        })
        .collect();
    let ranks: Vec<usize> = d1.par_iter().map(|m| m.rank(p)).collect();
    let rank_at = |s: usize, t: usize| ranks[s * (mt + 1) + t];
    let e1_dims: Vec<Vec<usize>> = (0..=ms).map(|s| (0..=mt).map(|t| at(s, t).dim()).collect()).collect();
    let e2_dims = (0..=ms)
        .map(|s| {
            (0..=mt)
                .map(|t| e1_dims[s][t] - rank_at(s, t) - if s > 0 { rank_at(s - 1, t) } else { 0 })
                .collect()
        })
        .collect();
    let mut d1 = d1.into_iter();
    let d1_grid = (0..=ms).map(|_| (0..=mt).map(|_| d1.next().expect("one per cell")).collect()).collect();
    (e1_dims, d1_grid, e2_dims)
}

fn transpose_grid<T: Clone>(g: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = g.first().map_or(0, Vec::len);
    (0..cols).map(|t| g.iter().map(|c| c[t].clone()).collect()).collect()
}

/// The page `E_r`, `r ∈ {1, 2}`, with coefficients `Z/ℓ` for a prime `ℓ`.
///
/// Dimensions are reported for the whole grid; an entry is meaningful when
/// [`DoubleComplex::is_valid`] holds there.
pub fn page(dc: &DoubleComplex, r: usize, coeff: CoefficientRing, orientation: Orientation) -> Result<SpectralPage> {
    let p = prime_of(coeff)?;
    if r != 1 && r != 2 {
        return Err(Error::Unsupported(format!("page E_{r}: only E_1 and E_2 are computed")));
    }
    let (e1, d1, e2) = match orientation {
        Orientation::VerticalFirst => vertical_first(dc, p),
        Orientation::HorizontalFirst => {
            let (e1, d1, e2) = vertical_first(&dc.transpose(), p);
            (transpose_grid(&e1), transpose_grid(&d1), transpose_grid(&e2))
        }
    };
    let (dims, differentials) = if r == 1 {
        let dense = d1.iter().map(|c| c.iter().map(FpMatrix::to_dense).collect()).collect();
        (e1, Some(dense))
    } else {
        (e2, None)
    };
    Ok(SpectralPage {
        r,
        prime: p,
        orientation,
        dims,
        differentials,
    })
}

/// The edge map `H^n(Tot; Z/ℓ) → E_2^{n,0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeMap {
    pub degree: usize,
    pub prime: u64,
    pub source_dim: usize,
    pub target_dim: usize,
    /// `target_dim × source_dim`, entries in `0..ℓ`.
    pub matrix: Vec<Vec<u64>>,
    pub rank: usize,
}

impl EdgeMap {
    pub fn is_isomorphism(&self) -> bool {
        self.rank == self.source_dim && self.rank == self.target_dim
    }
}

/// The map `H^n(Tot; Z/ℓ) → E_2^{n,0}` that restricts a total cocycle to its
/// `(n, 0)` component. Here `E_2^{n,0}` is the bottom-row entry of the
/// horizontal-first spectral sequence, `ker(H^n(A^{•,0}) → H^n(A^{•,1}))`.
pub fn edge_map(dc: &DoubleComplex, n: usize, coeff: CoefficientRing) -> Result<EdgeMap> {
    let p = prime_of(coeff)?;
    let arith = ModArith::new(p);
    let d_out = FpMatrix::transpose_of(&total_differential(dc, n + 1), &arith);
    let d_in = FpMatrix::transpose_of(&total_differential(dc, n), &arith);
    let h = FpSubquotient::new(p, total_rank(dc, n), d_in.columns(), &d_out.kernel(p));

    // E_1^{n,0} of the horizontal-first sequence is H^n of the bottom row.
    let row_relations = match n {
        0 => Vec::new(),
        _ => delta_h(dc, &arith, n - 1, 0).columns().to_vec(),
    };
    let row = FpSubquotient::new(p, dc.rank(n, 0), &row_relations, &delta_h(dc, &arith, n, 0).kernel(p));
    // A class lies in E_2^{n,0} when δ_v of its representative is a
    // coboundary of row 1; reduction against those coboundaries is linear.
    let mut row1 = Echelon::new(arith, dc.rank(n, 1));
    if n > 0 {
        for b in delta_h(dc, &arith, n - 1, 1).columns() {
            row1.insert(b.clone());
        }
    }
    let dv = delta_v(dc, &arith, n, 0);
    let obstruction = FpMatrix::from_columns(
        dc.rank(n, 1),
        row.representatives().iter().map(|z| row1.reduce(dv.apply(z, p))).collect(),
    );
    let e2 = FpSubquotient::new(p, row.dim(), &[], &obstruction.kernel(p));

    let (lo, hi) = if total_range(dc, n).contains(&n) {
        let offsets = total_offsets(dc, n);
        let k = n - total_range(dc, n).start;
        (offsets[k] as u32, offsets[k + 1] as u32)
    } else {
        (0, 0)
    };
    let columns: Vec<FpVec> = h
        .representatives()
        .iter()
        .map(|x| {
            let y: FpVec = x
                .iter()
                .filter(|(r, _)| (lo..hi).contains(r))
                .map(|(r, e)| (r - lo, *e))
                .collect();
            let c = row
                .coordinates(&y)
                .expect("the (n,0) component of a total cocycle is a row cocycle");
            let c = e2
                .coordinates(&dense_to_sparse(&c))
                .expect("its class is killed by d_1");
            dense_to_sparse(&c)
        })
        .collect();
    let m = FpMatrix::from_columns(e2.dim(), columns);
    Ok(EdgeMap {
        degree: n,
        prime: p,
        source_dim: h.dim(),
        target_dim: e2.dim(),
        matrix: m.to_dense(),
        rank: m.rank(p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bar::FiniteGroup;
    use crate::exact::IntMatrix;
    use crate::spectral::build_constant_row_grid;

    #[test]
    fn zero_complex_has_zero_pages() {
        let dc = DoubleComplex::zero(2, 2);
        let e2 = page(&dc, 2, CoefficientRing::ModN(3), Orientation::VerticalFirst).unwrap();
        assert!(e2.dims().iter().flatten().all(|&d| d == 0));
        let e = edge_map(&dc, 1, CoefficientRing::ModN(3)).unwrap();
        assert_eq!((e.source_dim, e.target_dim), (0, 0));
    }

    #[test]
    fn composite_modulus_is_rejected() {
        let dc = DoubleComplex::zero(1, 1);
        assert_eq!(
            page(&dc, 2, CoefficientRing::ModN(6), Orientation::VerticalFirst),
            Err(Error::CompositeModulus(6))
        );
        assert!(matches!(page(&dc, 3, CoefficientRing::ModN(2), Orientation::VerticalFirst), Err(Error::Unsupported(_))));
    }

    #[test]
    fn z2_grid_degenerates() {
        let dc = build_constant_row_grid(&FiniteGroup::cyclic(2), 5, 5, CoefficientRing::ModN(2)).unwrap();
        for orientation in [Orientation::VerticalFirst, Orientation::HorizontalFirst] {
            let e2 = page(&dc, 2, CoefficientRing::ModN(2), orientation).unwrap();
            for s in 0..5 {
                assert_eq!(e2.dim(s, 0), 1);
                for t in 1..5 {
                    assert_eq!(e2.dim(s, t), 0, "{orientation:?} ({s},{t})");
                }
            }
        }
        for n in 0..5 {
            assert!(edge_map(&dc, n, CoefficientRing::ModN(2)).unwrap().is_isomorphism());
        }
    }

    #[test]
    fn one_row_edge_map_is_identity() {
        let bar = crate::bar::bar_complex(&FiniteGroup::cyclic(3), 3);
        let d_h = (1..=3).map(|s| vec![bar.differential(s)]).collect();
        let d_v = (0..=3).map(|_| Vec::new()).collect();
        let ranks = (0..=3).map(|s| vec![bar.rank(s)]).collect();
        let dc = DoubleComplex::new(ranks, d_h, d_v).unwrap();
        for n in 0..3 {
            let e = edge_map(&dc, n, CoefficientRing::ModN(3)).unwrap();
            assert_eq!(e.source_dim, 1);
            assert_eq!(e.matrix, vec![vec![1]]);
        }
    }

    #[test]
    fn e1_differential_of_a_koszul_square() {
        let one = || IntMatrix::identity(1);
        let dc = DoubleComplex::new(vec![vec![1, 1], vec![1, 1]], vec![vec![one(), one()]], vec![vec![one()], vec![one()]]).unwrap();
        let e1 = page(&dc, 1, CoefficientRing::ModN(5), Orientation::VerticalFirst).unwrap();
        assert!(e1.dims().iter().flatten().all(|&d| d == 0));
        let hf = page(&dc, 1, CoefficientRing::ModN(5), Orientation::HorizontalFirst).unwrap();
        assert_eq!(hf.dims(), e1.dims());
    }
}
