use crate::bar::{bar_complex, FiniteGroup};
use crate::complexes::ChainComplex;
use crate::error::{Error, Result};
use crate::exact::{CoefficientRing, Int, IntMatrix};

/// A first-quadrant double complex of free abelian groups `A_{s,t}`,
/// `0 ≤ s ≤ max_s`, `0 ≤ t ≤ max_t`, with commuting differentials
/// `d_h: A_{s,t} → A_{s-1,t}` and `d_v: A_{s,t} → A_{s,t-1}`.
///
/// A truncated direction continues past its bound, so entries next to that
/// edge of the window are not trustworthy; see [`DoubleComplex::is_valid`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleComplex {
    max_s: usize,
    max_t: usize,
    /// `ranks[s][t]`
    ranks: Vec<Vec<usize>>,
    /// `d_h[s - 1][t]` is the map out of `(s, t)`.
    d_h: Vec<Vec<IntMatrix>>,
    /// `d_v[s][t - 1]` is the map out of `(s, t)`.
    d_v: Vec<Vec<IntMatrix>>,
    truncated_s: bool,
    truncated_t: bool,
}

impl DoubleComplex {
    pub fn new(ranks: Vec<Vec<usize>>, d_h: Vec<Vec<IntMatrix>>, d_v: Vec<Vec<IntMatrix>>) -> Result<Self> {
        let dc = Self::new_unchecked(ranks, d_h, d_v)?;
        dc.validate()?;
        Ok(dc)
    }

    fn new_unchecked(ranks: Vec<Vec<usize>>, d_h: Vec<Vec<IntMatrix>>, d_v: Vec<Vec<IntMatrix>>) -> Result<Self> {
        let bad = |m: String| Error::NotADoubleComplex(m);
        if ranks.is_empty() || ranks[0].is_empty() {
            return Err(bad("the grid needs the entry (0,0)".into()));
        }
        let max_s = ranks.len() - 1;
        let max_t = ranks[0].len() - 1;
        if ranks.iter().any(|col| col.len() != max_t + 1) {
            return Err(bad("every column of ranks must have the same length".into()));
        }
        if d_h.len() != max_s || d_h.iter().any(|c| c.len() != max_t + 1) {
            return Err(bad(format!("d_h must be a {}x{} grid of matrices", max_s, max_t + 1)));
        }
        if d_v.len() != max_s + 1 || d_v.iter().any(|c| c.len() != max_t) {
            return Err(bad(format!("d_v must be a {}x{} grid of matrices", max_s + 1, max_t)));
        }
        let dc = DoubleComplex {
            max_s,
            max_t,
            ranks,
            d_h,
            d_v,
            truncated_s: false,
            truncated_t: false,
        };
        for s in 0..=max_s {
            for t in 0..=max_t {
                if s > 0 && dc.d_h[s - 1][t].shape() != (dc.rank(s - 1, t), dc.rank(s, t)) {
                    return Err(bad(format!("d_h at ({s},{t}) has the wrong shape")));
                }
                if t > 0 && dc.d_v[s][t - 1].shape() != (dc.rank(s, t - 1), dc.rank(s, t)) {
                    return Err(bad(format!("d_v at ({s},{t}) has the wrong shape")));
                }
            }
        }
        Ok(dc)
    }

    /// Checks `d_h² = 0`, `d_v² = 0` and `d_h d_v = d_v d_h`.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Error::NotADoubleComplex(m);
        for s in 0..=self.max_s {
            for t in 0..=self.max_t {
                if s >= 2 && !self.h(s - 1, t).mul(&self.h(s, t))?.is_zero() {
                    return Err(bad(format!("d_h ∘ d_h ≠ 0 at ({s},{t})")));
                }
                if t >= 2 && !self.v(s, t - 1).mul(&self.v(s, t))?.is_zero() {
                    return Err(bad(format!("d_v ∘ d_v ≠ 0 at ({s},{t})")));
                }
                if s >= 1 && t >= 1 && self.h(s, t - 1).mul(&self.v(s, t))? != self.v(s - 1, t).mul(&self.h(s, t))? {
                    return Err(bad(format!("d_h and d_v do not commute at ({s},{t})")));
                }
            }
        }
        Ok(())
    }

    pub fn zero(max_s: usize, max_t: usize) -> Self {
        Self::from_fn(max_s, max_t, |_, _| 0, |s, t, r| IntMatrix::zeros(r(s - 1, t), r(s, t)), |s, t, r| {
            IntMatrix::zeros(r(s, t - 1), r(s, t))
        })
    }

    /// Marks the directions in which the grid is a window onto a larger
    /// complex.
    pub fn with_truncation(mut self, truncated_s: bool, truncated_t: bool) -> Self {
        self.truncated_s = truncated_s;
        self.truncated_t = truncated_t;
        self
    }

    fn from_fn(
        max_s: usize,
        max_t: usize,
        rank: impl Fn(usize, usize) -> usize,
        h: impl Fn(usize, usize, &dyn Fn(usize, usize) -> usize) -> IntMatrix,
        v: impl Fn(usize, usize, &dyn Fn(usize, usize) -> usize) -> IntMatrix,
    ) -> Self {
        let ranks: Vec<Vec<usize>> = (0..=max_s).map(|s| (0..=max_t).map(|t| rank(s, t)).collect()).collect();
        let r = |s: usize, t: usize| ranks[s][t];
        let d_h = (1..=max_s).map(|s| (0..=max_t).map(|t| h(s, t, &r)).collect()).collect();
        let d_v = (0..=max_s).map(|s| (1..=max_t).map(|t| v(s, t, &r)).collect()).collect();
        DoubleComplex {
            max_s,
            max_t,
            ranks,
            d_h,
            d_v,
            truncated_s: false,
            truncated_t: false,
        }
    }

    pub fn max_s(&self) -> usize {
        self.max_s
    }

    pub fn max_t(&self) -> usize {
        self.max_t
    }

    pub fn truncation(&self) -> (bool, bool) {
        (self.truncated_s, self.truncated_t)
    }

    /// Rank of `A_{s,t}`, zero outside the grid.
    pub fn rank(&self, s: usize, t: usize) -> usize {
        if s <= self.max_s && t <= self.max_t {
            self.ranks[s][t]
        } else {
            0
        }
    }

    /// `d_h` out of `(s, t)`; zero when `s = 0` or outside the grid.
    pub fn h(&self, s: usize, t: usize) -> IntMatrix {
        if s >= 1 && s <= self.max_s && t <= self.max_t {
            self.d_h[s - 1][t].clone()
        } else {
            IntMatrix::zeros(self.rank(s.wrapping_sub(1), t), self.rank(s, t))
        }
    }

    /// `d_v` out of `(s, t)`; zero when `t = 0` or outside the grid.
    pub fn v(&self, s: usize, t: usize) -> IntMatrix {
        if t >= 1 && s <= self.max_s && t <= self.max_t {
            self.d_v[s][t - 1].clone()
        } else {
            IntMatrix::zeros(self.rank(s, t.wrapping_sub(1)), self.rank(s, t))
        }
    }

    /// The double complex with the roles of `s` and `t` exchanged.
    pub fn transpose(&self) -> DoubleComplex {
        DoubleComplex::from_fn(
            self.max_t,
            self.max_s,
            |s, t| self.rank(t, s),
            |s, t, _| self.v(t, s),
            |s, t, _| self.h(t, s),
        )
        .with_truncation(self.truncated_t, self.truncated_s)
    }

    /// Whether `(s, t)` lies far enough inside the window that the maps
    /// leaving it, and hence its `E_1` and `E_2` entries, are those of the
    /// untruncated complex.
    pub fn is_valid(&self, s: usize, t: usize) -> bool {
        s <= self.max_s
            && t <= self.max_t
            && (!self.truncated_s || s < self.max_s)
            && (!self.truncated_t || t < self.max_t)
    }

    /// Whether total degree `n` of the total complex is computed correctly:
    /// every entry of total degree `n + 1` is inside the window.
    pub fn is_valid_total(&self, n: usize) -> bool {
        (!self.truncated_s || n < self.max_s) && (!self.truncated_t || n < self.max_t)
    }
}

/// `Tot_n = ⊕_{s+t=n} A_{s,t}` with `d = d_h + (-1)^s d_v`. Summands are
/// ordered by increasing `s`.
pub fn totalize(dc: &DoubleComplex) -> Result<ChainComplex> {
    let top = dc.max_s + dc.max_t;
    let ranks: Vec<usize> = (0..=top).map(|n| total_rank(dc, n)).collect();
    let diffs = (1..=top).map(|n| total_differential(dc, n)).collect();
    let truncated = dc.truncated_s || dc.truncated_t;
    ChainComplex::new(ranks, diffs, truncated).map_err(|e| Error::NotADoubleComplex(e.to_string()))
}

pub(crate) fn total_rank(dc: &DoubleComplex, n: usize) -> usize {
    total_offsets(dc, n).last().copied().unwrap_or(0)
}

/// `d_n: Tot_n → Tot_{n-1}`, the zero map out of `Tot_0` when `n = 0`.
pub(crate) fn total_differential(dc: &DoubleComplex, n: usize) -> IntMatrix {
    if n == 0 {
        return IntMatrix::zeros(0, total_rank(dc, 0));
    }
    let (src_range, dst_range) = (total_range(dc, n), total_range(dc, n - 1));
    let src = total_offsets(dc, n);
    let dst = total_offsets(dc, n - 1);
    let mut triplets = Vec::new();
    for s in src_range.clone() {
        let t = n - s;
        let col0 = src[s - src_range.start];
        if s >= 1 && dst_range.contains(&(s - 1)) {
            let row0 = dst[s - 1 - dst_range.start];
            for (i, j, x) in dc.h(s, t).entries() {
                triplets.push((row0 + i, col0 + j, x.clone()));
            }
        }
        if t >= 1 && dst_range.contains(&s) {
            let row0 = dst[s - dst_range.start];
            let sign = Int::Small(if s % 2 == 0 { 1 } else { -1 });
            for (i, j, x) in dc.v(s, t).entries() {
                triplets.push((row0 + i, col0 + j, x.mul(&sign)));
            }
        }
    }
    IntMatrix::from_triplets(total_rank(dc, n - 1), total_rank(dc, n), triplets)
}

/// Column indices `s` with `(s, n - s)` inside the grid.
pub(crate) fn total_range(dc: &DoubleComplex, n: usize) -> std::ops::Range<usize> {
    n.saturating_sub(dc.max_t)..n.min(dc.max_s) + 1
}

/// Starting offsets of the summands of `Tot_n`, followed by its rank.
pub(crate) fn total_offsets(dc: &DoubleComplex, n: usize) -> Vec<usize> {
    let mut out = vec![0];
    for s in total_range(dc, n) {
        let last = *out.last().expect("nonempty");
        out.push(last + dc.rank(s, n - s));
    }
    out
}

/// The grid whose row `t` is the bar complex of `g` for every `t`, with
/// vertical maps the alternating sums of `t + 2` identical cofaces: zero for
/// `d_v` out of odd `t`, the identity out of even `t ≥ 2`. Cohomology with
/// `Z/ℓ` coefficients dualizes each row. Both directions are truncated, so
/// build one step beyond the window of interest.
pub fn build_constant_row_grid(g: &FiniteGroup, max_s: usize, max_t: usize, coeff: CoefficientRing) -> Result<DoubleComplex> {
    coeff.validate()?;
    let bar = bar_complex(g, max_s);
    let dc = DoubleComplex::from_fn(
        max_s,
        max_t,
        |s, _| bar.rank(s),
        |s, _, _| bar.differential(s),
        |s, t, r| {
            if t % 2 == 0 {
                IntMatrix::identity(r(s, t))
            } else {
                IntMatrix::zeros(r(s, t), r(s, t))
            }
        },
    );
    Ok(dc.with_truncation(true, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::FgAbelianGroup;

    fn koszul_square() -> DoubleComplex {
        let one = || IntMatrix::identity(1);
        DoubleComplex::new(vec![vec![1, 1], vec![1, 1]], vec![vec![one(), one()]], vec![vec![one()], vec![one()]]).unwrap()
    }

    #[test]
    fn koszul_square_is_acyclic() {
        let tot = totalize(&koszul_square()).unwrap();
        assert_eq!(tot.ranks(), &[1, 2, 1]);
        for h in tot.all_homology(CoefficientRing::Integers).unwrap() {
            assert!(h.is_trivial());
        }
    }

    #[test]
    fn zero_complex() {
        let tot = totalize(&DoubleComplex::zero(2, 3)).unwrap();
        assert!(tot.ranks().iter().all(|&r| r == 0));
    }

    #[test]
    fn rejects_anticommuting_squares() {
        let one = IntMatrix::identity(1);
        let minus = IntMatrix::scalar(1, crate::exact::Int::Small(-1));
        let err = DoubleComplex::new(
            vec![vec![1, 1], vec![1, 1]],
            vec![vec![one.clone(), one.clone()]],
            vec![vec![one], vec![minus]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotADoubleComplex(_)));
    }

    #[test]
    fn constant_rows_for_z2() {
        let dc = build_constant_row_grid(&FiniteGroup::cyclic(2), 4, 4, CoefficientRing::ModN(2)).unwrap();
        dc.validate().unwrap();
        let tot = totalize(&dc).unwrap();
        for n in 0..4 {
            assert!(dc.is_valid_total(n));
            assert_eq!(tot.cohomology(n, CoefficientRing::ModN(2)).unwrap(), FgAbelianGroup::cyclic(2));
        }
        assert!(!dc.is_valid_total(4));
    }

    #[test]
    fn transpose_is_involutive() {
        let dc = build_constant_row_grid(&FiniteGroup::cyclic(3), 2, 3, CoefficientRing::ModN(3)).unwrap();
        let tt = dc.transpose();
        tt.validate().unwrap();
        assert_eq!(tt.transpose(), dc);
        assert_eq!(tt.max_s(), 3);
    }
}
