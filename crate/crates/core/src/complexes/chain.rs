use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{homology_at, homology_from_factors, invariant_factors, CoefficientRing, FgAbelianGroup, Int, IntMatrix};

/// A chain complex of free abelian groups `C_0 ← C_1 ← … ← C_N`.
///
/// When `truncated` is set the complex continues beyond `N` and the top
/// degree has no outgoing information, so homology is only reported below
/// `N`. A bounded complex is zero above `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    /// `differentials[i - 1]` is `d_i: C_i → C_{i-1}`.
    differentials: Vec<IntMatrix>,
    labels: Option<Vec<Vec<String>>>,
    truncated: bool,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, differentials: Vec<IntMatrix>, truncated: bool) -> Result<Self> {
        let c = Self::new_unchecked(ranks, differentials, truncated)?;
        c.check_boundary_squared()?;
        Ok(c)
    }

    /// Checks shapes but not `d ∘ d = 0`; for complexes whose differentials
    /// only square to zero modulo some `n`.
    pub(crate) fn new_unchecked(ranks: Vec<usize>, differentials: Vec<IntMatrix>, truncated: bool) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::DimensionMismatch("a complex needs at least degree 0".into()));
        }
        if differentials.len() + 1 != ranks.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                differentials.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            let i = k + 1;
            if d.shape() != (ranks[i - 1], ranks[i]) {
                return Err(Error::DimensionMismatch(format!(
                    "d_{i} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[i - 1],
                    ranks[i]
                )));
            }
        }
        Ok(ChainComplex {
            ranks,
            differentials,
            labels: None,
            truncated,
        })
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self> {
        if labels.len() != self.ranks.len() || labels.iter().zip(&self.ranks).any(|(l, r)| l.len() != *r) {
            return Err(Error::DimensionMismatch("labels do not match ranks".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn zero(max_degree: usize) -> Self {
        ChainComplex {
            ranks: vec![0; max_degree + 1],
            differentials: (0..max_degree).map(|_| IntMatrix::zeros(0, 0)).collect(),
            labels: None,
            truncated: false,
        }
    }

    pub fn check_boundary_squared(&self) -> Result<()> {
        let bad = (1..self.differentials.len())
            .into_par_iter()
            .find_first(|&k| !self.differentials[k - 1].mul(&self.differentials[k]).map(|p| p.is_zero()).unwrap_or(false));
        match bad {
            Some(k) => Err(Error::NotAComplex(format!("d_{} ∘ d_{} ≠ 0", k, k + 1))),
            None => Ok(()),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    /// `d_i: C_i → C_{i-1}`; `d_0` is the zero map to the zero group.
    pub fn differential(&self, i: usize) -> IntMatrix {
        if i == 0 {
            return IntMatrix::zeros(0, self.ranks[0]);
        }
        match self.differentials.get(i - 1) {
            Some(d) => d.clone(),
            None => IntMatrix::zeros(self.rank(i - 1), self.rank(i)),
        }
    }

    pub fn differentials(&self) -> &[IntMatrix] {
        &self.differentials
    }

    pub fn labels(&self, i: usize) -> Option<&[String]> {
        self.labels.as_ref().and_then(|l| l.get(i)).map(Vec::as_slice)
    }

    fn check_degree(&self, i: usize) -> Result<()> {
        let n = self.max_degree();
        if i > n || (self.truncated && i >= n) {
            return Err(Error::TruncationTooSmall {
                degree: i,
                needed: i + 1,
                got: n,
            });
        }
        Ok(())
    }

    /// `H_i(C ⊗ coeff)`.
    pub fn homology(&self, i: usize, coeff: CoefficientRing) -> Result<FgAbelianGroup> {
        self.check_degree(i)?;
        homology_at(&self.differential(i + 1), &self.differential(i), coeff)
    }

    /// Homology in every reportable degree. Each differential's invariant
    /// factors are computed once, in parallel across degrees.
    pub fn all_homology(&self, coeff: CoefficientRing) -> Result<Vec<FgAbelianGroup>> {
        coeff.validate()?;
        let top = if self.truncated { self.max_degree() } else { self.max_degree() + 1 };
        let exact = (1..self.differentials.len())
            .into_par_iter()
            .all(|k| self.differentials[k - 1].mul(&self.differentials[k]).map(|p| p.is_zero()).unwrap_or(false));
        if !exact {
            return (0..top).into_par_iter().map(|i| self.homology(i, coeff)).collect();
        }
        // factors[i] belongs to d_i; d_0 and maps past the top are zero.
        let factors: Vec<Vec<Int>> = (0..=top)
            .into_par_iter()
            .map(|i| if i == 0 || i > self.differentials.len() { Vec::new() } else { invariant_factors(&self.differentials[i - 1]) })
            .collect();
        Ok((0..top)
            .map(|i| homology_from_factors(self.ranks[i], &factors[i + 1], &factors[i], coeff))
            .collect())
    }

    /// The complex cut down to degrees `0..=n`, marked truncated.
    pub fn truncate(&self, n: usize) -> ChainComplex {
        let n = n.min(self.max_degree());
        ChainComplex {
            ranks: self.ranks[..=n].to_vec(),
            differentials: self.differentials[..n].to_vec(),
            labels: self.labels.as_ref().map(|l| l[..=n].to_vec()),
            truncated: self.truncated || n < self.max_degree(),
        }
    }

    /// The cochain complex `Hom(C, coeff)` as a list of coboundary matrices
    /// `δ^i: C^i → C^{i+1}`.
    pub fn cochain_differentials(&self, coeff: CoefficientRing) -> Vec<IntMatrix> {
        self.differentials
            .iter()
            .map(|d| crate::exact::dualize(d, coeff))
            .collect()
    }

    /// `H^i(Hom(C, coeff))`.
    pub fn cohomology(&self, i: usize, coeff: CoefficientRing) -> Result<FgAbelianGroup> {
        self.check_degree(i)?;
        crate::exact::cohomology_at(&self.differential(i), &self.differential(i + 1), coeff)
    }
}

/// A chain complex with its differentials reduced for a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensoredComplex {
    complex: ChainComplex,
    coeff: CoefficientRing,
}

impl TensoredComplex {
    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn coefficients(&self) -> CoefficientRing {
        self.coeff
    }

    pub fn homology(&self, i: usize) -> Result<FgAbelianGroup> {
        self.complex.homology(i, self.coeff)
    }

    pub fn all_homology(&self) -> Result<Vec<FgAbelianGroup>> {
        self.complex.all_homology(self.coeff)
    }
}

/// `C ⊗ A`: same ranks, entries reduced modulo `n` for `Z/n`.
pub fn tensor(c: &ChainComplex, coeff: CoefficientRing) -> TensoredComplex {
    let complex = match coeff {
        CoefficientRing::ModN(n) => ChainComplex {
            ranks: c.ranks.clone(),
            differentials: c.differentials.iter().map(|d| d.reduce_mod(n)).collect(),
            labels: c.labels.clone(),
            truncated: c.truncated,
        },
        _ => c.clone(),
    };
    TensoredComplex { complex, coeff }
}
