//! Simplicial abelian groups, their alternating-face complexes and their
//! normalized (degeneracy-quotient) complexes.

use rayon::prelude::*;

use super::chain::ChainComplex;
use crate::error::{Error, Result};
use crate::exact::{smith_normal_form, Int, IntMatrix};

/// A face or degeneracy map between free abelian groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplicialMap {
    /// Sends basis vector `j` to basis vector `images[j]`.
    Basis { target: usize, images: Vec<u32> },
    Matrix(IntMatrix),
}

impl SimplicialMap {
    pub fn from_images(target: usize, images: Vec<u32>) -> Self {
        SimplicialMap::Basis { target, images }
    }

    pub fn source_dim(&self) -> usize {
        match self {
            SimplicialMap::Basis { images, .. } => images.len(),
            SimplicialMap::Matrix(m) => m.cols(),
        }
    }

    pub fn target_dim(&self) -> usize {
        match self {
            SimplicialMap::Basis { target, .. } => *target,
            SimplicialMap::Matrix(m) => m.rows(),
        }
    }

    pub fn to_matrix(&self) -> IntMatrix {
        match self {
            SimplicialMap::Basis { target, images } => {
                IntMatrix::from_index_map(*target, &images.iter().map(|&i| i as usize).collect::<Vec<_>>())
            }
            SimplicialMap::Matrix(m) => m.clone(),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SimplicialMap) -> Result<SimplicialMap> {
        if first.target_dim() != self.source_dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose a map from rank {} after a map into rank {}",
                self.source_dim(),
                first.target_dim()
            )));
        }
        Ok(match (self, first) {
            (SimplicialMap::Basis { target, images: outer }, SimplicialMap::Basis { images: inner, .. }) => {
                SimplicialMap::Basis {
                    target: *target,
                    images: inner.iter().map(|&i| outer[i as usize]).collect(),
                }
            }
            _ => SimplicialMap::Matrix(self.to_matrix().mul(&first.to_matrix())?),
        })
    }

    fn same_as(&self, other: &SimplicialMap) -> bool {
        match (self, other) {
            (SimplicialMap::Basis { target: t1, images: a }, SimplicialMap::Basis { target: t2, images: b }) => {
                t1 == t2 && a == b
            }
            _ => self.to_matrix() == other.to_matrix(),
        }
    }

    fn is_identity(&self) -> bool {
        match self {
            SimplicialMap::Basis { target, images } => {
                *target == images.len() && images.iter().enumerate().all(|(j, &i)| j == i as usize)
            }
            SimplicialMap::Matrix(m) => *m == IntMatrix::identity(m.cols()),
        }
    }
}

/// A simplicial abelian group known up to degree `max_degree`, each degree
/// free of finite rank.
#[derive(Clone, Debug)]
pub struct SimplicialAbelianGroup {
    ranks: Vec<usize>,
    /// `faces[i][k]` is `∂_k: A_i → A_{i-1}`; `faces[0]` is empty.
    faces: Vec<Vec<SimplicialMap>>,
    /// `degeneracies[i][k]` is `s_k: A_i → A_{i+1}` for `i < max_degree`.
    degeneracies: Vec<Vec<SimplicialMap>>,
    labels: Option<Vec<Vec<String>>>,
}

impl SimplicialAbelianGroup {
    /// Validates shapes and every simplicial identity up to `max_degree`.
    pub fn new(
        ranks: Vec<usize>,
        faces: Vec<Vec<SimplicialMap>>,
        degeneracies: Vec<Vec<SimplicialMap>>,
        labels: Option<Vec<Vec<String>>>,
    ) -> Result<Self> {
        let s = SimplicialAbelianGroup {
            ranks,
            faces,
            degeneracies,
            labels,
        };
        s.check_shapes()?;
        s.check_identities()?;
        Ok(s)
    }

    /// The constant simplicial group on `Z^rank`: all faces and degeneracies
    /// are identities.
    pub fn constant(rank: usize, max_degree: usize) -> Self {
        let id = SimplicialMap::from_images(rank, (0..rank as u32).collect());
        let faces = (0..=max_degree).map(|i| if i == 0 { vec![] } else { vec![id.clone(); i + 1] }).collect();
        let degeneracies = (0..max_degree).map(|i| vec![id.clone(); i + 1]).collect();
        SimplicialAbelianGroup {
            ranks: vec![rank; max_degree + 1],
            faces,
            degeneracies,
            labels: None,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn face(&self, i: usize, k: usize) -> &SimplicialMap {
        &self.faces[i][k]
    }

    pub fn degeneracy(&self, i: usize, k: usize) -> &SimplicialMap {
        &self.degeneracies[i][k]
    }

    pub fn labels(&self) -> Option<&Vec<Vec<String>>> {
        self.labels.as_ref()
    }

    fn check_shapes(&self) -> Result<()> {
        let n = self.ranks.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("no degrees".into()));
        }
        if self.faces.len() != n || self.degeneracies.len() != n - 1 {
            return Err(Error::DimensionMismatch("face/degeneracy lists do not match the degree range".into()));
        }
        for i in 0..n {
            let expected = if i == 0 { 0 } else { i + 1 };
            if self.faces[i].len() != expected {
                return Err(Error::DimensionMismatch(format!("degree {i} needs {expected} faces")));
            }
            for (k, f) in self.faces[i].iter().enumerate() {
                if f.source_dim() != self.ranks[i] || f.target_dim() != self.ranks[i - 1] {
                    return Err(Error::DimensionMismatch(format!("face ∂_{k} in degree {i} has the wrong shape")));
                }
            }
            if i + 1 < n {
                if self.degeneracies[i].len() != i + 1 {
                    return Err(Error::DimensionMismatch(format!("degree {i} needs {} degeneracies", i + 1)));
                }
                for (k, s) in self.degeneracies[i].iter().enumerate() {
                    if s.source_dim() != self.ranks[i] || s.target_dim() != self.ranks[i + 1] {
                        return Err(Error::DimensionMismatch(format!(
                            "degeneracy s_{k} in degree {i} has the wrong shape"
                        )));
                    }
                }
            }
        }
        if let Some(labels) = &self.labels {
            if labels.len() != n || labels.iter().zip(&self.ranks).any(|(l, r)| l.len() != *r) {
                return Err(Error::DimensionMismatch("labels do not match ranks".into()));
            }
        }
        Ok(())
    }

    /// Checks `∂_j∂_k = ∂_{k-1}∂_j` (j < k), the three `∂_j s_k` relations and
    /// `s_j s_k = s_{k+1} s_j` (j ≤ k) on every stored map.
    pub fn check_identities(&self) -> Result<()> {
        let n = self.max_degree();
        let mut checks: Vec<(usize, &'static str, usize, usize)> = Vec::new();
        for i in 2..=n {
            for k in 0..=i {
                for j in 0..k {
                    checks.push((i, "dd", j, k));
                }
            }
        }
        for i in 0..n {
            for k in 0..=i {
                for j in 0..=i + 1 {
                    checks.push((i, "ds", j, k));
                }
            }
        }
        for i in 0..n.saturating_sub(1) {
            for k in 0..=i {
                for j in 0..=k {
                    checks.push((i, "ss", j, k));
                }
            }
        }
        checks.into_par_iter().try_for_each(|(i, kind, j, k)| self.check_one(i, kind, j, k))
    }

    fn check_one(&self, i: usize, kind: &str, j: usize, k: usize) -> Result<()> {
        let fail = |what: String| Err(Error::SimplicialIdentityViolation(what));
        match kind {
            "dd" => {
                // On A_i: ∂_j ∂_k = ∂_{k-1} ∂_j.
                let lhs = self.faces[i - 1][j].after(&self.faces[i][k])?;
                let rhs = self.faces[i - 1][k - 1].after(&self.faces[i][j])?;
                if !lhs.same_as(&rhs) {
                    return fail(format!("∂_{j}∂_{k} ≠ ∂_{}∂_{j} in degree {i}", k - 1));
                }
            }
            "ds" => {
                // s_k: A_i → A_{i+1}, then ∂_j: A_{i+1} → A_i.
                let lhs = self.faces[i + 1][j].after(&self.degeneracies[i][k])?;
                if j == k || j == k + 1 {
                    if !lhs.is_identity() {
                        return fail(format!("∂_{j}s_{k} ≠ id in degree {i}"));
                    }
                } else if j < k {
                    // s_{k-1} ∂_j, which needs i ≥ 1.
                    let rhs = self.degeneracies[i - 1][k - 1].after(&self.faces[i][j])?;
                    if !lhs.same_as(&rhs) {
                        return fail(format!("∂_{j}s_{k} ≠ s_{}∂_{j} in degree {i}", k - 1));
                    }
                } else {
                    let rhs = self.degeneracies[i - 1][k].after(&self.faces[i][j - 1])?;
                    if !lhs.same_as(&rhs) {
                        return fail(format!("∂_{j}s_{k} ≠ s_{k}∂_{} in degree {i}", j - 1));
                    }
                }
            }
            _ => {
                // On A_i: s_j s_k = s_{k+1} s_j.
                let lhs = self.degeneracies[i + 1][j].after(&self.degeneracies[i][k])?;
                let rhs = self.degeneracies[i + 1][k + 1].after(&self.degeneracies[i][j])?;
                if !lhs.same_as(&rhs) {
                    return fail(format!("s_{j}s_{k} ≠ s_{}s_{j} in degree {i}", k + 1));
                }
            }
        }
        Ok(())
    }

    /// Whether every face and degeneracy sends basis vectors to basis vectors.
    pub fn is_basis_preserving(&self) -> bool {
        self.faces
            .iter()
            .chain(&self.degeneracies)
            .flatten()
            .all(|m| matches!(m, SimplicialMap::Basis { .. }))
    }

    /// Alternating face sum `d_i = Σ_k (-1)^k ∂_k` in degree `i ≥ 1`.
    pub fn alternating_differential(&self, i: usize) -> IntMatrix {
        let faces = &self.faces[i];
        let (rows, cols) = (self.ranks[i - 1], self.ranks[i]);
        if faces.iter().all(|f| matches!(f, SimplicialMap::Basis { .. })) {
            let columns = (0..cols)
                .into_par_iter()
                .map(|c| {
                    faces
                        .iter()
                        .enumerate()
                        .map(|(k, f)| match f {
                            SimplicialMap::Basis { images, .. } => {
                                (images[c], Int::Small(if k % 2 == 0 { 1 } else { -1 }))
                            }
                            SimplicialMap::Matrix(_) => unreachable!(),
                        })
                        .collect()
                })
                .collect();
            return IntMatrix::from_columns(rows, columns);
        }
        let mut acc = IntMatrix::zeros(rows, cols);
        for (k, f) in faces.iter().enumerate() {
            let m = f.to_matrix();
            acc = if k % 2 == 0 { acc.add(&m) } else { acc.sub(&m) }.expect("shapes checked");
        }
        acc
    }
}

/// The chain complex `(A_•, Σ (-1)^k ∂_k)`.
pub fn alternating_sum_complex(s: &SimplicialAbelianGroup) -> ChainComplex {
    let n = s.max_degree();
    let diffs: Vec<IntMatrix> = (1..=n).into_par_iter().map(|i| s.alternating_differential(i)).collect();
    let c = ChainComplex::new_unchecked(s.ranks.clone(), diffs, true).expect("shapes checked at construction");
    match &s.labels {
        Some(l) => c.with_labels(l.clone()).expect("labels checked at construction"),
        None => c,
    }
}

/// The quotient of the alternating-face complex by the degenerate simplices.
///
/// When every map is a basis map the degenerate subgroup is spanned by basis
/// vectors and the quotient keeps the complementary (non-degenerate) basis;
/// otherwise the quotient is computed through a Smith normal form of the
/// degeneracy images.
pub fn normalize(s: &SimplicialAbelianGroup) -> ChainComplex {
    if s.is_basis_preserving() {
        normalize_basis(s)
    } else {
        normalize_general(s)
    }
}

/// Indices of the basis vectors of `A_i` not hit by any degeneracy.
pub fn nondegenerate_basis(s: &SimplicialAbelianGroup, i: usize) -> Vec<usize> {
    let mut degenerate = vec![false; s.ranks[i]];
    if i > 0 {
        for m in &s.degeneracies[i - 1] {
            if let SimplicialMap::Basis { images, .. } = m {
                for &t in images {
                    degenerate[t as usize] = true;
                }
            }
        }
    }
    (0..s.ranks[i]).filter(|&j| !degenerate[j]).collect()
}

fn normalize_basis(s: &SimplicialAbelianGroup) -> ChainComplex {
    let n = s.max_degree();
    let keep: Vec<Vec<usize>> = (0..=n).into_par_iter().map(|i| nondegenerate_basis(s, i)).collect();
    let ranks = keep.iter().map(Vec::len).collect();
    let diffs = (1..=n)
        .into_par_iter()
        .map(|i| {
            s.alternating_differential(i)
                .select_columns(&keep[i])
                .select_rows(&keep[i - 1])
        })
        .collect();
    let c = ChainComplex::new_unchecked(ranks, diffs, true).expect("shapes agree");
    match &s.labels {
        Some(l) => {
            let labels = keep
                .iter()
                .enumerate()
                .map(|(i, k)| k.iter().map(|&j| l[i][j].clone()).collect())
                .collect();
            c.with_labels(labels).expect("labels agree")
        }
        None => c,
    }
}

/// Projection `π_i: A_i → A_i / D_i` and a section `σ_i` with `π σ = id`.
struct Quotient {
    projection: IntMatrix,
    section: IntMatrix,
}

fn degenerate_quotient(s: &SimplicialAbelianGroup, i: usize) -> Quotient {
    let rank = s.ranks[i];
    if i == 0 || rank == 0 {
        return Quotient {
            projection: IntMatrix::identity(rank),
            section: IntMatrix::identity(rank),
        };
    }
    let mut images = IntMatrix::zeros(rank, 0);
    for m in &s.degeneracies[i - 1] {
        images = images.hstack(&m.to_matrix()).expect("rows agree");
    }
    let snf = smith_normal_form(&images);
    let r = snf.rank;
    let rows: Vec<usize> = (r..rank).collect();
    Quotient {
        projection: snf.left.select_rows(&rows),
        section: snf.left_inverse.select_columns(&rows),
    }
}

fn normalize_general(s: &SimplicialAbelianGroup) -> ChainComplex {
    let n = s.max_degree();
    let quotients: Vec<Quotient> = (0..=n).into_par_iter().map(|i| degenerate_quotient(s, i)).collect();
    let ranks = quotients.iter().map(|q| q.projection.rows()).collect();
    let diffs = (1..=n)
        .map(|i| {
            let d = s.alternating_differential(i);
            quotients[i - 1]
                .projection
                .mul(&d)
                .and_then(|m| m.mul(&quotients[i].section))
                .expect("shapes agree")
        })
        .collect();
    ChainComplex::new_unchecked(ranks, diffs, true).expect("shapes agree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{CoefficientRing, FgAbelianGroup};

    #[test]
    fn constant_group() {
        let s = SimplicialAbelianGroup::constant(1, 4);
        s.check_identities().unwrap();
        let c = alternating_sum_complex(&s);
        let diag: Vec<i64> = (1..=4).map(|i| c.differential(i).get(0, 0).to_i64().unwrap()).collect();
        assert_eq!(diag, vec![0, 1, 0, 1]);
        assert_eq!(c.homology(0, CoefficientRing::Integers).unwrap(), FgAbelianGroup::free(1));
        for i in 1..4 {
            assert!(c.homology(i, CoefficientRing::Integers).unwrap().is_trivial());
        }
        let nc = normalize(&s);
        assert_eq!(nc.ranks(), &[1, 0, 0, 0, 0]);
    }

    #[test]
    fn zero_group() {
        let s = SimplicialAbelianGroup::constant(0, 3);
        let c = alternating_sum_complex(&s);
        assert!(c.differentials().iter().all(IntMatrix::is_zero));
        assert_eq!(c.ranks(), &[0, 0, 0, 0]);
    }

    #[test]
    fn matrix_route_matches_basis_route() {
        let s = SimplicialAbelianGroup::constant(2, 3);
        let as_matrices = SimplicialAbelianGroup::new(
            s.ranks.clone(),
            s.faces.iter().map(|v| v.iter().map(|m| SimplicialMap::Matrix(m.to_matrix())).collect()).collect(),
            s.degeneracies
                .iter()
                .map(|v| v.iter().map(|m| SimplicialMap::Matrix(m.to_matrix())).collect())
                .collect(),
            None,
        )
        .unwrap();
        assert!(!as_matrices.is_basis_preserving());
        assert_eq!(normalize(&as_matrices).ranks(), normalize(&s).ranks());
    }

    #[test]
    fn detects_broken_identity() {
        let mut s = SimplicialAbelianGroup::constant(2, 2);
        s.faces[2][1] = SimplicialMap::from_images(2, vec![1, 0]);
        assert!(matches!(s.check_identities(), Err(Error::SimplicialIdentityViolation(_))));
    }
}
