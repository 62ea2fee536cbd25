//! Dense lattice computations: kernels, spans, membership and explicit
//! subquotients `W / R` with coordinates.
//!
//! These carry full unimodular transforms and are meant for the modest
//! sizes where element-level answers (induced maps, fixed subgroups) are
//! needed; group structure alone goes through [`invariant_factors`].
//!
//! [`invariant_factors`]: super::smith::invariant_factors

use super::abelian::FgAbelianGroup;
use super::int::Int;
use super::matrix::IntMatrix;
use super::smith::{snf_dense, Dense};
use crate::error::{Error, Result};

/// Z-basis of `{x : m x = 0}` as the columns of the result.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let (rows, cols) = m.shape();
    let snf = snf_dense(m.to_dense(), rows, cols, true);
    let r = snf.diag.len();
    let right = snf.transforms.expect("tracked").right;
    let columns = (r..cols)
        .map(|j| {
            (0..cols)
                .filter(|&i| !right[i][j].is_zero())
                .map(|i| (i as u32, right[i][j].clone()))
                .collect()
        })
        .collect();
    IntMatrix::from_columns(cols, columns)
}

/// Z-basis of the lattice spanned by the columns of `gens`.
pub fn span_basis(gens: &IntMatrix) -> IntMatrix {
    let (rows, cols) = gens.shape();
    let snf = snf_dense(gens.to_dense(), rows, cols, true);
    let left_inv = snf.transforms.expect("tracked").left_inv;
    let columns = snf
        .diag
        .iter()
        .enumerate()
        .map(|(j, d)| {
            (0..rows)
                .filter(|&i| !left_inv[i][j].is_zero())
                .map(|i| (i as u32, left_inv[i][j].mul(d)))
                .collect()
        })
        .collect();
    IntMatrix::from_columns(rows, columns)
}

/// A lattice with a fixed basis and a solver for coordinates in it.
#[derive(Clone, Debug)]
pub struct Lattice {
    basis: IntMatrix,
    left: Dense,
    right: Dense,
    diag: Vec<Int>,
}

impl Lattice {
    /// `basis` must have independent columns.
    pub fn new(basis: IntMatrix) -> Result<Self> {
        let (rows, cols) = basis.shape();
        let snf = snf_dense(basis.to_dense(), rows, cols, true);
        if snf.diag.len() != cols {
            return Err(Error::DimensionMismatch("lattice basis columns are dependent".into()));
        }
        let t = snf.transforms.expect("tracked");
        Ok(Lattice {
            basis,
            left: t.left,
            right: t.right,
            diag: snf.diag,
        })
    }

    /// The lattice spanned by arbitrary generators.
    pub fn spanned_by(gens: &IntMatrix) -> Self {
        Self::new(span_basis(gens)).expect("span basis is independent")
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates `c` with `basis * c = x`, or `None` when `x` is outside.
    pub fn solve(&self, x: &[Int]) -> Option<Vec<Int>> {
        let n = self.basis.rows();
        assert_eq!(x.len(), n);
        let ux: Vec<Int> = (0..n)
            .map(|i| {
                self.left[i]
                    .iter()
                    .zip(x)
                    .fold(Int::ZERO, |acc, (a, b)| if a.is_zero() || b.is_zero() { acc } else { acc.add(&a.mul(b)) })
            })
            .collect();
        let w = self.diag.len();
        if ux[w..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut y = Vec::with_capacity(w);
        for (i, d) in self.diag.iter().enumerate() {
            let (q, r) = ux[i].div_mod_floor(d);
            if !r.is_zero() {
                return None;
            }
            y.push(q);
        }
        Some(
            (0..w)
                .map(|i| {
                    self.right[i]
                        .iter()
                        .zip(&y)
                        .fold(Int::ZERO, |acc, (a, b)| if a.is_zero() || b.is_zero() { acc } else { acc.add(&a.mul(b)) })
                })
                .collect(),
        )
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.solve(x).is_some()
    }
}

/// The quotient `W / R` of a lattice `W` by a sublattice `R`, with canonical
/// coordinates: one per invariant-factor generator, torsion first.
#[derive(Clone, Debug)]
pub struct Subquotient {
    lattice: Lattice,
    /// Rows of the relation transform kept as generators.
    coord_rows: Vec<Vec<Int>>,
    /// Order of each kept coordinate; zero for free ones.
    orders: Vec<Int>,
    /// Chain-level representatives of the generators.
    generators: Vec<Vec<Int>>,
    group: FgAbelianGroup,
}

impl Subquotient {
    /// `relations` are generators of `R`; each must lie in `W`.
    pub fn new(lattice: Lattice, relations: &IntMatrix) -> Result<Self> {
        let w = lattice.rank();
        let mut coords: Vec<Vec<(u32, Int)>> = Vec::with_capacity(relations.cols());
        let mut dense_col = vec![Int::ZERO; relations.rows()];
        for j in 0..relations.cols() {
            dense_col.iter_mut().for_each(|v| *v = Int::ZERO);
            for (i, v) in relations.column(j) {
                dense_col[*i as usize] = v.clone();
            }
            let c = lattice
                .solve(&dense_col)
                .ok_or_else(|| Error::NotAComplex("relation outside the cycle lattice".into()))?;
            coords.push(c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i as u32, v)).collect());
        }
        let rel = IntMatrix::from_columns(w, coords);
        let snf = snf_dense(rel.to_dense(), w, rel.cols(), true);
        let t = snf.transforms.expect("tracked");
        let r = snf.diag.len();
        let mut coord_rows = Vec::new();
        let mut orders = Vec::new();
        let mut gen_coords = Vec::new();
        for (i, d) in snf.diag.iter().enumerate() {
            if !d.is_unit() {
                coord_rows.push(t.left[i].clone());
                orders.push(d.clone());
                gen_coords.push(i);
            }
        }
        for i in r..w {
            coord_rows.push(t.left[i].clone());
            orders.push(Int::ZERO);
            gen_coords.push(i);
        }
        let basis = lattice.basis().to_dense();
        let generators = gen_coords
            .iter()
            .map(|&i| {
                (0..lattice.ambient_dim())
                    .map(|a| {
                        (0..w).fold(Int::ZERO, |acc, b| {
                            if basis[a][b].is_zero() || t.left_inv[b][i].is_zero() {
                                acc
                            } else {
                                acc.add(&basis[a][b].mul(&t.left_inv[b][i]))
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        let group = FgAbelianGroup::from_orders(0, orders.iter().cloned());
        Ok(Subquotient {
            lattice,
            coord_rows,
            orders,
            generators,
            group,
        })
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn orders(&self) -> &[Int] {
        &self.orders
    }

    /// Representatives in the ambient lattice of the canonical generators.
    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    /// Canonical coordinates of the class of `x`, reduced modulo the
    /// generator orders; `None` when `x` is not in `W`.
    pub fn coordinates(&self, x: &[Int]) -> Option<Vec<Int>> {
        let c = self.lattice.solve(x)?;
        Some(
            self.coord_rows
                .iter()
                .zip(&self.orders)
                .map(|(row, o)| {
                    let v = row.iter().zip(&c).fold(Int::ZERO, |acc, (a, b)| {
                        if a.is_zero() || b.is_zero() {
                            acc
                        } else {
                            acc.add(&a.mul(b))
                        }
                    });
                    if o.is_zero() {
                        v
                    } else {
                        v.rem_euclid(o)
                    }
                })
                .collect(),
        )
    }

    /// True when `x ∈ W` represents the zero class.
    pub fn is_zero_class(&self, x: &[Int]) -> Option<bool> {
        self.coordinates(x).map(|c| c.iter().all(Int::is_zero))
    }
}

/// `{x ∈ Z^k : m x ≡ 0 mod n}` (`n = 0` for exact vanishing).
pub fn kernel_mod(m: &IntMatrix, n: u64) -> Lattice {
    let k = m.cols();
    if n == 0 {
        return Lattice::new(kernel_basis(m)).expect("kernel basis is independent");
    }
    let aug = m.hstack(&IntMatrix::scalar(m.rows(), Int::Small(n as i64))).expect("row counts agree");
    let ker = kernel_basis(&aug);
    let proj = ker.select_rows(&(0..k).collect::<Vec<_>>());
    Lattice::spanned_by(&proj)
}

/// Generators of `im(m) + nZ^rows`.
pub fn image_mod(m: &IntMatrix, n: u64) -> IntMatrix {
    if n == 0 {
        return m.clone();
    }
    m.hstack(&IntMatrix::scalar(m.rows(), Int::Small(n as i64))).expect("row counts agree")
}

/// The subgroup of `⊕ Z/orders[i]` (order 0 meaning `Z`) fixed by every
/// endomorphism in `endos`, each given on canonical coordinates.
pub fn fixed_subgroup(orders: &[Int], endos: &[IntMatrix]) -> Result<FgAbelianGroup> {
    let a = orders.len();
    let rel = IntMatrix::from_triplets(
        a,
        a,
        orders.iter().enumerate().filter(|(_, o)| !o.is_zero()).map(|(i, o)| (i, i, o.clone())),
    );
    if endos.is_empty() || a == 0 {
        return Ok(FgAbelianGroup::from_orders(0, orders.iter().cloned()));
    }
    for e in endos {
        if e.shape() != (a, a) {
            return Err(Error::DimensionMismatch(format!("endomorphism is {}x{}, expected {a}x{a}", e.rows(), e.cols())));
        }
    }
    // Rows j: (A_j - I) x - D w_j = 0.
    let g = endos.len();
    let shifted: Vec<IntMatrix> = endos.iter().map(|e| e.sub(&IntMatrix::identity(a)).expect("square")).collect();
    let neg_rel = rel.scale(&Int::Small(-1));
    let row_sizes = vec![a; g];
    let col_sizes = vec![a; g + 1];
    let blocks: Vec<Vec<Option<&IntMatrix>>> = (0..g)
        .map(|j| {
            (0..=g)
                .map(|c| if c == 0 { Some(&shifted[j]) } else if c == j + 1 { Some(&neg_rel) } else { None })
                .collect()
        })
        .collect();
    let big = IntMatrix::block(&row_sizes, &col_sizes, &blocks)?;
    let ker = kernel_basis(&big);
    let proj = ker.select_rows(&(0..a).collect::<Vec<_>>());
    let fixed = Lattice::spanned_by(&proj);
    Ok(Subquotient::new(fixed, &rel)?.group().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::Small(x)).collect()
    }

    #[test]
    fn kernel_of_row() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 6]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).unwrap().is_zero());
        // The kernel is saturated: (2,-1,0) and (3,0,-1) are in it.
        let lat = Lattice::new(k).unwrap();
        assert!(lat.contains(&ints(&[2, -1, 0])));
        assert!(lat.contains(&ints(&[3, 0, -1])));
        assert!(!lat.contains(&ints(&[1, 0, 0])));
    }

    #[test]
    fn fixed_points_of_negation() {
        let neg = IntMatrix::from_rows(&[vec![-1]]);
        let z3 = fixed_subgroup(&ints(&[3]), &[neg.clone()]).unwrap();
        assert!(z3.is_trivial());
        let z4 = fixed_subgroup(&ints(&[4]), &[neg.clone()]).unwrap();
        assert_eq!(z4, FgAbelianGroup::cyclic(2));
        let z = fixed_subgroup(&ints(&[0]), &[neg]).unwrap();
        assert!(z.is_trivial());
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(fixed_subgroup(&ints(&[0, 0]), &[swap]).unwrap(), FgAbelianGroup::free(1));
    }

    #[test]
    fn quotient_z_by_2z() {
        let lat = Lattice::new(IntMatrix::identity(1)).unwrap();
        let sq = Subquotient::new(lat, &IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert_eq!(sq.group(), &FgAbelianGroup::cyclic(2));
        assert_eq!(sq.coordinates(&ints(&[3])).unwrap(), ints(&[1]));
        assert_eq!(sq.is_zero_class(&ints(&[4])), Some(true));
    }

    #[test]
    fn kernel_modulo_n() {
        // x with 2x ≡ 0 mod 4 is 2Z.
        let lat = kernel_mod(&IntMatrix::from_rows(&[vec![2]]), 4);
        assert!(lat.contains(&ints(&[2])));
        assert!(!lat.contains(&ints(&[1])));
    }
}
