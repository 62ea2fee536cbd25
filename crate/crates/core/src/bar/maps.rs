use super::group::FiniteGroup;
use super::invariants::transpose;
use super::simplicial::{nondegenerate_tuples, normalized_bar_complex, TupleCodec};
use crate::complexes::ChainComplex;
use crate::error::{Error, Result};
use crate::exact::{homology_presentation, CoefficientRing, FgAbelianGroup, Int, IntMatrix, Subquotient};

/// A homomorphism of finite groups as an index map, validated.
#[derive(Clone, Debug)]
pub struct GroupHomomorphism {
    source: FiniteGroup,
    target: FiniteGroup,
    images: Vec<usize>,
}

impl GroupHomomorphism {
    pub fn new(source: FiniteGroup, target: FiniteGroup, images: Vec<usize>) -> Result<Self> {
        source.check_homomorphism(&target, &images)?;
        Ok(GroupHomomorphism { source, target, images })
    }

    pub fn identity(g: FiniteGroup) -> Self {
        let images = (0..g.order()).collect();
        GroupHomomorphism {
            source: g.clone(),
            target: g,
            images,
        }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHomomorphism) -> Result<GroupHomomorphism> {
        if self.target != other.source {
            return Err(Error::NotAHomomorphism("target and source groups differ".into()));
        }
        let images = self.images.iter().map(|&x| other.images[x]).collect();
        GroupHomomorphism::new(self.source.clone(), other.target.clone(), images)
    }
}

/// A homomorphism between homology groups in canonical coordinates: one
/// coordinate per invariant-factor generator, torsion first, then free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyMap {
    pub source: FgAbelianGroup,
    pub target: FgAbelianGroup,
    /// `target.num_generators() × source.num_generators()`, entries reduced
    /// modulo the target generator orders.
    pub matrix: IntMatrix,
}

impl HomologyMap {
    fn reduced(source: FgAbelianGroup, target: FgAbelianGroup, columns: Vec<Vec<Int>>) -> Self {
        let orders = target.generator_orders();
        let columns: Vec<Vec<Int>> = columns
            .into_iter()
            .map(|c| c.into_iter().zip(&orders).map(|(v, o)| if o.is_zero() { v } else { v.rem_euclid(o) }).collect())
            .collect();
        let rows = orders.len();
        let matrix = IntMatrix::from_dense(rows, columns.len(), &transpose(&columns, rows));
        HomologyMap { source, target, matrix }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &HomologyMap) -> Result<HomologyMap> {
        if first.target != self.source {
            return Err(Error::DimensionMismatch("homology maps do not compose".into()));
        }
        let m = self.matrix.mul(&first.matrix)?;
        let columns = (0..m.cols()).map(|j| (0..m.rows()).map(|i| m.get(i, j)).collect()).collect();
        Ok(HomologyMap::reduced(first.source.clone(), self.target.clone(), columns))
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.matrix == IntMatrix::identity(self.source.num_generators())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Homology presentation in degree `i` of `c`; `Q` is handled through `Z`.
fn presentation(c: &ChainComplex, i: usize, coeff: CoefficientRing) -> Result<Subquotient> {
    let lifted = match coeff {
        CoefficientRing::Rationals => CoefficientRing::Integers,
        other => other,
    };
    homology_presentation(&c.differential(i + 1), &c.differential(i), lifted)
}

/// The map on homology of a degree-`i` chain map, in canonical coordinates.
pub fn induced_by_chain_map(
    source: &Subquotient,
    target: &Subquotient,
    chain_map: &IntMatrix,
    coeff: CoefficientRing,
) -> Result<HomologyMap> {
    let columns: Vec<Vec<Int>> = source
        .generators()
        .iter()
        .map(|x| {
            target
                .coordinates(&chain_map.apply(x))
                .ok_or_else(|| Error::NotAComplex("chain map does not send cycles to cycles".into()))
        })
        .collect::<Result<_>>()?;
    let map = HomologyMap::reduced(source.group().clone(), target.group().clone(), columns);
    if coeff == CoefficientRing::Rationals {
        return Ok(rationalize(&map));
    }
    Ok(map)
}

/// Restriction of a map over `Z` to the free coordinates, i.e. `⊗ Q`.
fn rationalize(map: &HomologyMap) -> HomologyMap {
    let free_idx = |g: &FgAbelianGroup| -> Vec<usize> { (g.torsion().len()..g.num_generators()).collect() };
    let (rs, cs) = (free_idx(&map.target), free_idx(&map.source));
    HomologyMap {
        source: FgAbelianGroup::free(cs.len()),
        target: FgAbelianGroup::free(rs.len()),
        matrix: map.matrix.select_rows(&rs).select_columns(&cs),
    }
}

/// Pushforward `f_*` on `H_i(−; coeff)` computed on normalized bar
/// complexes; tuples that become degenerate map to zero.
pub fn induced_map(f: &GroupHomomorphism, i: usize, coeff: CoefficientRing, max_degree: usize) -> Result<HomologyMap> {
    coeff.validate()?;
    if i + 1 > max_degree {
        return Err(Error::TruncationTooSmall {
            degree: i,
            needed: i + 1,
            got: max_degree,
        });
    }
    f.source.check_homomorphism(&f.target, &f.images)?;
    let cs = normalized_bar_complex(&f.source, i + 1);
    let ct = normalized_bar_complex(&f.target, i + 1);
    let (ps, pt) = rayon::join(|| presentation(&cs, i, coeff), || presentation(&ct, i, coeff));
    let (ps, pt) = (ps?, pt?);
    let src_basis = nondegenerate_tuples(&f.source, i);
    let tgt_basis = nondegenerate_tuples(&f.target, i);
    let (sc, tc) = (TupleCodec::new(f.source.order(), i), TupleCodec::new(f.target.order(), i));
    let triplets = src_basis.iter().enumerate().filter_map(|(col, &idx)| {
        let image: Vec<usize> = sc.decode(idx).iter().map(|&x| f.images[x]).collect();
        tgt_basis
            .binary_search(&tc.encode(&image))
            .ok()
            .map(|row| (row, col, Int::ONE))
    });
    let chain = IntMatrix::from_triplets(tgt_basis.len(), src_basis.len(), triplets);
    induced_by_chain_map(&ps, &pt, &chain, coeff)
}

/// Multiplication by a positive integer `d` on a finitely generated abelian
/// group: the transfer composed with pullback along a degree-`d` finite map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScalarEndomorphism {
    factor: u64,
}

pub fn transfer_scalar(d: u64) -> Result<ScalarEndomorphism> {
    if d == 0 {
        return Err(Error::InvalidCoefficients("a finite surjective map has positive degree".into()));
    }
    Ok(ScalarEndomorphism { factor: d })
}

impl ScalarEndomorphism {
    pub fn factor(&self) -> u64 {
        self.factor
    }

    pub fn is_identity_on(&self, g: &FgAbelianGroup) -> bool {
        self.on(g).is_identity()
    }

    /// The endomorphism as a [`HomologyMap`] on `g`.
    pub fn on(&self, g: &FgAbelianGroup) -> HomologyMap {
        let d = Int::Small(self.factor as i64);
        let n = g.num_generators();
        let columns = (0..n)
            .map(|j| (0..n).map(|i| if i == j { d.clone() } else { Int::ZERO }).collect())
            .collect();
        HomologyMap::reduced(g.clone(), g.clone(), columns)
    }

    /// `d · g`.
    pub fn image(&self, g: &FgAbelianGroup) -> FgAbelianGroup {
        let d = Int::Small(self.factor as i64);
        let torsion = g.torsion().iter().map(|t| t.div_mod_floor(&t.gcd(&d)).0);
        FgAbelianGroup::from_orders(g.free_rank(), torsion)
    }

    /// `g[d]`, the `d`-torsion.
    pub fn kernel(&self, g: &FgAbelianGroup) -> FgAbelianGroup {
        let d = Int::Small(self.factor as i64);
        FgAbelianGroup::from_orders(0, g.torsion().iter().map(|t| t.gcd(&d)))
    }
}

/// How a degree-`d` finite surjective `X → S` over a point is modelled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverModel {
    /// `X = Spec L` for a degree-`d` field extension: points of `G^i × X`
    /// match points of `G^i`, pullback is the identity and pushforward
    /// multiplies by the residue degree `d`.
    FieldExtension,
    /// `X` is `d` disjoint copies of `S`: pullback is the diagonal, pushforward
    /// sums the copies.
    Split,
}

/// Pullback then transfer on `H_i(G; coeff)`, each induced separately from
/// chain maps on normalized bar complexes and then composed.
pub fn pullback_then_transfer(
    g: &FiniteGroup,
    d: u64,
    model: CoverModel,
    i: usize,
    coeff: CoefficientRing,
    max_degree: usize,
) -> Result<HomologyMap> {
    coeff.validate()?;
    transfer_scalar(d)?;
    if i + 1 > max_degree {
        return Err(Error::TruncationTooSmall {
            degree: i,
            needed: i + 1,
            got: max_degree,
        });
    }
    let base = normalized_bar_complex(g, i + 1);
    let copies = match model {
        CoverModel::FieldExtension => 1,
        CoverModel::Split => d as usize,
    };
    let cover = direct_sum_copies(&base, copies)?;
    let (ps, px) = (presentation(&base, i, coeff)?, presentation(&cover, i, coeff)?);
    let k = base.rank(i);
    let (pull, push) = match model {
        CoverModel::FieldExtension => (
            IntMatrix::identity(k),
            IntMatrix::scalar(k, Int::Small(d as i64)),
        ),
        CoverModel::Split => {
            let mut diag = IntMatrix::zeros(0, k);
            let mut sum = IntMatrix::zeros(k, 0);
            for _ in 0..copies {
                diag = diag.vstack(&IntMatrix::identity(k))?;
                sum = sum.hstack(&IntMatrix::identity(k))?;
            }
            (diag, sum)
        }
    };
    let up = induced_by_chain_map(&ps, &px, &pull, coeff)?;
    let down = induced_by_chain_map(&px, &ps, &push, coeff)?;
    down.after(&up)
}

fn direct_sum_copies(c: &ChainComplex, copies: usize) -> Result<ChainComplex> {
    let ranks: Vec<usize> = c.ranks().iter().map(|r| r * copies).collect();
    let diffs = c
        .differentials()
        .iter()
        .map(|m| {
            let sizes_r = vec![m.rows(); copies];
            let sizes_c = vec![m.cols(); copies];
            let blocks: Vec<Vec<Option<&IntMatrix>>> = (0..copies)
                .map(|a| (0..copies).map(|b| (a == b).then_some(m)).collect())
                .collect();
            IntMatrix::block(&sizes_r, &sizes_c, &blocks)
        })
        .collect::<Result<Vec<_>>>()?;
    ChainComplex::new(ranks, diffs, c.is_truncated())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusion_and_quotient() {
        let z2 = FiniteGroup::cyclic(2);
        let z4 = FiniteGroup::cyclic(4);
        let inc = GroupHomomorphism::new(z2.clone(), z4.clone(), vec![0, 2]).unwrap();
        let m = induced_map(&inc, 1, CoefficientRing::Integers, 2).unwrap();
        assert_eq!(m.matrix.to_i64_rows().unwrap(), vec![vec![2]]);
        let quo = GroupHomomorphism::new(z4, z2, vec![0, 1, 0, 1]).unwrap();
        let q = induced_map(&quo, 1, CoefficientRing::Integers, 2).unwrap();
        assert_eq!(q.matrix.to_i64_rows().unwrap(), vec![vec![1]]);
        assert!(GroupHomomorphism::new(FiniteGroup::cyclic(4), FiniteGroup::cyclic(2), vec![0, 1, 1, 0]).is_err());
    }

    #[test]
    fn scalar_descriptor() {
        let z6 = FgAbelianGroup::cyclic(6);
        let t = transfer_scalar(3).unwrap();
        assert_eq!(t.image(&z6), FgAbelianGroup::cyclic(2));
        assert_eq!(t.kernel(&z6), FgAbelianGroup::cyclic(3));
        assert!(transfer_scalar(1).unwrap().is_identity_on(&z6));
        assert!(transfer_scalar(2).unwrap().on(&FgAbelianGroup::cyclic(2)).is_zero());
        assert!(transfer_scalar(0).is_err());
    }

    #[test]
    fn transfer_after_pullback() {
        let g = FiniteGroup::cyclic(3);
        for model in [CoverModel::FieldExtension, CoverModel::Split] {
            for d in 1..=3 {
                let h = pullback_then_transfer(&g, d, model, 1, CoefficientRing::Integers, 2).unwrap();
                assert_eq!(h, transfer_scalar(d).unwrap().on(&FgAbelianGroup::cyclic(3)));
            }
        }
    }
}
