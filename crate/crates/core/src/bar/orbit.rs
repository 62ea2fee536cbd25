use rayon::prelude::*;

use super::action::{GroupAction, OrbitBasis};
use super::simplicial::{face_tuple, tuple_label, TupleCodec};
use crate::complexes::ChainComplex;
use crate::error::{Error, Result};
use crate::exact::{CoefficientRing, FgAbelianGroup, Int, IntMatrix, Lattice};

/// The chain complex with basis the `Γ`-orbits on `G^i` and differential the
/// alternating face sum on representatives, pushed to orbit classes.
pub fn orbit_complex(action: &GroupAction, max_degree: usize) -> ChainComplex {
    let bases: Vec<OrbitBasis> = (0..=max_degree).into_par_iter().map(|i| action.orbit_basis(i)).collect();
    orbit_complex_from(action, &bases)
}

fn orbit_complex_from(action: &GroupAction, bases: &[OrbitBasis]) -> ChainComplex {
    let g = action.group();
    let max_degree = bases.len() - 1;
    let diffs = (1..=max_degree)
        .into_par_iter()
        .map(|i| {
            let (src, dst) = (&bases[i], &bases[i - 1]);
            let columns = src
                .representative_indices()
                .iter()
                .map(|&idx| {
                    let t = src.codec().decode(idx);
                    let mut col: Vec<(u32, Int)> = (0..=i)
                        .map(|k| {
                            let f = face_tuple(g, &t, k);
                            let sign = if k % 2 == 0 { 1 } else { -1 };
                            (dst.orbit_of(dst.codec().encode(&f)) as u32, Int::Small(sign))
                        })
                        .collect();
                    col.sort_by_key(|e| e.0);
                    col
                })
                .collect();
            IntMatrix::from_columns(dst.len(), columns)
        })
        .collect();
    let ranks = bases.iter().map(OrbitBasis::len).collect();
    let labels = bases
        .iter()
        .map(|b| b.representatives().iter().map(|t| tuple_label(g, t)).collect())
        .collect();
    ChainComplex::new(ranks, diffs, true)
        .and_then(|c| c.with_labels(labels))
        .expect("orbit differentials square to zero")
}

/// `𝓗_i(Spec k, G; A)` as the homology of the orbit complex truncated at
/// `max_degree`; needs `i + 1 ≤ max_degree`.
pub fn galois_homology(action: &GroupAction, coeff: CoefficientRing, i: usize, max_degree: usize) -> Result<FgAbelianGroup> {
    coeff.validate()?;
    if i + 1 > max_degree {
        return Err(Error::TruncationTooSmall {
            degree: i,
            needed: i + 1,
            got: max_degree,
        });
    }
    let bases: Vec<OrbitBasis> = (0..=i + 1).into_par_iter().map(|d| action.orbit_basis(d)).collect();
    orbit_complex_from(action, &bases).homology(i, coeff)
}

/// Verifies on every tuple of `G^i`, `i ≤ max_degree`, that the orbit of
/// `∂_k(σ t)` equals the orbit of `∂_k t` for every `σ ∈ Γ`.
pub fn check_orbit_faces(action: &GroupAction, max_degree: usize) -> Result<()> {
    let g = action.group();
    for i in 1..=max_degree {
        let src = TupleCodec::new(g.order(), i);
        let dst = action.orbit_basis(i - 1);
        (0..src.count()).into_par_iter().try_for_each(|idx| {
            let t = src.decode(idx);
            let mut buf = vec![0; i];
            for sigma in action.elements() {
                let moved = src.decode(action.act_on_tuple(sigma, &src, idx, &mut buf));
                for k in 0..=i {
                    let a = dst.orbit_of(dst.codec().encode(&face_tuple(g, &t, k)));
                    let b = dst.orbit_of(dst.codec().encode(&face_tuple(g, &moved, k)));
                    if a != b {
                        return Err(Error::NotAnAutomorphism(format!(
                            "face ∂_{k} of {t:?} changes orbit under the action"
                        )));
                    }
                }
            }
            Ok(())
        })?;
    }
    Ok(())
}

/// Whether the degree-one chain `(z) + (w) - (zw)` is a boundary in the
/// orbit complex, the relation `[zw] = [z] + [w]`.
pub fn product_relation_is_boundary(action: &GroupAction, z: usize, w: usize) -> bool {
    let g = action.group();
    let c = orbit_complex(action, 2);
    let b1 = action.orbit_basis(1);
    let mut chain = vec![Int::ZERO; b1.len()];
    let mut bump = |x: usize, by: i64| {
        let o = b1.orbit_of(x);
        chain[o] = chain[o].add(&Int::Small(by));
    };
    bump(z, 1);
    bump(w, 1);
    bump(g.mul(z, w), -1);
    Lattice::spanned_by(&c.differential(2)).contains(&chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bar::group::FiniteGroup;
    use crate::bar::simplicial::bar_complex;

    #[test]
    fn trivial_action_is_bar_complex() {
        let g = FiniteGroup::cyclic(3);
        let c = orbit_complex(&GroupAction::trivial(g.clone()), 3);
        let b = bar_complex(&g, 3);
        assert_eq!(c.differentials(), b.differentials());
    }

    #[test]
    fn mu3_conjugation() {
        let a = GroupAction::inversion(FiniteGroup::cyclic(3)).unwrap();
        check_orbit_faces(&a, 3).unwrap();
        assert_eq!(orbit_complex(&a, 2).ranks(), &[1, 2, 5]);
        assert_eq!(galois_homology(&a, CoefficientRing::Integers, 0, 1).unwrap(), FgAbelianGroup::free(1));
        assert!(matches!(
            galois_homology(&a, CoefficientRing::Integers, 2, 2),
            Err(Error::TruncationTooSmall { .. })
        ));
        for z in 0..3 {
            assert!(product_relation_is_boundary(&a, z, (3 - z) % 3));
        }
    }
}
