use super::action::GroupAction;
use super::simplicial::{nondegenerate_tuples, normalized_bar_complex, TupleCodec};
use crate::error::{Error, Result};
use crate::exact::{
    field_rank, fixed_subgroup, homology_presentation, CoefficientRing, FgAbelianGroup, Int, IntMatrix,
};

/// Matrix of the generator `j` acting on the normalized degree-`i` basis.
/// Automorphisms fix the identity, so non-degenerate tuples are permuted.
pub fn normalized_action_matrix(action: &GroupAction, j: usize, i: usize) -> IntMatrix {
    let g = action.group();
    let basis = nondegenerate_tuples(g, i);
    let codec = TupleCodec::new(g.order(), i);
    let mut buf = vec![0; i];
    let images: Vec<usize> = basis
        .iter()
        .map(|&idx| {
            let moved = action.act_on_tuple(&action.generators()[j], &codec, idx, &mut buf);
            basis.binary_search(&moved).expect("automorphisms permute non-degenerate tuples")
        })
        .collect();
    IntMatrix::from_index_map(basis.len(), &images)
}

/// `H_i(G; A)^Γ` for the action of `Γ` on homology induced by its action
/// on the bar complex. Needs `i + 1 ≤ max_degree`.
///
/// Over a field the dimension comes from ranks alone: with `Z` the cycles,
/// `B = d_{i+1}` and `σ_1, …, σ_g` the generators,
/// `dim H^Γ = dim C_i - rank M + (g - 1) rank B`, where `M` stacks `d_i` over
/// the rows `(σ_j - 1 | -B e_j)`. Over `Z` and `Z/n` the fixed subgroup is
/// computed on an explicit presentation of `H_i`.
pub fn invariants_homology(
    action: &GroupAction,
    coeff: CoefficientRing,
    i: usize,
    max_degree: usize,
) -> Result<FgAbelianGroup> {
    coeff.validate()?;
    if i + 1 > max_degree {
        return Err(Error::TruncationTooSmall {
            degree: i,
            needed: i + 1,
            got: max_degree,
        });
    }
    let c = normalized_bar_complex(action.group(), i + 1);
    let d_in = c.differential(i + 1);
    let d_out = c.differential(i);
    let sigmas: Vec<IntMatrix> = (0..action.generators().len())
        .map(|j| normalized_action_matrix(action, j, i))
        .collect();
    if coeff.is_field() {
        let (k, l, m) = (d_in.rows(), d_in.cols(), d_out.rows());
        let g = sigmas.len();
        let neg_b = d_in.scale(&Int::Small(-1));
        let shifted: Vec<IntMatrix> = sigmas
            .iter()
            .map(|s| s.sub(&IntMatrix::identity(k)).expect("square"))
            .collect();
        let mut row_sizes = vec![m];
        row_sizes.extend(std::iter::repeat_n(k, g));
        let mut col_sizes = vec![k];
        col_sizes.extend(std::iter::repeat_n(l, g));
        let mut blocks: Vec<Vec<Option<&IntMatrix>>> = vec![std::iter::once(Some(&d_out)).chain((0..g).map(|_| None)).collect()];
        for (j, s) in shifted.iter().enumerate() {
            blocks.push(
                (0..=g)
                    .map(|c| if c == 0 { Some(s) } else if c == j + 1 { Some(&neg_b) } else { None })
                    .collect(),
            );
        }
        let big = IntMatrix::block(&row_sizes, &col_sizes, &blocks)?;
        let (rank_m, rank_b) = rayon::join(|| field_rank(&big, coeff), || field_rank(&d_in, coeff));
        let dim = k as i64 - rank_m? as i64 + (g as i64 - 1) * rank_b? as i64;
        return Ok(match coeff {
            CoefficientRing::ModN(p) => FgAbelianGroup::from_orders(0, (0..dim).map(|_| Int::Small(p as i64))),
            _ => FgAbelianGroup::free(dim as usize),
        });
    }
    let pres = homology_presentation(&d_in, &d_out, coeff)?;
    let endos: Vec<IntMatrix> = sigmas
        .iter()
        .map(|s| {
            let columns: Vec<Vec<Int>> = pres
                .generators()
                .iter()
                .map(|x| {
                    let y = s.apply(x);
                    pres.coordinates(&y).expect("the action preserves cycles")
                })
                .collect();
            let a = pres.orders().len();
            IntMatrix::from_dense(a, a, &transpose(&columns, a))
        })
        .collect();
    fixed_subgroup(pres.orders(), &endos)
}

pub(crate) fn transpose(columns: &[Vec<Int>], rows: usize) -> Vec<Vec<Int>> {
    (0..rows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bar::group::FiniteGroup;

    #[test]
    fn negation_on_z3() {
        let a = GroupAction::inversion(FiniteGroup::cyclic(3)).unwrap();
        assert!(invariants_homology(&a, CoefficientRing::Integers, 1, 2).unwrap().is_trivial());
        assert!(invariants_homology(&a, CoefficientRing::ModN(3), 1, 2).unwrap().is_trivial());
        // Inversion acts on H_{2k-1}(Z/3; Z) by (-1)^k, and on the Tor term in
        // H_2(Z/3; Z/3) through H_1.
        assert!(invariants_homology(&a, CoefficientRing::ModN(3), 2, 3).unwrap().is_trivial());
        assert_eq!(
            invariants_homology(&a, CoefficientRing::ModN(3), 3, 4).unwrap(),
            FgAbelianGroup::cyclic(3)
        );
        let b = GroupAction::inversion(FiniteGroup::cyclic(5)).unwrap();
        assert_eq!(invariants_homology(&b, CoefficientRing::Rationals, 0, 1).unwrap(), FgAbelianGroup::free(1));
    }

    #[test]
    fn trivial_action_gives_homology() {
        let g = FiniteGroup::cyclic(4);
        let a = GroupAction::trivial(g);
        assert_eq!(invariants_homology(&a, CoefficientRing::Integers, 1, 2).unwrap(), FgAbelianGroup::cyclic(4));
        assert_eq!(
            invariants_homology(&a, CoefficientRing::ModN(2), 2, 3).unwrap(),
            FgAbelianGroup::cyclic(2)
        );
    }
}
