use cyclehom::exact::{
    homology_at, homology_presentation, invariant_factors, rank_mod, smith_normal_form, CoefficientRing,
};
use cyclehom::{FgAbelianGroup, Int, IntMatrix};
use proptest::prelude::*;

mod common;
use common::{chain_complex, dense, mixes, pieces, rank_fp, rank_q};

fn sparse_matrix(max: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec((0..r, 0..c, -9i64..=9), 0..=(r * c).min(3 * r.max(c)))
            .prop_map(move |t| IntMatrix::from_triplets(r, c, t.into_iter().map(|(i, j, x)| (i, j, Int::Small(x)))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn smith_form_reconstructs(m in sparse_matrix(20)) {
        let snf = smith_normal_form(&m);
        let (r, c) = m.shape();
        prop_assert_eq!(snf.left.mul(&m).unwrap().mul(&snf.right).unwrap(), snf.diagonal_matrix());
        prop_assert_eq!(snf.left.mul(&snf.left_inverse).unwrap(), IntMatrix::identity(r));
        prop_assert_eq!(snf.right.mul(&snf.right_inverse).unwrap(), IntMatrix::identity(c));
        for pair in snf.diag.windows(2) {
            prop_assert!(pair[1].is_divisible_by(&pair[0]));
        }
        prop_assert!(snf.diag.iter().all(|d| !d.is_negative() && !d.is_zero()));
        prop_assert_eq!(invariant_factors(&m), snf.diag.clone());
        prop_assert_eq!(snf.rank, rank_q(&dense(&m)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ranks_agree_with_gaussian_elimination(m in sparse_matrix(20), p in prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]) {
        let rows = dense(&m);
        prop_assert_eq!(rank_mod(&m, p), rank_fp(&rows, p as i64));
        let factors = invariant_factors(&m);
        let divisible = factors.iter().filter(|f| f.is_divisible_by(&Int::Small(p as i64))).count();
        prop_assert_eq!(rank_mod(&m, p), factors.len() - divisible);
    }

    #[test]
    fn homology_of_generated_complexes(pc in prop::collection::vec((0usize..4, prop_oneof![Just(0i64), Just(1), Just(2), Just(4), Just(6), Just(9)]), 1..8), mc in prop::collection::vec((0usize..4, 0usize..10, 0usize..10, -3i64..=3), 0..12)) {
        let c = chain_complex(&pc, 3, &mc);
        for i in 0..=3 {
            let mut free = 0;
            let mut torsion = Vec::new();
            for &(k, m) in &pc {
                if k == i && (m == 0 || k == 3) {
                    free += 1;
                } else if k == i && m > 1 {
                    torsion.push(Int::Small(m));
                }
            }
            let expected = FgAbelianGroup::from_orders(free, torsion);
            prop_assert_eq!(c.homology(i, CoefficientRing::Integers).unwrap(), expected.clone());
            prop_assert_eq!(c.homology(i, CoefficientRing::Rationals).unwrap(), FgAbelianGroup::free(free));
        }
    }

    #[test]
    fn universal_coefficients_match_the_lattice_route(
        pc in pieces(), mc in mixes(), n in prop_oneof![Just(2u64), Just(3), Just(4), Just(6), Just(12)]
    ) {
        let c = chain_complex(&pc, 2, &mc);
        let coeff = CoefficientRing::ModN(n);
        for i in 0..=2 {
            let (d_in, d_out) = (c.differential(i + 1), c.differential(i));
            let uct = homology_at(&d_in, &d_out, coeff).unwrap();
            let lattice = homology_presentation(&d_in, &d_out, coeff).unwrap().group().clone();
            prop_assert_eq!(&uct, &lattice);
            let z = c.homology(i, CoefficientRing::Integers).unwrap();
            let expected = z.tensor_mod(&Int::Small(n as i64));
            let below = if i == 0 { FgAbelianGroup::trivial() } else { c.homology(i - 1, CoefficientRing::Integers).unwrap() };
            prop_assert_eq!(uct, expected.direct_sum(&below.tor_mod(&Int::Small(n as i64))));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sparse_elimination_matches_dense_smith_form(
        t in prop::collection::vec((0usize..70, 0usize..90, -4i64..=4), 0..400)
    ) {
        let m = IntMatrix::from_triplets(70, 90, t.into_iter().map(|(i, j, x)| (i, j, Int::Small(x))));
        prop_assert_eq!(invariant_factors(&m), smith_normal_form(&m).diag);
        prop_assert_eq!(invariant_factors(&m.transpose()), smith_normal_form(&m).diag);
    }
}
