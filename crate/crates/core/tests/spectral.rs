use cyclehom::bar::{bar_complex, FiniteGroup};
use cyclehom::complexes::ChainComplex;
use cyclehom::spectral::{build_constant_row_grid, edge_map, page, totalize, DoubleComplex, Orientation};
use cyclehom::{CoefficientRing, IntMatrix};
use proptest::prelude::*;

mod common;
use common::{chain_complex, mixes, pieces};

fn bar_cohomology_dim(g: &FiniteGroup, s: usize, l: u64) -> usize {
    bar_complex(g, s + 1).cohomology(s, CoefficientRing::ModN(l)).unwrap().dimension()
}

#[test]
fn constant_row_grids_degenerate_onto_group_cohomology() {
    let groups = [
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(6),
        FiniteGroup::symmetric(3),
    ];
    for g in &groups {
        for l in [2, 3] {
            let coeff = CoefficientRing::ModN(l);
            let dc = build_constant_row_grid(g, 5, 5, coeff).unwrap();
            let e2 = page(&dc, 2, coeff, Orientation::VerticalFirst).unwrap();
            let tot = totalize(&dc).unwrap();
            for s in 0..=4 {
                let expected = bar_cohomology_dim(g, s, l);
                assert_eq!(e2.dim(s, 0), expected, "|G|={} ℓ={l} s={s}", g.order());
                for t in 1..=4 {
                    assert!(dc.is_valid(s, t));
                    assert_eq!(e2.dim(s, t), 0, "|G|={} ℓ={l} ({s},{t})", g.order());
                }
                assert_eq!(tot.cohomology(s, coeff).unwrap().dimension(), expected);
                let edge = edge_map(&dc, s, coeff).unwrap();
                assert!(edge.is_isomorphism(), "|G|={} ℓ={l} n={s}", g.order());
            }
        }
    }
}

#[test]
fn bottom_rows_of_the_examples() {
    let c2 = CoefficientRing::ModN(2);
    let z2 = build_constant_row_grid(&FiniteGroup::cyclic(2), 5, 5, c2).unwrap();
    let z3 = build_constant_row_grid(&FiniteGroup::cyclic(3), 5, 5, c2).unwrap();
    let row = |dc: &DoubleComplex| page(dc, 2, c2, Orientation::VerticalFirst).unwrap().rows()[0][..5].to_vec();
    assert_eq!(row(&z2), vec![1, 1, 1, 1, 1]);
    assert_eq!(row(&z3), vec![1, 0, 0, 0, 0]);
    let trivial = build_constant_row_grid(&FiniteGroup::trivial(), 5, 5, c2).unwrap();
    let e2 = page(&trivial, 2, c2, Orientation::VerticalFirst).unwrap();
    for s in 0..5 {
        for t in 0..5 {
            assert_eq!(e2.dim(s, t), usize::from(s == 0 && t == 0));
        }
    }
}

#[test]
fn degeneracy_for_small_groups() {
    for (name, g) in FiniteGroup::small_groups(6) {
        for l in [2, 3, 5] {
            let coeff = CoefficientRing::ModN(l);
            let dc = build_constant_row_grid(&g, 5, 5, coeff).unwrap();
            let e2 = page(&dc, 2, coeff, Orientation::VerticalFirst).unwrap();
            for s in 0..=3 {
                for t in 1..=4 - s {
                    assert_eq!(e2.dim(s, t), 0, "{name} ℓ={l} ({s},{t})");
                }
            }
        }
    }
}

#[test]
fn orientations_agree_on_the_abutment() {
    let coeff = CoefficientRing::ModN(3);
    let dc = build_constant_row_grid(&FiniteGroup::symmetric(3), 4, 4, coeff).unwrap();
    let v = page(&dc, 2, coeff, Orientation::VerticalFirst).unwrap();
    let h = page(&dc, 2, coeff, Orientation::HorizontalFirst).unwrap();
    for n in 0..4 {
        let sum = |p: &cyclehom::spectral::SpectralPage| (0..=n).map(|s| p.dim(s, n - s)).sum::<usize>();
        assert_eq!(sum(&v), sum(&h));
    }
}

fn kron(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (br, bc) = b.shape();
    let triplets = a
        .entries()
        .flat_map(|(i, j, x)| b.entries().map(move |(k, l, y)| (i * br + k, j * bc + l, x.mul(y))))
        .collect::<Vec<_>>();
    IntMatrix::from_triplets(a.rows() * br, a.cols() * bc, triplets)
}

/// `C ⊗ D` as a double complex.
fn tensor(c: &ChainComplex, d: &ChainComplex) -> DoubleComplex {
    let (ms, mt) = (c.max_degree(), d.max_degree());
    let ranks = (0..=ms).map(|s| (0..=mt).map(|t| c.rank(s) * d.rank(t)).collect()).collect();
    let d_h = (1..=ms)
        .map(|s| (0..=mt).map(|t| kron(&c.differential(s), &IntMatrix::identity(d.rank(t)))).collect())
        .collect();
    let d_v = (0..=ms)
        .map(|s| (1..=mt).map(|t| kron(&IntMatrix::identity(c.rank(s)), &d.differential(t))).collect())
        .collect();
    DoubleComplex::new(ranks, d_h, d_v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_characteristic_of_pages(
        pc in pieces(), mc in mixes(), pd in pieces(), md in mixes(), l in prop_oneof![Just(2u64), Just(3)]
    ) {
        let c = chain_complex(&pc, 2, &mc);
        let d = chain_complex(&pd, 2, &md);
        let dc = tensor(&c, &d);
        let coeff = CoefficientRing::ModN(l);
        let tot = totalize(&dc).unwrap();
        let top = dc.max_s() + dc.max_t();
        let h: Vec<i64> = (0..=top).map(|n| tot.cohomology(n, coeff).unwrap().dimension() as i64).collect();
        for orientation in [Orientation::VerticalFirst, Orientation::HorizontalFirst] {
            let e2 = page(&dc, 2, coeff, orientation).unwrap();
            let diag = |n: usize| -> i64 { (0..=n).map(|s| e2.dim(s, n - s) as i64).sum() };
            let sign = |n: usize| if n % 2 == 0 { 1 } else { -1 };
            let full_h: i64 = (0..=top).map(|n| sign(n) * h[n]).sum();
            let full_e: i64 = (0..=top).map(|n| sign(n) * diag(n)).sum();
            prop_assert_eq!(full_h, full_e);
            for n in 0..top {
                if diag(n + 1) == 0 {
                    let ph: i64 = (0..=n).map(|k| sign(k) * h[k]).sum();
                    let pe: i64 = (0..=n).map(|k| sign(k) * diag(k)).sum();
                    prop_assert_eq!(ph, pe, "n={}", n);
                }
            }
        }
    }

    #[test]
    fn e1_is_column_cohomology(pc in pieces(), mc in mixes(), pd in pieces(), md in mixes()) {
        let c = chain_complex(&pc, 2, &mc);
        let d = chain_complex(&pd, 2, &md);
        let dc = tensor(&c, &d);
        let coeff = CoefficientRing::ModN(2);
        let e1 = page(&dc, 1, coeff, Orientation::VerticalFirst).unwrap();
        for s in 0..=2 {
            let col = ChainComplex::new(
                (0..=2).map(|t| dc.rank(s, t)).collect(),
                (1..=2).map(|t| dc.v(s, t)).collect(),
                false,
            ).unwrap();
            for t in 0..=2 {
                prop_assert_eq!(e1.dim(s, t), col.cohomology(t, coeff).unwrap().dimension());
            }
        }
    }
}
