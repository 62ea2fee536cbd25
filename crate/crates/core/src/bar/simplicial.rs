use rayon::prelude::*;

use super::group::FiniteGroup;
use crate::complexes::{alternating_sum_complex, normalize, ChainComplex, SimplicialAbelianGroup, SimplicialMap};

/// Tuples in `G^i` are indexed in base `|G|` with the first entry most
/// significant, so index order is lexicographic order.
#[derive(Clone, Copy, Debug)]
pub struct TupleCodec {
    n: usize,
    len: usize,
}

impl TupleCodec {
    pub fn new(n: usize, len: usize) -> Self {
        TupleCodec { n, len }
    }

    pub fn count(&self) -> usize {
        self.n.pow(self.len as u32)
    }

    pub fn decode_into(&self, mut idx: usize, out: &mut [usize]) {
        for k in (0..self.len).rev() {
            out[k] = idx % self.n;
            idx /= self.n;
        }
    }

    pub fn decode(&self, idx: usize) -> Vec<usize> {
        let mut v = vec![0; self.len];
        self.decode_into(idx, &mut v);
        v
    }

    pub fn encode(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &g| acc * self.n + g)
    }
}

/// `∂_k` on `G^i → G^{i-1}`: drop the first entry (k = 0), multiply
/// entries `k-1` and `k` (0 < k < i), or drop the last entry (k = i).
pub fn face_tuple(g: &FiniteGroup, t: &[usize], k: usize) -> Vec<usize> {
    let i = t.len();
    if k == 0 {
        t[1..].to_vec()
    } else if k == i {
        t[..i - 1].to_vec()
    } else {
        let mut out = Vec::with_capacity(i - 1);
        out.extend_from_slice(&t[..k - 1]);
        out.push(g.mul(t[k - 1], t[k]));
        out.extend_from_slice(&t[k + 1..]);
        out
    }
}

/// `s_k` on `G^i → G^{i+1}`: insert the identity at position `k`.
pub fn degeneracy_tuple(g: &FiniteGroup, t: &[usize], k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(t.len() + 1);
    out.extend_from_slice(&t[..k]);
    out.push(g.identity());
    out.extend_from_slice(&t[k..]);
    out
}

fn face_images(g: &FiniteGroup, i: usize, k: usize) -> Vec<u32> {
    let src = TupleCodec::new(g.order(), i);
    let dst = TupleCodec::new(g.order(), i - 1);
    (0..src.count())
        .into_par_iter()
        .map_init(
            || vec![0usize; i],
            |buf, idx| {
                src.decode_into(idx, buf);
                dst.encode(&face_tuple(g, buf, k)) as u32
            },
        )
        .collect()
}

fn degeneracy_images(g: &FiniteGroup, i: usize, k: usize) -> Vec<u32> {
    let src = TupleCodec::new(g.order(), i);
    let dst = TupleCodec::new(g.order(), i + 1);
    (0..src.count())
        .map(|idx| dst.encode(&degeneracy_tuple(g, &src.decode(idx), k)) as u32)
        .collect()
}

/// Label of a tuple in bar notation, `[g1|g2|…]`.
pub fn tuple_label(g: &FiniteGroup, t: &[usize]) -> String {
    let parts: Vec<&str> = t.iter().map(|&x| g.name(x)).collect();
    format!("[{}]", parts.join("|"))
}

/// The bar simplicial abelian group `Z[G^•]` up to degree `max_degree`,
/// with tuple labels.
pub fn bar_simplicial(g: &FiniteGroup, max_degree: usize) -> SimplicialAbelianGroup {
    bar_simplicial_inner(g, max_degree, true)
}

/// As [`bar_simplicial`] without basis labels, for large degrees.
pub fn bar_simplicial_unlabelled(g: &FiniteGroup, max_degree: usize) -> SimplicialAbelianGroup {
    bar_simplicial_inner(g, max_degree, false)
}

fn bar_simplicial_inner(g: &FiniteGroup, max_degree: usize, labelled: bool) -> SimplicialAbelianGroup {
    let n = g.order();
    let ranks: Vec<usize> = (0..=max_degree).map(|i| n.pow(i as u32)).collect();
    let faces = (0..=max_degree)
        .map(|i| {
            if i == 0 {
                Vec::new()
            } else {
                (0..=i)
                    .map(|k| SimplicialMap::from_images(ranks[i - 1], face_images(g, i, k)))
                    .collect()
            }
        })
        .collect();
    let degeneracies = (0..max_degree)
        .map(|i| {
            (0..=i)
                .map(|k| SimplicialMap::from_images(ranks[i + 1], degeneracy_images(g, i, k)))
                .collect()
        })
        .collect();
    let labels = labelled.then(|| {
        (0..=max_degree)
            .map(|i| {
                let c = TupleCodec::new(n, i);
                (0..c.count()).map(|idx| tuple_label(g, &c.decode(idx))).collect()
            })
            .collect()
    });
    SimplicialAbelianGroup::new(ranks, faces, degeneracies, labels).expect("the bar construction is simplicial")
}

/// The unnormalized bar complex `C_•(BG)` up to degree `max_degree`.
pub fn bar_complex(g: &FiniteGroup, max_degree: usize) -> ChainComplex {
    alternating_sum_complex(&bar_simplicial_unlabelled(g, max_degree))
}

/// The normalized bar complex: tuples without identity entries.
pub fn normalized_bar_complex(g: &FiniteGroup, max_degree: usize) -> ChainComplex {
    normalize(&bar_simplicial(g, max_degree))
}

/// Indices of tuples in `G^i` with no identity entry, in increasing order.
pub fn nondegenerate_tuples(g: &FiniteGroup, i: usize) -> Vec<usize> {
    let c = TupleCodec::new(g.order(), i);
    let e = g.identity();
    (0..c.count()).filter(|&idx| !c.decode(idx).contains(&e)).collect()
}
