use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;

use super::group::FiniteGroup;
use super::simplicial::TupleCodec;
use crate::error::{Error, Result};

/// A finite group `Γ` of automorphisms of `G`, given by generating
/// permutations. Models the Galois action on `G(k̄)`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: FiniteGroup,
    generators: Vec<Vec<usize>>,
    /// Every element of the generated permutation group, sorted.
    elements: Vec<Vec<usize>>,
}

impl GroupAction {
    /// Checks that each generator is an automorphism and, when a bound is
    /// declared, that the generated group's order divides it.
    pub fn new(group: FiniteGroup, generators: Vec<Vec<usize>>, declared_bound: Option<usize>) -> Result<Self> {
        for (j, s) in generators.iter().enumerate() {
            check_automorphism(&group, s).map_err(|why| Error::NotAnAutomorphism(format!("generator {j}: {why}")))?;
        }
        let elements = generate(group.order(), &generators);
        if let Some(bound) = declared_bound {
            if bound == 0 || bound % elements.len() != 0 {
                return Err(Error::NotAnAutomorphism(format!(
                    "generated group has order {}, which does not divide the declared bound {bound}",
                    elements.len()
                )));
            }
        }
        Ok(GroupAction {
            group,
            generators,
            elements,
        })
    }

    pub fn trivial(group: FiniteGroup) -> Self {
        let n = group.order();
        GroupAction {
            group,
            generators: Vec::new(),
            elements: vec![(0..n).collect()],
        }
    }

    /// `x ↦ x⁻¹`, an automorphism exactly when `G` is abelian; complex
    /// conjugation on `μ_n`.
    pub fn inversion(group: FiniteGroup) -> Result<Self> {
        let inv = (0..group.order()).map(|x| group.inverse(x)).collect();
        Self::new(group, vec![inv], Some(2))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    pub fn gamma_order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// `σ · t` for the diagonal action on tuple indices in `G^i`.
    pub fn act_on_tuple(&self, sigma: &[usize], codec: &TupleCodec, idx: usize, buf: &mut [usize]) -> usize {
        codec.decode_into(idx, buf);
        for x in buf.iter_mut() {
            *x = sigma[*x];
        }
        codec.encode(buf)
    }

    /// The orbits of `Γ` on `G^i`.
    pub fn orbit_basis(&self, degree: usize) -> OrbitBasis {
        let codec = TupleCodec::new(self.group.order(), degree);
        let count = codec.count();
        const UNSET: u32 = u32::MAX;
        let mut orbit_of = vec![UNSET; count];
        let mut representatives = Vec::new();
        let mut orbit_sizes = Vec::new();
        let mut buf = vec![0; degree];
        for idx in 0..count {
            if orbit_of[idx] != UNSET {
                continue;
            }
            // Scanning in increasing order makes `idx` the least tuple of
            // its orbit.
            let o = representatives.len() as u32;
            let mut size = 0;
            for sigma in &self.elements {
                let j = self.act_on_tuple(sigma, &codec, idx, &mut buf);
                if orbit_of[j] == UNSET {
                    orbit_of[j] = o;
                    size += 1;
                }
            }
            representatives.push(idx);
            orbit_sizes.push(size);
        }
        OrbitBasis {
            degree,
            codec,
            representatives,
            orbit_sizes,
            orbit_of,
        }
    }

    /// Permutation of `G^i` induced by the generator `j`.
    pub fn tuple_permutation(&self, j: usize, degree: usize) -> Vec<usize> {
        let codec = TupleCodec::new(self.group.order(), degree);
        let sigma = &self.generators[j];
        (0..codec.count())
            .into_par_iter()
            .map_init(|| vec![0; degree], |buf, idx| self.act_on_tuple(sigma, &codec, idx, buf))
            .collect()
    }
}

fn check_automorphism(g: &FiniteGroup, s: &[usize]) -> std::result::Result<(), String> {
    let n = g.order();
    if s.len() != n {
        return Err(format!("permutation has {} entries for a group of order {n}", s.len()));
    }
    let mut seen = vec![false; n];
    for &x in s {
        if x >= n || seen[x] {
            return Err("not a permutation of the group elements".into());
        }
        seen[x] = true;
    }
    for a in 0..n {
        for b in 0..n {
            if s[g.mul(a, b)] != g.mul(s[a], s[b]) {
                return Err(format!("σ({a}·{b}) ≠ σ({a})·σ({b})"));
            }
        }
    }
    Ok(())
}

fn generate(n: usize, generators: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for s in generators {
            let q: Vec<usize> = p.iter().map(|&x| s[x]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.into_iter().collect()
}

/// The orbits of the diagonal action on `G^i`, each represented by its
/// lexicographically least tuple.
#[derive(Clone, Debug)]
pub struct OrbitBasis {
    degree: usize,
    codec: TupleCodec,
    representatives: Vec<usize>,
    orbit_sizes: Vec<usize>,
    orbit_of: Vec<u32>,
}

impl OrbitBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Tuple indices of the representatives, increasing.
    pub fn representative_indices(&self) -> &[usize] {
        &self.representatives
    }

    pub fn representatives(&self) -> Vec<Vec<usize>> {
        self.representatives.iter().map(|&i| self.codec.decode(i)).collect()
    }

    pub fn orbit_sizes(&self) -> &[usize] {
        &self.orbit_sizes
    }

    /// Orbit number of the tuple with index `idx`.
    pub fn orbit_of(&self, idx: usize) -> usize {
        self.orbit_of[idx] as usize
    }

    pub fn codec(&self) -> &TupleCodec {
        &self.codec
    }
}
