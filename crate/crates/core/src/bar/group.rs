use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A finite group given by its multiplication table on `0..order`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    /// Row-major: `table[a * order + b] = a·b`.
    table: Vec<u32>,
    identity: u32,
    inverses: Vec<u32>,
    names: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order)
    }
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(table: &[Vec<usize>], names: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("closure: empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("closure: row {a} has {} entries, expected {n}", row.len())));
            }
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(Error::InvalidGroup(format!("closure: {a}·{b} = {c} is out of range")));
                }
                flat.push(c as u32);
            }
        }
        let mul = |a: usize, b: usize| flat[a * n + b] as usize;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidGroup(format!("associativity: ({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| Error::InvalidGroup("identity: no two-sided identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("inverse: element {a} has no inverse")))?;
            inverses.push(inv as u32);
        }
        let names = match names {
            Some(v) if v.len() == n => v,
            Some(v) => {
                return Err(Error::InvalidGroup(format!("names: {} names for {n} elements", v.len())));
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(FiniteGroup {
            order: n,
            table: flat,
            identity: identity as u32,
            inverses,
            names,
        })
    }

    /// Builds from a multiplication closure on `0..n`.
    pub fn from_fn(n: usize, mul: impl Fn(usize, usize) -> usize, names: Option<Vec<String>>) -> Result<Self> {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        Self::from_table(&table, names)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` written additively on `0..n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_fn(n, |a, b| (a + b) % n, None).expect("cyclic group")
    }

    /// Direct product, element `(a, b)` at index `a * |h| + b`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let m = h.order;
        let names = (0..g.order * m)
            .map(|x| format!("({},{})", g.names[x / m], h.names[x % m]))
            .collect();
        Self::from_fn(
            g.order * m,
            |x, y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m),
            Some(names),
        )
        .expect("product of groups")
    }

    /// Dihedral group of order `2n`: `r^k` at `k`, `s r^k` at `n + k`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n)
            .map(|k| format!("r{k}"))
            .chain((0..n).map(|k| format!("sr{k}")))
            .collect();
        Self::from_fn(
            2 * n,
            |x, y| {
                let (fx, kx) = (x / n, x % n);
                let (fy, ky) = (y / n, y % n);
                // (s^a r^b)(s^c r^d) = s^{a+c} r^{(-1)^c b + d}
                let k = if fy == 0 { (kx + ky) % n } else { (n - kx + ky) % n };
                ((fx + fy) % 2) * n + k
            },
            Some(names),
        )
        .expect("dihedral group")
    }

    /// Symmetric group on `k` letters, permutations in lexicographic order,
    /// product `(στ)(x) = σ(τ(x))`.
    pub fn symmetric(k: usize) -> Self {
        let perms = permutations(k);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("permutation");
        let names = perms
            .iter()
            .map(|p| p.iter().map(|x| (x + 1).to_string()).collect::<String>())
            .collect();
        Self::from_fn(
            perms.len(),
            |a, b| {
                let c: Vec<usize> = (0..k).map(|x| perms[a][perms[b][x]]).collect();
                index(&c)
            },
            Some(names),
        )
        .expect("symmetric group")
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Self {
        // Index 2u + s encodes sign s on unit u ∈ {1, i, j, k}.
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
        // unit products: (unit, sign) for u*v
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        Self::from_fn(
            8,
            |x, y| {
                let (u, su) = (x / 2, x % 2);
                let (v, sv) = (y / 2, y % 2);
                let (w, sw) = UNIT[u][v];
                2 * w + (su + sv + sw) % 2
            },
            Some(names),
        )
        .expect("quaternion group")
    }

    /// One representative of every isomorphism class of order at most 8.
    pub fn small_groups(max_order: usize) -> Vec<(String, FiniteGroup)> {
        assert!(max_order <= 8, "catalog stops at order 8");
        let z = FiniteGroup::cyclic;
        let all: Vec<(&str, FiniteGroup)> = vec![
            ("1", FiniteGroup::trivial()),
            ("Z/2", z(2)),
            ("Z/3", z(3)),
            ("Z/4", z(4)),
            ("Z/2xZ/2", FiniteGroup::product(&z(2), &z(2))),
            ("Z/5", z(5)),
            ("Z/6", z(6)),
            ("S3", FiniteGroup::symmetric(3)),
            ("Z/7", z(7)),
            ("Z/8", z(8)),
            ("Z/4xZ/2", FiniteGroup::product(&z(4), &z(2))),
            ("Z/2xZ/2xZ/2", FiniteGroup::product(&FiniteGroup::product(&z(2), &z(2)), &z(2))),
            ("D4", FiniteGroup::dihedral(4)),
            ("Q8", FiniteGroup::quaternion()),
        ];
        all.into_iter()
            .filter(|(_, g)| g.order() <= max_order)
            .map(|(n, g)| (n.to_string(), g))
            .collect()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn identity(&self) -> usize {
        self.identity as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn inverses(&self) -> &[u32] {
        &self.inverses
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// First violated pair for `f: self → target`, if any.
    pub fn check_homomorphism(&self, target: &FiniteGroup, f: &[usize]) -> Result<()> {
        if f.len() != self.order {
            return Err(Error::NotAHomomorphism(format!(
                "map has {} images for a group of order {}",
                f.len(),
                self.order
            )));
        }
        if let Some(&bad) = f.iter().find(|&&x| x >= target.order) {
            return Err(Error::NotAHomomorphism(format!("image {bad} is out of range")));
        }
        for a in 0..self.order {
            for b in 0..self.order {
                if f[self.mul(a, b)] != target.mul(f[a], f[b]) {
                    return Err(Error::NotAHomomorphism(format!("f({a}·{b}) ≠ f({a})·f({b})")));
                }
            }
        }
        Ok(())
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order];
        span[self.identity()] = true;
        for a in 0..self.order {
            if !span[a] {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        let mut queue = VecDeque::from([self.identity()]);
        seen[self.identity()] = true;
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Every automorphism, as image lists, in lexicographic order.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                (0..self.order).filter(|&x| self.element_order(x) == o).collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, cs)| cs[c]).collect();
            if let Some(f) = self.extend_from_generators(&gens, &images) {
                if self.check_homomorphism(self, &f).is_ok() {
                    out.push(f);
                }
            }
            // Odometer over the candidate lists.
            let mut pos = gens.len();
            loop {
                if pos == 0 {
                    out.sort();
                    out.dedup();
                    return if out.is_empty() { vec![(0..self.order).collect()] } else { out };
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < candidates[pos].len() {
                    break;
                }
                choice[pos] = 0;
            }
        }
    }

    /// The bijection determined by sending generators to `images`, if the
    /// assignment extends consistently.
    fn extend_from_generators(&self, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        const UNSET: usize = usize::MAX;
        let mut f = vec![UNSET; self.order];
        f[self.identity()] = self.identity();
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = self.mul(f[x], img);
                if f[y] == UNSET {
                    f[y] = fy;
                    queue.push_back(y);
                } else if f[y] != fy {
                    return None;
                }
            }
        }
        let mut hit = vec![false; self.order];
        for &v in &f {
            if v == UNSET || hit[v] {
                return None;
            }
            hit[v] = true;
        }
        Some(f)
    }

    /// Automorphisms `σ` with `σ∘σ = id`, the identity included.
    pub fn involutive_automorphisms(&self) -> Vec<Vec<usize>> {
        self.automorphisms()
            .into_iter()
            .filter(|s| (0..self.order).all(|x| s[s[x]] == x))
            .collect()
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}
