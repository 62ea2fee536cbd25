use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::int::Int;
use crate::error::{Error, Result};

/// `Z^free_rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_s` with `t_i ≥ 2` and `t_i | t_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<Int>,
}

impl FgAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<Int>) -> Result<Self> {
        for t in &torsion {
            if *t < Int::Small(2) {
                return Err(Error::InvalidCoefficients(format!("torsion coefficient {t} is below 2")));
            }
        }
        for w in torsion.windows(2) {
            if !w[1].is_divisible_by(&w[0]) {
                return Err(Error::InvalidCoefficients(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        Ok(FgAbelianGroup { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: i64) -> Self {
        Self::from_orders(0, [Int::Small(order)])
    }

    /// Builds the canonical form from arbitrary cyclic orders, e.g. the
    /// invariant factors of a relation matrix; orders of one are dropped
    /// and zero orders count as free summands.
    pub fn from_orders(free_rank: usize, orders: impl IntoIterator<Item = Int>) -> Self {
        let mut free = free_rank;
        let mut rest = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                free += 1;
            } else if !o.is_unit() {
                rest.push(o);
            }
        }
        FgAbelianGroup {
            free_rank: free,
            torsion: canonical_torsion(rest),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().map(Int::to_bigint).product())
    }

    /// Number of cyclic summands, i.e. the minimal number of generators.
    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Orders of the canonical generators: torsion first, then zeros for the
    /// free summands.
    pub fn generator_orders(&self) -> Vec<Int> {
        let mut v = self.torsion.clone();
        v.extend(std::iter::repeat_n(Int::ZERO, self.free_rank));
        v
    }

    /// `self ⊗ Z/n`.
    pub fn tensor_mod(&self, n: &Int) -> FgAbelianGroup {
        let orders = self
            .generator_orders()
            .into_iter()
            .map(|o| o.gcd(n))
            .collect::<Vec<_>>();
        Self::from_orders(0, orders)
    }

    /// `Tor(self, Z/n)`.
    pub fn tor_mod(&self, n: &Int) -> FgAbelianGroup {
        Self::from_orders(0, self.torsion.iter().map(|t| t.gcd(n)).collect::<Vec<_>>())
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        Self::from_orders(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(&other.torsion).cloned().collect::<Vec<_>>(),
        )
    }

    /// Dimension over `Z/p` when every torsion order is `p`, or over `Q`
    /// when the group is free.
    pub fn dimension(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn to_serial(&self) -> SerialGroup {
        SerialGroup {
            rank: self.free_rank,
            torsion: self.torsion.iter().map(|t| t.to_string()).collect(),
        }
    }
}

/// Invariant factors of a product of cyclic groups of the given orders
/// (all at least two).
fn canonical_torsion(orders: Vec<Int>) -> Vec<Int> {
    if orders.is_empty() {
        return orders;
    }
    // Repeated gcd/lcm sweeps converge to the divisibility chain.
    let mut v = orders;
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = v[i].gcd(&v[j]);
            let l = v[i].lcm(&v[j]);
            v[i] = g;
            v[j] = l;
        }
    }
    v.retain(|t| !t.is_unit());
    v
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// JSON shape `{rank, torsion: [..]}`; torsion orders are decimal strings so
/// arbitrarily large values survive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerialGroup {
    pub rank: usize,
    pub torsion: Vec<String>,
}

/// The coefficient group `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientRing {
    Integers,
    ModN(u64),
    Rationals,
}

impl CoefficientRing {
    pub fn mod_n(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidCoefficients(format!("Z/{n} needs n >= 2")));
        }
        if n >= 1 << 31 {
            return Err(Error::InvalidCoefficients(format!("Z/{n}: modulus too large")));
        }
        Ok(CoefficientRing::ModN(n))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CoefficientRing::ModN(n) => Self::mod_n(*n).map(|_| ()),
            _ => Ok(()),
        }
    }

    /// Characteristic: `0` for `Z` and `Q`.
    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientRing::ModN(n) => *n,
            _ => 0,
        }
    }

    pub fn prime_field(&self) -> Option<u64> {
        match self {
            CoefficientRing::ModN(n) if is_prime(*n) => Some(*n),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, CoefficientRing::Rationals) || self.prime_field().is_some()
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::ModN(n) => write!(f, "Z/{n}"),
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Z" => Ok(CoefficientRing::Integers),
            "Q" => Ok(CoefficientRing::Rationals),
            other => {
                let n = other
                    .strip_prefix("Z/")
                    .and_then(|n| n.parse::<BigInt>().ok())
                    .ok_or_else(|| Error::InvalidCoefficients(format!("cannot parse coefficients {other:?}")))?;
                let n = n
                    .to_u64()
                    .ok_or_else(|| Error::InvalidCoefficients(format!("Z/{n}: modulus out of range")))?;
                Self::mod_n(n)
            }
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
