//! `RO(Z/2)`-graded cohomology with `Z/2` coefficients of a point and of
//! `CP^∞`, tracked through dimensions and named generators.
//!
//! `H^{•,•}(pt; Z/2)` has one generator `x_(p,q)` in each bidegree of the
//! positive cone `q ≥ p ≥ 0` and of the negative cone `q + 2 ≤ p ≤ 0`.
//! `H^{•,•}(CP^∞; Z/2)` is free over it on the powers of `c`, of bidegree
//! `(2,1)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub p: i64,
    pub q: i64,
}

impl Bidegree {
    pub fn new(p: i64, q: i64) -> Self {
        Bidegree { p, q }
    }

    pub fn in_positive_cone(self) -> bool {
        self.q >= self.p && self.p >= 0
    }

    pub fn in_negative_cone(self) -> bool {
        self.q + 2 <= self.p && self.p <= 0
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Degree of `c`.
pub const C_DEGREE: Bidegree = Bidegree { p: 2, q: 1 };

/// `x_base · c^c_power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BredonMonomial {
    base: Bidegree,
    c_power: u64,
}

impl BredonMonomial {
    pub fn new(base: Bidegree, c_power: u64) -> Result<Self> {
        if point_dim(base) == 0 {
            return Err(Error::InvalidMonomial(format!("H^{{{},{}}}(pt; Z/2) is zero", base.p, base.q)));
        }
        Ok(BredonMonomial { base, c_power })
    }

    pub fn base(&self) -> Bidegree {
        self.base
    }

    pub fn c_power(&self) -> u64 {
        self.c_power
    }

    pub fn degree(&self) -> Bidegree {
        let j = self.c_power as i64;
        Bidegree::new(self.base.p + C_DEGREE.p * j, self.base.q + C_DEGREE.q * j)
    }
}

impl fmt::Display for BredonMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_({},{})·c^{}", self.base.p, self.base.q, self.c_power)
    }
}

/// `dim H^{p,q}(pt; Z/2)`.
pub fn point_dim(d: Bidegree) -> usize {
    usize::from(d.in_positive_cone() || d.in_negative_cone())
}

/// The powers `j` of `c` that can contribute in bidegree `(p, q)`.
///
/// The term `x_(p-2j, q-j) c^j` needs its base in a cone:
/// - positive cone: `p - 2j ≥ 0`, so `j ≤ p/2`;
/// - negative cone: `q - j + 2 ≤ p - 2j`, so `j ≤ p - q - 2`.
///
/// Every contributing `j` is therefore at most
/// `max(⌊p/2⌋, p - q - 2)`, and the range is empty when that is negative.
fn c_powers(d: Bidegree) -> impl Iterator<Item = u64> {
    let bound = d.p.div_euclid(2).max(d.p - d.q - 2);
    (0..=bound).map(|j| j as u64)
}

/// `dim H^{p,q}(CP^∞; Z/2) = Σ_{j ≥ 0} dim H^{p-2j, q-j}(pt; Z/2)`.
pub fn cp_dim(d: Bidegree) -> usize {
    c_powers(d)
        .map(|j| point_dim(Bidegree::new(d.p - 2 * j as i64, d.q - j as i64)))
        .sum()
}

/// The monomials spanning `H^{p,q}(CP^∞; Z/2)`, by increasing power of `c`.
pub fn cp_generators(d: Bidegree) -> Vec<BredonMonomial> {
    c_powers(d)
        .filter_map(|j| BredonMonomial::new(Bidegree::new(d.p - 2 * j as i64, d.q - j as i64), j).ok())
        .collect()
}

/// The monomials spanning `H^{s,0}(CP^∞; Z/2)`.
pub fn row_generators(s: u64) -> Vec<BredonMonomial> {
    cp_generators(Bidegree::new(s as i64, 0))
}

/// Outcome of [`multiply_partial`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartialProduct {
    Monomial(BredonMonomial),
    Zero,
    /// The product of the base classes is not determined by the rules
    /// modelled here.
    Undetermined,
}

/// Products known from `x_(0,0) = 1` and from the vanishing of products of
/// a positive-cone class with a negative-cone class.
pub fn multiply_partial(a: &BredonMonomial, b: &BredonMonomial) -> PartialProduct {
    let unit = Bidegree::new(0, 0);
    let c_power = a.c_power + b.c_power;
    if a.base == unit {
        return PartialProduct::Monomial(BredonMonomial { base: b.base, c_power });
    }
    if b.base == unit {
        return PartialProduct::Monomial(BredonMonomial { base: a.base, c_power });
    }
    let crosses = (a.base.in_positive_cone() && b.base.in_negative_cone())
        || (a.base.in_negative_cone() && b.base.in_positive_cone());
    if crosses {
        PartialProduct::Zero
    } else {
        PartialProduct::Undetermined
    }
}

/// `dim H^{s,0}(CP^∞; Z/2)` for `s = 0..=max_degree`, the dimensions of
/// `𝓗_s(Spec R, G_m; Z/2)`.
pub fn gm_over_r_table(max_degree: u64) -> Vec<usize> {
    (0..=max_degree).map(|s| cp_dim(Bidegree::new(s as i64, 0))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(p: i64, q: i64) -> Bidegree {
        Bidegree::new(p, q)
    }

    #[test]
    fn point_cones() {
        assert_eq!(point_dim(b(0, 0)), 1);
        assert_eq!(point_dim(b(1, 0)), 0);
        assert_eq!(point_dim(b(-2, -4)), 1);
        assert_eq!(point_dim(b(-1, -2)), 0);
        assert_eq!(point_dim(b(3, 7)), 1);
    }

    #[test]
    fn cp_examples() {
        assert_eq!(cp_dim(b(0, 0)), 1);
        assert_eq!(cp_dim(b(4, 0)), 1);
        assert_eq!(cp_dim(b(7, 0)), 2);
        assert_eq!(cp_dim(b(2, 1)), 1);
    }

    #[test]
    fn generators_of_rows() {
        assert!(row_generators(1).is_empty());
        let fmt = |s| row_generators(s).iter().map(ToString::to_string).collect::<Vec<_>>();
        assert_eq!(fmt(4), vec!["x_(0,-2)·c^2"]);
        assert_eq!(fmt(6), vec!["x_(0,-3)·c^3", "x_(-2,-4)·c^4"]);
        assert_eq!(fmt(7), vec!["x_(-1,-4)·c^4", "x_(-3,-5)·c^5"]);
    }

    #[test]
    fn partial_products() {
        let m = |p, q, j| BredonMonomial::new(b(p, q), j).unwrap();
        assert_eq!(multiply_partial(&m(0, 0, 2), &m(0, 0, 3)), PartialProduct::Monomial(m(0, 0, 5)));
        assert_eq!(multiply_partial(&m(1, 2, 0), &m(-2, -4, 0)), PartialProduct::Zero);
        assert_eq!(multiply_partial(&m(-1, -3, 1), &m(-2, -4, 0)), PartialProduct::Undetermined);
        assert_eq!(multiply_partial(&m(0, 0, 1), &m(-2, -4, 0)), PartialProduct::Monomial(m(-2, -4, 1)));
        assert!(BredonMonomial::new(b(1, 0), 0).is_err());
    }

    #[test]
    fn gm_table() {
        assert_eq!(gm_over_r_table(9), vec![1, 0, 0, 0, 1, 1, 2, 2, 3, 3]);
    }
}
