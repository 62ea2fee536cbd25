//! Integers with an inline machine-word fast path.
//!
//! Elimination kernels spend nearly all of their time on entries that fit in
//! an `i64`; heap-backed `BigInt` arithmetic is only entered when a checked
//! operation overflows, and results are demoted again as soon as they fit.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<&BigInt> for Int {
    fn from(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(s) => Int::Small(s),
            None => Int::Big(v.clone()),
        }
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        match v.to_i64() {
            Some(s) => Int::Small(s),
            None => Int::Big(v),
        }
    }
}

impl From<&Int> for BigInt {
    fn from(v: &Int) -> Self {
        match v {
            Int::Small(s) => BigInt::from(*s),
            Int::Big(b) => b.clone(),
        }
    }
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn big(&self) -> BigInt {
        BigInt::from(self)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    #[inline]
    pub fn is_unit(&self) -> bool {
        matches!(self, Int::Small(1) | Int::Small(-1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(v) => v.signum() as i32,
            Int::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn neg(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(r) => Int::Small(r),
                None => Int::Big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from(-b),
        }
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn add(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if let Some(r) = a.checked_add(*b) {
                return Int::Small(r);
            }
        }
        Int::from(self.big() + other.big())
    }

    pub fn sub(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if let Some(r) = a.checked_sub(*b) {
                return Int::Small(r);
            }
        }
        Int::from(self.big() - other.big())
    }

    pub fn mul(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if let Some(r) = a.checked_mul(*b) {
                return Int::Small(r);
            }
        }
        Int::from(self.big() * other.big())
    }

    /// `self - a * b`, the inner step of every elimination.
    #[inline]
    pub fn sub_mul(&self, a: &Int, b: &Int) -> Int {
        if let (Int::Small(s), Int::Small(x), Int::Small(y)) = (self, a, b) {
            if let Some(p) = x.checked_mul(*y) {
                if let Some(r) = s.checked_sub(p) {
                    return Int::Small(r);
                }
            }
        }
        Int::from(self.big() - a.big() * b.big())
    }

    /// Floor division and remainder (remainder has the sign of the divisor).
    pub fn div_mod_floor(&self, other: &Int) -> (Int, Int) {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if !(*a == i64::MIN && *b == -1) {
                let (q, r) = a.div_mod_floor(b);
                return (Int::Small(q), Int::Small(r));
            }
        }
        let (q, r) = self.big().div_mod_floor(&other.big());
        (Int::from(q), Int::from(r))
    }

    /// Quotient rounded towards the nearest integer, so the remainder has
    /// absolute value at most half the divisor.
    pub fn div_round(&self, other: &Int) -> Int {
        let (q, r) = self.div_mod_floor(other);
        let twice = r.add(&r).abs();
        if twice.cmp_abs(other) == Ordering::Greater {
            q.add(&Int::ONE)
        } else {
            q
        }
    }

    pub fn is_divisible_by(&self, other: &Int) -> bool {
        if other.is_zero() {
            return self.is_zero();
        }
        self.div_mod_floor(other).1.is_zero()
    }

    pub fn gcd(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if *a != i64::MIN && *b != i64::MIN {
                return Int::Small(a.gcd(b));
            }
        }
        Int::from(self.big().gcd(&other.big()))
    }

    pub fn lcm(&self, other: &Int) -> Int {
        if self.is_zero() || other.is_zero() {
            return Int::ZERO;
        }
        let g = self.gcd(other);
        self.div_mod_floor(&g).0.mul(other).abs()
    }

    pub fn cmp_abs(&self, other: &Int) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.big().abs().cmp(&other.big().abs()),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    /// Residue in `0..n` for `n > 0`.
    pub fn rem_euclid(&self, n: &Int) -> Int {
        self.div_mod_floor(n).1
    }

    pub fn to_bigint(&self) -> BigInt {
        self.big()
    }

    pub fn one() -> Int {
        Int::Small(1)
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.big().cmp(&other.big()),
        }
    }
}
