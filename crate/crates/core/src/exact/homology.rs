use super::abelian::{CoefficientRing, FgAbelianGroup};
use super::int::Int;
use super::lattice::{image_mod, kernel_mod, Subquotient};
use super::matrix::IntMatrix;
use super::smith::invariant_factors;
use crate::error::{Error, Result};

/// Checks `d_in: Z^l → Z^k`, `d_out: Z^k → Z^m` and returns `d_out · d_in`.
fn compose_checked(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<IntMatrix> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch(format!(
            "incoming map lands in rank {} but outgoing map starts at rank {}",
            d_in.rows(),
            d_out.cols()
        )));
    }
    d_out.mul(d_in)
}

/// `ker(d_out ⊗ A) / im(d_in ⊗ A)` in invariant-factor form.
///
/// Over `Z/n`, when the integer lifts already compose to zero the answer is
/// assembled from integer invariant factors by the universal coefficient
/// sequence; lifts that only compose to zero modulo `n` go through the
/// explicit lattice quotient with `n·I` appended to both maps.
pub fn homology_at(d_in: &IntMatrix, d_out: &IntMatrix, coeff: CoefficientRing) -> Result<FgAbelianGroup> {
    coeff.validate()?;
    let prod = compose_checked(d_in, d_out)?;
    let k = d_in.rows();
    let exact = prod.is_zero();
    match coeff {
        CoefficientRing::Integers | CoefficientRing::Rationals => {
            if !exact {
                return Err(Error::NotAComplex("outgoing map after incoming map is nonzero".into()));
            }
            let (f_in, f_out) = rayon::join(|| invariant_factors(d_in), || invariant_factors(d_out));
            Ok(homology_from_factors(k, &f_in, &f_out, coeff))
        }
        CoefficientRing::ModN(n) => {
            if exact {
                let (f_in, f_out) = rayon::join(|| invariant_factors(d_in), || invariant_factors(d_out));
                Ok(homology_from_factors(k, &f_in, &f_out, coeff))
            } else if prod.is_zero_mod(n) {
                Ok(homology_presentation(d_in, d_out, coeff)?.group().clone())
            } else {
                Err(Error::NotAComplex(format!("outgoing map after incoming map is nonzero mod {n}")))
            }
        }
    }
}

/// Homology at a term of rank `k` from the nonzero invariant factors of an
/// incoming and an outgoing map whose integer composite vanishes.
pub fn homology_from_factors(k: usize, f_in: &[Int], f_out: &[Int], coeff: CoefficientRing) -> FgAbelianGroup {
    let free = k - f_in.len() - f_out.len();
    let here = FgAbelianGroup::from_orders(free, f_in.iter().cloned());
    match coeff {
        CoefficientRing::Integers => here,
        CoefficientRing::Rationals => FgAbelianGroup::free(free),
        CoefficientRing::ModN(n) => {
            let modulus = Int::Small(n as i64);
            let below = FgAbelianGroup::from_orders(0, f_out.iter().cloned());
            here.tensor_mod(&modulus).direct_sum(&below.tor_mod(&modulus))
        }
    }
}

/// Explicit homology `ker / im` with generators and coordinates, over `Z`
/// or `Z/n`.
pub fn homology_presentation(d_in: &IntMatrix, d_out: &IntMatrix, coeff: CoefficientRing) -> Result<Subquotient> {
    coeff.validate()?;
    let n = match coeff {
        CoefficientRing::Integers => 0,
        CoefficientRing::ModN(n) => n,
        CoefficientRing::Rationals => {
            return Err(Error::Unsupported("explicit presentations are over Z or Z/n".into()));
        }
    };
    let prod = compose_checked(d_in, d_out)?;
    if !prod.is_zero_mod(n) {
        return Err(Error::NotAComplex("outgoing map after incoming map is nonzero".into()));
    }
    let cycles = kernel_mod(d_out, n);
    Subquotient::new(cycles, &image_mod(d_in, n))
}

/// The cochain differential dual to `m`: its transpose, reduced mod `n`
/// for `Z/n` coefficients.
pub fn dualize(m: &IntMatrix, coeff: CoefficientRing) -> IntMatrix {
    match coeff {
        CoefficientRing::ModN(n) => m.transpose().reduce_mod(n),
        _ => m.transpose(),
    }
}

/// Cohomology at degree `i` of `Hom(C, A)` given the chain differentials
/// `d_i: C_i → C_{i-1}` and `d_{i+1}: C_{i+1} → C_i`. `Hom(C, Z/n)` is
/// `Hom(C, Z) ⊗ Z/n`, so the integral transposes are used.
pub fn cohomology_at(d_i: &IntMatrix, d_next: &IntMatrix, coeff: CoefficientRing) -> Result<FgAbelianGroup> {
    homology_at(&d_i.transpose(), &d_next.transpose(), coeff)
}

/// Rank over `Q`.
pub fn rank(m: &IntMatrix) -> usize {
    invariant_factors(m).len()
}

/// Rank over `Z/p`, `p` prime.
pub fn rank_mod(m: &IntMatrix, p: u64) -> usize {
    super::eliminate::rank_mod_p(m.rows(), m.columns(), p)
}

/// Rank over the prime field or `Q` named by `coeff`.
pub fn field_rank(m: &IntMatrix, coeff: CoefficientRing) -> Result<usize> {
    match coeff {
        CoefficientRing::Rationals => Ok(rank(m)),
        CoefficientRing::ModN(n) => match coeff.prime_field() {
            Some(p) => Ok(rank_mod(m, p)),
            None => Err(Error::CompositeModulus(n)),
        },
        CoefficientRing::Integers => Err(Error::Unsupported("Z is not a field".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_by_two() {
        let d_in = IntMatrix::from_rows(&[vec![2]]);
        let d_out = IntMatrix::zeros(0, 1);
        let h = homology_at(&d_in, &d_out, CoefficientRing::Integers).unwrap();
        assert_eq!(h, FgAbelianGroup::cyclic(2));
        let h2 = homology_at(&d_in, &d_out, CoefficientRing::ModN(2)).unwrap();
        assert_eq!(h2, FgAbelianGroup::cyclic(2));
        let hq = homology_at(&d_in, &d_out, CoefficientRing::Rationals).unwrap();
        assert!(hq.is_trivial());
    }

    #[test]
    fn zero_maps() {
        let h = homology_at(&IntMatrix::zeros(3, 0), &IntMatrix::zeros(0, 3), CoefficientRing::Integers).unwrap();
        assert_eq!(h, FgAbelianGroup::free(3));
    }

    #[test]
    fn errors() {
        let a = IntMatrix::identity(2);
        assert!(matches!(
            homology_at(&a, &IntMatrix::zeros(1, 3), CoefficientRing::Integers),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(homology_at(&a, &a, CoefficientRing::Integers), Err(Error::NotAComplex(_))));
    }

    #[test]
    fn reduced_lifts_use_lattice_route() {
        // 0 -> Z --3--> Z --(2)--> Z with 2*3 = 6 ≡ 0 mod 6 but not over Z.
        let d_in = IntMatrix::from_rows(&[vec![3]]);
        let d_out = IntMatrix::from_rows(&[vec![2]]);
        // Over Z/6: ker(×2) = {0,3}, im(×3) = {0,3}.
        let h = homology_at(&d_in, &d_out, CoefficientRing::ModN(6)).unwrap();
        assert!(h.is_trivial());
        assert!(homology_at(&d_in, &d_out, CoefficientRing::Integers).is_err());
    }

    #[test]
    fn transpose() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(dualize(&m, CoefficientRing::Integers), IntMatrix::from_rows(&[vec![1, 3], vec![2, 4]]));
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(dualize(&z, CoefficientRing::ModN(2)), IntMatrix::zeros(3, 2));
    }
}
