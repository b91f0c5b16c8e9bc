//! Quasi-unipotence certification and unipotent structure.
//!
//! A matrix is quasi-unipotent iff its characteristic polynomial is a
//! product of cyclotomic polynomials. We certify this by repeated trial
//! division against every candidate Φ_k with φ(k) ≤ h, k ≤ 2h²; a
//! nonconstant remainder is a witness with no root of unity among its
//! roots, and the growth degree of the action is infinite.

use num_integer::Integer;
use serde::Serialize;

use crate::cyclo::{cyclotomic, euler_phi};
use crate::matrix::RatMatrix;
use crate::poly::QPoly;
use crate::rat::Rat;
use crate::{Error, Result};

/// Outcome of the quasi-unipotence test.
#[derive(Debug, Clone)]
pub enum Certification {
    QuasiUnipotent {
        /// Least M with F^M unipotent: lcm of the cyclotomic orders.
        order_m: u64,
        /// (k, multiplicity) for each cyclotomic factor Φ_k.
        factors: Vec<(u64, usize)>,
    },
    Not {
        /// Monic factor of the characteristic polynomial with no
        /// cyclotomic divisor.
        witness: QPoly,
    },
}

/// Unipotent reduction data for a certified action.
#[derive(Debug, Clone, Serialize)]
pub struct UnipotentCert {
    pub order_m: u64,
    /// (k, multiplicity) per cyclotomic factor of the characteristic
    /// polynomial.
    pub cyclotomic_factors: Vec<(u64, usize)>,
    /// F^M
    #[serde(skip)]
    pub f_m: RatMatrix,
    /// F^{-M}
    #[serde(skip)]
    pub f_m_inv: RatMatrix,
    /// N = F^M - Id
    #[serde(skip)]
    pub nilpotent_n: RatMatrix,
    /// N' = F^{-M} - Id
    #[serde(skip)]
    pub nilpotent_n_prime: RatMatrix,
    /// Largest j with N^j != 0.
    pub k: usize,
    /// Whether k is even (a theorem for geometric actions, a flag here).
    pub k_even: bool,
    /// Jordan block sizes of F^M, descending, summing to h.
    pub jordan_partition: Vec<usize>,
}

/// Factor out every cyclotomic divisor of `p` (monic, rational
/// coefficients). Returns the (k, multiplicity) list and the remaining
/// cofactor, which is constant iff `p` was a product of cyclotomics.
///
/// Candidates: φ(k) ≤ h forces k ≤ 2h² (φ(k) ≥ sqrt(k/2) for all k), so the
/// enumeration below is exhaustive.
fn strip_cyclotomic_factors(p: &QPoly, h: usize) -> (Vec<(u64, usize)>, QPoly) {
    let mut rem = p.clone();
    let mut factors = Vec::new();
    let cap = 2 * (h as u64) * (h as u64);
    for k in 1..=cap.max(1) {
        if euler_phi(k) > h as u64 {
            continue;
        }
        let phi_k = cyclotomic(k);
        let mut mult = 0usize;
        loop {
            match rem.degree() {
                Some(dr) if dr >= phi_k.degree().unwrap() => {}
                _ => break,
            }
            let (q, r) = rem.divrem(&phi_k).expect("nonzero divisor");
            if !r.is_zero() {
                break;
            }
            rem = q;
            mult += 1;
        }
        if mult > 0 {
            factors.push((k, mult));
        }
        if rem.degree() == Some(0) {
            break;
        }
    }
    (factors, rem)
}

/// Decide whether F is quasi-unipotent. Errors on non-square or singular F
/// (the intended inputs are automorphism actions, which are invertible).
pub fn certify_quasi_unipotent(f: &RatMatrix) -> Result<Certification> {
    if !f.is_square() {
        return Err(Error::Invalid("action matrix must be square".into()));
    }
    let chi = f.char_poly();
    if chi.coeff(0).is_zero() {
        return Err(Error::Invalid(
            "action matrix is singular; automorphisms are invertible".into(),
        ));
    }
    let (factors, rem) = strip_cyclotomic_factors(&chi, f.rows());
    match rem.degree() {
        Some(0) | None => {
            let order_m = factors.iter().fold(1u64, |m, &(k, _)| m.lcm(&k));
            Ok(Certification::QuasiUnipotent { order_m, factors })
        }
        _ => Ok(Certification::Not {
            witness: rem.monic(),
        }),
    }
}

fn nilpotency_index(n: &RatMatrix) -> (usize, Vec<usize>) {
    // Returns (k, ranks) with ranks[j] = rank(N^j) for j = 0..=k+1.
    let h = n.rows();
    let mut ranks = vec![h];
    let mut pow = n.clone();
    let mut k = 0;
    for j in 1..=h {
        let r = pow.rank();
        ranks.push(r);
        if r == 0 {
            k = j - 1;
            break;
        }
        if j == h {
            // rank never hit zero: not nilpotent
            return (h, ranks);
        }
        pow = &pow * n;
    }
    (k, ranks)
}

/// Structure of the unipotent power F^M: nilpotent part, the invariant k,
/// and the Jordan partition from the rank sequence
/// #{blocks >= j} = rank(N^{j-1}) - rank(N^j).
pub fn unipotent_structure(f: &RatMatrix, order_m: u64) -> Result<UnipotentCert> {
    if !f.is_square() {
        return Err(Error::Invalid("action matrix must be square".into()));
    }
    let h = f.rows();
    let f_m = f.pow(order_m);
    let id = RatMatrix::identity(h);
    let n = &f_m - &id;
    let (k, ranks) = nilpotency_index(&n);
    if ranks.last().copied() != Some(0) {
        return Err(Error::Invalid(format!(
            "F^{order_m} is not unipotent; certification does not apply"
        )));
    }
    let mut partition = Vec::new();
    let blocks_ge = |j: usize| -> usize {
        // ranks is defined through the first zero; beyond it every rank is 0
        let r = |i: usize| ranks.get(i).copied().unwrap_or(0);
        r(j - 1).saturating_sub(r(j))
    };
    for size in (1..=k + 1).rev() {
        let count = blocks_ge(size) - if size < h { blocks_ge(size + 1) } else { 0 };
        for _ in 0..count {
            partition.push(size);
        }
    }
    debug_assert_eq!(partition.iter().sum::<usize>(), h);
    let f_m_inv = f_m
        .inverse()
        .ok_or_else(|| Error::Invalid("action matrix is singular".into()))?;
    let n_prime = &f_m_inv - &id;
    Ok(UnipotentCert {
        order_m,
        cyclotomic_factors: Vec::new(),
        f_m,
        f_m_inv,
        nilpotent_n: n,
        nilpotent_n_prime: n_prime,
        k,
        k_even: k % 2 == 0,
        jordan_partition: partition,
    })
}

/// Full certification: quasi-unipotence test, then unipotent reduction.
/// `Err(NotQuasiUnipotent)` carries the witness factor.
pub fn certify(f: &RatMatrix) -> Result<UnipotentCert> {
    match certify_quasi_unipotent(f)? {
        Certification::QuasiUnipotent { order_m, factors } => {
            let mut cert = unipotent_structure(f, order_m)?;
            cert.cyclotomic_factors = factors;
            Ok(cert)
        }
        Certification::Not { witness } => Err(Error::NotQuasiUnipotent(witness)),
    }
}

impl UnipotentCert {
    /// N^j omega, computed by repeated application.
    pub fn n_power_class(&self, omega: &[Rat], j: usize) -> Vec<Rat> {
        let mut v = omega.to_vec();
        for _ in 0..j {
            v = self.nilpotent_n.mul_vec(&v);
        }
        v
    }

    /// N'^j omega.
    pub fn n_prime_power_class(&self, omega: &[Rat], j: usize) -> Vec<Rat> {
        let mut v = omega.to_vec();
        for _ in 0..j {
            v = self.nilpotent_n_prime.mul_vec(&v);
        }
        v
    }

    /// N_m omega = (N^m + N'^m) omega; N_0 = 2 Id.
    pub fn n_two_sided_class(&self, omega: &[Rat], m: usize) -> Vec<Rat> {
        let a = self.n_power_class(omega, m);
        let b = self.n_prime_power_class(omega, m);
        a.iter().zip(&b).map(|(x, y)| x + y).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::RatMatrix;

    #[test]
    fn identity_is_unipotent_order_one() {
        let f = RatMatrix::identity(3);
        match certify_quasi_unipotent(&f).unwrap() {
            Certification::QuasiUnipotent { order_m, .. } => assert_eq!(order_m, 1),
            Certification::Not { .. } => panic!("identity must certify"),
        }
        let cert = certify(&f).unwrap();
        assert_eq!(cert.k, 0);
        assert_eq!(cert.jordan_partition, vec![1, 1, 1]);
    }

    #[test]
    fn quarter_rotation_has_order_four() {
        let f = RatMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
        match certify_quasi_unipotent(&f).unwrap() {
            Certification::QuasiUnipotent { order_m, factors } => {
                assert_eq!(order_m, 4);
                assert_eq!(factors, vec![(4, 1)]);
            }
            Certification::Not { .. } => panic!("rotation must certify"),
        }
    }

    #[test]
    fn hyperbolic_map_is_rejected_with_witness() {
        let f = RatMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        match certify_quasi_unipotent(&f).unwrap() {
            Certification::Not { witness } => {
                assert_eq!(witness, QPoly::from_i64(&[1, -3, 1]));
            }
            Certification::QuasiUnipotent { .. } => panic!("x^2-3x+1 has no unit roots"),
        }
    }

    #[test]
    fn jordan_block_structure() {
        // single 3x3 Jordan block at eigenvalue 1
        let f = RatMatrix::from_i64_rows(&[&[1, 0, 0], &[1, 1, 0], &[0, 1, 1]]);
        let cert = certify(&f).unwrap();
        assert_eq!(cert.order_m, 1);
        assert_eq!(cert.k, 2);
        assert_eq!(cert.jordan_partition, vec![3]);
    }

    #[test]
    fn singular_input_is_an_error() {
        let f = RatMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert!(matches!(
            certify_quasi_unipotent(&f),
            Err(Error::Invalid(_))
        ));
    }
}
