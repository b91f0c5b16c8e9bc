//! Cyclotomic polynomials and recognition of cyclotomic factors.

use crate::poly::QPoly;
use crate::rat::Rat;

pub fn euler_phi(mut k: u64) -> u64 {
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= k {
        if k.is_multiple_of(p) {
            let mut pe = 1;
            while k.is_multiple_of(p) {
                k /= p;
                pe *= p;
            }
            phi *= pe - pe / p;
        }
        p += 1;
    }
    if k > 1 {
        phi *= k - 1;
    }
    phi
}

/// The k-th cyclotomic polynomial, k >= 1, via
/// x^k - 1 = prod_{d | k} Phi_d with exact division.
pub fn cyclotomic(k: u64) -> QPoly {
    assert!(k >= 1);
    let divisors: Vec<u64> = (1..=k).filter(|d| k.is_multiple_of(*d)).collect();
    let mut table: Vec<(u64, QPoly)> = Vec::with_capacity(divisors.len());
    for &m in &divisors {
        // x^m - 1
        let mut c = vec![Rat::zero(); m as usize + 1];
        c[0] = -Rat::one();
        c[m as usize] = Rat::one();
        let mut p = QPoly::from_coeffs(c);
        for (d, phi_d) in &table {
            if m % d == 0 {
                p = p.exact_div(phi_d).expect("cyclotomic product divides x^m - 1");
            }
        }
        table.push((m, p));
    }
    table.pop().expect("k divides itself").1
}

/// If `q` equals some cyclotomic polynomial Phi_k, returns k.
///
/// `q` must be monic with integer coefficients. Since phi(k) >= sqrt(k/2),
/// any k with phi(k) = deg q satisfies k <= 2 deg(q)^2, so the search space
/// is finite and exact comparison over each candidate decides membership.
pub fn cyclotomic_order(q: &QPoly) -> Option<u64> {
    let deg = q.degree()? as u64;
    if deg == 0 || !q.is_monic() || !q.has_integer_coeffs() {
        return None;
    }
    (1..=2 * deg * deg)
        .filter(|&k| euler_phi(k) == deg)
        .find(|&k| cyclotomic(k) == *q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::QPoly;

    #[test]
    fn phi_values() {
        let expect = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (k, e) in (1..=12).zip(expect) {
            assert_eq!(euler_phi(k), e, "phi({k})");
        }
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), QPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), QPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(3), QPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), QPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), QPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), QPoly::from_i64(&[1, 0, -1, 0, 1]));
    }
}
