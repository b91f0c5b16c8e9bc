//! Univariate polynomials over `Rat`, exact throughout.
//!
//! The zero polynomial has degree "minus infinity", encoded as `None` so it
//! can never be confused with degree 0. Growth polynomials live in the
//! variable n; spectral witnesses are conventionally printed in x.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rat::Rat;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct QPoly {
    // c[i] is the coefficient of n^i; invariant: no trailing zero.
    c: Vec<Rat>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Rat::one())
    }

    pub fn constant(r: Rat) -> Self {
        QPoly::from_coeffs(vec![r])
    }

    /// The monomial `coeff * n^deg`.
    pub fn monomial(deg: usize, coeff: Rat) -> Self {
        let mut c = vec![Rat::zero(); deg + 1];
        c[deg] = coeff;
        QPoly::from_coeffs(c)
    }

    pub fn x() -> Self {
        QPoly::monomial(1, Rat::one())
    }

    pub fn from_coeffs(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(Rat::is_zero) {
            c.pop();
        }
        QPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        QPoly::from_coeffs(c.iter().map(|&v| Rat::from_int(v)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.c.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` is the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.c.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Rat::is_one)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.c.iter().all(Rat::is_integer)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for coeff in self.c.iter().rev() {
            acc = acc * x + coeff;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> Rat {
        self.eval(&Rat::from_int(x))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return QPoly::zero();
        }
        QPoly::from_coeffs(self.c.iter().map(|a| a * r).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = QPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::from_coeffs(
            self.c[1..]
                .iter()
                .enumerate()
                .map(|(i, a)| a * &Rat::from_int(i as i64 + 1))
                .collect(),
        )
    }

    /// Substitutes n -> n + 1.
    pub fn compose_add_one(&self) -> Self {
        // Horner in the shifted variable: p(n+1) built from the top down.
        let mut acc = QPoly::zero();
        let shift = QPoly::from_i64(&[1, 1]);
        for coeff in self.c.iter().rev() {
            acc = &acc * &shift + QPoly::constant(coeff.clone());
        }
        acc
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn divrem(&self, divisor: &QPoly) -> Result<(QPoly, QPoly)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Invalid("polynomial division by zero".into()))?;
        let lead_inv = divisor.leading().unwrap().recip()?;
        let mut rem = self.clone();
        let mut quot = vec![Rat::zero(); self.c.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let q = rem.leading().unwrap() * &lead_inv;
            let shift = rd - dd;
            let mut rc = rem.c;
            for (i, dcoeff) in divisor.c.iter().enumerate() {
                let t = dcoeff * &q;
                rc[shift + i] -= t;
            }
            rem = QPoly::from_coeffs(rc);
            quot[shift] = q;
        }
        Ok((QPoly::from_coeffs(quot), rem))
    }

    /// The exact quotient if `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &QPoly) -> Option<QPoly> {
        let (q, r) = self.divrem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> QPoly {
        match self.leading() {
            None => QPoly::zero(),
            Some(l) => self.scale(&l.recip().expect("nonzero leading coefficient")),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors: p / gcd(p, p').
    pub fn squarefree_part(&self) -> QPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    pub fn display_var(&self, var: char) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            if out.is_empty() {
                if a.is_negative() {
                    out.push('-');
                }
            } else if a.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_str = if mag.is_one() && i > 0 {
                String::new()
            } else if mag.is_integer() || i == 0 {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            out.push_str(&coeff_str);
            match i {
                0 => {}
                1 => out.push(var),
                _ => out.push_str(&format!("{var}^{i}")),
            }
        }
        out
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_var('n'))
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(self, rhs: QPoly) -> QPoly {
        &self + &rhs
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.c.len().max(rhs.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i) + rhs.coeff(i));
        }
        QPoly::from_coeffs(c)
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(self, rhs: QPoly) -> QPoly {
        &self - &rhs
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.c.len().max(rhs.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i) - rhs.coeff(i));
        }
        QPoly::from_coeffs(c)
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        &self * &rhs
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![Rat::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(c)
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::from_coeffs(self.c.into_iter().map(|a| -a).collect())
    }
}

impl Serialize for QPoly {
    /// Coefficient list, constant term first, each as a rational string.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.c.len()))?;
        for coeff in &self.c {
            seq.serialize_element(coeff)?;
        }
        seq.end()
    }
}

pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Binomial coefficient C(n, k) as a big integer (0 when k > n).
pub fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Trinomial coefficient q! / (i! j! (q-i-j)!); zero when i + j > q.
pub fn trinomial(q: usize, i: usize, j: usize) -> BigInt {
    if i + j > q {
        return BigInt::zero();
    }
    binom(q, i) * binom(q - i, j)
}

/// C(n, j) as a polynomial in n: n(n-1)...(n-j+1)/j!.
pub fn binomial_poly(j: usize) -> QPoly {
    let mut acc = QPoly::one();
    for i in 0..j {
        acc = &acc * &QPoly::from_coeffs(vec![Rat::from_int(-(i as i64)), Rat::one()]);
    }
    acc.scale(&Rat::new(BigInt::one(), factorial(j)).expect("nonzero factorial"))
}

/// C(n+1, j) as a polynomial in n.
pub fn binomial_poly_shifted(j: usize) -> QPoly {
    binomial_poly(j).compose_add_one()
}

/// Newton interpolation through distinct nodes; exact.
pub fn interpolate(points: &[(Rat, Rat)]) -> Result<QPoly> {
    for (i, (xi, _)) in points.iter().enumerate() {
        for (xj, _) in &points[..i] {
            if xi == xj {
                return Err(Error::Invalid(format!("duplicate interpolation node {xi}")));
            }
        }
    }
    // Divided differences, updated in place: dd[i] ends as f[x_0..x_i].
    let mut dd: Vec<Rat> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..points.len() {
        for i in (level..points.len()).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &points[i].0 - &points[i - level].0;
            dd[i] = &num / &den;
        }
    }
    let mut acc = QPoly::zero();
    let mut basis = QPoly::one();
    for (i, d) in dd.iter().enumerate() {
        acc = &acc + &basis.scale(d);
        if i + 1 < points.len() {
            let (xi, _) = &points[i];
            basis = &basis * &QPoly::from_coeffs(vec![-xi.clone(), Rat::one()]);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_degree_marker() {
        assert_eq!(QPoly::zero().degree(), None);
        assert_eq!(QPoly::one().degree(), Some(0));
        assert_eq!(QPoly::from_i64(&[0, 0, 3]).degree(), Some(2));
        assert_eq!(QPoly::from_i64(&[1, 2, 0, 0]).degree(), Some(1));
    }

    #[test]
    fn shift_by_one() {
        // (n^2)(n+1) = n^2 + 2n + 1
        let p = QPoly::monomial(2, Rat::one()).compose_add_one();
        assert_eq!(p, QPoly::from_i64(&[1, 2, 1]));
    }

    #[test]
    fn binomial_poly_small() {
        // C(n, 2) = n(n-1)/2
        let b2 = binomial_poly(2);
        assert_eq!(b2.eval_i64(4), Rat::from_int(6));
        assert_eq!(b2.eval_i64(1), Rat::zero());
        // C(n+1, 3) at n = 3 is C(4,3) = 4
        assert_eq!(binomial_poly_shifted(3).eval_i64(3), Rat::from_int(4));
    }
}
