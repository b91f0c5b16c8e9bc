//! Fujiki models: V carries a symmetric bilinear form q of signature
//! (1, h-1) and the d-fold intersection is the polarization of
//! c · q(x, x)^m with d = 2m.

use crate::matrix::RatMatrix;
use crate::rat::Rat;
use crate::{Error, Result};

use super::{Form, IntersectionModel};

#[derive(Debug, Clone)]
pub struct FujikiData {
    pub q: RatMatrix,
    pub c: Rat,
    pub half_dim: usize,
}

impl FujikiData {
    pub fn pair(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let qy = self.q.mul_vec(y);
        x.iter().zip(&qy).map(|(a, b)| a * b).sum()
    }

    /// Polarized Fujiki relation:
    /// I(x_1, ..., x_2m) = c / (2m-1)!! * sum over perfect matchings of
    /// prod q(x_a, x_b). The diagonal collapses to c q(x, x)^m.
    pub(crate) fn eval(&self, classes: &[&[Rat]]) -> Rat {
        let n = classes.len();
        let mut pairs = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let v = self.pair(classes[i], classes[j]);
                pairs[i][j] = v.clone();
                pairs[j][i] = v;
            }
        }
        let mut total = Rat::zero();
        let mut used = vec![false; n];
        match_rec(&pairs, &mut used, &Rat::one(), &mut total);
        let mut double_fact = Rat::one();
        let mut v = n as i64 - 1;
        while v > 1 {
            double_fact *= Rat::from_int(v);
            v -= 2;
        }
        self.c.clone() * total / double_fact
    }

    pub(crate) fn eval_power(&self, c: &[Rat]) -> Rat {
        self.c.clone() * self.pair(c, c).pow(self.half_dim as u32)
    }
}

fn match_rec(pairs: &[Vec<Rat>], used: &mut [bool], acc: &Rat, total: &mut Rat) {
    let first = match used.iter().position(|u| !u) {
        Some(i) => i,
        None => {
            *total += acc.clone();
            return;
        }
    };
    used[first] = true;
    for j in first + 1..used.len() {
        if used[j] {
            continue;
        }
        let w = &pairs[first][j];
        if w.is_zero() {
            continue;
        }
        used[j] = true;
        let next = acc * w;
        match_rec(pairs, used, &next, total);
        used[j] = false;
    }
    used[first] = false;
}

/// Build a Fujiki model. The form must be symmetric of signature (1, h-1),
/// the constant positive, and omega in the positive cone.
pub fn build_fujiki(
    q: &RatMatrix,
    c: &Rat,
    half_dim: usize,
    omega: &[Rat],
) -> Result<IntersectionModel> {
    if !q.is_square() {
        return Err(Error::Invalid("q must be square".into()));
    }
    let h = q.rows();
    if h == 0 || half_dim == 0 {
        return Err(Error::Invalid("Fujiki model dimensions must be positive".into()));
    }
    if !q.is_symmetric() {
        return Err(Error::Invalid("q must be symmetric".into()));
    }
    let (pos, neg, zero) = q.inertia()?;
    if (pos, neg, zero) != (1, h - 1, 0) {
        return Err(Error::Invalid(format!(
            "q has signature ({pos}, {neg}) with {zero}-dim kernel; need (1, {})",
            h - 1
        )));
    }
    if !c.is_positive() {
        return Err(Error::Invalid(format!("Fujiki constant {c} must be positive")));
    }
    let data = FujikiData {
        q: q.clone(),
        c: c.clone(),
        half_dim,
    };
    if omega.len() != h {
        return Err(Error::Invalid(format!(
            "omega has {} coordinates, expected {h}",
            omega.len()
        )));
    }
    if !data.pair(omega, omega).is_positive() {
        return Err(Error::Invalid("q(omega, omega) must be positive".into()));
    }
    let basis = (1..=h).map(|i| format!("e{i}")).collect();
    IntersectionModel::new(
        2 * half_dim,
        h,
        basis,
        omega.to_vec(),
        true,
        Form::Fujiki(data),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyperbolic_rank3() -> IntersectionModel {
        // basis (u, w, v): q(u, v) = 1, q(w, w) = -1, omega = u + v
        let q = RatMatrix::from_i64_rows(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]);
        let omega = vec![Rat::one(), Rat::zero(), Rat::one()];
        build_fujiki(&q, &Rat::one(), 1, &omega).unwrap()
    }

    #[test]
    fn diagonal_matches_matchings() {
        let m = hyperbolic_rank3();
        assert_eq!(m.eval_power(m.omega()).unwrap(), Rat::from_int(2));
        let refs = vec![m.omega().clone(), m.omega().clone()];
        assert_eq!(m.eval(&refs).unwrap(), Rat::from_int(2));
    }

    #[test]
    fn half_dim_two_diagonal() {
        let q = RatMatrix::from_i64_rows(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]);
        let omega = vec![Rat::one(), Rat::zero(), Rat::one()];
        let m = build_fujiki(&q, &Rat::one(), 2, &omega).unwrap();
        // I(omega^4) = q(omega, omega)^2 = 4; polarized route must agree
        assert_eq!(m.eval_power(m.omega()).unwrap(), Rat::from_int(4));
        let refs = vec![m.omega().clone(); 4];
        assert_eq!(m.eval(&refs).unwrap(), Rat::from_int(4));
        // mixed: I(u, u, v, v) = c/3 [q(u,u)q(v,v) + 2 q(u,v)^2] = 2/3
        let u = m.basis_class(0);
        let v = m.basis_class(2);
        let mixed = vec![u.clone(), u, v.clone(), v];
        assert_eq!(m.eval(&mixed).unwrap(), Rat::new(2, 3).unwrap());
    }

    #[test]
    fn signature_guard() {
        let q = RatMatrix::from_i64_rows(&[&[1, 0], &[0, 1]]);
        let omega = vec![Rat::one(), Rat::zero()];
        assert!(build_fujiki(&q, &Rat::one(), 1, &omega).is_err());
    }
}
