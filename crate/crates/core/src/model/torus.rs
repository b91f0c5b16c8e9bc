//! Torus models: V = Q^{d x d} viewed as H^{1,1} of a complex torus of
//! dimension d, with I the coefficient of the top wedge power. A class with
//! coefficient matrix C stands for sum_{p,q} C_{pq} dz_p ∧ dzbar_q, and a
//! period-matrix action A sends C to A^t C A.

use std::collections::BTreeMap;

use crate::matrix::RatMatrix;
use crate::poly::{factorial, trinomial};
use crate::rat::Rat;
use crate::{Error, Result};

use super::{AutoAction, Form, IntersectionModel, Positivity};

#[derive(Debug, Clone)]
pub struct TorusData {
    /// Unimodular integer d x d matrix; row p holds the coordinates of the
    /// image of the p-th basis covector.
    pub a: RatMatrix,
    pub dim: usize,
}

/// Reshape a length-d^2 coordinate vector into its d x d coefficient matrix
/// (row-major: entry (p, q) multiplies dz_p ∧ dzbar_q).
pub(crate) fn coeff_matrix(d: usize, c: &[Rat]) -> RatMatrix {
    RatMatrix::from_fn(d, d, |p, q| c[p * d + q].clone())
}

impl TorusData {
    /// I(c_1, ..., c_d) = sum over sigma, tau of sgn(sigma) sgn(tau)
    /// prod_l C^(l)_{sigma(l) tau(l)}, computed by a DP over the pair of
    /// used row/column subsets. The per-step sign (-1)^{#used below the
    /// chosen index} accumulates to sgn(sigma) sgn(tau) because the two
    /// global (-1)^{d(d-1)/2} factors cancel.
    pub(crate) fn eval(&self, classes: &[&[Rat]]) -> Rat {
        let d = self.dim;
        let mats: Vec<RatMatrix> = classes.iter().map(|c| coeff_matrix(d, c)).collect();
        let full: u32 = (1u32 << d) - 1;
        let mut cur: BTreeMap<(u32, u32), Rat> = BTreeMap::new();
        cur.insert((0, 0), Rat::one());
        for m in &mats {
            let mut next: BTreeMap<(u32, u32), Rat> = BTreeMap::new();
            for ((s, t), val) in &cur {
                for p in 0..d {
                    if s & (1 << p) != 0 {
                        continue;
                    }
                    for q in 0..d {
                        if t & (1 << q) != 0 {
                            continue;
                        }
                        let e = m.get(p, q);
                        if e.is_zero() {
                            continue;
                        }
                        let below = (s & ((1u32 << p) - 1)).count_ones()
                            + (t & ((1u32 << q) - 1)).count_ones();
                        let mut term = val * e;
                        if below % 2 == 1 {
                            term = -term;
                        }
                        let slot = next
                            .entry((s | 1 << p, t | 1 << q))
                            .or_insert_with(Rat::zero);
                        *slot += term;
                    }
                }
            }
            cur = next;
        }
        cur.remove(&(full, full)).unwrap_or_else(Rat::zero)
    }

    /// Diagonal identity: I(c, ..., c) = d! det(C).
    pub(crate) fn eval_power(&self, c: &[Rat]) -> Rat {
        let det = coeff_matrix(self.dim, c).det();
        Rat::from(factorial(self.dim)) * det
    }

    pub(crate) fn positivity(&self, c: &[Rat]) -> Result<Positivity> {
        let m = coeff_matrix(self.dim, c);
        if !m.is_symmetric() {
            return Err(Error::Invalid(
                "positivity needs a symmetric coefficient matrix".into(),
            ));
        }
        let (_pos, neg, zero) = m.inertia()?;
        Ok(if neg > 0 {
            Positivity::Indefinite
        } else if zero > 0 {
            Positivity::Semidefinite
        } else {
            Positivity::Positive
        })
    }
}

/// Build the torus model for a unimodular integer period action, together
/// with the induced action on V. Rejects |det A| != 1 since the top wedge
/// rescales by det(A)^2.
pub fn build_torus(a: &RatMatrix) -> Result<(IntersectionModel, AutoAction)> {
    if !a.is_square() {
        return Err(Error::Invalid("period matrix must be square".into()));
    }
    let d = a.rows();
    if d == 0 {
        return Err(Error::Invalid("period matrix must be nonempty".into()));
    }
    if d > 9 {
        return Err(Error::Invalid("torus builder supports d <= 9".into()));
    }
    for p in 0..d {
        for q in 0..d {
            if !a.get(p, q).is_integer() {
                return Err(Error::Invalid(format!(
                    "period matrix entry ({p},{q}) = {} is not an integer",
                    a.get(p, q)
                )));
            }
        }
    }
    let det = a.det();
    if !(det == Rat::one() || det == -Rat::one()) {
        return Err(Error::Invalid(format!(
            "period matrix has det = {det}; the intersection form would not be preserved"
        )));
    }

    let h = d * d;
    let mut basis = Vec::with_capacity(h);
    for p in 1..=d {
        for q in 1..=d {
            basis.push(format!("b{p}{q}"));
        }
    }
    let mut omega = vec![Rat::zero(); h];
    for p in 0..d {
        omega[p * d + p] = Rat::one();
    }

    let at = a.transpose();
    let f = at.kron(&at);
    let auto = AutoAction::new(f)?;
    let model = IntersectionModel::new(
        d,
        h,
        basis,
        omega,
        true,
        Form::Torus(TorusData { a: a.clone(), dim: d }),
    )?;
    Ok((model, auto))
}

pub(crate) fn is_single_jordan_block(a: &RatMatrix) -> bool {
    let d = a.rows();
    for p in 0..d {
        for q in 0..d {
            let want = if p == q || q + 1 == p {
                Rat::one()
            } else {
                Rat::zero()
            };
            if *a.get(p, q) != want {
                return false;
            }
        }
    }
    true
}

/// For the single unipotent Jordan block of size d, check the closed form
///
///   N^q(b_dd) = sum_{i+j <= q} (q; i, j, q-i-j) b_{(d-q+i)(d-q+j)}
///
/// with out-of-range indices dropped, against the computed nilpotent orbit.
pub fn pascal_check(model: &IntersectionModel, auto: &AutoAction, q: usize) -> Result<bool> {
    let data = match &model.form {
        Form::Torus(t) => t,
        _ => return Err(Error::Invalid("pascal_check needs a torus model".into())),
    };
    let d = data.dim;
    if !is_single_jordan_block(&data.a) {
        return Err(Error::Invalid(
            "pascal_check needs the single unipotent Jordan block".into(),
        ));
    }
    let h = d * d;
    // unipotent block, so the reduction is trivial and N = F - Id
    let n = auto.matrix() - &RatMatrix::identity(h);
    let seed = model.basis_class(h - 1);
    let mut lhs = seed;
    for _ in 0..q {
        lhs = n.mul_vec(&lhs);
    }
    let mut rhs = vec![Rat::zero(); h];
    for i in 0..=q {
        for j in 0..=(q - i) {
            // 1-based target b_{(d-q+i)(d-q+j)}
            let (ri, ci) = (d as i64 - q as i64 + i as i64, d as i64 - q as i64 + j as i64);
            if ri < 1 || ci < 1 {
                continue;
            }
            let idx = (ri as usize - 1) * d + (ci as usize - 1);
            rhs[idx] += Rat::from(trinomial(q, i, j));
        }
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jordan2() -> (IntersectionModel, AutoAction) {
        let a = RatMatrix::from_i64_rows(&[&[1, 0], &[1, 1]]);
        build_torus(&a).unwrap()
    }

    #[test]
    fn wedge_signs_on_d2() {
        let (m, _) = jordan2();
        // I(b12, b21) = -1, I(b11, b22) = +1, I(omega, omega) = 2
        let b = |i: usize| m.basis_class(i);
        assert_eq!(m.eval(&[b(1), b(2)]).unwrap(), -Rat::one());
        assert_eq!(m.eval(&[b(0), b(3)]).unwrap(), Rat::one());
        assert_eq!(m.eval_power(m.omega()).unwrap(), Rat::from_int(2));
    }

    #[test]
    fn action_orbit_on_d2() {
        let (m, auto) = jordan2();
        // F omega = 2 b11 + b12 + b21 + b22
        let fo = auto.apply(m.omega());
        let expect: Vec<Rat> = [2, 1, 1, 1].iter().map(|&v| Rat::from_int(v)).collect();
        assert_eq!(fo, expect);
        let n = auto.matrix() - &RatMatrix::identity(4);
        let no = n.mul_vec(m.omega());
        let expect: Vec<Rat> = [1, 1, 1, 0].iter().map(|&v| Rat::from_int(v)).collect();
        assert_eq!(no, expect);
        let n3 = n.mul_vec(&n.mul_vec(&no));
        assert!(n3.iter().all(Rat::is_zero));
    }

    #[test]
    fn pascal_check_small() {
        let (m, auto) = jordan2();
        for q in 0..=4 {
            assert!(pascal_check(&m, &auto, q).unwrap(), "q = {q}");
        }
        let a = RatMatrix::from_i64_rows(&[&[1, 0, 0], &[1, 1, 0], &[0, 1, 1]]);
        let (m, auto) = build_torus(&a).unwrap();
        for q in 0..=6 {
            assert!(pascal_check(&m, &auto, q).unwrap(), "q = {q}");
        }
    }

    #[test]
    fn det_guard() {
        let a = RatMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert!(build_torus(&a).is_err());
    }

    #[test]
    fn positivity_classes() {
        let (m, _) = jordan2();
        assert_eq!(
            m.torus_positivity(m.omega()).unwrap(),
            Positivity::Positive
        );
        let semi: Vec<Rat> = [1, 0, 0, 0].iter().map(|&v| Rat::from_int(v)).collect();
        assert_eq!(m.torus_positivity(&semi).unwrap(), Positivity::Semidefinite);
        let indef: Vec<Rat> = [1, 0, 0, -1].iter().map(|&v| Rat::from_int(v)).collect();
        assert_eq!(m.torus_positivity(&indef).unwrap(), Positivity::Indefinite);
        let asym: Vec<Rat> = [0, 1, 0, 0].iter().map(|&v| Rat::from_int(v)).collect();
        assert!(m.torus_positivity(&asym).is_err());
    }
}
