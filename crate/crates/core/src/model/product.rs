//! Product models: V = V_1 ⊕ V_2 with
//! I(x_1, ..., x_d) = sum over splits of the arguments into a d_1-subset
//! evaluated in the first factor and the complement in the second. The
//! carrier omits the Künneth cross terms, so Jordan data of the ambient
//! action is not reportable from it.

use crate::matrix::RatMatrix;
use crate::rat::Rat;
use crate::{Error, Result};

use super::{AutoAction, Form, IntersectionModel};

#[derive(Debug, Clone)]
pub struct ProductData {
    pub left: IntersectionModel,
    pub right: IntersectionModel,
}

/// All strictly increasing k-subsets of 0..n.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance rightmost index that can still move up
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] + (k - i) < n {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

impl ProductData {
    pub(crate) fn eval(&self, classes: &[&[Rat]]) -> Result<Rat> {
        let d = self.left.d() + self.right.d();
        let h1 = self.left.h();
        let mut acc = Rat::zero();
        for split in combinations(d, self.left.d()) {
            let mut in_split = vec![false; d];
            for &l in &split {
                in_split[l] = true;
            }
            let lefts: Vec<&[Rat]> = split.iter().map(|&l| &classes[l][..h1]).collect();
            let a = self.left.eval_i(&lefts)?;
            if a.is_zero() {
                continue;
            }
            let rights: Vec<&[Rat]> = (0..d)
                .filter(|&l| !in_split[l])
                .map(|l| &classes[l][h1..])
                .collect();
            let b = self.right.eval_i(&rights)?;
            acc += a * b;
        }
        Ok(acc)
    }

    pub(crate) fn eval_power(&self, c: &[Rat]) -> Result<Rat> {
        let d1 = self.left.d();
        let d2 = self.right.d();
        let h1 = self.left.h();
        let a = self.left.eval_power(&c[..h1])?;
        let b = self.right.eval_power(&c[h1..])?;
        let splits = Rat::from(crate::poly::binom(d1 + d2, d1));
        Ok(splits * a * b)
    }

    /// Diagonal blocks of a block-diagonal ambient action.
    pub(crate) fn split_action(&self, auto: &AutoAction) -> Result<(AutoAction, AutoAction)> {
        let h1 = self.left.h();
        let h2 = self.right.h();
        let f = auto.matrix();
        let a1 = RatMatrix::from_fn(h1, h1, |i, j| f.get(i, j).clone());
        let a2 = RatMatrix::from_fn(h2, h2, |i, j| f.get(h1 + i, h1 + j).clone());
        Ok((AutoAction::new(a1)?, AutoAction::new(a2)?))
    }
}

/// Assemble the product of two models with actions; the combined action is
/// block diagonal.
pub fn build_product(
    m1: &IntersectionModel,
    a1: &AutoAction,
    m2: &IntersectionModel,
    a2: &AutoAction,
) -> Result<(IntersectionModel, AutoAction)> {
    if a1.h() != m1.h() || a2.h() != m2.h() {
        return Err(Error::Invalid("factor action does not fit its model".into()));
    }
    let h1 = m1.h();
    let h2 = m2.h();
    let h = h1 + h2;
    let f = RatMatrix::from_fn(h, h, |i, j| {
        if i < h1 && j < h1 {
            a1.matrix().get(i, j).clone()
        } else if i >= h1 && j >= h1 {
            a2.matrix().get(i - h1, j - h1).clone()
        } else {
            Rat::zero()
        }
    });
    let mut basis = Vec::with_capacity(h);
    basis.extend(m1.basis_labels().iter().map(|s| format!("l.{s}")));
    basis.extend(m2.basis_labels().iter().map(|s| format!("r.{s}")));
    let mut omega = m1.omega().clone();
    omega.extend_from_slice(m2.omega());
    let geometric = m1.is_geometric() && m2.is_geometric();
    let data = ProductData {
        left: m1.clone(),
        right: m2.clone(),
    };
    let model = IntersectionModel::new(
        m1.d() + m2.d(),
        h,
        basis,
        omega,
        geometric,
        Form::Product(Box::new(data)),
    )?;
    Ok((model, AutoAction::new(f)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::torus::build_torus;

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0).len(), 1);
        assert_eq!(combinations(3, 3).len(), 1);
    }

    #[test]
    fn product_of_elliptic_curves() {
        // two one-dimensional torus models: I(omega, omega) = 2 on the product
        let a = RatMatrix::from_i64_rows(&[&[1]]);
        let (m1, f1) = build_torus(&a).unwrap();
        let (m2, f2) = build_torus(&a).unwrap();
        let (m, f) = build_product(&m1, &f1, &m2, &f2).unwrap();
        assert_eq!(m.d(), 2);
        assert_eq!(m.h(), 2);
        assert_eq!(m.eval_power(m.omega()).unwrap(), Rat::from_int(2));
        let refs = vec![m.omega().clone(), m.omega().clone()];
        assert_eq!(m.eval(&refs).unwrap(), Rat::from_int(2));
        assert!(m.validate(&f).all_pass());
        assert!(!m.k_reportable());
    }
}
