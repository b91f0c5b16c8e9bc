//! Randomized algebra checks. Every result the library reports flows
//! through RatMatrix and QPoly, so the eliminations here are verified
//! against independent routes: fraction-free vs. Gaussian rank, the
//! characteristic polynomial against pointwise determinants, and inertia
//! against congruence moves.

use plovlab_core::poly::{self, QPoly};
use plovlab_core::{Rat, RatMatrix};
use proptest::prelude::*;

fn mat_strategy(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
        RatMatrix::from_fn(n, n, |i, j| Rat::from_int(v[i * n + j]))
    })
}

fn horner_matrix(p: &QPoly, a: &RatMatrix) -> RatMatrix {
    let n = a.rows();
    let mut acc = RatMatrix::zeros(n, n);
    let coeffs = p.coeffs();
    for c in coeffs.iter().rev() {
        acc = &acc * a;
        let add = RatMatrix::from_fn(n, n, |i, j| if i == j { c.clone() } else { Rat::zero() });
        acc = &acc + &add;
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_agrees_between_eliminations(n in 1usize..=4, seed in prop::collection::vec(-4i64..=4, 16)) {
        let a = RatMatrix::from_fn(n, n, |i, j| Rat::from_int(seed[i * 4 + j]));
        let (bareiss_rank, _) = a.rank_det_bareiss();
        prop_assert_eq!(a.rank(), bareiss_rank);
    }

    #[test]
    fn det_agrees_between_eliminations(a in mat_strategy(3)) {
        let (_, det) = a.rank_det_bareiss();
        prop_assert_eq!(a.det(), det.unwrap_or_else(Rat::zero));
    }

    #[test]
    fn cayley_hamilton(a in mat_strategy(3)) {
        let p = a.char_poly();
        let image = horner_matrix(&p, &a);
        prop_assert!(image.is_zero());
    }

    #[test]
    fn charpoly_matches_pointwise_determinants(a in mat_strategy(3)) {
        let p = a.char_poly();
        // det(xI - A) sampled at 0..=3 and interpolated
        let pts: Vec<(Rat, Rat)> = (0..=3i64)
            .map(|x| {
                let m = RatMatrix::from_fn(3, 3, |i, j| {
                    let shift = if i == j { Rat::from_int(x) } else { Rat::zero() };
                    shift - &a[(i, j)]
                });
                (Rat::from_int(x), m.det())
            })
            .collect();
        let q = poly::interpolate(&pts).unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn inertia_is_congruence_invariant(b in mat_strategy(3), p in mat_strategy(3)) {
        prop_assume!(p.det() != Rat::zero());
        let s = &b + &b.transpose();
        let moved = &(&p.transpose() * &s) * &p;
        prop_assert_eq!(s.inertia().unwrap(), moved.inertia().unwrap());
    }

    #[test]
    fn nullspace_vectors_annihilate(a in mat_strategy(4)) {
        let (rank, basis) = a.rank_and_nullspace();
        prop_assert_eq!(rank + basis.len(), 4);
        for v in &basis {
            let image = a.mul_vec(v);
            prop_assert!(image.iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn interpolation_roundtrip(coeffs in prop::collection::vec(-5i64..=5, 1..=5)) {
        let p = QPoly::from_i64(&coeffs);
        let pts: Vec<(Rat, Rat)> = (0..coeffs.len() as i64)
            .map(|x| (Rat::from_int(x), p.eval_i64(x)))
            .collect();
        let q = poly::interpolate(&pts).unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn gcd_divides_both(a in prop::collection::vec(-3i64..=3, 1..=4),
                        b in prop::collection::vec(-3i64..=3, 1..=4),
                        c in prop::collection::vec(-3i64..=3, 2..=3)) {
        let p = QPoly::from_i64(&a) * QPoly::from_i64(&c);
        let q = QPoly::from_i64(&b) * QPoly::from_i64(&c);
        prop_assume!(p.degree().is_some() && q.degree().is_some());
        let g = p.gcd(&q);
        prop_assert!(p.divrem(&g).unwrap().1.degree().is_none());
        prop_assert!(q.divrem(&g).unwrap().1.degree().is_none());
        // the common factor c divides the gcd
        let cp = QPoly::from_i64(&c);
        if cp.degree().is_some() {
            prop_assert!(g.divrem(&cp.monic()).unwrap().1.degree().is_none());
        }
    }

    #[test]
    fn inverse_roundtrip(a in mat_strategy(3)) {
        prop_assume!(a.det() != Rat::zero());
        let inv = a.inverse().unwrap();
        let prod = &a * &inv;
        prop_assert_eq!(prod, RatMatrix::identity(3));
    }
}
