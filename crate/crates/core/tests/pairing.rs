//! The torus pairing has a brute-force definition: expand the wedge of
//! coefficient matrices over all pairs of permutations with their signs.
//! That reference is exponentially slow but unambiguous, so the production
//! evaluator is tested against it here, along with the algebraic laws the
//! pairing must satisfy and the export path to an explicit tensor.

use plovlab_core::model::file::model_from_json;
use plovlab_core::model::torus::build_torus;
use plovlab_core::{IntersectionModel, Rat, RatMatrix};
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 1 {
        return vec![vec![0]];
    }
    let mut out = Vec::new();
    for rest in permutations(d - 1) {
        for pos in 0..d {
            let mut p = rest.clone();
            p.insert(pos, d - 1);
            out.push(p);
        }
    }
    out
}

fn sign(p: &[usize]) -> i64 {
    let mut s = 1i64;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// I(c_1, ..., c_d) = sum over sigma, tau of sgn(sigma) sgn(tau)
/// prod_i C_i[sigma(i), tau(i)], with C_i the d x d coefficient matrix.
fn naive_torus_eval(d: usize, classes: &[Vec<Rat>]) -> Rat {
    assert_eq!(classes.len(), d);
    let perms = permutations(d);
    let mut total = Rat::zero();
    for sigma in &perms {
        for tau in &perms {
            let mut term = Rat::from_int(sign(sigma) * sign(tau));
            for (i, c) in classes.iter().enumerate() {
                term *= &c[sigma[i] * d + tau[i]];
                if term.is_zero() {
                    break;
                }
            }
            total += &term;
        }
    }
    total
}

fn identity_model(d: usize) -> IntersectionModel {
    let (model, _) = build_torus(&RatMatrix::identity(d)).unwrap();
    model
}

fn random_class(d: usize, rng: &mut ChaCha8Rng) -> Vec<Rat> {
    (0..d * d).map(|_| Rat::from_int(rng.random_range(-3i64..=3))).collect()
}

#[test]
fn torus_eval_matches_brute_force() {
    for d in 1..=4usize {
        let model = identity_model(d);
        let mut rng = ChaCha8Rng::seed_from_u64(100 + d as u64);
        for _ in 0..6 {
            let classes: Vec<Vec<Rat>> = (0..d).map(|_| random_class(d, &mut rng)).collect();
            let fast = model.eval(&classes).unwrap();
            let slow = naive_torus_eval(d, &classes);
            assert_eq!(fast, slow, "d = {d}");
        }
    }
}

#[test]
fn eval_power_matches_repeated_argument() {
    for d in 2..=4usize {
        let model = identity_model(d);
        let mut rng = ChaCha8Rng::seed_from_u64(200 + d as u64);
        for _ in 0..4 {
            let c = random_class(d, &mut rng);
            let repeated: Vec<Vec<Rat>> = (0..d).map(|_| c.clone()).collect();
            assert_eq!(
                model.eval_power(&c).unwrap(),
                model.eval(&repeated).unwrap(),
                "d = {d}"
            );
        }
    }
}

#[test]
fn pairing_is_symmetric_in_arguments() {
    let model = identity_model(3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = random_class(3, &mut rng);
    let b = random_class(3, &mut rng);
    let c = random_class(3, &mut rng);
    let base = model.eval(&[a.clone(), b.clone(), c.clone()]).unwrap();
    let orders: [[&Vec<Rat>; 3]; 5] = [
        [&a, &c, &b],
        [&b, &a, &c],
        [&b, &c, &a],
        [&c, &a, &b],
        [&c, &b, &a],
    ];
    for ord in orders {
        let v = model
            .eval(&[ord[0].clone(), ord[1].clone(), ord[2].clone()])
            .unwrap();
        assert_eq!(v, base);
    }
}

#[test]
fn pairing_is_multilinear() {
    let model = identity_model(3);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let x = random_class(3, &mut rng);
    let y = random_class(3, &mut rng);
    let b = random_class(3, &mut rng);
    let c = random_class(3, &mut rng);
    let two = Rat::from_int(2);
    let three = Rat::from_int(-3);
    let mix: Vec<Rat> = x
        .iter()
        .zip(&y)
        .map(|(xv, yv)| two.clone() * xv + three.clone() * yv)
        .collect();
    let lhs = model.eval(&[mix, b.clone(), c.clone()]).unwrap();
    let ex = model.eval(&[x, b.clone(), c.clone()]).unwrap();
    let ey = model.eval(&[y, b, c]).unwrap();
    assert_eq!(lhs, two * &ex + three * &ey);
}

/// Exporting to an explicit symmetric tensor and re-importing through the
/// JSON reader must define the same pairing.
#[test]
fn tensor_export_reimport_agrees() {
    for d in 2..=3usize {
        let model = identity_model(d);
        let tensor = model.to_sparse_tensor().unwrap();
        let entries: Vec<String> = tensor
            .entries()
            .map(|(idx, val)| {
                format!("{{\"idx\": {idx:?}, \"val\": \"{val}\"}}")
            })
            .collect();
        let labels: Vec<String> = (0..d * d)
            .map(|t| format!("\"b{}{}\"", t / d + 1, t % d + 1))
            .collect();
        let omega: Vec<String> = model
            .omega()
            .iter()
            .map(|v| format!("\"{v}\""))
            .collect();
        let json = format!(
            "{{\"complex_dim\": {d}, \"h\": {}, \"basis\": [{}], \"intersection\": [{}], \"kahler\": [{}]}}",
            d * d,
            labels.join(", "),
            entries.join(", "),
            omega.join(", ")
        );
        let (round, _) = model_from_json(&json).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(300 + d as u64);
        for _ in 0..5 {
            let classes: Vec<Vec<Rat>> = (0..d).map(|_| random_class(d, &mut rng)).collect();
            assert_eq!(
                model.eval(&classes).unwrap(),
                round.eval(&classes).unwrap(),
                "d = {d}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn equal_class_power_is_det(v in prop::collection::vec(-3i64..=3, 9)) {
        let model = identity_model(3);
        let c: Vec<Rat> = v.iter().map(|&x| Rat::from_int(x)).collect();
        let m = RatMatrix::from_fn(3, 3, |i, j| c[i * 3 + j].clone());
        let expect = m.det() * Rat::from_int(6);
        prop_assert_eq!(model.eval_power(&c).unwrap(), expect);
    }
}
