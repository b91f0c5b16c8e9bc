//! The growth degree is an invariant: it cannot depend on the reference
//! class, on replacing the action by a power, or on the side of the orbit
//! sum, and it adds over products. Violations of any of these would mean
//! the expansion engine is broken even if individual goldens pass.

use plovlab_core::model::product::build_product;
use plovlab_core::{fuzz, gallery, growth, AutoAction, Rat};

#[test]
fn degree_ignores_the_reference_class() {
    let (model, auto) = gallery::build("torus-jordan-d2").unwrap();
    let base = growth::plov(&model, &auto).unwrap();
    // [[2,1],[1,1]] and [[3,1],[1,2]] are positive definite
    let alt1: Vec<Rat> = [2, 1, 1, 1].iter().map(|&v| Rat::from_int(v)).collect();
    let alt2: Vec<Rat> = [3, 1, 1, 2].iter().map(|&v| Rat::from_int(v)).collect();
    for alt in [alt1, alt2] {
        let r = growth::plov_with_class(&model, &auto, &alt).unwrap();
        assert_eq!(r.plov, base.plov);
        assert_eq!(r.plov_two_sided, base.plov_two_sided);
        assert_eq!(r.d_pol, base.d_pol);
    }
}

#[test]
fn degree_ignores_the_reference_class_multi_block() {
    let (model, auto) = gallery::build("torus-j21").unwrap();
    let base = growth::plov(&model, &auto).unwrap();
    let mut alt = model.omega().clone();
    // omega + b11 + (b12 + b21)/2 stays positive definite
    alt[0] = alt[0].clone() + Rat::from_int(1);
    alt[1] = alt[1].clone() + Rat::new(1, 2).unwrap();
    alt[3] = alt[3].clone() + Rat::new(1, 2).unwrap();
    let r = growth::plov_with_class(&model, &auto, &alt).unwrap();
    assert_eq!(r.plov, base.plov);
}

#[test]
fn degree_is_stable_under_powers() {
    for name in ["torus-jordan-d2", "torus-j21", "fujiki-parabolic-d1"] {
        let (model, auto) = gallery::build(name).unwrap();
        let base = growth::plov(&model, &auto).unwrap();
        for exp in [2u64, 3] {
            let powered = AutoAction::new(auto.matrix().pow(exp)).unwrap();
            let r = growth::plov(&model, &powered).unwrap();
            assert_eq!(r.plov, base.plov, "{name}: power {exp}");
            assert_eq!(r.gkdim, base.gkdim, "{name}: power {exp}");
        }
    }
}

#[test]
fn degree_is_stable_under_powers_of_finite_part() {
    // order-2 component: odd and even powers land on different reductions
    let (model, auto) = gallery::build("fujiki-involution-d2").unwrap();
    let base = growth::plov(&model, &auto).unwrap();
    for exp in [2u64, 3] {
        let powered = AutoAction::new(auto.matrix().pow(exp)).unwrap();
        let r = growth::plov(&model, &powered).unwrap();
        assert_eq!(r.plov, base.plov, "power {exp}");
    }
}

#[test]
fn products_add_degrees() {
    let pairs = [
        ("torus-jordan-d2", "torus-jordan-d2"),
        ("torus-jordan-d2", "identity-d1"),
        ("torus-j21", "identity-d2"),
        ("torus-jordan-d3", "torus-jordan-d2"),
    ];
    for (left, right) in pairs {
        let (m1, a1) = gallery::build(left).unwrap();
        let (m2, a2) = gallery::build(right).unwrap();
        let p1 = growth::plov(&m1, &a1).unwrap().plov;
        let p2 = growth::plov(&m2, &a2).unwrap().plov;
        let (prod, action) = build_product(&m1, &a1, &m2, &a2).unwrap();
        let joint = growth::plov(&prod, &action).unwrap();
        assert_eq!(joint.plov, p1 + p2, "{left} x {right}");
        assert!(!prod.k_reportable());
    }
}

#[test]
fn randomized_conjugates_are_deterministic() {
    let a = fuzz::run_case(3, 12345).unwrap();
    let b = fuzz::run_case(3, 12345).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn randomized_conjugates_small_sweep() {
    for d in 2..=3usize {
        let report = fuzz::run_many(d, 4, 900 + d as u64).unwrap();
        assert!(report.all_ok, "d = {d}: {report:?}");
        for case in &report.cases {
            assert_eq!(case.partition.iter().sum::<usize>(), d);
        }
    }
}

#[test]
fn oracle_rejects_a_tampered_polynomial() {
    let (model, auto) = gallery::build("torus-jordan-d2").unwrap();
    let report = growth::plov(&model, &auto).unwrap();
    let mut wrong = report.poly.coeffs().to_vec();
    wrong[0] = wrong[0].clone() + Rat::from_int(1);
    let tampered = plovlab_core::QPoly::from_coeffs(wrong);
    let oracle = growth::oracle_check(&model, &auto, &tampered).unwrap();
    assert!(!oracle.agreed);
}
