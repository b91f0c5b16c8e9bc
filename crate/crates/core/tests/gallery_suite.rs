//! Every built-in example is recomputed along three independent routes:
//! the binomial expansion engine, its two-sided variant, and a direct
//! orbit-sum oracle with interpolation. All three must agree, and the
//! certified order and Jordan data must match the frozen expectations.

use std::time::Instant;

use plovlab_core::{gallery, growth};

#[test]
fn expectations_hold_on_every_entry() {
    for e in gallery::entries() {
        let t0 = Instant::now();
        let (model, auto) = gallery::build(e.name).unwrap();
        let cert_k = if model.k_reportable() {
            Some(auto.cert().unwrap().k)
        } else {
            None
        };
        let report = growth::plov(&model, &auto).unwrap();
        assert_eq!(report.plov, e.expected_plov, "{}: plov", e.name);
        assert_eq!(report.gkdim, e.expected_plov + 1, "{}: gkdim", e.name);
        assert_eq!(cert_k, e.expected_k, "{}: k", e.name);
        assert_eq!(auto.cert().unwrap().order_m, e.expected_m, "{}: order", e.name);
        assert_eq!(model.d(), e.expected_d, "{}: d", e.name);
        eprintln!("{}: growth in {:?}", e.name, t0.elapsed());
    }
}

#[test]
fn three_routes_agree_on_every_entry() {
    for e in gallery::entries() {
        let t0 = Instant::now();
        let (model, auto) = gallery::build(e.name).unwrap();
        let report = growth::plov(&model, &auto).unwrap();
        assert_eq!(
            report.plov_two_sided, report.plov,
            "{}: two-sided degree",
            e.name
        );
        let oracle = growth::oracle_check(&model, &auto, &report.poly).unwrap();
        assert!(oracle.agreed, "{}: oracle disagrees", e.name);
        eprintln!("{}: three routes in {:?}", e.name, t0.elapsed());
    }
}

#[test]
fn partial_ladder_is_strictly_increasing() {
    for e in gallery::entries() {
        let (model, auto) = gallery::build(e.name).unwrap();
        let report = growth::plov(&model, &auto).unwrap();
        assert!(
            report
                .partial_degrees
                .windows(2)
                .all(|w| w[0] < w[1]),
            "{}: ladder {:?}",
            e.name,
            report.partial_degrees
        );
        assert_eq!(
            *report.partial_degrees.last().unwrap(),
            report.plov,
            "{}",
            e.name
        );
    }
}
