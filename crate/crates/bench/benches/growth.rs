//! Timings for the hot paths: the full growth pipeline, a single top
//! self-intersection, and the characteristic polynomial. Sample counts are
//! low; one growth run at d = 4 already multiplies thousands of bigints.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use plovlab_core::{gallery, growth};

fn bench_plov(c: &mut Criterion) {
    let mut group = c.benchmark_group("plov");
    group.sample_size(10);
    for name in ["torus-jordan-d3", "torus-jordan-d4", "torus-j22"] {
        let (model, auto) = gallery::build(name).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| growth::plov(black_box(&model), black_box(&auto)).unwrap().plov)
        });
    }
    group.finish();
}

fn bench_eval_power(c: &mut Criterion) {
    let (model, auto) = gallery::build("torus-jordan-d4").unwrap();
    // a translated class pairs with full support, the worst case for the
    // multiset walk
    let mut sum = model.omega().clone();
    for _ in 0..3 {
        let moved = auto.apply(&sum);
        for (s, m) in sum.iter_mut().zip(&moved) {
            *s += m;
        }
    }
    c.bench_function("pairing/top-power-d4", |b| {
        b.iter(|| model.eval_power(black_box(&sum)).unwrap())
    });
}

fn bench_char_poly(c: &mut Criterion) {
    let (_, auto) = gallery::build("torus-jordan-d4").unwrap();
    let m = auto.matrix().clone();
    c.bench_function("matrix/char-poly-16x16", |b| {
        b.iter(|| black_box(&m).char_poly())
    });
}

criterion_group!(benches, bench_plov, bench_eval_power, bench_char_poly);
criterion_main!(benches);
