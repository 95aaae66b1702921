use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use lagrange_core::cfrac::hall_decompose;
use lagrange_core::origami::{hall_ray_alpha, OrbitGraph};
use lagrange_core::spectrum::{
    a_value_stream, enumerate_periodic_values, periodic_datum, periodic_value,
};
use lagrange_core::{Origami, PermutationPair, Precision, RauzyClass, RauzyPath};

const PREC: Precision = Precision(256);

/// A closed H(2) loop whose square is positive.
fn h2_loop() -> RauzyPath {
    let pi = PermutationPair::parse("A B C D/D C B A").unwrap();
    RauzyPath::from_kinds(&pi, "bbbtbbtbt")
        .unwrap()
        .repeat(2)
        .unwrap()
}

fn rauzy_veech(c: &mut Criterion) {
    let lp = h2_loop();
    let (zd, _) = periodic_datum(&lp, Precision(512)).unwrap();
    let mut g = c.benchmark_group("rauzy_veech");
    for steps in [50usize, 200] {
        g.bench_with_input(
            BenchmarkId::new("a_value_stream", steps),
            &steps,
            |b, &r| b.iter(|| a_value_stream(black_box(&zd), r).unwrap()),
        );
    }
    g.finish();
}

fn periodic(c: &mut Criterion) {
    let lp = h2_loop();
    c.bench_function("periodic_value/h2_loop", |b| {
        b.iter(|| periodic_value(black_box(&lp), PREC).unwrap())
    });
    let class = RauzyClass::generate(&PermutationPair::parse("A B/B A").unwrap()).unwrap();
    c.bench_function("enumerate_periodic_values/torus_len8", |b| {
        b.iter(|| enumerate_periodic_values(black_box(&class), 8, PREC).unwrap())
    });
}

fn classes(c: &mut Criterion) {
    let pi = PermutationPair::parse("A B C D E F/F E D C B A").unwrap();
    c.bench_function("rauzy_class/d6", |b| {
        b.iter(|| RauzyClass::generate(black_box(&pi)).unwrap())
    });
}

fn origamis(c: &mut Criterion) {
    let x = Origami::new(vec![1, 2, 3, 4, 0, 5], vec![5, 1, 2, 3, 4, 0]).unwrap();
    c.bench_function("orbit_graph/h2_six_squares", |b| {
        b.iter(|| OrbitGraph::build(black_box(&x)))
    });
    let xv = PREC.parse("10").unwrap();
    c.bench_function("hall_ray/h2_six_squares_60_blocks", |b| {
        b.iter(|| hall_ray_alpha(black_box(&x), &xv, 60, PREC).unwrap())
    });
    let y = PREC.parse("9.3").unwrap();
    c.bench_function("hall_decompose/200_digits", |b| {
        b.iter(|| hall_decompose(black_box(&y), 200, PREC).unwrap())
    });
}

criterion_group!(benches, rauzy_veech, periodic, classes, origamis);
criterion_main!(benches);
