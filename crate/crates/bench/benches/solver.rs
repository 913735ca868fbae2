use criterion::{black_box, criterion_group, criterion_main, Criterion};
use sierpdom_bench::{c18c7, cycle_product, pseudo_random_graph};
use sierpdom_core::solver::gamma;

fn solver(c: &mut Criterion) {
    let big = c18c7();
    c.bench_function("gamma C18 x C7", |b| {
        b.iter(|| gamma(black_box(&big)).unwrap())
    });
    let grid = cycle_product(8, 8);
    c.bench_function("gamma C8 x C8 constant", |b| {
        b.iter(|| gamma(black_box(&grid)).unwrap())
    });
    let sparse = pseudo_random_graph(60, 80, 3);
    c.bench_function("gamma random n=60", |b| {
        b.iter(|| gamma(black_box(&sparse)).unwrap())
    });
}

criterion_group!(benches, solver);
criterion_main!(benches);
