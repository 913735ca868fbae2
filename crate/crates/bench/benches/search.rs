use criterion::{criterion_group, criterion_main, Criterion};
use sierpdom_core::search::sierpinski_gamma_both;
use sierpdom_core::{Graph, SearchConfig, Strategy};

fn search(c: &mut Criterion) {
    let g = Graph::cycle(5).unwrap();
    let h = Graph::cycle(4).unwrap();
    let mut group = c.benchmark_group("C5 x C4 both extrema");
    group.sample_size(10);
    for s in [
        Strategy::Exhaustive,
        Strategy::OrbitReduced,
        Strategy::DistanceSequence,
    ] {
        let cfg = SearchConfig::with_strategy(s);
        group.bench_function(s.name(), |b| {
            b.iter(|| sierpinski_gamma_both(&g, &h, &cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, search);
criterion_main!(benches);
