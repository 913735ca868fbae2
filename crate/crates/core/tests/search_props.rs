use std::collections::BTreeSet;

use sierpdom_core::search::{
    canonical_form, distance_sequence_of, enumerate_distance_sequences, resolve_two_value,
    sierpinski_gamma, sierpinski_gamma_both, Attained, SearchConfig, SearchError,
};
use sierpdom_core::{
    solver, DominationInstance, FunctionAssignment, Graph, Mode, SierpinskiProduct, Strategy,
};

fn all_functions(n: usize, m: usize) -> impl Iterator<Item = FunctionAssignment> {
    (0..m.pow(n as u32)).map(move |mut idx| {
        let mut vals = vec![0; n];
        for slot in vals.iter_mut().rev() {
            *slot = idx % m + 1;
            idx /= m;
        }
        FunctionAssignment::new(vals).unwrap()
    })
}

#[test]
fn realizing_functions_reproduce_their_sequence() {
    for n in 3..=7 {
        for m in 3..=7 {
            let g = Graph::cycle(n).unwrap();
            let h = Graph::cycle(m).unwrap();
            for class in enumerate_distance_sequences(n, m) {
                let p = SierpinskiProduct::new(&g, &h, &class.realizing).unwrap();
                let seq: Vec<usize> = (1..=n)
                    .map(|i| {
                        let (y, x) = p.connecting_vertices(i).unwrap();
                        h.distance(y.h, x.h).unwrap().unwrap()
                    })
                    .collect();
                assert_eq!(seq, class.seq, "n={n} m={m}");
                assert_eq!(canonical_form(&seq), seq);
            }
        }
    }
}

#[test]
fn enumerated_classes_are_exactly_the_realized_ones() {
    for (n, m) in [(3, 3), (4, 4), (4, 5), (5, 4), (6, 3)] {
        let scanned: BTreeSet<Vec<usize>> = all_functions(n, m)
            .map(|f| canonical_form(&distance_sequence_of(&f, m)))
            .collect();
        let listed: BTreeSet<Vec<usize>> =
            enumerate_distance_sequences(n, m).map(|d| d.seq).collect();
        assert_eq!(scanned, listed, "n={n} m={m}");
    }
    let triangles: Vec<_> = enumerate_distance_sequences(3, 3).map(|d| d.seq).collect();
    assert_eq!(triangles, vec![vec![0, 0, 0], vec![0, 1, 1], vec![1, 1, 1]]);
}

#[test]
fn strategies_agree_on_small_cycles() {
    for n in 3..=5 {
        for m in 3..=6 {
            let g = Graph::cycle(n).unwrap();
            let h = Graph::cycle(m).unwrap();
            let values: Vec<(usize, usize)> = [
                Strategy::Exhaustive,
                Strategy::OrbitReduced,
                Strategy::DistanceSequence,
            ]
            .into_iter()
            .map(|s| {
                let (lo, hi) =
                    sierpinski_gamma_both(&g, &h, &SearchConfig::with_strategy(s)).unwrap();
                (lo.value, hi.value)
            })
            .collect();
            assert!(
                values.windows(2).all(|w| w[0] == w[1]),
                "n={n} m={m}: {values:?}"
            );
        }
    }
}

#[test]
fn witnesses_reproduce_values() {
    let g = Graph::cycle(4).unwrap();
    let h = Graph::cycle(5).unwrap();
    for mode in [Mode::Min, Mode::Max] {
        let out = sierpinski_gamma(&g, &h, mode, &SearchConfig::default()).unwrap();
        let p = SierpinskiProduct::new(&g, &h, &out.witness_f).unwrap();
        assert_eq!(
            solver::solve(&DominationInstance::new(p.into_graph()))
                .unwrap()
                .gamma,
            out.value
        );
    }
}

#[test]
fn known_values() {
    let c = |n| Graph::cycle(n).unwrap();
    let cfg = SearchConfig::default();
    assert_eq!(
        sierpinski_gamma(&c(4), &c(4), Mode::Min, &cfg)
            .unwrap()
            .value,
        4
    );
    assert_eq!(
        sierpinski_gamma(&c(3), &c(4), Mode::Max, &cfg)
            .unwrap()
            .value,
        4
    );
    assert_eq!(
        sierpinski_gamma(&c(3), &c(5), Mode::Max, &cfg)
            .unwrap()
            .value,
        6
    );
    let (lo, hi) = sierpinski_gamma_both(&c(3), &c(3), &cfg).unwrap();
    assert_eq!((lo.value, hi.value), (3, 3));
}

#[test]
fn two_value_resolutions() {
    let cfg = SearchConfig::default();
    let r = resolve_two_value(3, 1, 1, &cfg)
        .unwrap()
        .two_value_resolution
        .unwrap();
    assert_eq!(r.allowed, vec![3, 4]);
    assert_eq!(r.attained, Attained::Upper);
    let r = resolve_two_value(4, 1, 2, &cfg)
        .unwrap()
        .two_value_resolution
        .unwrap();
    assert_eq!(r.attained, Attained::Lower);
    let r = resolve_two_value(5, 1, 0, &cfg)
        .unwrap()
        .two_value_resolution
        .unwrap();
    assert_eq!(r.attained, Attained::Exact);
}

#[test]
fn universal_vertex_fiber() {
    let g = Graph::cycle(5).unwrap();
    let h = Graph::star(4).unwrap();
    let (lo, hi) = sierpinski_gamma_both(&g, &h, &SearchConfig::default()).unwrap();
    assert_eq!((lo.value, hi.value), (5, 5));
}

#[test]
fn general_fibers_use_exhaustive_search() {
    let g = Graph::path(3).unwrap();
    let h = Graph::path(3).unwrap();
    let out = sierpinski_gamma(&g, &h, Mode::Min, &SearchConfig::default()).unwrap();
    assert_eq!(out.strategy, Strategy::Exhaustive);
    assert_eq!(out.candidates_evaluated, 27);
}

#[test]
fn worker_count_does_not_change_results() {
    let g = Graph::cycle(5).unwrap();
    let h = Graph::cycle(4).unwrap();
    let run = |workers| {
        let cfg = SearchConfig {
            strategy: Strategy::Exhaustive,
            workers,
            ..SearchConfig::default()
        };
        sierpinski_gamma_both(&g, &h, &cfg).unwrap()
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn over_budget_distance_search_is_partial() {
    let cfg = SearchConfig {
        budget: Some(5),
        ..SearchConfig::default()
    };
    match sierpinski_gamma(
        &Graph::cycle(7).unwrap(),
        &Graph::cycle(7).unwrap(),
        Mode::Max,
        &cfg,
    ) {
        Err(SearchError::Budget(b)) => {
            assert_eq!(b.partial_max.unwrap().candidates_evaluated, 5);
            assert!(b.total > 5);
        }
        other => panic!("{other:?}"),
    }
}
