use proptest::prelude::*;
use sierpdom_core::codec::{self, Format};
use sierpdom_core::{Graph, VertexId};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn handshake(g in arb_graph(12)) {
        let total: usize = g.vertices().map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.size());
        prop_assert_eq!(g.edges().len(), g.size());
    }

    #[test]
    fn codecs_round_trip(g in arb_graph(16)) {
        for format in [Format::Graph6, Format::Dot, Format::EdgeListJson] {
            let back = codec::decode(&codec::encode(&g, format), format).unwrap();
            prop_assert_eq!(back.edges(), g.edges());
            if format != Format::Dot {
                prop_assert_eq!(back.order(), g.order());
            }
        }
    }

    #[test]
    fn deletions_compose(g in arb_graph(10), a in 1usize..=10, b in 1usize..=10) {
        let n = g.order();
        let (a, b) = ((a - 1) % n + 1, (b - 1) % n + 1);
        prop_assume!(a != b);
        let once = g.delete_vertices(&[VertexId(a), VertexId(b)]).unwrap();
        let first = g.delete_vertices(&[VertexId(a)]).unwrap();
        // position of b after a is gone
        let b_new = if b > a { b - 1 } else { b };
        let twice = first.delete_vertices(&[VertexId(b_new)]).unwrap();
        prop_assert_eq!(once.graph.edges(), twice.graph.edges());
        for v in once.graph.vertices() {
            prop_assert_eq!(once.to_original(v), twice.to_original(v));
        }
        prop_assert_eq!(once.graph.order(), n - 2);
    }

    #[test]
    fn distances_are_symmetric(g in arb_graph(9)) {
        for u in g.vertices() {
            for v in g.vertices() {
                prop_assert_eq!(g.distance(u, v).unwrap(), g.distance(v, u).unwrap());
            }
        }
    }
}

#[test]
fn circulant_with_unit_jump_is_the_cycle() {
    for n in 3..=30 {
        assert_eq!(
            Graph::circulant(n, &[1]).unwrap().edges(),
            Graph::cycle(n).unwrap().edges()
        );
    }
}
