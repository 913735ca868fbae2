use proptest::prelude::*;
use sierpdom_core::solver;
use sierpdom_core::{
    DominationInstance, FunctionAssignment, Graph, ProductVertex, SierpinskiProduct, VertexId,
};

fn arb_connected_pair() -> impl Strategy<Value = (Graph, Graph, FunctionAssignment)> {
    let graph = |max: usize| {
        (1..=max).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |keep| {
                let all: Vec<(usize, usize)> = (1..=n)
                    .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
                    .collect();
                Graph::from_edges(
                    n,
                    all.into_iter()
                        .zip(keep)
                        .filter(|(_, k)| *k)
                        .map(|(e, _)| e),
                )
                .unwrap()
            })
        })
    };
    (graph(5), graph(5)).prop_flat_map(|(g, h)| {
        let (n, m) = (g.order(), h.order());
        proptest::collection::vec(1..=m, n)
            .prop_map(move |vals| (g.clone(), h.clone(), FunctionAssignment::new(vals).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn order_and_size((g, h, f) in arb_connected_pair()) {
        let p = SierpinskiProduct::new(&g, &h, &f).unwrap();
        prop_assert_eq!(p.graph().order(), g.order() * h.order());
        prop_assert_eq!(p.graph().size(), g.order() * h.size() + g.size());
        prop_assert_eq!(p.connecting_edges().len(), g.size());
    }

    #[test]
    fn layers_are_copies_of_the_fiber((g, h, f) in arb_connected_pair()) {
        let p = SierpinskiProduct::new(&g, &h, &f).unwrap();
        for layer in g.vertices() {
            prop_assert_eq!(p.layer_subgraph(layer).unwrap().edges(), h.edges());
        }
        for v in p.graph().vertices() {
            prop_assert_eq!(p.flat(p.coords(v)), v);
        }
    }

    #[test]
    fn connecting_edges_follow_f((g, h, f) in arb_connected_pair()) {
        let p = SierpinskiProduct::new(&g, &h, &f).unwrap();
        for (a, b) in g.edges() {
            let u = p.flat(ProductVertex { g: VertexId(a), h: f.get(VertexId(b)) });
            let v = p.flat(ProductVertex { g: VertexId(b), h: f.get(VertexId(a)) });
            prop_assert!(p.graph().has_edge(u, v));
        }
    }

    #[test]
    fn domination_sandwich((g, h, f) in arb_connected_pair()) {
        let p = SierpinskiProduct::new(&g, &h, &f).unwrap();
        let value = solver::solve(&DominationInstance::new(p.into_graph())).unwrap().gamma;
        let upper = g.order() * solver::gamma(&h).unwrap();
        prop_assert!(value <= upper);
        prop_assert!(value + g.size() >= upper);
    }
}
