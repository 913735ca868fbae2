//! Benchmark fixtures.

use sierpdom_core::constructions::f_c18c7;
use sierpdom_core::{FunctionAssignment, Graph, SierpinskiProduct};

/// C18 x_f C7 with the function whose product has domination number 36.
pub fn c18c7() -> Graph {
    let g = Graph::cycle(18).expect("cycle");
    let h = Graph::cycle(7).expect("cycle");
    SierpinskiProduct::new(&g, &h, &f_c18c7())
        .expect("product")
        .into_graph()
}

/// Product of two cycles under a constant function.
pub fn cycle_product(n: usize, m: usize) -> Graph {
    let g = Graph::cycle(n).expect("cycle");
    let h = Graph::cycle(m).expect("cycle");
    let f = FunctionAssignment::constant(n, sierpdom_core::VertexId(1));
    SierpinskiProduct::new(&g, &h, &f)
        .expect("product")
        .into_graph()
}

/// Deterministic pseudo-random graph from a small linear congruential stream.
pub fn pseudo_random_graph(n: usize, per_mille: u64, seed: u64) -> Graph {
    let mut state = seed
        .wrapping_mul(6364136223846793005)
        .wrapping_add(1442695040888963407);
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            if (state >> 33) % 1000 < per_mille {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid edges")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_expected_orders() {
        assert_eq!(c18c7().order(), 126);
        assert_eq!(cycle_product(5, 4).order(), 20);
        assert_eq!(pseudo_random_graph(30, 200, 1).order(), 30);
    }
}
