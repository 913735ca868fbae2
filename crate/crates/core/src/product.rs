//! Sierpinski products `G ⊗_f H`.
//!
//! The product has one copy of `H` per vertex `g` of `G` (the layer `gH`)
//! and, for every edge `gg'` of `G`, the single connecting edge
//! `(g, f(g')) (g', f(g))`. Product vertices are numbered row-major:
//! `(g, h)` is flat vertex `(g - 1) * n(H) + h`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::codec;
use crate::error::{Error, Result};
use crate::graph::{mod_star, Graph, VertexId};

/// A total map `f: V(G) -> V(H)`; entry `i` is `f(g_{i+1})`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FunctionAssignment {
    values: Vec<VertexId>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionJson {
    n: usize,
    f: Vec<usize>,
}

impl FunctionAssignment {
    /// From 1-based values. Only checks that every value is positive; the
    /// range in `H` is checked by [`FunctionAssignment::check_against`].
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|&&v| v == 0) {
            return Err(Error::VertexOutOfRange { vertex: bad, n: 0 });
        }
        Ok(FunctionAssignment {
            values: values.into_iter().map(VertexId).collect(),
        })
    }

    pub fn constant(domain: usize, value: VertexId) -> Self {
        FunctionAssignment {
            values: vec![value; domain],
        }
    }

    pub fn domain_size(&self) -> usize {
        self.values.len()
    }

    /// `f(g)`.
    pub fn get(&self, g: VertexId) -> VertexId {
        self.values[g.index()]
    }

    pub fn values(&self) -> &[VertexId] {
        &self.values
    }

    pub fn as_labels(&self) -> Vec<usize> {
        self.values.iter().map(|v| v.0).collect()
    }

    pub fn check_against(&self, g: &Graph, h: &Graph) -> Result<()> {
        if self.values.len() != g.order() {
            return Err(Error::FunctionLength {
                expected: g.order(),
                got: self.values.len(),
            });
        }
        for &v in &self.values {
            h.check_vertex(v)?;
        }
        Ok(())
    }

    /// `{"n": 3, "f": [1, 1, 2]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&FunctionJson {
            n: self.values.len(),
            f: self.as_labels(),
        })
        .expect("function serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FunctionJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            format: "function-json",
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if doc.f.len() != doc.n {
            return Err(Error::FunctionLength {
                expected: doc.n,
                got: doc.f.len(),
            });
        }
        FunctionAssignment::new(doc.f)
    }
}

impl fmt::Display for FunctionAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A product vertex `(g, h)` in factor coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProductVertex {
    pub g: VertexId,
    pub h: VertexId,
}

impl ProductVertex {
    pub fn new(g: usize, h: usize) -> Self {
        ProductVertex {
            g: VertexId(g),
            h: VertexId(h),
        }
    }
}

impl fmt::Display for ProductVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.g, self.h)
    }
}

/// A connecting (type-2) edge, oriented from the layer of `g` to that of `g'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConnectingEdge {
    pub from: ProductVertex,
    pub to: ProductVertex,
}

#[derive(Debug, Clone)]
pub struct SierpinskiProduct {
    graph: Graph,
    base: Graph,
    fiber: Graph,
    f: FunctionAssignment,
    connectors: Vec<ConnectingEdge>,
}

impl SierpinskiProduct {
    pub fn new(base: &Graph, fiber: &Graph, f: &FunctionAssignment) -> Result<Self> {
        f.check_against(base, fiber)?;
        let m = fiber.order();
        let flat = |g: usize, h: usize| (g - 1) * m + h;
        let mut edges = Vec::with_capacity(base.order() * fiber.size() + base.size());
        for g in 1..=base.order() {
            for (h, h2) in fiber.edges() {
                edges.push((flat(g, h), flat(g, h2)));
            }
        }
        let mut connectors = Vec::with_capacity(base.size());
        for (g, g2) in base.edges() {
            let from = ProductVertex::new(g, f.get(VertexId(g2)).0);
            let to = ProductVertex::new(g2, f.get(VertexId(g)).0);
            edges.push((flat(from.g.0, from.h.0), flat(to.g.0, to.h.0)));
            connectors.push(ConnectingEdge { from, to });
        }
        Ok(SierpinskiProduct {
            graph: Graph::from_edges(base.order() * m, edges)?,
            base: base.clone(),
            fiber: fiber.clone(),
            f: f.clone(),
            connectors,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn fiber(&self) -> &Graph {
        &self.fiber
    }

    pub fn function(&self) -> &FunctionAssignment {
        &self.f
    }

    /// Type-2 edges, one per edge of the base graph.
    pub fn connecting_edges(&self) -> &[ConnectingEdge] {
        &self.connectors
    }

    pub fn layer_count(&self) -> usize {
        self.base.order()
    }

    pub fn flat(&self, v: ProductVertex) -> VertexId {
        VertexId((v.g.0 - 1) * self.fiber.order() + v.h.0)
    }

    pub fn coords(&self, v: VertexId) -> ProductVertex {
        let m = self.fiber.order();
        ProductVertex::new(v.index() / m + 1, v.index() % m + 1)
    }

    /// Flat labels of the layer `gH`, ascending in `h`.
    pub fn layer_vertices(&self, g: VertexId) -> Result<Vec<VertexId>> {
        self.base.check_vertex(g)?;
        Ok(self
            .fiber
            .vertices()
            .map(|h| self.flat(ProductVertex { g, h }))
            .collect())
    }

    /// The subgraph induced by the layer `gH`, labelled by `h`.
    pub fn layer_subgraph(&self, g: VertexId) -> Result<Graph> {
        let layer = self.layer_vertices(g)?;
        let keep: std::collections::HashSet<_> = layer.iter().copied().collect();
        let removed: Vec<VertexId> = self
            .graph
            .vertices()
            .filter(|v| !keep.contains(v))
            .collect();
        Ok(self.graph.delete_vertices(&removed)?.graph)
    }

    /// `(y_i, x_i)` for a cyclically labelled base: `y_i = (g_i, f(g_{i-1}))`
    /// faces layer `i - 1` and `x_i = (g_i, f(g_{i+1}))` faces layer `i + 1`.
    pub fn connecting_vertices(&self, i: usize) -> Result<(ProductVertex, ProductVertex)> {
        if !self.base.is_labelled_cycle() {
            return Err(Error::Unsupported(
                "connecting vertices need a cyclically labelled base cycle".into(),
            ));
        }
        let n = self.base.order();
        self.base.check_vertex(VertexId(i))?;
        let prev = VertexId(mod_star(i as i64 - 1, n));
        let next = VertexId(mod_star(i as i64 + 1, n));
        Ok((
            ProductVertex {
                g: VertexId(i),
                h: self.f.get(prev),
            },
            ProductVertex {
                g: VertexId(i),
                h: self.f.get(next),
            },
        ))
    }

    /// DOT export with `(g,h)` coordinates in vertex comments.
    pub fn to_dot(&self) -> String {
        codec::to_dot(&self.graph, |v| Some(self.coords(VertexId(v)).to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_layer_is_the_fiber() {
        let h = Graph::cycle(5).unwrap();
        let p = SierpinskiProduct::new(
            &Graph::complete(1).unwrap(),
            &h,
            &FunctionAssignment::constant(1, VertexId(3)),
        )
        .unwrap();
        assert_eq!(p.graph(), &h);
        assert!(p.connecting_edges().is_empty());
    }

    #[test]
    fn constant_function_on_triangles() {
        let c3 = Graph::cycle(3).unwrap();
        let p = SierpinskiProduct::new(&c3, &c3, &FunctionAssignment::constant(3, VertexId(1)))
            .unwrap();
        assert_eq!((p.graph().order(), p.graph().size()), (9, 12));
        let a = p.flat(ProductVertex::new(1, 1));
        let b = p.flat(ProductVertex::new(2, 1));
        let c = p.flat(ProductVertex::new(3, 1));
        assert!(p.graph().has_edge(a, b) && p.graph().has_edge(b, c) && p.graph().has_edge(a, c));
        for i in 1..=3 {
            let (y, x) = p.connecting_vertices(i).unwrap();
            assert_eq!(x, y);
            assert_eq!(x, ProductVertex::new(i, 1));
        }
    }

    #[test]
    fn layers() {
        let p = SierpinskiProduct::new(
            &Graph::cycle(3).unwrap(),
            &Graph::path(4).unwrap(),
            &FunctionAssignment::new(vec![1, 4, 2]).unwrap(),
        )
        .unwrap();
        assert_eq!(p.layer_count(), 3);
        assert_eq!(
            p.layer_subgraph(VertexId(2)).unwrap(),
            Graph::path(4).unwrap()
        );
        assert!(p.layer_subgraph(VertexId(4)).is_err());
    }

    #[test]
    fn flat_coordinates_round_trip() {
        let p = SierpinskiProduct::new(
            &Graph::cycle(4).unwrap(),
            &Graph::cycle(7).unwrap(),
            &FunctionAssignment::constant(4, VertexId(2)),
        )
        .unwrap();
        for v in p.graph().vertices() {
            assert_eq!(p.flat(p.coords(v)), v);
        }
        assert_eq!(p.flat(ProductVertex::new(2, 1)), VertexId(8));
    }

    #[test]
    fn bad_functions() {
        let c4 = Graph::cycle(4).unwrap();
        assert!(matches!(
            SierpinskiProduct::new(&c4, &c4, &FunctionAssignment::new(vec![1, 2, 3]).unwrap()),
            Err(Error::FunctionLength { .. })
        ));
        assert!(matches!(
            SierpinskiProduct::new(
                &c4,
                &c4,
                &FunctionAssignment::new(vec![1, 2, 3, 5]).unwrap()
            ),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(FunctionAssignment::new(vec![0]).is_err());
    }

    #[test]
    fn connecting_vertices_need_a_cycle() {
        let p = SierpinskiProduct::new(
            &Graph::path(3).unwrap(),
            &Graph::cycle(3).unwrap(),
            &FunctionAssignment::constant(3, VertexId(1)),
        )
        .unwrap();
        assert!(matches!(
            p.connecting_vertices(1),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn function_json() {
        let f = FunctionAssignment::new(vec![1, 1, 3, 3]).unwrap();
        assert_eq!(f.to_json(), r#"{"n":4,"f":[1,1,3,3]}"#);
        assert_eq!(FunctionAssignment::from_json(&f.to_json()).unwrap(), f);
        assert!(FunctionAssignment::from_json(r#"{"n":3,"f":[1]}"#).is_err());
        assert!(FunctionAssignment::from_json("nope").is_err());
    }

    #[test]
    fn dot_export_carries_coordinates() {
        let p = SierpinskiProduct::new(
            &Graph::cycle(3).unwrap(),
            &Graph::cycle(3).unwrap(),
            &FunctionAssignment::constant(3, VertexId(1)),
        )
        .unwrap();
        let dot = p.to_dot();
        assert!(dot.contains("4; // (2,1)"));
        assert_eq!(codec::from_dot(&dot).unwrap(), *p.graph());
    }
}
