//! Immutable simple undirected graphs with 1-based vertex labels.
//!
//! Every public entry point speaks in [`VertexId`]s, which are 1-based. The
//! adjacency lists are stored 0-based and kept sorted, so two graphs built from
//! the same edge set compare equal.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 1-based wraparound: `t mod* n = (t - 1) mod n + 1`.
///
/// Works for any integer `t`, so `mod_star(0, n) == n` and
/// `mod_star(n + 1, n) == 1`.
pub fn mod_star(t: i64, n: usize) -> usize {
    assert!(n > 0, "mod* needs a positive modulus");
    ((t - 1).rem_euclid(n as i64) + 1) as usize
}

/// A 1-based vertex label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl VertexId {
    /// Builds a label from a 0-based index.
    pub fn from_index(index: usize) -> Self {
        VertexId(index + 1)
    }

    /// 0-based index for internal storage.
    pub fn index(self) -> usize {
        self.0 - 1
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on vertices `1..=n` from 1-based edge pairs.
    ///
    /// Duplicate edges (in either orientation) are rejected, as are loops.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidEdge(u, v, "self-loop"));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::InvalidEdge(u, v, "duplicate edge"));
            }
            adj[u - 1].push(v - 1);
            adj[v - 1].push(u - 1);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            adj,
            edge_count: seen.len(),
        })
    }

    /// Same as [`Graph::from_edges`] but silently merges duplicate edges.
    fn from_edge_set(n: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        Graph::from_edges(n, edges).expect("edge set is deduplicated and in range")
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// The cycle `C_n` with edges `{i, i mod* n + 1}`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidOrder {
                family: "cycle",
                n,
                min: 3,
            });
        }
        Ok(Graph::from_edge_set(
            n,
            (1..=n)
                .map(|i| {
                    let j = mod_star(i as i64 + 1, n);
                    (i.min(j), i.max(j))
                })
                .collect(),
        ))
    }

    pub fn path(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidOrder {
                family: "path",
                n,
                min: 1,
            });
        }
        Graph::from_edges(n, (1..n).map(|i| (i, i + 1)))
    }

    pub fn complete(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidOrder {
                family: "complete",
                n,
                min: 1,
            });
        }
        Graph::from_edges(n, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))))
    }

    /// The star `K_{1,n-1}` with centre `1`.
    pub fn star(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidOrder {
                family: "star",
                n,
                min: 1,
            });
        }
        Graph::from_edges(n, (2..=n).map(|i| (1, i)))
    }

    /// The circulant `C_n<L>`: vertex `i` is adjacent to `i ± j` (mod* n)
    /// for every jump `j` in `jumps`.
    pub fn circulant(n: usize, jumps: &[usize]) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidOrder {
                family: "circulant",
                n,
                min: 3,
            });
        }
        if jumps.is_empty() {
            return Err(Error::InvalidList {
                n,
                reason: "jump list is empty".into(),
            });
        }
        let mut edges = BTreeSet::new();
        for &j in jumps {
            if j < 1 || j > n / 2 {
                return Err(Error::InvalidList {
                    n,
                    reason: format!("jump {j} outside 1..={}", n / 2),
                });
            }
            for i in 1..=n {
                let k = mod_star((i + j) as i64, n);
                edges.insert((i.min(k), i.max(k)));
            }
        }
        Ok(Graph::from_edge_set(n, edges))
    }

    /// Number of vertices, `n(G)`.
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges, `m(G)`.
    pub fn size(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (1..=self.order()).map(VertexId)
    }

    /// Edges as sorted 1-based pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u + 1, v + 1));
                }
            }
        }
        out
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 == 0 || v.0 > self.order() {
            Err(Error::VertexOutOfRange {
                vertex: v.0,
                n: self.order(),
            })
        } else {
            Ok(())
        }
    }

    /// Neighbours of `v`, 1-based and ascending.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v.index()].iter().map(|&w| VertexId::from_index(w))
    }

    /// 0-based sorted adjacency, for algorithms inside the crate.
    pub(crate) fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.index()].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u.index()].binary_search(&v.index()).is_ok()
    }

    /// Shortest-path length, `None` when `v` is unreachable from `u`.
    pub fn distance(&self, u: VertexId, v: VertexId) -> Result<Option<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.bfs(u.index())[v.index()])
    }

    fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest finite distance; `None` for a disconnected graph.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.order() {
            for d in self.bfs(s) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.bfs(0).iter().all(Option::is_some)
    }

    /// The induced subgraph `G - S`, relabelled `1..=n - |S|` in the original
    /// order, with a map back to the original labels.
    pub fn delete_vertices(&self, removed: &[VertexId]) -> Result<Subgraph> {
        let mut gone = vec![false; self.order()];
        for &v in removed {
            self.check_vertex(v)?;
            gone[v.index()] = true;
        }
        let original: Vec<VertexId> = self.vertices().filter(|v| !gone[v.index()]).collect();
        let mut new_index = vec![usize::MAX; self.order()];
        for (i, v) in original.iter().enumerate() {
            new_index[v.index()] = i;
        }
        let edges = self
            .edges()
            .into_iter()
            .filter(|&(u, v)| !gone[u - 1] && !gone[v - 1])
            .map(|(u, v)| (new_index[u - 1] + 1, new_index[v - 1] + 1));
        Ok(Subgraph {
            graph: Graph::from_edges(original.len(), edges)?,
            original,
        })
    }

    /// Checks whether `v -> v mod* n + 1` is an automorphism, i.e. whether
    /// the labelling is that of a circulant (cycles and complete graphs
    /// included). Such graphs are vertex-transitive.
    pub fn is_labelled_circulant(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return false;
        }
        self.edges().into_iter().all(|(u, v)| {
            let su = mod_star(u as i64 + 1, n);
            let sv = mod_star(v as i64 + 1, n);
            self.has_edge(VertexId(su), VertexId(sv))
        })
    }

    /// True when the graph is exactly `C_n` under its own labels
    /// (edges `{i, i mod* n + 1}`).
    pub fn is_labelled_cycle(&self) -> bool {
        let n = self.order();
        n >= 3
            && self.edge_count == n
            && (1..=n).all(|i| self.has_edge(VertexId(i), VertexId(mod_star(i as i64 + 1, n))))
    }
}

/// A graph derived by vertex deletion, carrying the labels it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// `original[i]` is the label in the parent graph of vertex `i + 1`.
    pub original: Vec<VertexId>,
}

impl Subgraph {
    pub fn to_original(&self, v: VertexId) -> VertexId {
        self.original[v.index()]
    }

    /// Deletes more vertices, given in this subgraph's labels, and composes
    /// the back-mapping so the result still points at the root graph.
    pub fn delete_vertices(&self, removed: &[VertexId]) -> Result<Subgraph> {
        let inner = self.graph.delete_vertices(removed)?;
        Ok(Subgraph {
            original: inner
                .original
                .iter()
                .map(|&v| self.to_original(v))
                .collect(),
            graph: inner.graph,
        })
    }
}
