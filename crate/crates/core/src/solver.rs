//! Exact minimum dominating sets.
//!
//! The instance is read as a set-cover problem: the universe is every vertex
//! that still has to be dominated, and each surviving vertex offers its closed
//! neighbourhood. The search branches on an uncovered vertex with the fewest
//! useful dominators, splits the residual universe into independent
//! components, and memoises every residual universe it settles. Lower bounds
//! come from a greedy 2-packing and a coverage count; the initial upper bound
//! from greedy max-coverage.
//!
//! Constraint semantics follow `γ(G|S)`: vertices in `pre_dominated` need not
//! be dominated but may still be chosen; `deleted` vertices vanish together
//! with their edges; `forced_in` vertices are always in the witness.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bitset::{VertexSet, CAPACITY};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Largest order the solver accepts by default.
pub const DEFAULT_CAP: usize = CAPACITY;

/// Largest order accepted by [`brute_force_gamma`].
pub const BRUTE_FORCE_MAX: usize = 26;

/// Constraint lists as they appear in constraint JSON files.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Constraints {
    pub forced_in: Vec<VertexId>,
    pub pre_dominated: Vec<VertexId>,
    pub deleted: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationInstance {
    pub graph: Graph,
    pub forced_in: Vec<VertexId>,
    pub pre_dominated: Vec<VertexId>,
    pub deleted: Vec<VertexId>,
}

impl DominationInstance {
    pub fn new(graph: Graph) -> Self {
        DominationInstance {
            graph,
            forced_in: Vec::new(),
            pre_dominated: Vec::new(),
            deleted: Vec::new(),
        }
    }

    pub fn with_constraints(graph: Graph, c: Constraints) -> Self {
        DominationInstance {
            graph,
            forced_in: c.forced_in,
            pre_dominated: c.pre_dominated,
            deleted: c.deleted,
        }
    }

    pub fn forced_in(mut self, vs: impl IntoIterator<Item = VertexId>) -> Self {
        self.forced_in.extend(vs);
        self
    }

    pub fn pre_dominated(mut self, vs: impl IntoIterator<Item = VertexId>) -> Self {
        self.pre_dominated.extend(vs);
        self
    }

    pub fn deleted(mut self, vs: impl IntoIterator<Item = VertexId>) -> Self {
        self.deleted.extend(vs);
        self
    }

    pub fn check(&self) -> Result<()> {
        for v in self
            .forced_in
            .iter()
            .chain(&self.pre_dominated)
            .chain(&self.deleted)
        {
            self.graph.check_vertex(*v)?;
        }
        if let Some(v) = self.forced_in.iter().find(|v| self.deleted.contains(v)) {
            return Err(Error::MalformedInstance(format!(
                "vertex {v} is both forced in and deleted"
            )));
        }
        Ok(())
    }

    fn masks(&self) -> (Vec<bool>, Vec<bool>, Vec<bool>) {
        let n = self.graph.order();
        let mut forced = vec![false; n];
        let mut pre = vec![false; n];
        let mut gone = vec![false; n];
        for v in &self.forced_in {
            forced[v.index()] = true;
        }
        for v in &self.pre_dominated {
            pre[v.index()] = true;
        }
        for v in &self.deleted {
            gone[v.index()] = true;
        }
        (forced, pre, gone)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationCertificate {
    pub gamma: usize,
    /// Sorted ascending.
    pub witness: Vec<VertexId>,
    pub instance: DominationInstance,
    pub stats: SolveStats,
}

/// The certificate as written by the command line front end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub gamma: usize,
    pub witness: Vec<VertexId>,
    pub nodes_explored: u64,
    pub millis: u64,
}

impl DominationCertificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            gamma: self.gamma,
            witness: self.witness.clone(),
            nodes_explored: self.stats.nodes_explored,
            millis: self.stats.elapsed.as_millis() as u64,
        }
    }

    /// Re-checks feasibility of the witness against the instance definition.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.witness.len() != self.gamma {
            return Err(format!(
                "witness has {} vertices but gamma is {}",
                self.witness.len(),
                self.gamma
            ));
        }
        validate_witness(&self.instance, &self.witness)
    }
}

/// Independent feasibility check: walks the adjacency lists directly.
pub fn validate_witness(
    inst: &DominationInstance,
    witness: &[VertexId],
) -> std::result::Result<(), String> {
    let g = &inst.graph;
    let n = g.order();
    for w in witness {
        if w.0 == 0 || w.0 > n {
            return Err(format!("witness vertex {w} out of range"));
        }
        if inst.deleted.contains(w) {
            return Err(format!("witness vertex {w} is deleted"));
        }
    }
    for f in &inst.forced_in {
        if !witness.contains(f) {
            return Err(format!("forced vertex {f} missing from witness"));
        }
    }
    let mut dominated = vec![false; n + 1];
    for &w in witness {
        dominated[w.0] = true;
        for u in g.neighbors(w) {
            if !inst.deleted.contains(&u) {
                dominated[u.0] = true;
            }
        }
    }
    for v in g.vertices() {
        if inst.deleted.contains(&v) || inst.pre_dominated.contains(&v) {
            continue;
        }
        if !dominated[v.0] {
            return Err(format!("vertex {v} is not dominated"));
        }
    }
    Ok(())
}

/// True when `set` dominates every vertex of `g` outside `assumed`.
pub fn dominates(g: &Graph, set: &[VertexId], assumed: &[VertexId]) -> bool {
    let inst = DominationInstance::new(g.clone()).pre_dominated(assumed.iter().copied());
    validate_witness(&inst, set).is_ok()
}

pub fn solve(inst: &DominationInstance) -> Result<DominationCertificate> {
    solve_with_cap(inst, DEFAULT_CAP)
}

pub fn solve_with_cap(inst: &DominationInstance, cap: usize) -> Result<DominationCertificate> {
    let cap = cap.min(CAPACITY);
    let n = inst.graph.order();
    if n > cap {
        return Err(Error::OverCap { n, cap });
    }
    inst.check()?;
    let start = Instant::now();
    let (forced, pre, gone) = inst.masks();

    let mut solver = Search::new(&inst.graph, &gone);
    let mut universe = VertexSet::EMPTY;
    for v in 0..n {
        if !gone[v] && !pre[v] {
            universe.insert(v);
        }
    }
    let mut witness: Vec<usize> = Vec::new();
    for v in 0..n {
        if forced[v] {
            universe = universe.difference(&solver.cand[v]);
            witness.push(v);
        }
    }
    if let Some(v) = universe.iter().find(|&v| solver.cand[v].is_empty()) {
        return Err(Error::Infeasible(v + 1));
    }

    let greedy = solver.greedy(universe);
    match solver.search(universe, greedy + 1) {
        Outcome::Found(_) => {}
        Outcome::Bound(b) => unreachable!("greedy cover of size {greedy} exists, search bound {b}"),
    }
    solver.reconstruct(universe, &mut witness);
    witness.sort_unstable();
    let witness: Vec<VertexId> = witness.into_iter().map(VertexId::from_index).collect();

    Ok(DominationCertificate {
        gamma: witness.len(),
        witness,
        instance: inst.clone(),
        stats: SolveStats {
            nodes_explored: solver.nodes,
            elapsed: start.elapsed(),
        },
    })
}

/// `γ(G)`.
pub fn gamma(g: &Graph) -> Result<usize> {
    Ok(solve(&DominationInstance::new(g.clone()))?.gamma)
}

/// `γ(G|S)`: vertices in `assumed` need not be dominated.
pub fn gamma_given(g: &Graph, assumed: &[VertexId]) -> Result<usize> {
    Ok(solve(&DominationInstance::new(g.clone()).pre_dominated(assumed.iter().copied()))?.gamma)
}

/// Exhaustive minimum over subsets by increasing size. Independent of the
/// branch-and-bound path; used as a test oracle.
pub fn brute_force_gamma(g: &Graph, cap: usize) -> Result<usize> {
    brute_force_solve(&DominationInstance::new(g.clone()), cap)
}

pub fn brute_force_solve(inst: &DominationInstance, cap: usize) -> Result<usize> {
    let cap = cap.min(BRUTE_FORCE_MAX);
    let n = inst.graph.order();
    if n > cap {
        return Err(Error::OverCap { n, cap });
    }
    inst.check()?;
    let (forced, pre, gone) = inst.masks();
    let mut closed = vec![0u32; n];
    for v in inst.graph.vertices() {
        let i = v.index();
        if gone[i] {
            continue;
        }
        closed[i] |= 1 << i;
        for u in inst.graph.neighbors(v) {
            if !gone[u.index()] {
                closed[i] |= 1 << u.index();
            }
        }
    }
    let need: u32 = (0..n)
        .filter(|&i| !gone[i] && !pre[i])
        .fold(0, |m, i| m | 1 << i);
    let base: u32 = (0..n).filter(|&i| forced[i]).fold(0, |m, i| m | closed[i]);
    let pool: Vec<usize> = (0..n).filter(|&i| !gone[i] && !forced[i]).collect();
    let fixed = forced.iter().filter(|&&f| f).count();

    for k in 0..=pool.len() {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let cover = idx.iter().fold(base, |m, &j| m | closed[pool[j]]);
            if cover & need == need {
                return Ok(fixed + k);
            }
            // next k-combination of pool indices in lexicographic order
            let mut i = k;
            while i > 0 && idx[i - 1] == pool.len() - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    let v = (0..n).find(|&i| need >> i & 1 == 1).unwrap_or(0);
    Err(Error::Infeasible(v + 1))
}

// ------------------------------------------------------------ search core

#[derive(Debug, Clone, Copy)]
enum Entry {
    /// Optimum cost of the residual universe; `pick` is the first chosen
    /// vertex, or `None` when the universe split into components.
    Exact {
        cost: u32,
        pick: Option<u32>,
    },
    AtLeast(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    /// The exact optimum (may still be `>=` the caller's bound when it came
    /// from the memo).
    Found(u32),
    /// The optimum is at least this value, which is `>=` the bound asked for.
    Bound(u32),
}

struct Search {
    /// Closed neighbourhood of each surviving vertex within the surviving
    /// graph; empty for deleted vertices.
    cand: Vec<VertexSet>,
    /// Vertices sharing a potential dominator with each vertex.
    reach: Vec<VertexSet>,
    /// Vertex order for the 2-packing bound: fewest dominators first.
    packing_order: Vec<usize>,
    active: VertexSet,
    memo: HashMap<VertexSet, Entry>,
    nodes: u64,
}

impl Search {
    fn new(g: &Graph, gone: &[bool]) -> Self {
        let n = g.order();
        let adj = g.adjacency();
        let mut cand = vec![VertexSet::EMPTY; n];
        let mut active = VertexSet::EMPTY;
        for v in 0..n {
            if gone[v] {
                continue;
            }
            active.insert(v);
            cand[v].insert(v);
            for &u in &adj[v] {
                if !gone[u] {
                    cand[v].insert(u);
                }
            }
        }
        let reach = (0..n)
            .map(|v| {
                cand[v].iter().fold(VertexSet::EMPTY, |mut acc, c| {
                    acc.union_with(&cand[c]);
                    acc
                })
            })
            .collect();
        let mut packing_order: Vec<usize> = active.iter().collect();
        packing_order.sort_by_key(|&v| (cand[v].len(), v));
        Search {
            cand,
            reach,
            packing_order,
            active,
            memo: HashMap::new(),
            nodes: 0,
        }
    }

    fn greedy(&self, mut universe: VertexSet) -> u32 {
        let mut picks = 0;
        while !universe.is_empty() {
            let best = self
                .active
                .iter()
                .max_by_key(|&c| {
                    (
                        self.cand[c].intersection_len(&universe),
                        std::cmp::Reverse(c),
                    )
                })
                .expect("non-empty universe has a dominator");
            universe = universe.difference(&self.cand[best]);
            picks += 1;
        }
        picks
    }

    fn lower_bound(&self, universe: &VertexSet) -> u32 {
        // Vertices with pairwise disjoint dominator sets each need their own
        // dominator.
        let mut used = VertexSet::EMPTY;
        let mut packing = 0;
        for &v in &self.packing_order {
            if universe.contains(v) && !self.cand[v].intersects(&used) {
                used.union_with(&self.cand[v]);
                packing += 1;
            }
        }
        let size = universe.len() as u32;
        let mut widest = 0;
        for v in universe.iter() {
            for c in self.cand[v].iter() {
                widest = widest.max(self.cand[c].intersection_len(universe) as u32);
            }
        }
        let coverage = if widest == 0 {
            0
        } else {
            size.div_ceil(widest)
        };
        packing.max(coverage)
    }

    fn components(&self, universe: &VertexSet) -> Vec<VertexSet> {
        let mut rest = *universe;
        let mut out = Vec::new();
        while let Some(seed) = rest.first() {
            let mut comp = VertexSet::EMPTY;
            comp.insert(seed);
            let mut frontier = comp;
            loop {
                let mut grown = VertexSet::EMPTY;
                for v in frontier.iter() {
                    grown.union_with(&self.reach[v]);
                }
                let fresh = grown.intersection(&rest).difference(&comp);
                if fresh.is_empty() {
                    break;
                }
                comp.union_with(&fresh);
                frontier = fresh;
            }
            rest = rest.difference(&comp);
            out.push(comp);
        }
        out
    }

    /// Picks the uncovered vertex with the fewest non-dominated dominators
    /// (ties: smallest index) and returns those dominators ascending.
    ///
    /// A dominator `c` of `v` is dropped when another dominator of `v` covers
    /// a superset of what `c` covers in the residual universe.
    fn branch_candidates(&self, universe: &VertexSet) -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        let mut cover = Vec::with_capacity(16);
        for v in universe.iter() {
            cover.clear();
            cover.extend(
                self.cand[v]
                    .iter()
                    .map(|c| (c, self.cand[c].intersection(universe))),
            );
            let kept: Vec<usize> = cover
                .iter()
                .filter(|(c, cov)| {
                    !cover
                        .iter()
                        .any(|(d, other)| d != c && cov.is_subset(other) && (cov != other || d < c))
                })
                .map(|(c, _)| *c)
                .collect();
            if best.as_ref().is_none_or(|b| kept.len() < b.len()) {
                let done = kept.len() <= 1;
                best = Some(kept);
                if done {
                    break;
                }
            }
        }
        best.expect("branching on a non-empty universe")
    }

    fn remember_bound(&mut self, universe: VertexSet, bound: u32) {
        let entry = self.memo.entry(universe).or_insert(Entry::AtLeast(bound));
        if let Entry::AtLeast(b) = entry {
            *b = (*b).max(bound);
        }
    }

    /// Finds the optimum of `universe` if it is below `ub`; otherwise proves
    /// a lower bound `>= ub`.
    fn search(&mut self, universe: VertexSet, ub: u32) -> Outcome {
        if universe.is_empty() {
            return Outcome::Found(0);
        }
        match self.memo.get(&universe) {
            Some(Entry::Exact { cost, .. }) => return Outcome::Found(*cost),
            Some(Entry::AtLeast(b)) if *b >= ub => return Outcome::Bound(*b),
            _ => {}
        }
        self.nodes += 1;

        let lb = self.lower_bound(&universe);
        if lb >= ub {
            self.remember_bound(universe, lb);
            return Outcome::Bound(lb);
        }

        let comps = self.components(&universe);
        if comps.len() > 1 {
            return self.search_components(universe, comps, ub);
        }

        let mut best = ub;
        let mut pick = None;
        let mut fail = u32::MAX;
        for c in self.branch_candidates(&universe) {
            let rest = universe.difference(&self.cand[c]);
            match self.search(rest, best - 1) {
                Outcome::Found(v) if v + 1 < best => {
                    best = v + 1;
                    pick = Some(c as u32);
                }
                Outcome::Found(v) | Outcome::Bound(v) => fail = fail.min(v + 1),
            }
            if best <= lb {
                break;
            }
        }
        match pick {
            Some(p) => {
                self.memo.insert(
                    universe,
                    Entry::Exact {
                        cost: best,
                        pick: Some(p),
                    },
                );
                Outcome::Found(best)
            }
            None => {
                let bound = fail.max(lb);
                self.remember_bound(universe, bound);
                Outcome::Bound(bound)
            }
        }
    }

    fn search_components(
        &mut self,
        universe: VertexSet,
        mut comps: Vec<VertexSet>,
        ub: u32,
    ) -> Outcome {
        comps.sort_by_key(|c| (c.len(), c.first()));
        let mut bounds: Vec<u32> = comps.iter().map(|c| self.lower_bound(c)).collect();
        let mut total: u32 = bounds.iter().sum();
        if total >= ub {
            self.remember_bound(universe, total);
            return Outcome::Bound(total);
        }
        for i in 0..comps.len() {
            let others = total - bounds[i];
            let r = self.search(comps[i], ub - others);
            let v = match r {
                Outcome::Found(v) | Outcome::Bound(v) => v,
            };
            total = others + v;
            bounds[i] = v;
            if total >= ub {
                self.remember_bound(universe, total);
                return Outcome::Bound(total);
            }
        }
        self.memo.insert(
            universe,
            Entry::Exact {
                cost: total,
                pick: None,
            },
        );
        Outcome::Found(total)
    }

    fn reconstruct(&self, universe: VertexSet, out: &mut Vec<usize>) {
        if universe.is_empty() {
            return;
        }
        match self.memo.get(&universe) {
            Some(Entry::Exact { pick: Some(p), .. }) => {
                let p = *p as usize;
                out.push(p);
                self.reconstruct(universe.difference(&self.cand[p]), out);
            }
            Some(Entry::Exact { pick: None, .. }) => {
                for comp in self.components(&universe) {
                    self.reconstruct(comp, out);
                }
            }
            other => unreachable!("no exact memo entry for an optimal residual: {other:?}"),
        }
    }
}
