//! Explicit objects from the cycle proofs: the class `ℋ_k` test, the
//! functions `f` used in the upper bounds, and layer-by-layer dominating
//! sets. Every built set is validated before it is returned.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::product::{FunctionAssignment, ProductVertex, SierpinskiProduct};
use crate::search::{self, cycle_distance, Mode, SearchConfig, SearchError};
use crate::solver::{self, validate_witness, DominationInstance};

// ------------------------------------------------------------ class H_k

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEvidence {
    pub vertex: usize,
    /// `γ(H - v)`.
    pub gamma_minus: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEvidence {
    pub x: usize,
    pub y: usize,
    /// Smallest dominating set of `H` containing both `x` and `y`.
    pub gamma_through: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HkReport {
    pub k: usize,
    pub gamma: usize,
    pub property_a: bool,
    pub vertex_evidence: Vec<VertexEvidence>,
    pub property_b: bool,
    pub pair_evidence: Vec<PairEvidence>,
    pub member: bool,
}

/// Tests membership of `h` in `ℋ_k`: `γ(H) = k + 1`, `γ(H - v) = k` for
/// every `v`, and every pair `{x, y}` (with `x = y` allowed) lies in some
/// `γ`-set.
pub fn check_hk(h: &Graph, k: usize) -> Result<HkReport> {
    let gamma = solver::gamma(h)?;
    let vertex_evidence: Vec<VertexEvidence> = h
        .vertices()
        .map(|v| {
            let inst = DominationInstance::new(h.clone()).deleted([v]);
            Ok(VertexEvidence {
                vertex: v.0,
                gamma_minus: solver::solve(&inst)?.gamma,
            })
        })
        .collect::<Result<_>>()?;
    let property_a = gamma == k + 1 && vertex_evidence.iter().all(|e| e.gamma_minus == k);

    let mut pair_evidence = Vec::new();
    for x in 1..=h.order() {
        for y in x..=h.order() {
            let inst = DominationInstance::new(h.clone()).forced_in([VertexId(x), VertexId(y)]);
            pair_evidence.push(PairEvidence {
                x,
                y,
                gamma_through: solver::solve(&inst)?.gamma,
            });
        }
    }
    let property_b = pair_evidence.iter().all(|e| e.gamma_through == gamma);

    Ok(HkReport {
        k,
        gamma,
        property_a,
        vertex_evidence,
        property_b,
        pair_evidence,
        member: property_a && property_b,
    })
}

// ------------------------------------------------------------ functions

pub fn f_constant(g: &Graph, h: &Graph, value: VertexId) -> Result<FunctionAssignment> {
    h.check_vertex(value)?;
    Ok(FunctionAssignment::constant(g.order(), value))
}

/// `f(g_i) = 1` when `i mod 4 ∈ {1, 2}`, otherwise 3.
pub fn f_3k1(n: usize) -> FunctionAssignment {
    let vals = (1..=n)
        .map(|i| if matches!(i % 4, 1 | 2) { 1 } else { 3 })
        .collect();
    FunctionAssignment::new(vals).expect("positive values")
}

/// `f(g_i)` is 1, 2 or 3 as `i mod 4` is 1, 2 or anything else.
pub fn f_3k2(n: usize) -> FunctionAssignment {
    let vals = (1..=n)
        .map(|i| match i % 4 {
            1 => 1,
            2 => 2,
            _ => 3,
        })
        .collect();
    FunctionAssignment::new(vals).expect("positive values")
}

/// The assignment on `C_18 -> C_7` whose product has domination number 36.
pub fn f_c18c7() -> FunctionAssignment {
    FunctionAssignment::new(vec![4, 2, 2, 4, 4, 2, 2, 7, 7, 5, 5, 3, 3, 1, 1, 6, 6, 4])
        .expect("positive values")
}

// ------------------------------------------------------------ layer plans

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LayerTag {
    /// A `γ`-set of `H_i - x_i`.
    #[serde(rename = "D_{i,1}")]
    D1,
    /// A `γ`-set of `H_i` containing `x_i` and `y_i`.
    #[serde(rename = "D_{i,2}")]
    D2,
    /// A `γ`-set of `H_i - y_i`.
    #[serde(rename = "D_{i,3}")]
    D3,
    #[serde(rename = "custom")]
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerChoice {
    pub layer: usize,
    pub tag: LayerTag,
    /// Short description of how the set was chosen.
    pub rule: &'static str,
    /// Fiber labels `h` of the chosen vertices `(g_i, h)`.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerSetPlan {
    pub family: &'static str,
    pub n: usize,
    pub k: usize,
    pub f: FunctionAssignment,
    pub layers: Vec<LayerChoice>,
    /// Vertices added on top of the layer sets.
    pub extra: Vec<ProductVertex>,
    /// The closed-form size the construction promises.
    pub expected_size: usize,
    /// Flat labels of the assembled set.
    pub dominating_set: Vec<VertexId>,
}

#[derive(Debug, Clone, Serialize)]
struct LayerJson {
    layer: usize,
    tag: LayerTag,
    rule: &'static str,
    vertices: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, Serialize)]
struct PlanJson<'a> {
    family: &'a str,
    n: usize,
    k: usize,
    f: Vec<usize>,
    layers: Vec<LayerJson>,
    extra: Vec<[usize; 2]>,
    size: usize,
    expected_size: usize,
    dominating_set: Vec<[usize; 2]>,
}

impl LayerSetPlan {
    pub fn size(&self) -> usize {
        self.dominating_set.len()
    }

    /// Layer sets and the assembled set in `(g, h)` coordinates.
    pub fn to_json(&self, m: usize) -> String {
        let coords = |v: VertexId| [v.index() / m + 1, v.index() % m + 1];
        let plan = PlanJson {
            family: self.family,
            n: self.n,
            k: self.k,
            f: self.f.as_labels(),
            layers: self
                .layers
                .iter()
                .map(|l| LayerJson {
                    layer: l.layer,
                    tag: l.tag,
                    rule: l.rule,
                    vertices: l.vertices.iter().map(|&h| [l.layer, h]).collect(),
                })
                .collect(),
            extra: self.extra.iter().map(|p| [p.g.0, p.h.0]).collect(),
            size: self.size(),
            expected_size: self.expected_size,
            dominating_set: self.dominating_set.iter().map(|&v| coords(v)).collect(),
        };
        serde_json::to_string_pretty(&plan).expect("plan serializes")
    }
}

/// A `γ`-set of the fiber with the given vertices removed or forced.
fn fiber_set(h: &Graph, deleted: &[VertexId], forced: &[VertexId]) -> Result<Vec<usize>> {
    let inst = DominationInstance::new(h.clone())
        .deleted(deleted.iter().copied())
        .forced_in(forced.iter().copied());
    Ok(solver::solve(&inst)?.witness.iter().map(|v| v.0).collect())
}

fn dedup(vs: &[VertexId]) -> Vec<VertexId> {
    let set: BTreeSet<VertexId> = vs.iter().copied().collect();
    set.into_iter().collect()
}

fn connectors(p: &SierpinskiProduct, i: usize) -> Result<(VertexId, VertexId)> {
    let (y, x) = p.connecting_vertices(i)?;
    Ok((y.h, x.h))
}

/// Checks a tagged layer set against its definition, including minimality.
fn check_tag(h: &Graph, choice: &LayerChoice, y: VertexId, x: VertexId) -> Result<()> {
    let set: Vec<VertexId> = choice.vertices.iter().map(|&v| VertexId(v)).collect();
    let (deleted, forced): (Vec<VertexId>, Vec<VertexId>) = match choice.tag {
        LayerTag::D1 => (vec![x], vec![]),
        LayerTag::D2 => (vec![], dedup(&[x, y])),
        LayerTag::D3 => (vec![y], vec![]),
        LayerTag::Custom => return Ok(()),
    };
    let inst = DominationInstance::new(h.clone())
        .deleted(deleted.iter().copied())
        .forced_in(forced.iter().copied());
    let optimum = solver::solve(&inst)?.gamma;
    validate_witness(&inst, &set).map_err(|e| {
        Error::Construction(format!("layer {} ({:?}): {e}", choice.layer, choice.tag))
    })?;
    if set.len() != optimum {
        return Err(Error::Construction(format!(
            "layer {} ({:?}) has {} vertices, optimum is {optimum}",
            choice.layer,
            choice.tag,
            set.len()
        )));
    }
    Ok(())
}

fn assemble(
    family: &'static str,
    product: &SierpinskiProduct,
    k: usize,
    layers: Vec<LayerChoice>,
    extra: Vec<ProductVertex>,
    expected_size: usize,
) -> Result<LayerSetPlan> {
    let n = product.layer_count();
    for choice in &layers {
        let (y, x) = connectors(product, choice.layer)?;
        check_tag(product.fiber(), choice, y, x)?;
    }
    let mut union = BTreeSet::new();
    for choice in &layers {
        for &h in &choice.vertices {
            union.insert(product.flat(ProductVertex::new(choice.layer, h)));
        }
    }
    for &v in &extra {
        union.insert(product.flat(v));
    }
    let plan = LayerSetPlan {
        family,
        n,
        k,
        f: product.function().clone(),
        layers,
        extra,
        expected_size,
        dominating_set: union.into_iter().collect(),
    };
    let inst = DominationInstance::new(product.graph().clone());
    validate_witness(&inst, &plan.dominating_set).map_err(|e| {
        Error::Construction(format!(
            "{family} set for n={n}, k={k} does not dominate: {e}"
        ))
    })?;
    if plan.size() != expected_size {
        return Err(Error::Construction(format!(
            "{family} set for n={n}, k={k} has {} vertices, expected {expected_size}",
            plan.size()
        )));
    }
    Ok(plan)
}

/// The set from the upper bound on `Γ_S(C_n, H)` for `H ∈ ℋ_k` and any `f`.
/// Layer `i` takes `D_{i,1}`, `D_{i,2}` or `D_{i,3}` by `i mod 3`, with
/// `D_{n,2}` when `n ≡ 1 (mod 3)`. Size `kn + ⌈n/3⌉`.
pub fn build_claim2_set(
    g: &Graph,
    h: &Graph,
    k: usize,
    f: &FunctionAssignment,
) -> Result<LayerSetPlan> {
    if !g.is_labelled_cycle() {
        return Err(Error::Precondition(
            "base graph must be a labelled cycle".into(),
        ));
    }
    let report = check_hk(h, k)?;
    if !report.member {
        return Err(Error::Precondition(format!(
            "second factor is not in class H_{k}"
        )));
    }
    let product = SierpinskiProduct::new(g, h, f)?;
    let n = g.order();
    let mut layers = Vec::with_capacity(n);
    for i in 1..=n {
        let (y, x) = connectors(&product, i)?;
        let (tag, vertices) = match i % 3 {
            1 if i != n => (LayerTag::D1, fiber_set(h, &[x], &[])?),
            1 | 2 => (LayerTag::D2, fiber_set(h, &[], &dedup(&[x, y]))?),
            _ => (LayerTag::D3, fiber_set(h, &[y], &[])?),
        };
        layers.push(LayerChoice {
            layer: i,
            tag,
            rule: match tag {
                LayerTag::D1 => "gamma-set of H_i - x_i",
                LayerTag::D2 => "gamma-set of H_i through x_i and y_i",
                _ => "gamma-set of H_i - y_i",
            },
            vertices,
        });
    }
    assemble(
        "claim2",
        &product,
        k,
        layers,
        Vec::new(),
        k * n + n.div_ceil(3),
    )
}

/// The set for `C_n ⊗_f C_{3k+1}` with `f = f_3k1(n)`: in every layer the
/// vertices at distance `≡ 2 (mod 3)` from `y_i`, plus `x_1` when
/// `n ≡ 1, 2 (mod 4)` or `x_n` when `n ≡ 3 (mod 4)`.
/// Size `kn + ⌈n/4⌉ - ⌊n/4⌋`.
pub fn build_3k1_set(n: usize, k: usize) -> Result<LayerSetPlan> {
    if n < 3 || k == 0 {
        return Err(Error::Precondition(format!(
            "need n >= 3 and k >= 1 (got n={n}, k={k})"
        )));
    }
    let m = 3 * k + 1;
    let g = Graph::cycle(n)?;
    let h = Graph::cycle(m)?;
    let product = SierpinskiProduct::new(&g, &h, &f_3k1(n))?;
    let mut layers = Vec::with_capacity(n);
    for i in 1..=n {
        let (y, _) = connectors(&product, i)?;
        // offsets 2, 5, ..., 3k - 1 from y; both directions agree mod 3
        let mut vertices: Vec<usize> = (0..k).map(|t| (y.0 - 1 + 3 * t + 2) % m + 1).collect();
        vertices.sort_unstable();
        layers.push(LayerChoice {
            layer: i,
            tag: LayerTag::D3,
            rule: "vertices at distance 2 mod 3 from y_i",
            vertices,
        });
    }
    let extra = match n % 4 {
        0 => vec![],
        1 | 2 => vec![product.connecting_vertices(1)?.1],
        _ => vec![product.connecting_vertices(n)?.1],
    };
    let expected = k * n + n.div_ceil(4) - n / 4;
    assemble("3k1", &product, k, layers, extra, expected)
}

/// The set for `C_n ⊗_f C_{3k+2}` with `f = f_3k2(n)`. Layers where `x_i`
/// and `y_i` are adjacent take a `γ`-set of `H_i - {x_i, y_i}`; layers
/// where they are at distance 2 take a `γ`-set through both. The trailing
/// layers for `n ≢ 0 (mod 4)` follow a case split on n mod 4.
/// Size `kn + ⌊n/2⌋`, plus one for odd `n`.
pub fn build_3k2_set(n: usize, k: usize) -> Result<LayerSetPlan> {
    if n < 3 || k == 0 {
        return Err(Error::Precondition(format!(
            "need n >= 3 and k >= 1 (got n={n}, k={k})"
        )));
    }
    let m = 3 * k + 2;
    let g = Graph::cycle(n)?;
    let h = Graph::cycle(m)?;
    let product = SierpinskiProduct::new(&g, &h, &f_3k2(n))?;
    let ell = n / 4;

    #[derive(Clone, Copy, PartialEq)]
    enum Rule {
        Remnant,
        Through,
        ContainsX,
    }
    let rule_of = |i: usize| -> Rule {
        if i <= 4 * ell {
            return if i % 2 == 1 {
                Rule::Remnant
            } else {
                Rule::Through
            };
        }
        match (n % 4, i - 4 * ell) {
            (2, 1) | (3, 1) => Rule::Remnant,
            _ => Rule::ContainsX,
        }
    };

    let mut layers = Vec::with_capacity(n);
    for i in 1..=n {
        let (y, x) = connectors(&product, i)?;
        let choice = match rule_of(i) {
            Rule::Remnant => LayerChoice {
                layer: i,
                tag: LayerTag::Custom,
                rule: "gamma-set of H_i - {x_i, y_i}",
                vertices: fiber_set(&h, &dedup(&[x, y]), &[])?,
            },
            Rule::Through => LayerChoice {
                layer: i,
                tag: LayerTag::D2,
                rule: "gamma-set of H_i through x_i and y_i",
                vertices: fiber_set(&h, &[], &dedup(&[x, y]))?,
            },
            Rule::ContainsX => {
                // When the previous layer leaves y_i to be covered from here,
                // the set must reach it too (it coincides with x_i in the
                // n = 4l + 2 case).
                let prev = if i == 1 { n } else { i - 1 };
                let mut forced = vec![x];
                if rule_of(prev) == Rule::Remnant {
                    forced.push(y);
                }
                LayerChoice {
                    layer: i,
                    tag: LayerTag::Custom,
                    rule: "gamma-set of H_i containing x_i",
                    vertices: fiber_set(&h, &[], &dedup(&forced))?,
                }
            }
        };
        layers.push(choice);
    }
    let expected = k * n + n / 2 + n % 2;
    assemble("3k2", &product, k, layers, Vec::new(), expected)
}

// ------------------------------------------------------------ upper bound

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquUpperEvidence {
    pub gamma_h: usize,
    /// `γ(H|x)` for every `x`.
    pub gamma_given: Vec<usize>,
    pub exists: bool,
    /// `Γ_S(G, H)` when the search fit in its budget.
    pub upper_sierpinski: Option<usize>,
    pub n_gamma: usize,
    pub agrees: Option<bool>,
}

/// Whether some `x` has `γ(H|x) = γ(H)`, cross-checked against
/// `Γ_S(G, H) = n(G) γ(H)` by search when the budget allows.
pub fn check_equ_upper(g: &Graph, h: &Graph, cfg: &SearchConfig) -> Result<EquUpperEvidence> {
    let gamma_h = solver::gamma(h)?;
    let gamma_given = h
        .vertices()
        .map(|x| solver::gamma_given(h, &[x]))
        .collect::<Result<Vec<_>>>()?;
    let exists = gamma_given.contains(&gamma_h);
    let n_gamma = g.order() * gamma_h;
    let upper_sierpinski = match search::sierpinski_gamma(g, h, Mode::Max, cfg) {
        Ok(outcome) => Some(outcome.value),
        Err(SearchError::Budget(_)) => None,
        Err(SearchError::Core(e)) => return Err(e),
    };
    Ok(EquUpperEvidence {
        gamma_h,
        gamma_given,
        exists,
        upper_sierpinski,
        n_gamma,
        agrees: upper_sierpinski.map(|v| (v == n_gamma) == exists),
    })
}

// ------------------------------------------------------------ layer census

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LayerPattern {
    /// `d(x_i, y_i) ≡ 1 (mod 3)`, `|D_i| = k`, both connectors covered from outside.
    Adjacent,
    /// `d(x_i, y_i) ≢ 1 (mod 3)` and `|D_i| = k + 1`.
    Full,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerCensus {
    pub layer: usize,
    pub distance: usize,
    pub size: usize,
    pub x_covered_inside: bool,
    pub y_covered_inside: bool,
    pub pattern: LayerPattern,
}

/// Solves `C_n ⊗_f C_{3k+2}` and classifies each layer of the optimal set
/// by the two patterns the lower-bound argument describes. Layers that fit
/// neither are reported, not corrected.
pub fn layer_census_3k2(k: usize, f: &FunctionAssignment) -> Result<Vec<LayerCensus>> {
    let n = f.domain_size();
    let m = 3 * k + 2;
    let g = Graph::cycle(n)?;
    let h = Graph::cycle(m)?;
    let product = SierpinskiProduct::new(&g, &h, f)?;
    let cert = solver::solve(&DominationInstance::new(product.graph().clone()))?;
    let chosen: BTreeSet<VertexId> = cert.witness.iter().copied().collect();
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let (y, x) = connectors(&product, i)?;
        let inside: Vec<VertexId> = h
            .vertices()
            .filter(|&v| {
                chosen.contains(&product.flat(ProductVertex {
                    g: VertexId(i),
                    h: v,
                }))
            })
            .collect();
        let covered =
            |t: VertexId| inside.contains(&t) || h.neighbors(t).any(|u| inside.contains(&u));
        let distance = cycle_distance(x.0, y.0, m);
        let (xc, yc) = (covered(x), covered(y));
        let pattern = if distance % 3 == 1 && inside.len() == k && !xc && !yc {
            LayerPattern::Adjacent
        } else if distance % 3 != 1 && inside.len() == k + 1 {
            LayerPattern::Full
        } else {
            LayerPattern::Neither
        };
        rows.push(LayerCensus {
            layer: i,
            distance,
            size: inside.len(),
            x_covered_inside: xc,
            y_covered_inside: yc,
            pattern,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_functions() {
        assert_eq!(f_3k1(8).as_labels(), vec![1, 1, 3, 3, 1, 1, 3, 3]);
        assert_eq!(f_3k2(8).as_labels(), vec![1, 2, 3, 3, 1, 2, 3, 3]);
        let f = f_c18c7();
        assert_eq!(f.domain_size(), 18);
        assert_eq!(f.get(VertexId(8)), VertexId(7));
        assert_eq!(f.get(VertexId(14)), VertexId(1));
        assert_eq!(f.get(VertexId(16)), VertexId(6));
        for i in [1, 4, 5, 18] {
            assert_eq!(f.get(VertexId(i)), VertexId(4));
        }
    }

    #[test]
    fn constant_function() {
        let g = Graph::cycle(4).unwrap();
        let h = Graph::cycle(7).unwrap();
        assert_eq!(
            f_constant(&g, &h, VertexId(1)).unwrap().as_labels(),
            vec![1; 4]
        );
        assert!(f_constant(&g, &h, VertexId(8)).is_err());
    }

    #[test]
    fn hk_members() {
        assert!(check_hk(&Graph::cycle(4).unwrap(), 1).unwrap().member);
        assert!(check_hk(&Graph::cycle(7).unwrap(), 2).unwrap().member);
        assert!(
            check_hk(&Graph::circulant(11, &[1, 2]).unwrap(), 2)
                .unwrap()
                .member
        );
        let c8 = Graph::cycle(8).unwrap();
        for k in 1..=3 {
            let r = check_hk(&c8, k).unwrap();
            assert!(!r.member);
            assert_eq!(r.gamma, 3);
            assert!(r.vertex_evidence.iter().all(|e| e.gamma_minus == 3));
        }
    }

    #[test]
    fn claim2_examples() {
        let c4 = Graph::cycle(4).unwrap();
        for n in [3usize, 4] {
            let g = Graph::cycle(n).unwrap();
            let f = f_constant(&g, &c4, VertexId(1)).unwrap();
            let plan = build_claim2_set(&g, &c4, 1, &f).unwrap();
            assert_eq!(plan.size(), n + n.div_ceil(3));
        }
        let g = Graph::cycle(4).unwrap();
        let plan =
            build_claim2_set(&g, &c4, 1, &f_constant(&g, &c4, VertexId(1)).unwrap()).unwrap();
        assert_eq!(plan.layers[3].tag, LayerTag::D2);
        assert!(build_claim2_set(
            &g,
            &Graph::cycle(5).unwrap(),
            1,
            &FunctionAssignment::constant(4, VertexId(1))
        )
        .is_err());
    }

    #[test]
    fn mod4_examples() {
        assert_eq!(build_3k1_set(4, 1).unwrap().size(), 4);
        assert_eq!(build_3k1_set(6, 1).unwrap().size(), 7);
        assert_eq!(build_3k1_set(7, 2).unwrap().size(), 15);
        assert_eq!(build_3k2_set(4, 1).unwrap().size(), 6);
        assert_eq!(build_3k2_set(5, 1).unwrap().size(), 8);
        assert_eq!(build_3k2_set(7, 1).unwrap().size(), 11);
    }

    #[test]
    fn plan_json_uses_coordinates() {
        let plan = build_3k1_set(4, 1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&plan.to_json(4)).unwrap();
        assert_eq!(v["size"], 4);
        assert_eq!(v["layers"][0]["tag"], "D_{i,3}");
        assert_eq!(v["layers"][0]["vertices"][0][0], 1);
    }
}
