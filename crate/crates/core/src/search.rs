//! Minimum and maximum of `γ(G ⊗_f H)` over all functions `f ∈ H^G`.
//!
//! Three enumeration strategies are available:
//!
//! * `exhaustive`: every one of the `n(H)^n(G)` functions.
//! * `orbit-reduced`: `f(g_1)` is pinned to vertex 1. Valid when `H` is
//!   vertex-transitive, because composing `f` with an automorphism of `H`
//!   gives an isomorphic product. Recognised through the labelling: `H` must
//!   be invariant under `h -> h mod* n + 1` (cycles, complete graphs and
//!   circulants).
//! * `distance-sequence`: for `C_n ⊗ C_m` the product is determined up to
//!   isomorphism by the cyclic sequence `d_i = d(y_i, x_i)` taken up to
//!   rotation and reflection, so only one realizing function per class of
//!   sequences is evaluated.
//!
//! Candidates are scored in parallel; the fold keeps the best value and,
//! among equal values, the lexicographically smallest function, so the
//! result does not depend on scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{mod_star, Graph, VertexId};
use crate::product::{FunctionAssignment, SierpinskiProduct};
use crate::solver::{self, DominationInstance, DEFAULT_CAP};

pub const DEFAULT_EXHAUSTIVE_BUDGET: u64 = 2_000_000;
pub const DEFAULT_DISTANCE_BUDGET: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Auto,
    Exhaustive,
    OrbitReduced,
    DistanceSequence,
}

impl Strategy {
    pub fn default_budget(self) -> u64 {
        match self {
            Strategy::DistanceSequence => DEFAULT_DISTANCE_BUDGET,
            _ => DEFAULT_EXHAUSTIVE_BUDGET,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Exhaustive => "exhaustive",
            Strategy::OrbitReduced => "orbit-reduced",
            Strategy::DistanceSequence => "distance-sequence",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "exhaustive" => Ok(Strategy::Exhaustive),
            "orbit-reduced" | "orbit" => Ok(Strategy::OrbitReduced),
            "distance-sequence" | "distance" => Ok(Strategy::DistanceSequence),
            other => Err(Error::Unsupported(format!("unknown strategy `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub strategy: Strategy,
    /// Maximum number of solver calls; `None` uses the strategy default.
    pub budget: Option<u64>,
    /// Worker threads; 0 lets rayon decide.
    pub workers: usize,
    /// Largest product order handed to the solver.
    pub cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            strategy: Strategy::Auto,
            budget: None,
            workers: 0,
            cap: DEFAULT_CAP,
        }
    }
}

impl SearchConfig {
    pub fn with_strategy(strategy: Strategy) -> Self {
        SearchConfig {
            strategy,
            ..SearchConfig::default()
        }
    }
}

/// Which element of a two-element value set was attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Attained {
    Lower,
    Upper,
    /// The set has a single element.
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoValueResolution {
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub allowed: Vec<usize>,
    pub attained: Attained,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub mode: Mode,
    pub value: usize,
    pub witness_f: FunctionAssignment,
    pub strategy: Strategy,
    pub candidates_evaluated: u64,
    pub two_value_resolution: Option<TwoValueResolution>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcomeJson {
    pub mode: Mode,
    pub value: usize,
    pub witness_f: Vec<usize>,
    pub strategy: Strategy,
    pub candidates: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub two_value_resolution: Option<TwoValueResolution>,
}

impl SearchOutcome {
    pub fn to_json(&self) -> SearchOutcomeJson {
        SearchOutcomeJson {
            mode: self.mode,
            value: self.value,
            witness_f: self.witness_f.as_labels(),
            strategy: self.strategy,
            candidates: self.candidates_evaluated,
            two_value_resolution: self.two_value_resolution.clone(),
        }
    }
}

/// A search stopped by its budget. Carries the best values seen so far,
/// which are bounds, not exact optima.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("budget of {budget} solver calls exhausted ({total} candidates needed); partial result is not exact")]
pub struct BudgetExceeded {
    pub budget: u64,
    /// Candidate count, or a lower bound on it when enumeration was cut off.
    pub total: u64,
    pub partial_min: Option<SearchOutcome>,
    pub partial_max: Option<SearchOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error(transparent)]
    Budget(Box<BudgetExceeded>),
    #[error(transparent)]
    Core(#[from] Error),
}

// ------------------------------------------------------------ formulas

/// The value set the cycle theorems give for `γ_S(C_n, C_{3k+p})`.
pub fn lower_value_set(n: usize, k: usize, p: usize) -> Vec<usize> {
    match p {
        0 => vec![k * n],
        1 => vec![k * n, k * n + 1],
        2 => vec![k * n + n / 2, k * n + n / 2 + 1],
        _ => panic!("p must be 0, 1 or 2"),
    }
}

/// The value the cycle theorems pin `γ_S(C_n, C_{3k+p})` to, where they do:
/// always for `p = 0`, and for `n ≡ 0 (mod 4)` otherwise.
pub fn lower_value_exact(n: usize, k: usize, p: usize) -> Option<usize> {
    (p == 0 || n.is_multiple_of(4)).then(|| lower_value_set(n, k, p)[0])
}

/// `Γ_S(C_n, C_{3k+p})`.
pub fn upper_value(n: usize, k: usize, p: usize) -> usize {
    match p {
        0 => k * n,
        1 => k * n + n.div_ceil(3),
        2 => (k + 1) * n,
        _ => panic!("p must be 0, 1 or 2"),
    }
}

// ------------------------------------------------------------ distances

/// Distance between two vertices of the labelled cycle `C_m`.
pub fn cycle_distance(a: usize, b: usize, m: usize) -> usize {
    let d = a.abs_diff(b) % m;
    d.min(m - d)
}

/// `d_i = d_{C_m}(f(g_{i-1}), f(g_{i+1}))` for `i = 1..=n`.
pub fn distance_sequence_of(f: &FunctionAssignment, m: usize) -> Vec<usize> {
    let n = f.domain_size();
    (1..=n as i64)
        .map(|i| {
            let prev = f.get(VertexId(mod_star(i - 1, n))).0;
            let next = f.get(VertexId(mod_star(i + 1, n))).0;
            cycle_distance(prev, next, m)
        })
        .collect()
}

fn min_rotation(seq: &[usize]) -> Vec<usize> {
    let n = seq.len();
    (0..n)
        .map(|r| {
            seq[r..]
                .iter()
                .chain(&seq[..r])
                .copied()
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap_or_default()
}

/// Lexicographically smallest rotation or reflection.
pub fn canonical_form(seq: &[usize]) -> Vec<usize> {
    let mut rev = seq.to_vec();
    rev.reverse();
    min_rotation(seq).min(min_rotation(&rev))
}

/// A class of cyclic distance sequences together with one function that
/// realizes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceSequence {
    /// The canonical (lexicographically minimal) representative.
    pub seq: Vec<usize>,
    pub realizing: FunctionAssignment,
}

/// Finds `f: V(C_n) -> V(C_m)` whose distance sequence is `seq`, if any.
///
/// `d_i` forces `f(g_{i+1}) = f(g_{i-1}) ± d_i (mod m)`. Stepping by two
/// around `C_n` gives one closed chain for odd `n` and two for even `n`;
/// the sequence is realizable iff each chain admits signs with signed sum
/// `≡ 0 (mod m)`. Signs are found by a reachability table over residues,
/// preferring `+` when both work.
pub fn realize(seq: &[usize], m: usize) -> Option<FunctionAssignment> {
    let n = seq.len();
    if n < 3 || m < 3 || seq.iter().any(|&d| d > m / 2) {
        return None;
    }
    let starts: &[usize] = if n % 2 == 1 { &[1] } else { &[1, 2] };
    let mut values = vec![0usize; n];
    for &start in starts {
        let mut positions = vec![start];
        let mut steps = Vec::new();
        let mut p = start;
        loop {
            steps.push(seq[mod_star(p as i64 + 1, n) - 1]);
            p = mod_star(p as i64 + 2, n);
            if p == start {
                break;
            }
            positions.push(p);
        }
        // reach[t][r]: residue r reachable after t steps
        let mut reach = vec![vec![false; m]; steps.len() + 1];
        reach[0][0] = true;
        for (t, &d) in steps.iter().enumerate() {
            for r in 0..m {
                if reach[t][r] {
                    reach[t + 1][(r + d) % m] = true;
                    reach[t + 1][(r + m - d) % m] = true;
                }
            }
        }
        if !reach[steps.len()][0] {
            return None;
        }
        let mut signs = vec![1i64; steps.len()];
        let mut r = 0;
        for t in (0..steps.len()).rev() {
            let d = steps[t];
            // residue before step t, trying `+` first
            let plus = (r + m - d) % m;
            if reach[t][plus] {
                signs[t] = 1;
                r = plus;
            } else {
                signs[t] = -1;
                r = (r + d) % m;
            }
        }
        let mut cur = 0i64;
        for (idx, &pos) in positions.iter().enumerate() {
            values[pos - 1] = cur as usize;
            cur = (cur + signs[idx] * steps[idx] as i64).rem_euclid(m as i64);
        }
    }
    Some(
        FunctionAssignment::new(values.into_iter().map(|v| v + 1).collect())
            .expect("values are positive"),
    )
}

/// Iterates canonical cyclic sequences over `0..k` of length `n`
/// (necklaces by the FKM rule, then filtered to bracelet representatives).
struct Bracelets {
    n: usize,
    k: usize,
    a: Vec<usize>,
    period: usize,
    done: bool,
}

impl Bracelets {
    fn new(n: usize, k: usize) -> Self {
        Bracelets {
            n,
            k,
            a: vec![0; n + 1],
            period: 1,
            done: n == 0 || k == 0,
        }
    }

    fn advance(&mut self) {
        let mut i = self.n;
        while i > 0 && self.a[i] == self.k - 1 {
            i -= 1;
        }
        if i == 0 {
            self.done = true;
            return;
        }
        self.a[i] += 1;
        for j in i + 1..=self.n {
            self.a[j] = self.a[j - i];
        }
        self.period = i;
    }
}

impl Iterator for Bracelets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        while !self.done {
            let emit = self.n.is_multiple_of(self.period);
            let current = self.a[1..].to_vec();
            self.advance();
            if emit {
                let mut rev = current.clone();
                rev.reverse();
                if current <= min_rotation(&rev) {
                    return Some(current);
                }
            }
        }
        None
    }
}

/// Every realizable class of distance sequences for `C_n ⊗ C_m`, once each,
/// in lexicographic order of the canonical representative.
pub fn enumerate_distance_sequences(n: usize, m: usize) -> impl Iterator<Item = DistanceSequence> {
    Bracelets::new(n, m / 2 + 1).filter_map(move |seq| {
        realize(&seq, m).map(|realizing| DistanceSequence { seq, realizing })
    })
}

// ------------------------------------------------------------ search

enum Candidates {
    /// Functions in lexicographic order; `pinned` fixes `f(g_1) = 1`.
    Odometer {
        n: usize,
        m: usize,
        pinned: bool,
        total: u64,
    },
    Listed(Vec<FunctionAssignment>),
}

impl Candidates {
    fn len(&self) -> u64 {
        match self {
            Candidates::Odometer { total, .. } => *total,
            Candidates::Listed(v) => v.len() as u64,
        }
    }

    fn get(&self, idx: u64) -> FunctionAssignment {
        match self {
            Candidates::Odometer { n, m, pinned, .. } => {
                let mut vals = vec![1usize; *n];
                let mut rest = idx;
                let free_from = usize::from(*pinned);
                for slot in (free_from..*n).rev() {
                    vals[slot] = (rest % *m as u64) as usize + 1;
                    rest /= *m as u64;
                }
                FunctionAssignment::new(vals).expect("positive values")
            }
            Candidates::Listed(v) => v[idx as usize].clone(),
        }
    }
}

fn resolve_strategy(g: &Graph, h: &Graph, requested: Strategy) -> Result<Strategy> {
    let cycles = g.is_labelled_cycle() && h.is_labelled_cycle();
    match requested {
        Strategy::Auto if cycles => Ok(Strategy::DistanceSequence),
        Strategy::Auto if h.is_labelled_circulant() => Ok(Strategy::OrbitReduced),
        Strategy::Auto => Ok(Strategy::Exhaustive),
        Strategy::DistanceSequence if !cycles => Err(Error::Unsupported(
            "distance-sequence search needs both factors to be labelled cycles".into(),
        )),
        Strategy::OrbitReduced if !h.is_labelled_circulant() => Err(Error::Unsupported(
            "orbit reduction needs a vertex-transitive (circulant-labelled) second factor".into(),
        )),
        s => Ok(s),
    }
}

#[derive(Debug, Clone)]
struct Best {
    min: Option<(usize, FunctionAssignment)>,
    max: Option<(usize, FunctionAssignment)>,
}

impl Best {
    fn empty() -> Self {
        Best {
            min: None,
            max: None,
        }
    }

    fn single(value: usize, f: FunctionAssignment) -> Self {
        Best {
            min: Some((value, f.clone())),
            max: Some((value, f)),
        }
    }

    fn merge(self, other: Best) -> Best {
        let min = match (self.min, other.min) {
            (Some(a), Some(b)) => Some(if (b.0, &b.1) < (a.0, &a.1) { b } else { a }),
            (a, b) => a.or(b),
        };
        let max = match (self.max, other.max) {
            (Some(a), Some(b)) => {
                let better = b.0 > a.0 || (b.0 == a.0 && b.1 < a.1);
                Some(if better { b } else { a })
            }
            (a, b) => a.or(b),
        };
        Best { min, max }
    }
}

/// Both extrema from one enumeration pass.
pub fn sierpinski_gamma_both(
    g: &Graph,
    h: &Graph,
    cfg: &SearchConfig,
) -> std::result::Result<(SearchOutcome, SearchOutcome), SearchError> {
    let strategy = resolve_strategy(g, h, cfg.strategy)?;
    let budget = cfg.budget.unwrap_or_else(|| strategy.default_budget());
    let n = g.order();
    let m = h.order();
    if n == 0 || m == 0 {
        return Err(Error::Unsupported("factors must be non-empty".into()).into());
    }
    if n * m > cfg.cap.min(DEFAULT_CAP) {
        return Err(Error::OverCap {
            n: n * m,
            cap: cfg.cap.min(DEFAULT_CAP),
        }
        .into());
    }

    let (candidates, total) = match strategy {
        Strategy::Exhaustive | Strategy::OrbitReduced => {
            let pinned = strategy == Strategy::OrbitReduced;
            let free = if pinned { n - 1 } else { n };
            let total = (m as u64).checked_pow(free as u32).unwrap_or(u64::MAX);
            (
                Candidates::Odometer {
                    n,
                    m,
                    pinned,
                    total,
                },
                total,
            )
        }
        Strategy::DistanceSequence => {
            let mut listed: Vec<FunctionAssignment> = Vec::new();
            let mut total = 0u64;
            for class in enumerate_distance_sequences(n, m) {
                total += 1;
                if total > budget {
                    break;
                }
                listed.push(class.realizing);
            }
            (Candidates::Listed(listed), total)
        }
        Strategy::Auto => unreachable!(),
    };
    let evaluate = total.min(budget).min(candidates.len());

    let gamma_h = solver::gamma(h)?;
    let upper = n * gamma_h;
    let lower = upper.saturating_sub(g.size());

    let score = |idx: u64| -> Result<Best> {
        let f = candidates.get(idx);
        let product = SierpinskiProduct::new(g, h, &f)?;
        let cert = solver::solve_with_cap(&DominationInstance::new(product.into_graph()), cfg.cap)?;
        if cert.gamma < lower || cert.gamma > upper {
            return Err(Error::TheoremViolation(format!(
                "gamma = {} for f = {f} lies outside [{lower}, {upper}]",
                cert.gamma
            )));
        }
        Ok(Best::single(cert.gamma, f))
    };
    let run = || -> Result<Best> {
        (0..evaluate)
            .into_par_iter()
            .map(score)
            .try_reduce(Best::empty, |a, b| Ok(a.merge(b)))
    };
    let best = if cfg.workers == 0 {
        run()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?
            .install(run)?
    };

    let outcome = |mode: Mode, pick: Option<(usize, FunctionAssignment)>| {
        pick.map(|(value, witness_f)| SearchOutcome {
            mode,
            value,
            witness_f,
            strategy,
            candidates_evaluated: evaluate,
            two_value_resolution: None,
        })
    };
    let min = outcome(Mode::Min, best.min);
    let max = outcome(Mode::Max, best.max);
    if total > budget {
        return Err(SearchError::Budget(Box::new(BudgetExceeded {
            budget,
            total,
            partial_min: min,
            partial_max: max,
        })));
    }
    Ok((
        min.expect("at least one candidate"),
        max.expect("at least one candidate"),
    ))
}

/// `γ_S(G, H)` for [`Mode::Min`], `Γ_S(G, H)` for [`Mode::Max`].
pub fn sierpinski_gamma(
    g: &Graph,
    h: &Graph,
    mode: Mode,
    cfg: &SearchConfig,
) -> std::result::Result<SearchOutcome, SearchError> {
    let (min, max) = sierpinski_gamma_both(g, h, cfg)?;
    Ok(match mode {
        Mode::Min => min,
        Mode::Max => max,
    })
}

/// Computes `γ_S(C_n, C_{3k+p})` and reports which element of the value set
/// the cycle theorems allow was attained. A value outside the set is a
/// [`Error::TheoremViolation`].
pub fn resolve_two_value(
    n: usize,
    k: usize,
    p: usize,
    cfg: &SearchConfig,
) -> std::result::Result<SearchOutcome, SearchError> {
    if p > 2 || k == 0 || n < 3 {
        return Err(Error::Precondition(format!(
            "need n >= 3, k >= 1, p in 0..=2 (got n={n}, k={k}, p={p})"
        ))
        .into());
    }
    let g = Graph::cycle(n)?;
    let h = Graph::cycle(3 * k + p)?;
    let mut outcome = sierpinski_gamma(&g, &h, Mode::Min, cfg)?;
    let allowed = lower_value_set(n, k, p);
    let attained = match allowed.iter().position(|&v| v == outcome.value) {
        Some(_) if allowed.len() == 1 => Attained::Exact,
        Some(0) => Attained::Lower,
        Some(_) => Attained::Upper,
        None => {
            return Err(Error::TheoremViolation(format!(
                "gamma_S(C_{n}, C_{}) = {} not in {allowed:?}",
                3 * k + p,
                outcome.value
            ))
            .into())
        }
    };
    if let Some(exact) = lower_value_exact(n, k, p) {
        if outcome.value != exact {
            return Err(Error::TheoremViolation(format!(
                "gamma_S(C_{n}, C_{}) = {} but n ≡ 0 (mod 4) pins it to {exact}",
                3 * k + p,
                outcome.value
            ))
            .into());
        }
    }
    outcome.two_value_resolution = Some(TwoValueResolution {
        n,
        k,
        p,
        allowed,
        attained,
    });
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_form(&[1, 0, 0]), vec![0, 0, 1]);
        assert_eq!(canonical_form(&[2, 1, 0, 0]), vec![0, 0, 1, 2]);
        // reflection joins 0012 and 0021
        assert_eq!(canonical_form(&[0, 0, 2, 1]), vec![0, 0, 1, 2]);
    }

    #[test]
    fn bracelets_of_length_three_over_two_symbols() {
        let all: Vec<_> = Bracelets::new(3, 2).collect();
        assert_eq!(
            all,
            vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]
        );
    }

    #[test]
    fn bracelet_counts() {
        // Bracelet counts B(n, k): B(4,2) = 6, B(5,3) = 39, B(6,2) = 13.
        assert_eq!(Bracelets::new(4, 2).count(), 6);
        assert_eq!(Bracelets::new(5, 3).count(), 39);
        assert_eq!(Bracelets::new(6, 2).count(), 13);
    }

    #[test]
    fn realizable_classes_for_triangles() {
        let seqs: Vec<_> = enumerate_distance_sequences(3, 3).map(|d| d.seq).collect();
        assert_eq!(seqs, vec![vec![0, 0, 0], vec![0, 1, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn constant_function_gives_zero_sequence() {
        let f = FunctionAssignment::constant(6, VertexId(4));
        assert_eq!(distance_sequence_of(&f, 7), vec![0; 6]);
        assert_eq!(
            realize(&[0; 6], 7).unwrap(),
            FunctionAssignment::constant(6, VertexId(1))
        );
    }

    #[test]
    fn realize_rejects_out_of_alphabet() {
        assert!(realize(&[0, 0, 3], 5).is_none());
        assert!(realize(&[0, 1], 5).is_none());
    }

    #[test]
    fn formulas() {
        assert_eq!(lower_value_set(4, 1, 2), vec![6, 7]);
        assert_eq!(lower_value_exact(4, 1, 1), Some(4));
        assert_eq!(lower_value_exact(5, 1, 1), None);
        assert_eq!(lower_value_exact(5, 1, 0), Some(5));
        assert_eq!(upper_value(3, 1, 1), 4);
        assert_eq!(upper_value(3, 1, 2), 6);
    }

    #[test]
    fn strategy_resolution() {
        let c4 = Graph::cycle(4).unwrap();
        let p4 = Graph::path(4).unwrap();
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(
            resolve_strategy(&c4, &c4, Strategy::Auto).unwrap(),
            Strategy::DistanceSequence
        );
        assert_eq!(
            resolve_strategy(&p4, &k4, Strategy::Auto).unwrap(),
            Strategy::OrbitReduced
        );
        assert_eq!(
            resolve_strategy(&c4, &p4, Strategy::Auto).unwrap(),
            Strategy::Exhaustive
        );
        assert!(resolve_strategy(&p4, &c4, Strategy::DistanceSequence).is_err());
        assert!(resolve_strategy(&c4, &p4, Strategy::OrbitReduced).is_err());
    }

    #[test]
    fn budget_exhaustion_is_partial() {
        let c4 = Graph::cycle(4).unwrap();
        let cfg = SearchConfig {
            strategy: Strategy::Exhaustive,
            budget: Some(10),
            ..SearchConfig::default()
        };
        match sierpinski_gamma(&c4, &c4, Mode::Min, &cfg) {
            Err(SearchError::Budget(b)) => {
                assert_eq!(b.total, 256);
                let partial = b.partial_min.unwrap();
                assert_eq!(partial.candidates_evaluated, 10);
                assert!(partial.value >= 4);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
