//! Theorem checks run as instance suites.
//!
//! Every check expands into independent instances (one row each), which
//! are evaluated on a worker pool and then sorted by `(n, k, p, label)`.
//! Expected values come from the closed forms in
//! `sierpdom_core::search` and `sierpdom_core::constructions`, never from
//! per-row literals.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use sierpdom_core::codec::to_graph6;
use sierpdom_core::constructions::{
    build_3k1_set, build_claim2_set, check_equ_upper, check_hk, f_3k1, f_3k2, f_c18c7, f_constant,
};
use sierpdom_core::search::{
    lower_value_exact, lower_value_set, sierpinski_gamma, sierpinski_gamma_both, upper_value,
    SearchConfig, SearchError, SearchOutcome,
};
use sierpdom_core::solver::{self, DEFAULT_CAP};
use sierpdom_core::{
    DominationInstance, FunctionAssignment, Graph, Mode, SierpinskiProduct, Strategy, VertexId,
};

use crate::input::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CheckId {
    #[serde(rename = "elementary")]
    Elementary,
    #[serde(rename = "equ-upper")]
    EquUpper,
    #[serde(rename = "gamma1-prop")]
    Gamma1Prop,
    #[serde(rename = "main-1")]
    Main1,
    #[serde(rename = "main-2")]
    Main2,
    #[serde(rename = "thm1-Hk")]
    Thm1Hk,
    #[serde(rename = "prop1-Hk")]
    Prop1Hk,
    #[serde(rename = "3k1-dom")]
    Dom3k1,
    #[serde(rename = "3k1-Udom")]
    UDom3k1,
    #[serde(rename = "3k2-dom")]
    Dom3k2,
    #[serde(rename = "3k2-Udom")]
    UDom3k2,
    #[serde(rename = "3k-dom")]
    Dom3k,
    #[serde(rename = "c18c7-example")]
    C18C7,
}

impl CheckId {
    pub const ALL: [CheckId; 13] = [
        CheckId::Elementary,
        CheckId::EquUpper,
        CheckId::Gamma1Prop,
        CheckId::Main1,
        CheckId::Main2,
        CheckId::Thm1Hk,
        CheckId::Prop1Hk,
        CheckId::Dom3k1,
        CheckId::UDom3k1,
        CheckId::Dom3k2,
        CheckId::UDom3k2,
        CheckId::Dom3k,
        CheckId::C18C7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Elementary => "elementary",
            CheckId::EquUpper => "equ-upper",
            CheckId::Gamma1Prop => "gamma1-prop",
            CheckId::Main1 => "main-1",
            CheckId::Main2 => "main-2",
            CheckId::Thm1Hk => "thm1-Hk",
            CheckId::Prop1Hk => "prop1-Hk",
            CheckId::Dom3k1 => "3k1-dom",
            CheckId::UDom3k1 => "3k1-Udom",
            CheckId::Dom3k2 => "3k2-dom",
            CheckId::UDom3k2 => "3k2-Udom",
            CheckId::Dom3k => "3k-dom",
            CheckId::C18C7 => "c18c7-example",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, UsageError> {
        CheckId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| UsageError(format!("unknown check id `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Partial,
}

impl Verdict {
    /// Fail dominates partial, which dominates pass.
    pub fn combine(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Partial, _) | (_, Verdict::Partial) => Verdict::Partial,
            _ => Verdict::Pass,
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Partial => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Partial => "partial",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Int(usize),
    Bool(bool),
    /// Inclusive interval.
    Range([usize; 2]),
    Set(Vec<usize>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Range([a, b]) => write!(f, "[{a},{b}]"),
            Value::Set(vs) => {
                let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub label: String,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub p: Option<usize>,
    pub computed: Option<Value>,
    pub expected: Value,
    pub status: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_f: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reproduce: Option<String>,
}

impl Row {
    fn new(label: impl Into<String>, expected: Value) -> Self {
        Row {
            label: label.into(),
            n: None,
            k: None,
            p: None,
            computed: None,
            expected,
            status: Verdict::Fail,
            witness_f: None,
            note: None,
            reproduce: None,
        }
    }

    fn nkp(mut self, n: usize, k: Option<usize>, p: Option<usize>) -> Self {
        self.n = Some(n);
        self.k = k;
        self.p = p;
        self
    }

    fn judge(mut self, computed: Value, ok: bool) -> Self {
        self.computed = Some(computed);
        self.status = if ok { Verdict::Pass } else { Verdict::Fail };
        self
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn sort_key(&self) -> (Option<usize>, Option<usize>, Option<usize>, String) {
        (self.n, self.k, self.p, self.label.clone())
    }
}

/// Instance ranges for a check. Unused fields are ignored by checks that
/// do not need them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Params {
    pub n: (usize, usize),
    pub k: (usize, usize),
    pub p: Vec<usize>,
    pub pairs: usize,
    pub functions: usize,
}

impl Params {
    pub fn default_for(id: CheckId) -> Params {
        let base = Params {
            n: (3, 6),
            k: (1, 1),
            p: vec![0, 1, 2],
            pairs: 50,
            functions: 20,
        };
        match id {
            CheckId::Elementary => Params { n: (2, 5), ..base },
            CheckId::EquUpper => Params { n: (3, 4), ..base },
            CheckId::Thm1Hk => Params {
                n: (3, 5),
                k: (1, 2),
                ..base
            },
            CheckId::Prop1Hk => Params { k: (1, 4), ..base },
            CheckId::Dom3k1 | CheckId::Dom3k2 => Params {
                n: (3, 8),
                k: (1, 2),
                ..base
            },
            CheckId::UDom3k1 | CheckId::UDom3k2 | CheckId::Dom3k => Params {
                n: (3, 7),
                k: (1, 2),
                ..base
            },
            CheckId::C18C7 => Params {
                n: (18, 18),
                k: (2, 2),
                p: vec![1],
                ..base
            },
            _ => base,
        }
    }

    fn ns(&self) -> impl Iterator<Item = usize> {
        self.n.0..=self.n.1
    }

    fn ks(&self) -> impl Iterator<Item = usize> {
        self.k.0..=self.k.1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub cap: usize,
    /// Solver-call budget per search; `None` uses the strategy default.
    pub budget: Option<u64>,
    pub workers: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            cap: DEFAULT_CAP,
            budget: None,
            workers: 0,
            seed: 1,
        }
    }
}

impl RunConfig {
    fn search(&self) -> SearchConfig {
        SearchConfig {
            strategy: Strategy::Auto,
            budget: self.budget,
            // searches run inside the harness pool
            workers: 0,
            cap: self.cap,
        }
    }

    /// Flags that reproduce this configuration on the command line.
    fn flags(&self) -> String {
        let mut s = String::new();
        if self.cap != DEFAULT_CAP {
            s.push_str(&format!(" --cap {}", self.cap));
        }
        if let Some(b) = self.budget {
            s.push_str(&format!(" --budget {b}"));
        }
        s
    }

    pub fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .expect("thread pool")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub id: CheckId,
    pub params: Params,
    pub verdict: Verdict,
    pub rows: Vec<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reproduce: Option<String>,
    pub millis: u64,
}

type Task<'a> = Box<dyn Fn() -> Row + Send + Sync + 'a>;

fn spec_of(g: &Graph) -> String {
    format!("'g6:{}'", to_graph6(g))
}

fn cycle(n: usize) -> Graph {
    Graph::cycle(n).expect("n >= 3")
}

fn search_cmd(g: &str, h: &str, mode: &str, cfg: &RunConfig) -> String {
    format!(
        "sierpdom search --g {g} --h {h} --mode {mode}{}",
        cfg.flags()
    )
}

/// Runs one search and turns the outcome into a row, or into a partial or
/// failed row when the search does not complete.
fn search_row(
    row: Row,
    g: &Graph,
    h: &Graph,
    mode: Mode,
    cfg: &RunConfig,
    reproduce: String,
    accept: impl Fn(usize) -> bool,
) -> Row {
    match sierpinski_gamma(g, h, mode, &cfg.search()) {
        Ok(out) => finish_search(row, &out, reproduce, &accept),
        Err(SearchError::Budget(b)) => {
            let best = match mode {
                Mode::Min => b.partial_min,
                Mode::Max => b.partial_max,
            };
            Row {
                status: Verdict::Partial,
                computed: None,
                note: Some(format!(
                    "budget of {} solver calls exhausted ({} candidates); best seen {}",
                    b.budget,
                    b.total,
                    best.map_or("none".to_string(), |o| o.value.to_string())
                )),
                reproduce: Some(reproduce),
                ..row
            }
        }
        Err(SearchError::Core(e)) => Row {
            status: Verdict::Fail,
            note: Some(e.to_string()),
            reproduce: Some(reproduce),
            ..row
        },
    }
}

fn finish_search(
    row: Row,
    out: &SearchOutcome,
    reproduce: String,
    accept: &dyn Fn(usize) -> bool,
) -> Row {
    let mut row = row.judge(Value::Int(out.value), accept(out.value));
    row.witness_f = Some(out.witness_f.as_labels());
    if row.status == Verdict::Fail {
        row.reproduce = Some(reproduce);
    }
    row
}

fn gamma_of_product(
    g: &Graph,
    h: &Graph,
    f: &FunctionAssignment,
    cap: usize,
) -> sierpdom_core::Result<usize> {
    let p = SierpinskiProduct::new(g, h, f)?;
    Ok(solver::solve_with_cap(&DominationInstance::new(p.into_graph()), cap)?.gamma)
}

fn random_graph(rng: &mut ChaCha8Rng, orders: (usize, usize)) -> Graph {
    let n = rng.gen_range(orders.0..=orders.1);
    let edges: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect::<Vec<_>>()
        .into_iter()
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    Graph::from_edges(n, edges).expect("simple graph")
}

fn tasks_for<'a>(id: CheckId, params: &'a Params, cfg: &'a RunConfig) -> Vec<Task<'a>> {
    let mut tasks: Vec<Task<'a>> = Vec::new();
    match id {
        CheckId::Elementary => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for pair in 0..params.pairs {
                let g = random_graph(&mut rng, params.n);
                let h = random_graph(&mut rng, params.n);
                let fs: Vec<FunctionAssignment> = (0..params.functions)
                    .map(|_| {
                        let vals = (0..g.order())
                            .map(|_| rng.gen_range(1..=h.order()))
                            .collect();
                        FunctionAssignment::new(vals).expect("positive")
                    })
                    .collect();
                tasks.push(Box::new(move || elementary_row(pair, &g, &h, &fs, cfg)));
            }
        }
        CheckId::EquUpper => {
            let fibers = [
                ("complete:3", Graph::complete(3)),
                ("complete:4", Graph::complete(4)),
                ("cycle:4", Graph::cycle(4)),
                ("cycle:5", Graph::cycle(5)),
                ("cycle:7", Graph::cycle(7)),
            ];
            for n in params.ns() {
                for (name, h) in fibers.clone() {
                    let h = h.expect("valid fiber");
                    tasks.push(Box::new(move || equ_upper_row(n, name, &h, cfg)));
                }
            }
        }
        CheckId::Gamma1Prop => {
            let instances = [
                ("cycle:5", "star:4"),
                ("cycle:4", "complete:3"),
                ("path:4", "star:5"),
                ("cycle:3", "complete:4"),
            ];
            for (gs, hs) in instances {
                tasks.push(Box::new(move || {
                    let g = crate::input::parse_graph(gs).expect("builtin spec");
                    let h = crate::input::parse_graph(hs).expect("builtin spec");
                    let n = g.order();
                    let row =
                        Row::new(format!("G={gs} H={hs}"), Value::Range([n, n])).nkp(n, None, None);
                    let reproduce = search_cmd(gs, hs, "both", cfg);
                    match sierpinski_gamma_both(&g, &h, &cfg.search()) {
                        Ok((lo, hi)) => {
                            let ok = lo.value == n && hi.value == n;
                            let mut row = row.judge(Value::Range([lo.value, hi.value]), ok);
                            if !ok {
                                row.reproduce = Some(reproduce);
                            }
                            row
                        }
                        Err(SearchError::Budget(_)) => Row {
                            status: Verdict::Partial,
                            reproduce: Some(reproduce),
                            note: Some("budget exhausted".into()),
                            ..row
                        },
                        Err(SearchError::Core(e)) => Row {
                            note: Some(e.to_string()),
                            reproduce: Some(reproduce),
                            ..row
                        },
                    }
                }));
            }
        }
        CheckId::Main1 | CheckId::Main2 => {
            for n in params.ns() {
                for k in params.ks() {
                    for &p in &params.p {
                        if id == CheckId::Main1 {
                            tasks.push(Box::new(move || main1_row(n, k, p, cfg)));
                        } else {
                            tasks.push(Box::new(move || {
                                let expected = upper_value(n, k, p);
                                let row = Row::new("Gamma_S", Value::Int(expected)).nkp(
                                    n,
                                    Some(k),
                                    Some(p),
                                );
                                let (gs, hs) =
                                    (format!("cycle:{n}"), format!("cycle:{}", 3 * k + p));
                                let cmd = search_cmd(&gs, &hs, "max", cfg);
                                search_row(
                                    row,
                                    &cycle(n),
                                    &cycle(3 * k + p),
                                    Mode::Max,
                                    cfg,
                                    cmd,
                                    |v| v == expected,
                                )
                            }));
                        }
                    }
                }
            }
        }
        CheckId::Thm1Hk => {
            for k in params.ks() {
                // C_{3k+1} and C_{k(2p+1)+1}<1..p> for p = 2
                let fibers = vec![
                    (format!("cycle:{}", 3 * k + 1), Graph::cycle(3 * k + 1)),
                    (
                        format!("circulant:{}:1,2", 5 * k + 1),
                        Graph::circulant(5 * k + 1, &[1, 2]),
                    ),
                ];
                for (name, h) in fibers {
                    let h = h.expect("valid fiber");
                    for n in params.ns() {
                        let (name, h) = (name.clone(), h.clone());
                        tasks.push(Box::new(move || thm1_row(n, k, &name, &h, cfg)));
                    }
                }
            }
        }
        CheckId::Prop1Hk => {
            for k in params.ks() {
                tasks.push(Box::new(move || {
                    hk_row(format!("cycle:{}", 3 * k + 1), k, true)
                }));
            }
            for k in 1..=2 {
                for p in 1..=2 {
                    let order = k * (2 * p + 1) + 1;
                    let jumps: Vec<String> = (1..=p).map(|j| j.to_string()).collect();
                    let spec = format!("circulant:{order}:{}", jumps.join(","));
                    tasks.push(Box::new(move || hk_row(spec.clone(), k, true)));
                }
            }
            for k in 1..=3 {
                tasks.push(Box::new(move || hk_row("cycle:8".to_string(), k, false)));
            }
        }
        CheckId::Dom3k1 | CheckId::Dom3k2 => {
            let p = if id == CheckId::Dom3k1 { 1 } else { 2 };
            for n in params.ns() {
                for k in params.ks() {
                    tasks.push(Box::new(move || main1_row(n, k, p, cfg)));
                    tasks.push(Box::new(move || pattern_row(n, k, p, cfg)));
                    if p == 1 {
                        tasks.push(Box::new(move || {
                            let expected = k * n + n.div_ceil(4) - n / 4;
                            let row = Row::new("3k1 construction size", Value::Int(expected)).nkp(
                                n,
                                Some(k),
                                Some(p),
                            );
                            match build_3k1_set(n, k) {
                                Ok(plan) => {
                                    row.judge(Value::Int(plan.size()), plan.size() == expected)
                                }
                                Err(e) => Row {
                                    note: Some(e.to_string()),
                                    reproduce: Some(format!(
                                        "sierpdom construct --family 3k1 --n {n} --k {k}"
                                    )),
                                    ..row
                                },
                            }
                        }));
                    }
                }
            }
        }
        CheckId::UDom3k1 | CheckId::UDom3k2 => {
            let p = if id == CheckId::UDom3k1 { 1 } else { 2 };
            for n in params.ns() {
                for k in params.ks() {
                    tasks.push(Box::new(move || {
                        let expected = upper_value(n, k, p);
                        let row =
                            Row::new("Gamma_S", Value::Int(expected)).nkp(n, Some(k), Some(p));
                        let (gs, hs) = (format!("cycle:{n}"), format!("cycle:{}", 3 * k + p));
                        let cmd = search_cmd(&gs, &hs, "max", cfg);
                        search_row(
                            row,
                            &cycle(n),
                            &cycle(3 * k + p),
                            Mode::Max,
                            cfg,
                            cmd,
                            |v| v == expected,
                        )
                    }));
                    if p == 1 {
                        tasks.push(Box::new(move || claim2_row(n, k, cfg)));
                    } else {
                        tasks.push(Box::new(move || {
                            // every constant function attains the maximum
                            let expected = (k + 1) * n;
                            let row = Row::new("constant f", Value::Int(expected)).nkp(
                                n,
                                Some(k),
                                Some(p),
                            );
                            let g = cycle(n);
                            let h = cycle(3 * k + 2);
                            let f = f_constant(&g, &h, VertexId(1)).expect("vertex 1 exists");
                            match gamma_of_product(&g, &h, &f, cfg.cap) {
                                Ok(v) => row.judge(Value::Int(v), v == expected),
                                Err(e) => row.note(e.to_string()),
                            }
                        }));
                    }
                }
            }
        }
        CheckId::Dom3k => {
            for n in params.ns() {
                for k in params.ks() {
                    for mode in [Mode::Min, Mode::Max] {
                        tasks.push(Box::new(move || {
                            let label = if mode == Mode::Min {
                                "gamma_S"
                            } else {
                                "Gamma_S"
                            };
                            let row = Row::new(label, Value::Int(k * n)).nkp(n, Some(k), Some(0));
                            let (gs, hs) = (format!("cycle:{n}"), format!("cycle:{}", 3 * k));
                            let name = if mode == Mode::Min { "min" } else { "max" };
                            let cmd = search_cmd(&gs, &hs, name, cfg);
                            search_row(row, &cycle(n), &cycle(3 * k), mode, cfg, cmd, |v| {
                                v == k * n
                            })
                        }));
                    }
                }
            }
        }
        CheckId::C18C7 => {
            tasks.push(Box::new(move || {
                let (n, k) = (18, 2);
                let row = Row::new("gamma(C18 x_f C7)", Value::Int(36)).nkp(n, Some(k), Some(1));
                match gamma_of_product(&cycle(n), &cycle(7), &f_c18c7(), cfg.cap) {
                    Ok(v) => {
                        let lower = lower_value_set(n, k, 1)[0];
                        let mut row = row.judge(Value::Int(v), v == 36);
                        row.witness_f = Some(f_c18c7().as_labels());
                        row.note = Some(if v == lower {
                            "lower element of the two-value set".to_string()
                        } else {
                            format!("not the lower element {lower}")
                        });
                        if row.status == Verdict::Fail {
                            row.reproduce =
                                Some("sierpdom gamma --g cycle:18 --h cycle:7 --f c18c7".into());
                        }
                        row
                    }
                    Err(e) => row.note(e.to_string()),
                }
            }));
        }
    }
    tasks
}

fn elementary_row(
    pair: usize,
    g: &Graph,
    h: &Graph,
    fs: &[FunctionAssignment],
    cfg: &RunConfig,
) -> Row {
    let label = format!("pair {pair:02}: G={} H={}", to_graph6(g), to_graph6(h));
    let gamma_h = match solver::gamma(h) {
        Ok(v) => v,
        Err(e) => return Row::new(label, Value::Range([0, 0])).note(e.to_string()),
    };
    let hi = g.order() * gamma_h;
    let lo = hi.saturating_sub(g.size());
    let row = Row::new(label, Value::Range([lo, hi])).nkp(g.order(), None, None);
    let mut seen = (usize::MAX, 0);
    for f in fs {
        match gamma_of_product(g, h, f, cfg.cap) {
            Ok(v) => {
                seen = (seen.0.min(v), seen.1.max(v));
                if v < lo || v > hi {
                    let cmd = format!(
                        "sierpdom gamma --g {} --h {} --f list:{}",
                        spec_of(g),
                        spec_of(h),
                        join(&f.as_labels())
                    );
                    let mut row = row.judge(Value::Int(v), false);
                    row.witness_f = Some(f.as_labels());
                    row.reproduce = Some(cmd);
                    return row;
                }
            }
            Err(e) => return row.note(e.to_string()),
        }
    }
    row.judge(Value::Range([seen.0, seen.1]), true)
        .note(format!("{} functions", fs.len()))
}

fn join(vs: &[usize]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn equ_upper_row(n: usize, h_name: &str, h: &Graph, cfg: &RunConfig) -> Row {
    let g = cycle(n);
    let row = Row::new(format!("G=cycle:{n} H={h_name}"), Value::Bool(false)).nkp(n, None, None);
    let cmd = search_cmd(&format!("cycle:{n}"), h_name, "max", cfg);
    match check_equ_upper(&g, h, &cfg.search()) {
        Ok(ev) => {
            let row = Row {
                expected: Value::Bool(ev.exists),
                note: Some(format!(
                    "gamma(H)={} gamma(H|x)={:?} Gamma_S={}",
                    ev.gamma_h,
                    ev.gamma_given,
                    ev.upper_sierpinski
                        .map_or("?".to_string(), |v| v.to_string())
                )),
                ..row
            };
            match ev.upper_sierpinski {
                Some(v) => {
                    let mut row =
                        row.judge(Value::Bool(v == ev.n_gamma), (v == ev.n_gamma) == ev.exists);
                    if row.status == Verdict::Fail {
                        row.reproduce = Some(cmd);
                    }
                    row
                }
                None => Row {
                    status: Verdict::Partial,
                    reproduce: Some(cmd),
                    ..row
                },
            }
        }
        Err(e) => row.note(e.to_string()),
    }
}

fn main1_row(n: usize, k: usize, p: usize, cfg: &RunConfig) -> Row {
    let allowed = lower_value_set(n, k, p);
    let exact = lower_value_exact(n, k, p);
    let expected = match exact {
        Some(v) => Value::Int(v),
        None => Value::Set(allowed.clone()),
    };
    let row = Row::new("gamma_S", expected).nkp(n, Some(k), Some(p));
    let cmd = search_cmd(
        &format!("cycle:{n}"),
        &format!("cycle:{}", 3 * k + p),
        "min",
        cfg,
    );
    let mut row = search_row(
        row,
        &cycle(n),
        &cycle(3 * k + p),
        Mode::Min,
        cfg,
        cmd,
        |v| allowed.contains(&v) && exact.is_none_or(|e| e == v),
    );
    if let Some(Value::Int(v)) = row.computed {
        row.note = Some(
            match allowed.iter().position(|&a| a == v) {
                _ if allowed.len() == 1 => "exact",
                Some(0) => "lower",
                Some(_) => "upper",
                None => "outside the allowed set",
            }
            .to_string(),
        );
    }
    row
}

/// The value of the explicit mod-4 function against its stated bound.
fn pattern_row(n: usize, k: usize, p: usize, cfg: &RunConfig) -> Row {
    let (f, bound, name) = if p == 1 {
        (f_3k1(n), k * n + n.div_ceil(4) - n / 4, "3k1")
    } else {
        (f_3k2(n), k * n + n / 2 + n.div_ceil(4) - n / 4, "3k2")
    };
    let row = Row::new(
        format!("gamma(C_n x_f C_m), f = pattern:{name}"),
        Value::Range([0, bound]),
    )
    .nkp(n, Some(k), Some(p));
    match gamma_of_product(&cycle(n), &cycle(3 * k + p), &f, cfg.cap) {
        Ok(v) => {
            let mut row = row.judge(Value::Int(v), v <= bound);
            row.witness_f = Some(f.as_labels());
            if row.status == Verdict::Fail {
                row.reproduce = Some(format!(
                    "sierpdom gamma --g cycle:{n} --h cycle:{} --f pattern:{name}",
                    3 * k + p
                ));
            }
            row
        }
        Err(e) => row.note(e.to_string()),
    }
}

fn claim2_row(n: usize, k: usize, cfg: &RunConfig) -> Row {
    let expected = k * n + n.div_ceil(3);
    let row = Row::new("claim2 construction size, constant f", Value::Int(expected)).nkp(
        n,
        Some(k),
        Some(1),
    );
    let g = cycle(n);
    let h = cycle(3 * k + 1);
    let f = FunctionAssignment::constant(n, VertexId(1));
    let built = build_claim2_set(&g, &h, k, &f).and_then(|plan| {
        let exact = gamma_of_product(&g, &h, &f, cfg.cap)?;
        Ok((plan.size(), exact))
    });
    match built {
        Ok((size, exact)) => row
            .judge(Value::Int(size), size == expected && exact == expected)
            .note(format!("gamma of the product is {exact}")),
        Err(e) => Row {
            note: Some(e.to_string()),
            reproduce: Some(format!(
                "sierpdom construct --family claim2 --n {n} --k {k} --h cycle:{} --f constant:1",
                3 * k + 1
            )),
            ..row
        },
    }
}

fn thm1_row(n: usize, k: usize, h_name: &str, h: &Graph, cfg: &RunConfig) -> Row {
    let expected = k * n + n.div_ceil(3);
    let row =
        Row::new(format!("Gamma_S(C_n, {h_name})"), Value::Int(expected)).nkp(n, Some(k), None);
    match check_hk(h, k) {
        Ok(report) if !report.member => {
            return row.note(format!("{h_name} failed the class test for k = {k}"));
        }
        Err(e) => return row.note(e.to_string()),
        Ok(_) => {}
    }
    let cmd = search_cmd(&format!("cycle:{n}"), h_name, "max", cfg);
    let row = search_row(row, &cycle(n), h, Mode::Max, cfg, cmd, |v| v == expected);
    // the upper-bound construction on the maximizing function
    if let Some(wf) = &row.witness_f {
        let f = FunctionAssignment::new(wf.clone()).expect("positive");
        if let Err(e) = build_claim2_set(&cycle(n), h, k, &f) {
            return Row {
                status: Verdict::Fail,
                note: Some(e.to_string()),
                ..row
            };
        }
    }
    row
}

fn hk_row(spec: String, k: usize, expect_member: bool) -> Row {
    let row =
        Row::new(format!("{spec} in H_{k}"), Value::Bool(expect_member)).nkp(0, Some(k), None);
    let row = Row { n: None, ..row };
    let h = crate::input::parse_graph(&spec).expect("builtin spec");
    match check_hk(&h, k) {
        Ok(r) => {
            let mut row = row
                .judge(Value::Bool(r.member), r.member == expect_member)
                .note(format!(
                    "gamma={} a={} b={}",
                    r.gamma, r.property_a, r.property_b
                ));
            if row.status == Verdict::Fail {
                row.reproduce = Some(format!("sierpdom check-hk --h {spec} --k {k}"));
            }
            row
        }
        Err(e) => row.note(e.to_string()),
    }
}

/// Command line that re-runs just the given row's instance range.
fn check_command(id: CheckId, row: &Row, params: &Params, cfg: &RunConfig) -> String {
    if let Some(cmd) = &row.reproduce {
        return cmd.clone();
    }
    let mut cmd = format!("sierpdom verify {id}");
    if let Some(n) = row.n {
        cmd.push_str(&format!(" --n {n}"));
    }
    if let Some(k) = row.k {
        cmd.push_str(&format!(" --k {k}"));
    }
    if let Some(p) = row.p {
        cmd.push_str(&format!(" --p {p}"));
    }
    if id == CheckId::Elementary {
        cmd.push_str(&format!(
            " --pairs {} --functions {} --seed {}",
            params.pairs, params.functions, cfg.seed
        ));
    }
    cmd.push_str(&cfg.flags());
    cmd
}

/// Runs one check on the current rayon pool.
pub fn verify_in_pool(id: CheckId, params: &Params, cfg: &RunConfig) -> TheoremCheck {
    let start = Instant::now();
    let tasks = tasks_for(id, params, cfg);
    let mut rows: Vec<Row> = tasks.par_iter().map(|t| t()).collect();
    rows.sort_by_key(|r| r.sort_key());
    let verdict = rows.iter().fold(Verdict::Pass, |v, r| v.combine(r.status));
    let reproduce = rows
        .iter()
        .find(|r| r.status == Verdict::Fail)
        .map(|r| check_command(id, r, params, cfg));
    TheoremCheck {
        id,
        params: params.clone(),
        verdict,
        rows,
        reproduce,
        millis: start.elapsed().as_millis() as u64,
    }
}

pub fn verify(id: CheckId, params: &Params, cfg: &RunConfig) -> TheoremCheck {
    cfg.pool().install(|| verify_in_pool(id, params, cfg))
}

// ------------------------------------------------------------ tables

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableCell {
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub value: Option<usize>,
    pub expected: Value,
    /// `exact`, `lower`, `upper` for the two-value theorem; `formula` otherwise.
    pub annotation: String,
    pub status: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub id: CheckId,
    pub verdict: Verdict,
    pub cells: Vec<TableCell>,
}

/// Per-`(n, k, p)` values for `main-1` or `main-2`.
pub fn table(id: CheckId, params: &Params, cfg: &RunConfig) -> Result<Table, UsageError> {
    if !matches!(id, CheckId::Main1 | CheckId::Main2) {
        return Err(UsageError(format!(
            "tables exist for main-1 and main-2, not {id}"
        )));
    }
    let check = verify(id, params, cfg);
    let cells = check
        .rows
        .into_iter()
        .map(|r| TableCell {
            n: r.n.unwrap_or(0),
            k: r.k.unwrap_or(0),
            p: r.p.unwrap_or(0),
            value: match r.computed {
                Some(Value::Int(v)) => Some(v),
                _ => None,
            },
            expected: r.expected,
            annotation: match (id, r.status) {
                (_, Verdict::Partial) => "partial".to_string(),
                (CheckId::Main1, _) => r.note.unwrap_or_default(),
                _ => "formula".to_string(),
            },
            status: r.status,
        })
        .collect();
    Ok(Table {
        id,
        verdict: check.verdict,
        cells,
    })
}

// ------------------------------------------------------------ run-all

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub tool: &'static str,
    pub version: &'static str,
    pub core_version: &'static str,
    pub seed: u64,
    pub config: RunConfig,
    pub verdict: Verdict,
    pub passed: usize,
    pub failed: usize,
    pub partial: usize,
    pub checks: Vec<TheoremCheck>,
    pub millis: u64,
}

/// Every check with its default instance ranges.
pub fn run_all(cfg: &RunConfig) -> Summary {
    let start = Instant::now();
    let checks: Vec<TheoremCheck> = cfg.pool().install(|| {
        CheckId::ALL
            .iter()
            .map(|&id| verify_in_pool(id, &Params::default_for(id), cfg))
            .collect()
    });
    let count = |v: Verdict| checks.iter().filter(|c| c.verdict == v).count();
    Summary {
        tool: "sierpdom",
        version: env!("CARGO_PKG_VERSION"),
        core_version: sierpdom_core::VERSION,
        seed: cfg.seed,
        config: cfg.clone(),
        verdict: checks
            .iter()
            .fold(Verdict::Pass, |v, c| v.combine(c.verdict)),
        passed: count(Verdict::Pass),
        failed: count(Verdict::Fail),
        partial: count(Verdict::Partial),
        checks,
        millis: start.elapsed().as_millis() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in CheckId::ALL {
            assert_eq!(id.name().parse::<CheckId>().unwrap(), id);
            assert_eq!(serde_json::to_value(id).unwrap(), id.name());
        }
        assert!("main-3".parse::<CheckId>().is_err());
    }

    #[test]
    fn verdicts_combine() {
        assert_eq!(Verdict::Pass.combine(Verdict::Partial), Verdict::Partial);
        assert_eq!(Verdict::Partial.combine(Verdict::Fail), Verdict::Fail);
        assert_eq!(Verdict::Pass.combine(Verdict::Pass), Verdict::Pass);
    }

    #[test]
    fn small_checks_pass() {
        let cfg = RunConfig {
            workers: 1,
            ..RunConfig::default()
        };
        for id in [CheckId::C18C7, CheckId::Gamma1Prop, CheckId::EquUpper] {
            let check = verify(id, &Params::default_for(id), &cfg);
            assert_eq!(check.verdict, Verdict::Pass, "{id}: {:?}", check.rows);
            assert!(check.reproduce.is_none());
        }
    }

    #[test]
    fn main1_rows_are_annotated() {
        let params = Params {
            n: (4, 5),
            ..Params::default_for(CheckId::Main1)
        };
        let check = verify(CheckId::Main1, &params, &RunConfig::default());
        assert_eq!(check.verdict, Verdict::Pass);
        let row = check
            .rows
            .iter()
            .find(|r| r.n == Some(4) && r.p == Some(2))
            .unwrap();
        assert_eq!(row.computed, Some(Value::Int(6)));
        assert_eq!(row.note.as_deref(), Some("lower"));
    }

    #[test]
    fn tiny_budget_is_partial_not_fail() {
        let cfg = RunConfig {
            budget: Some(1),
            ..RunConfig::default()
        };
        let params = Params {
            n: (5, 5),
            ..Params::default_for(CheckId::Main2)
        };
        let check = verify(CheckId::Main2, &params, &cfg);
        assert_eq!(check.verdict, Verdict::Partial);
    }
}
