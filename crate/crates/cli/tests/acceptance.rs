//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sierpdom::harness::{verify, CheckId, Params, RunConfig, Value, Verdict};
use sierpdom_core::constructions::{build_3k1_set, build_3k2_set, build_claim2_set, f_3k1};
use sierpdom_core::search::sierpinski_gamma_both;
use sierpdom_core::solver::{self, brute_force_solve};
use sierpdom_core::{
    DominationInstance, FunctionAssignment, Graph, SearchConfig, Strategy, VertexId,
};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn check_summary(id: CheckId, params: Params) -> (Verdict, Vec<sierpdom::harness::Row>) {
    let c = verify(id, &params, &RunConfig::default());
    (c.verdict, c.rows)
}

fn failing(rows: &[sierpdom::harness::Row]) -> String {
    rows.iter()
        .filter(|r| r.status != Verdict::Pass)
        .map(|r| {
            format!(
                "{} n={:?} k={:?} p={:?}: {:?}",
                r.label, r.n, r.k, r.p, r.note
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn c18c7_example() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_sierpdom"))
        .args(["verify", "c18c7-example"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let report: serde_json::Value = match serde_json::from_slice(&out.stdout) {
        Ok(v) => v,
        Err(e) => return outcome(false, format!("unreadable report: {e}")),
    };
    let value = report["rows"][0]["computed"].as_u64();
    let ok =
        out.status.code() == Some(0) && value == Some(36) && elapsed < Duration::from_secs(120);
    outcome(
        ok,
        format!(
            "gamma = {value:?}, exit {:?}, {:.2?}",
            out.status.code(),
            elapsed
        ),
    )
}

fn three_k_dom() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 3..=7 {
        for k in 1..=2 {
            let cfg = SearchConfig::with_strategy(Strategy::DistanceSequence);
            match sierpinski_gamma_both(
                &Graph::cycle(n).unwrap(),
                &Graph::cycle(3 * k).unwrap(),
                &cfg,
            ) {
                Ok((lo, hi)) if lo.value == k * n && hi.value == k * n => {}
                Ok((lo, hi)) => bad.push(format!("n={n} k={k}: {} / {}", lo.value, hi.value)),
                Err(e) => bad.push(format!("n={n} k={k}: {e}")),
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < Duration::from_secs(600),
        if bad.is_empty() {
            format!("10 instances, both modes = kn, {elapsed:.2?}")
        } else {
            bad.join("; ")
        },
    )
}

fn main_2() -> Outcome {
    let params = Params {
        n: (3, 6),
        k: (1, 1),
        p: vec![0, 1, 2],
        ..Params::default_for(CheckId::Main2)
    };
    let (v, rows) = check_summary(CheckId::Main2, params);
    let detail = if v == Verdict::Pass {
        format!("{} instances match", rows.len())
    } else {
        failing(&rows)
    };
    outcome(v == Verdict::Pass, detail)
}

fn main_1() -> Outcome {
    let params = Params {
        n: (3, 6),
        k: (1, 1),
        p: vec![1, 2],
        ..Params::default_for(CheckId::Main1)
    };
    let (v, rows) = check_summary(CheckId::Main1, params);
    let resolutions: Vec<String> = rows
        .iter()
        .map(|r| {
            let value = match &r.computed {
                Some(Value::Int(x)) => x.to_string(),
                _ => "?".into(),
            };
            format!(
                "n={} p={}: {} {}",
                r.n.unwrap(),
                r.p.unwrap(),
                value,
                r.note.as_deref().unwrap_or("")
            )
        })
        .collect();
    outcome(v == Verdict::Pass, resolutions.join(", "))
}

fn elementary() -> Outcome {
    let params = Params {
        n: (2, 5),
        pairs: 50,
        functions: 20,
        ..Params::default_for(CheckId::Elementary)
    };
    let (v, rows) = check_summary(CheckId::Elementary, params);
    let detail = if v == Verdict::Pass {
        format!("{} pairs x 20 functions, 0 violations", rows.len())
    } else {
        failing(&rows)
    };
    outcome(v == Verdict::Pass && rows.len() == 50, detail)
}

fn equ_upper() -> Outcome {
    let params = Params {
        n: (3, 4),
        ..Params::default_for(CheckId::EquUpper)
    };
    let (v, rows) = check_summary(CheckId::EquUpper, params);
    let detail = if v == Verdict::Pass {
        format!("{} (G, H) pairs agree", rows.len())
    } else {
        failing(&rows)
    };
    outcome(v == Verdict::Pass && !rows.is_empty(), detail)
}

fn hk_suite() -> Outcome {
    let params = Params {
        k: (1, 4),
        ..Params::default_for(CheckId::Prop1Hk)
    };
    let (v, rows) = check_summary(CheckId::Prop1Hk, params);
    let detail = if v == Verdict::Pass {
        format!("{} membership tests", rows.len())
    } else {
        failing(&rows)
    };
    outcome(v == Verdict::Pass, detail)
}

fn constructions() -> Outcome {
    let mut bad = Vec::new();
    let mut built = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 3..=8 {
        for k in 1..=2 {
            let g = Graph::cycle(n).unwrap();
            let h = Graph::cycle(3 * k + 1).unwrap();
            let random =
                FunctionAssignment::new((0..n).map(|_| rng.gen_range(1..=3 * k + 1)).collect())
                    .unwrap();
            for (what, f) in [
                ("constant", FunctionAssignment::constant(n, VertexId(1))),
                ("pattern:3k1", f_3k1(n)),
                ("random", random),
            ] {
                match build_claim2_set(&g, &h, k, &f) {
                    Ok(_) => built += 1,
                    Err(e) => bad.push(format!("claim2 n={n} k={k} f={what}: {e}")),
                }
            }
            for (name, result) in [("3k1", build_3k1_set(n, k)), ("3k2", build_3k2_set(n, k))] {
                match result {
                    Ok(_) => built += 1,
                    Err(e) => bad.push(format!("{name} n={n} k={k}: {e}")),
                }
            }
        }
    }
    let detail = if bad.is_empty() {
        format!("{built} sets validated")
    } else {
        format!("{built} validated; {}", bad.join("; "))
    };
    outcome(bad.is_empty(), detail)
}

fn solver_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut mismatches = Vec::new();
    for trial in 0..300 {
        let n = rng.gen_range(1..=14);
        let p = rng.gen_range(0.1..0.7);
        let edges: Vec<(usize, usize)> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        let edges: Vec<_> = edges.into_iter().filter(|_| rng.gen_bool(p)).collect();
        let mut inst = DominationInstance::new(Graph::from_edges(n, edges).unwrap());
        if trial % 3 != 0 {
            let roles: Vec<u8> = (0..n).map(|_| rng.gen_range(0..10)).collect();
            let pick = |r: u8| {
                (1..=n)
                    .filter(|&v| roles[v - 1] == r)
                    .map(VertexId)
                    .collect::<Vec<_>>()
            };
            inst = inst
                .forced_in(pick(1))
                .pre_dominated(pick(2))
                .deleted(pick(3));
        }
        let fast = solver::solve(&inst).map(|c| c.gamma).ok();
        let slow = brute_force_solve(&inst, 26).ok();
        if fast != slow {
            mismatches.push(format!("trial {trial}: {fast:?} vs {slow:?}"));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches.is_empty() && elapsed < Duration::from_secs(300),
        if mismatches.is_empty() {
            format!("300 graphs, 0 mismatches, {elapsed:.2?}")
        } else {
            mismatches.join("; ")
        },
    )
}

fn strategy_agreement() -> Outcome {
    let mut bad = Vec::new();
    let mut pairs = 0;
    for n in 3..=5 {
        for m in 3..=6 {
            let g = Graph::cycle(n).unwrap();
            let h = Graph::cycle(m).unwrap();
            let values: Vec<_> = [
                Strategy::Exhaustive,
                Strategy::OrbitReduced,
                Strategy::DistanceSequence,
            ]
            .into_iter()
            .map(|s| {
                sierpinski_gamma_both(&g, &h, &SearchConfig::with_strategy(s))
                    .map(|(a, b)| (a.value, b.value))
            })
            .collect();
            pairs += 1;
            if !values.windows(2).all(|w| w[0] == w[1]) {
                bad.push(format!("n={n} m={m}: {values:?}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{pairs} cycle pairs, both modes, 0 mismatches")
        } else {
            bad.join("; ")
        },
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("C18 x C7 example", c18c7_example),
        ("C_n x C_3k both extrema", three_k_dom),
        ("upper Sierpinski domination formula", main_2),
        ("lower Sierpinski domination value sets", main_1),
        ("elementary sandwich", elementary),
        ("upper-bound equality criterion", equ_upper),
        ("class H_k suite", hk_suite),
        ("construction validators", constructions),
        ("solver oracle equivalence", solver_oracle),
        ("strategy agreement", strategy_agreement),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = run();
        let mark = if result.pass { "PASS" } else { "FAIL" };
        if !result.pass {
            failed += 1;
        }
        println!("criterion {:>2} [{mark}] {name}: {}", i + 1, result.detail);
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
