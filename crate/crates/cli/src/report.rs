//! Rendering of checks, tables and summaries as JSON, CSV or markdown.
//!
//! CSV column order is fixed:
//!
//! * check rows: `id,label,n,k,p,computed,expected,status,witness_f,note`
//! * table cells: `id,n,k,p,value,expected,annotation,status`

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::harness::{Summary, Table, TheoremCheck, Value};
use crate::input::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Markdown,
}

impl FromStr for OutputFormat {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, UsageError> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "markdown" | "md" | "markdown-table" => Ok(OutputFormat::Markdown),
            other => Err(UsageError(format!("unknown output format `{other}`"))),
        }
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

fn labels(vs: &Option<Vec<usize>>) -> String {
    vs.as_ref()
        .map(|v| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_default()
}

fn csv_text(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w).expect("in-memory csv");
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub fn checks_csv(checks: &[TheoremCheck]) -> String {
    csv_text(|w| {
        w.write_record([
            "id",
            "label",
            "n",
            "k",
            "p",
            "computed",
            "expected",
            "status",
            "witness_f",
            "note",
        ])?;
        for c in checks {
            for r in &c.rows {
                w.write_record([
                    c.id.name().to_string(),
                    r.label.clone(),
                    opt(r.n),
                    opt(r.k),
                    opt(r.p),
                    r.computed
                        .as_ref()
                        .map(Value::to_string)
                        .unwrap_or_default(),
                    r.expected.to_string(),
                    r.status.to_string(),
                    labels(&r.witness_f),
                    r.note.clone().unwrap_or_default(),
                ])?;
            }
        }
        Ok(())
    })
}

fn escape(s: &str) -> String {
    s.replace('|', "\\|")
}

pub fn check_markdown(c: &TheoremCheck) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "### {}: {} ({} rows, {} ms)\n",
        c.id,
        c.verdict,
        c.rows.len(),
        c.millis
    );
    out.push_str("| n | k | p | instance | computed | expected | status | note |\n");
    out.push_str("|---|---|---|---|---|---|---|---|\n");
    for r in &c.rows {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} |",
            opt(r.n),
            opt(r.k),
            opt(r.p),
            escape(&r.label),
            r.computed
                .as_ref()
                .map(Value::to_string)
                .unwrap_or_else(|| "-".into()),
            r.expected,
            r.status,
            escape(r.note.as_deref().unwrap_or(""))
        );
    }
    if let Some(cmd) = &c.reproduce {
        let _ = writeln!(out, "\nReproduce: `{cmd}`");
    }
    out
}

pub fn render_check(c: &TheoremCheck, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(c),
        OutputFormat::Csv => checks_csv(std::slice::from_ref(c)),
        OutputFormat::Markdown => check_markdown(c),
    }
}

/// One markdown table per `k`: rows `n`, columns `p`.
pub fn table_markdown(t: &Table) -> String {
    let mut out = String::new();
    let ks: BTreeSet<usize> = t.cells.iter().map(|c| c.k).collect();
    let ps: BTreeSet<usize> = t.cells.iter().map(|c| c.p).collect();
    for k in ks {
        let _ = writeln!(out, "#### {} (k = {k})\n", t.id);
        out.push_str("| n |");
        for p in &ps {
            let _ = write!(out, " p={p} |");
        }
        out.push_str("\n|---|");
        for _ in &ps {
            out.push_str("---|");
        }
        out.push('\n');
        let ns: BTreeSet<usize> = t.cells.iter().filter(|c| c.k == k).map(|c| c.n).collect();
        for n in ns {
            let _ = write!(out, "| {n} |");
            for &p in &ps {
                let cell = t.cells.iter().find(|c| c.n == n && c.k == k && c.p == p);
                let text = match cell {
                    Some(c) => {
                        let v = c.value.map_or("-".to_string(), |v| v.to_string());
                        let mark = if c.status == crate::harness::Verdict::Fail {
                            " FAIL"
                        } else {
                            ""
                        };
                        format!("{v} ({}){mark}", c.annotation)
                    }
                    None => String::new(),
                };
                let _ = write!(out, " {text} |");
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

pub fn table_csv(t: &Table) -> String {
    csv_text(|w| {
        w.write_record([
            "id",
            "n",
            "k",
            "p",
            "value",
            "expected",
            "annotation",
            "status",
        ])?;
        for c in &t.cells {
            w.write_record([
                t.id.name().to_string(),
                c.n.to_string(),
                c.k.to_string(),
                c.p.to_string(),
                opt(c.value),
                c.expected.to_string(),
                c.annotation.clone(),
                c.status.to_string(),
            ])?;
        }
        Ok(())
    })
}

pub fn render_table(t: &Table, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(t),
        OutputFormat::Csv => table_csv(t),
        OutputFormat::Markdown => table_markdown(t),
    }
}

pub fn summary_markdown(s: &Summary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# sierpdom run-all\n");
    let _ = writeln!(
        out,
        "verdict: **{}** ({} pass, {} fail, {} partial), seed {}, version {}, {} ms\n",
        s.verdict, s.passed, s.failed, s.partial, s.seed, s.version, s.millis
    );
    out.push_str("| check | verdict | rows | ms |\n|---|---|---|---|\n");
    for c in &s.checks {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} |",
            c.id,
            c.verdict,
            c.rows.len(),
            c.millis
        );
    }
    out.push('\n');
    for c in &s.checks {
        out.push_str(&check_markdown(c));
        out.push('\n');
    }
    out
}

pub fn render_summary(s: &Summary, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(s),
        OutputFormat::Csv => checks_csv(&s.checks),
        OutputFormat::Markdown => summary_markdown(s),
    }
}
