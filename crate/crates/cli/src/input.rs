//! Parsing of `--g`/`--h` graph specs and `--f` function specs.

use std::path::Path;

use sierpdom_core::codec::{self, Format};
use sierpdom_core::constructions::{f_3k1, f_3k2, f_c18c7};
use sierpdom_core::{FunctionAssignment, Graph, VertexId};

/// Problems with command-line input. These map to the usage exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

fn number(s: &str, what: &str) -> Result<usize, UsageError> {
    s.trim().parse().map_err(|_| {
        usage(format!(
            "{what}: expected a non-negative integer, got `{s}`"
        ))
    })
}

fn list(s: &str, what: &str) -> Result<Vec<usize>, UsageError> {
    s.split(',').map(|t| number(t, what)).collect()
}

/// `cycle:N`, `path:N`, `complete:N`, `star:N`, `circulant:N:j1,j2,...`,
/// `g6:STRING` or `file:PATH` (graph6, DOT or edge-list JSON, picked by extension and
/// falling back to sniffing the content).
pub fn parse_graph(spec: &str) -> Result<Graph, UsageError> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| usage(format!("graph spec `{spec}` must look like kind:args")))?;
    let built = match kind {
        "cycle" => Graph::cycle(number(rest, "cycle order")?),
        "path" => Graph::path(number(rest, "path order")?),
        "complete" => Graph::complete(number(rest, "complete order")?),
        "star" => Graph::star(number(rest, "star order")?),
        "circulant" => {
            let (n, jumps) = rest
                .split_once(':')
                .ok_or_else(|| usage("circulant spec must be circulant:N:j1,j2,..."))?;
            Graph::circulant(
                number(n, "circulant order")?,
                &list(jumps, "circulant jump")?,
            )
        }
        "g6" => codec::from_graph6(rest),
        "file" => return read_graph_file(Path::new(rest)),
        other => return Err(usage(format!("unknown graph kind `{other}`"))),
    };
    built.map_err(|e| usage(format!("graph spec `{spec}`: {e}")))
}

fn read_graph_file(path: &Path) -> Result<Graph, UsageError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let by_ext = match path.extension().and_then(|e| e.to_str()) {
        Some("g6" | "graph6") => Some(Format::Graph6),
        Some("dot" | "gv") => Some(Format::Dot),
        Some("json") => Some(Format::EdgeListJson),
        _ => None,
    };
    let format = by_ext.unwrap_or_else(|| {
        let head = text.trim_start();
        if head.starts_with('{') {
            Format::EdgeListJson
        } else if head.starts_with("graph") || head.starts_with("strict") {
            Format::Dot
        } else {
            Format::Graph6
        }
    });
    codec::decode(&text, format).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// `constant:H`, `pattern:3k1`, `pattern:3k2`, `c18c7`, `list:a,b,...` or
/// `file:PATH` holding `{"n": .., "f": [..]}`.
pub fn parse_function(spec: &str, n: usize) -> Result<FunctionAssignment, UsageError> {
    let f = match spec.split_once(':') {
        Some(("constant", h)) => {
            FunctionAssignment::constant(n, VertexId(number(h, "constant value")?))
        }
        Some(("pattern", "3k1")) => f_3k1(n),
        Some(("pattern", "3k2")) => f_3k2(n),
        Some(("list", values)) => FunctionAssignment::new(list(values, "function value")?)
            .map_err(|e| usage(e.to_string()))?,
        Some(("file", path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
            FunctionAssignment::from_json(&text).map_err(|e| usage(format!("{path}: {e}")))?
        }
        None if spec == "c18c7" => f_c18c7(),
        _ => return Err(usage(format!("unknown function spec `{spec}`"))),
    };
    if f.domain_size() != n {
        return Err(usage(format!(
            "function `{spec}` has {} entries, the base graph has {n} vertices",
            f.domain_size()
        )));
    }
    Ok(f)
}

/// `A..B` (inclusive), or a single value.
pub fn parse_range(s: &str) -> Result<(usize, usize), UsageError> {
    match s.split_once("..") {
        Some((a, b)) => {
            let (lo, hi) = (
                number(a, "range start")?,
                number(b.trim_start_matches('='), "range end")?,
            );
            if lo > hi {
                return Err(usage(format!("empty range `{s}`")));
            }
            Ok((lo, hi))
        }
        None => {
            let v = number(s, "range")?;
            Ok((v, v))
        }
    }
}

pub fn parse_list(s: &str) -> Result<Vec<usize>, UsageError> {
    list(s, "list entry")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_specs() {
        assert_eq!(parse_graph("cycle:5").unwrap().size(), 5);
        assert_eq!(parse_graph("circulant:11:1,2").unwrap().size(), 22);
        assert_eq!(parse_graph("complete:4").unwrap().size(), 6);
        assert!(parse_graph("cycle:x").is_err());
        assert!(parse_graph("cycle:2").is_err());
        assert!(parse_graph("wheel:5").is_err());
        assert!(parse_graph("cycle").is_err());
        assert_eq!(parse_graph("g6:Bw").unwrap().size(), 3);
    }

    #[test]
    fn function_specs() {
        assert_eq!(
            parse_function("pattern:3k1", 4).unwrap().as_labels(),
            vec![1, 1, 3, 3]
        );
        assert_eq!(
            parse_function("constant:2", 3).unwrap().as_labels(),
            vec![2, 2, 2]
        );
        assert_eq!(parse_function("c18c7", 18).unwrap().domain_size(), 18);
        assert!(parse_function("c18c7", 17).is_err());
        assert_eq!(
            parse_function("list:1,2,3", 3).unwrap().as_labels(),
            vec![1, 2, 3]
        );
        assert!(parse_function("pattern:9", 3).is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..6").unwrap(), (3, 6));
        assert_eq!(parse_range("3..=6").unwrap(), (3, 6));
        assert_eq!(parse_range("4").unwrap(), (4, 4));
        assert!(parse_range("6..3").is_err());
    }
}
