//! Line-oriented instance format and JSON results.
//!
//! ```text
//! # comment
//! probe-graph 3
//! v 0 P
//! v 1 N
//! v 2 P
//! e 0 1
//! e 1 2
//! ```

use std::fmt::Write as _;

use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{Colour, Graph, GraphError, InstanceError, ProbeInstance};
use crate::solver::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: InstanceError },
    #[error("no `probe-graph <n>` header found")]
    MissingHeader,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, column, message: message.into() }
}

/// Whitespace-separated tokens of a line with their 1-based columns, up to a
/// `#` comment.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices().chain([(body.len(), ' ')]) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &body[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn number(line: usize, (column, tok): (usize, &str)) -> Result<usize, FormatError> {
    tok.parse().map_err(|_| syntax(line, column, format!("expected a vertex number, found `{tok}`")))
}

fn vertex(line: usize, tok: (usize, &str), n: usize) -> Result<usize, FormatError> {
    let v = number(line, tok)?;
    if v >= n {
        return Err(syntax(line, tok.0, format!("vertex {v} out of range for a graph on {n} vertices")));
    }
    Ok(v)
}

/// Parses and validates an instance.
pub fn parse_instance(text: &str) -> Result<ProbeInstance, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut side: Vec<Option<(bool, usize)>> = Vec::new();
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokens(raw);
        let Some(&(column, keyword)) = toks.first() else { continue };
        let Some((_, n)) = header else {
            if keyword != "probe-graph" {
                return Err(syntax(line, column, format!("expected `probe-graph <n>`, found `{keyword}`")));
            }
            if toks.len() != 2 {
                return Err(syntax(line, column, "expected `probe-graph <n>`"));
            }
            let n = number(line, toks[1])?;
            header = Some((line, n));
            side = vec![None; n];
            continue;
        };
        match keyword {
            "v" => {
                if toks.len() != 3 {
                    return Err(syntax(line, column, "expected `v <id> P|N`"));
                }
                let v = vertex(line, toks[1], n)?;
                let probe = match toks[2].1 {
                    "P" => true,
                    "N" => false,
                    other => return Err(syntax(line, toks[2].0, format!("expected `P` or `N`, found `{other}`"))),
                };
                match side[v] {
                    Some((previous, _)) if previous != probe => {
                        return Err(FormatError::Invalid { line, source: InstanceError::Overlap(v) })
                    }
                    Some(_) => return Err(syntax(line, column, format!("vertex {v} declared twice"))),
                    None => side[v] = Some((probe, line)),
                }
            }
            "e" => {
                if toks.len() != 3 {
                    return Err(syntax(line, column, "expected `e <u> <v>`"));
                }
                let u = vertex(line, toks[1], n)?;
                let v = vertex(line, toks[2], n)?;
                if u == v {
                    return Err(syntax(line, toks[2].0, format!("self-loop at vertex {u}")));
                }
                edges.push((u, v, line));
            }
            "probe-graph" => return Err(syntax(line, column, "second header")),
            other => return Err(syntax(line, column, format!("unknown record `{other}`"))),
        }
    }
    let (header_line, n) = header.ok_or(FormatError::MissingHeader)?;
    let mut is_probe = Vec::with_capacity(n);
    for (v, s) in side.iter().enumerate() {
        match s {
            Some((p, _)) => is_probe.push(*p),
            None => return Err(FormatError::Invalid { line: header_line, source: InstanceError::Missing(v) }),
        }
    }
    if let Some(&(u, v, line)) = edges.iter().find(|&&(u, v, _)| !is_probe[u] && !is_probe[v]) {
        return Err(FormatError::Invalid { line, source: InstanceError::NonprobeEdge(u.min(v), u.max(v)) });
    }
    let graph = Graph::new(n, edges.iter().map(|&(u, v, _)| (u, v))).map_err(|e| match e {
        GraphError::SelfLoop(v) | GraphError::OutOfRange { vertex: v, .. } => {
            syntax(header_line, 1, format!("bad edge at vertex {v}"))
        }
    })?;
    ProbeInstance::new(graph, is_probe).map_err(|source| FormatError::Invalid { line: header_line, source })
}

/// Writes an instance; `comments` are emitted as leading `#` lines.
pub fn write_instance(inst: &ProbeInstance, comments: &[String]) -> String {
    let g = inst.graph();
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "probe-graph {}", g.n());
    for v in 0..g.n() {
        let _ = writeln!(out, "v {v} {}", if inst.is_probe(v) { 'P' } else { 'N' });
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

/// The JSON result object for a verdict.
pub fn result_json(verdict: &Verdict) -> Value {
    let mut obj = json!({
        "status": verdict.status,
        "stats": verdict.stats,
    });
    if let Some(c) = &verdict.certificate {
        obj["colouring"] = json!(c);
    }
    if let Some(d) = &verdict.diagnostic {
        obj["diagnostic"] = json!(d);
    }
    obj
}

/// The JSON result for a failed command.
pub fn error_json(message: &str) -> Value {
    json!({ "status": "error", "error": message })
}

/// Output style for [`emit_result`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Pretty,
}

pub fn emit_result(verdict: &Verdict, format: OutputFormat) -> String {
    let v = result_json(verdict);
    match format {
        OutputFormat::Json => v.to_string(),
        OutputFormat::Pretty => serde_json::to_string_pretty(&v).expect("serializable"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColouringParseError {
    #[error("result object has no `colouring` array")]
    NoColouring,
    #[error("entry {index} is not a colour between 1 and 255")]
    BadEntry { index: usize },
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// Reads a colouring from a JSON result object, a JSON array, or plain
/// whitespace- or comma-separated colours (with `#` comments).
pub fn parse_colouring(text: &str) -> Result<Vec<Colour>, ColouringParseError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        let v: Value = serde_json::from_str(trimmed).map_err(|e| ColouringParseError::Json(e.to_string()))?;
        let arr = match &v {
            Value::Array(a) => a,
            Value::Object(o) => o.get("colouring").and_then(Value::as_array).ok_or(ColouringParseError::NoColouring)?,
            _ => return Err(ColouringParseError::NoColouring),
        };
        return arr
            .iter()
            .enumerate()
            .map(|(index, x)| {
                x.as_u64()
                    .filter(|&c| (1..=255).contains(&c))
                    .map(|c| c as Colour)
                    .ok_or(ColouringParseError::BadEntry { index })
            })
            .collect();
    }
    text.lines()
        .flat_map(|l| l.split('#').next().unwrap_or("").split([',', ' ', '\t']).filter(|t| !t.is_empty()))
        .enumerate()
        .map(|(index, t)| {
            t.parse::<Colour>().ok().filter(|&c| c >= 1).ok_or(ColouringParseError::BadEntry { index })
        })
        .collect()
}
