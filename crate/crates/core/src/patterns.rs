//! Names for small pattern graphs, such as `p5`, `2p2`, `p3+2p1` or `c5`.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("unrecognised pattern term `{0}`")]
    BadTerm(String),
    #[error("empty pattern")]
    Empty,
}

/// Parses a disjoint union of terms joined by `+`. Each term is an optional
/// multiplicity followed by `p<t>` (path), `c<t>` (cycle) or `k<t>` (clique),
/// case-insensitively: `3p2` is three disjoint edges.
pub fn parse_pattern(name: &str) -> Result<Graph, PatternError> {
    let mut out: Option<Graph> = None;
    for term in name.split('+') {
        let term = term.trim().to_ascii_lowercase();
        let bad = || PatternError::BadTerm(term.clone());
        let letter_at = term.find(|ch: char| ch.is_ascii_alphabetic()).ok_or_else(bad)?;
        let count: usize = match &term[..letter_at] {
            "" => 1,
            digits => digits.parse().map_err(|_| bad())?,
        };
        let kind = term.as_bytes()[letter_at];
        let size: usize = term[letter_at + 1..].parse().map_err(|_| bad())?;
        let single = match kind {
            b'p' if size >= 1 => Graph::path(size),
            b'c' if size >= 3 => Graph::cycle(size),
            b'k' if size >= 1 => Graph::complete(size),
            _ => return Err(bad()),
        };
        for _ in 0..count {
            out = Some(match out {
                None => single.clone(),
                Some(g) => g.disjoint_union(&single),
            });
        }
    }
    out.filter(|g| g.n() > 0).ok_or(PatternError::Empty)
}

/// Parses a comma-separated family of patterns.
pub fn parse_pattern_family(names: &str) -> Result<Vec<Graph>, PatternError> {
    names.split(',').map(parse_pattern).collect()
}
