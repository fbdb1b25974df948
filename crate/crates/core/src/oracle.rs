//! Exhaustive reference procedures for small graphs.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Colour, Graph, PartialColouring};

/// Largest order accepted by the colouring oracle.
pub const ORACLE_MAX_ORDER: usize = 30;
/// Largest order accepted by the probe H-freeness oracle.
pub const RECOGNISER_MAX_ORDER: usize = 14;
/// Largest pattern order accepted by the probe H-freeness oracle.
pub const RECOGNISER_MAX_PATTERN: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices; this oracle handles at most {max}")]
    TooLarge { n: usize, max: usize },
    #[error("pattern has {t} vertices; this oracle handles at most {max}")]
    PatternTooLarge { t: usize, max: usize },
    #[error("probe flags do not describe an independent non-probe set")]
    InvalidPartition,
}

/// Some proper `k`-colouring of `g`, or `None`.
pub fn oracle_k_colourable(g: &Graph, k: u8) -> Result<Option<Vec<Colour>>, OracleError> {
    oracle_extend(g, &PartialColouring::new(g.n(), k))
}

/// Some proper colouring extending `psi`, or `None`. An improper `psi` has
/// no extension.
pub fn oracle_extend(g: &Graph, psi: &PartialColouring) -> Result<Option<Vec<Colour>>, OracleError> {
    if g.n() > ORACLE_MAX_ORDER {
        return Err(OracleError::TooLarge { n: g.n(), max: ORACLE_MAX_ORDER });
    }
    if psi.check_proper(g).is_err() {
        return Ok(None);
    }
    let mut search = Dsatur::new(g, psi);
    Ok(search.run().then_some(search.colours))
}

struct Dsatur<'a> {
    g: &'a Graph,
    k: u8,
    colours: Vec<Colour>,
    /// `seen[v * k + c - 1]` counts neighbours of `v` with colour `c`.
    seen: Vec<u16>,
    saturation: Vec<u8>,
    /// Colours are interchangeable while nothing was precoloured, so a
    /// fresh colour is only tried once.
    symmetric: bool,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a Graph, psi: &PartialColouring) -> Self {
        let k = psi.k();
        let mut s = Dsatur {
            g,
            k,
            colours: vec![0; g.n()],
            seen: vec![0; g.n() * k as usize],
            saturation: vec![0; g.n()],
            symmetric: psi.coloured_count() == 0,
        };
        for v in 0..g.n() {
            if let Some(c) = psi.get(v) {
                s.assign(v, c);
            }
        }
        s
    }

    fn assign(&mut self, v: usize, c: Colour) {
        self.colours[v] = c;
        for &w in self.g.neighbours(v) {
            let slot = &mut self.seen[w * self.k as usize + c as usize - 1];
            *slot += 1;
            if *slot == 1 {
                self.saturation[w] += 1;
            }
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colours[v];
        self.colours[v] = 0;
        for &w in self.g.neighbours(v) {
            let slot = &mut self.seen[w * self.k as usize + c as usize - 1];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn run(&mut self) -> bool {
        let mut best: Option<usize> = None;
        for v in (0..self.g.n()).filter(|&v| self.colours[v] == 0) {
            if self.saturation[v] == self.k {
                return false;
            }
            let key = |u: usize| (self.saturation[u], self.g.degree(u));
            if best.is_none_or(|b| key(v) > key(b)) {
                best = Some(v);
            }
        }
        let Some(v) = best else {
            return true;
        };
        let limit = if self.symmetric {
            (self.colours.iter().copied().max().unwrap_or(0) + 1).min(self.k)
        } else {
            self.k
        };
        for c in 1..=limit {
            if self.seen[v * self.k as usize + c as usize - 1] > 0 {
                continue;
            }
            self.assign(v, c);
            if self.run() {
                return true;
            }
            self.unassign(v);
        }
        false
    }
}

/// Witness that a graph is probe H-free: the non-probes and the fill edges
/// between them that make the graph H-free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletionCertificate {
    pub nonprobes: Vec<usize>,
    pub fill_edges: Vec<(usize, usize)>,
}

impl CompletionCertificate {
    /// The graph with its fill edges added.
    pub fn completed(&self, g: &Graph) -> Graph {
        g.with_edges(self.fill_edges.iter().copied()).expect("fill edges are within range")
    }
}

/// Decides whether `g` is probe `H`-free for every `H` in `patterns` at once.
///
/// With `fixed_partition` (per-vertex probe flags) only that partition is
/// tried; otherwise every independent set is tried as the non-probe set,
/// smallest first. The certificate lists fill edges between non-probes such
/// that the completed graph contains no pattern as an induced subgraph.
pub fn oracle_is_probe_hfree(
    g: &Graph,
    patterns: &[Graph],
    fixed_partition: Option<&[bool]>,
) -> Result<Option<CompletionCertificate>, OracleError> {
    let n = g.n();
    if n > RECOGNISER_MAX_ORDER {
        return Err(OracleError::TooLarge { n, max: RECOGNISER_MAX_ORDER });
    }
    if let Some(p) = patterns.iter().find(|p| p.n() > RECOGNISER_MAX_PATTERN) {
        return Err(OracleError::PatternTooLarge { t: p.n(), max: RECOGNISER_MAX_PATTERN });
    }
    let codes = PatternCodes::new(patterns);
    if let Some(flags) = fixed_partition {
        if flags.len() != n {
            return Err(OracleError::InvalidPartition);
        }
        let nonprobes: Vec<usize> = (0..n).filter(|&v| !flags[v]).collect();
        if !g.is_independent(&nonprobes) {
            return Err(OracleError::InvalidPartition);
        }
        return Ok(complete_for(g, &codes, nonprobes));
    }
    let mut sets = independent_sets(g);
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(sets.into_iter().find_map(|nonprobes| complete_for(g, &codes, nonprobes)))
}

/// Whether `g` itself contains no pattern as an induced subgraph, checked by
/// scanning all vertex subsets of each pattern's order.
pub fn oracle_is_hfree(g: &Graph, patterns: &[Graph]) -> bool {
    let codes = PatternCodes::new(patterns);
    codes.by_order.iter().all(|(t, set)| {
        subsets(g.n(), *t).all(|s| !set.contains(&subset_code(g, &s, &[])))
    })
}

fn independent_sets(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(g: &Graph, next: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(current.clone());
        for v in next..g.n() {
            if current.iter().all(|&u| !g.has_edge(u, v)) {
                current.push(v);
                rec(g, v + 1, current, out);
                current.pop();
            }
        }
    }
    rec(g, 0, &mut current, &mut out);
    out
}

/// Adjacency codes of every labelled copy of each pattern, grouped by order.
/// Bit `pair_index(a, b)` is set when local positions `a < b` are adjacent.
struct PatternCodes {
    by_order: Vec<(usize, HashSet<u64>)>,
}

fn pair_index(a: usize, b: usize) -> usize {
    debug_assert!(a < b);
    b * (b - 1) / 2 + a
}

impl PatternCodes {
    fn new(patterns: &[Graph]) -> Self {
        let mut by_order: Vec<(usize, HashSet<u64>)> = Vec::new();
        for p in patterns {
            let t = p.n();
            let slot = match by_order.iter().position(|(o, _)| *o == t) {
                Some(i) => i,
                None => {
                    by_order.push((t, HashSet::new()));
                    by_order.len() - 1
                }
            };
            let mut perm: Vec<usize> = (0..t).collect();
            loop {
                let code = p.edges().fold(0u64, |acc, (u, v)| {
                    let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
                    acc | 1 << pair_index(a, b)
                });
                by_order[slot].1.insert(code);
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        by_order.sort_by_key(|(t, _)| *t);
        PatternCodes { by_order }
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else {
        return false;
    };
    let j = (i..perm.len()).rev().find(|&j| perm[j] > perm[i - 1]).expect("successor exists");
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// All `t`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, t: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (t <= n).then(|| (0..t).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let next = {
            let c = current.as_mut().expect("present");
            match (0..t).rev().find(|&i| c[i] < n - t + i) {
                Some(i) => {
                    c[i] += 1;
                    for j in i + 1..t {
                        c[j] = c[j - 1] + 1;
                    }
                    true
                }
                None => false,
            }
        };
        if !next {
            current = None;
        }
        Some(out)
    })
}

/// Code of the subgraph of `g + fill` induced by `s`.
fn subset_code(g: &Graph, s: &[usize], fill: &[(usize, usize)]) -> u64 {
    let mut code = 0;
    for b in 1..s.len() {
        for a in 0..b {
            let (u, v) = (s[a], s[b]);
            if g.has_edge(u, v) || fill.contains(&(u.min(v), u.max(v))) {
                code |= 1 << pair_index(a, b);
            }
        }
    }
    code
}

/// A forbidden combination over a few non-probe pairs.
struct Constraint {
    vars: Vec<usize>,
    forbidden: Vec<u32>,
}

fn complete_for(g: &Graph, codes: &PatternCodes, nonprobes: Vec<usize>) -> Option<CompletionCertificate> {
    let n = g.n();
    let mut is_nonprobe = vec![false; n];
    for &v in &nonprobes {
        is_nonprobe[v] = true;
    }
    let pairs: Vec<(usize, usize)> = nonprobes
        .iter()
        .enumerate()
        .flat_map(|(i, &u)| nonprobes[i + 1..].iter().map(move |&v| (u, v)))
        .collect();
    let var_of = |u: usize, v: usize| pairs.binary_search(&(u.min(v), u.max(v))).ok();

    let mut by_last: Vec<Vec<Constraint>> = (0..pairs.len()).map(|_| Vec::new()).collect();
    for (t, set) in &codes.by_order {
        let edge_counts: Vec<u32> = set.iter().map(|c| c.count_ones()).collect();
        let (lo, hi) = (*edge_counts.iter().min()?, *edge_counts.iter().max()?);
        for s in subsets(n, *t) {
            let base = subset_code(g, &s, &[]);
            let mut vars = Vec::new();
            let mut var_bits = Vec::new();
            for b in 1..s.len() {
                for a in 0..b {
                    if is_nonprobe[s[a]] && is_nonprobe[s[b]] {
                        vars.push(var_of(s[a], s[b]).expect("non-probe pair"));
                        var_bits.push(pair_index(a, b));
                    }
                }
            }
            let base_edges = base.count_ones();
            if base_edges > hi || base_edges + (vars.len() as u32) < lo {
                continue;
            }
            if vars.is_empty() {
                if set.contains(&base) {
                    return None;
                }
                continue;
            }
            let var_mask: u64 = var_bits.iter().fold(0, |m, &b| m | 1 << b);
            let mut forbidden: Vec<u32> = set
                .iter()
                .filter(|&&c| c & !var_mask == base)
                .map(|&c| var_bits.iter().enumerate().fold(0u32, |acc, (i, &b)| acc | (((c >> b) & 1) as u32) << i))
                .collect();
            if forbidden.is_empty() {
                continue;
            }
            forbidden.sort_unstable();
            forbidden.dedup();
            let last = *vars.iter().max().expect("nonempty");
            by_last[last].push(Constraint { vars, forbidden });
        }
    }

    let mut values = vec![false; pairs.len()];
    if !assign(0, &mut values, &by_last) {
        return None;
    }
    let fill_edges = pairs.iter().zip(&values).filter(|(_, &on)| on).map(|(&p, _)| p).collect();
    Some(CompletionCertificate { nonprobes, fill_edges })
}

fn assign(x: usize, values: &mut [bool], by_last: &[Vec<Constraint>]) -> bool {
    if x == values.len() {
        return true;
    }
    for choice in [true, false] {
        values[x] = choice;
        let ok = by_last[x].iter().all(|c| {
            let current = c.vars.iter().enumerate().fold(0u32, |acc, (i, &v)| acc | (values[v] as u32) << i);
            c.forbidden.binary_search(&current).is_err()
        });
        if ok && assign(x + 1, values, by_last) {
            return true;
        }
    }
    false
}
