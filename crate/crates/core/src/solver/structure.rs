//! Structural helpers: reference cycles, small dominating sets and the
//! enumeration of colourings of a few vertices.

use crate::graph::{
    find_induced_subgraph_budgeted, shortest_odd_cycle, triangles, Colour, Graph, PartialColouring,
    SearchError,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleError {
    /// The graph has no odd cycle at all.
    Bipartite,
    /// The shortest odd cycle is longer than five, which cannot happen in a
    /// P5-free graph.
    TooLong(Vec<usize>),
    Search(SearchError),
}

/// Picks the odd cycle the main branching colours.
///
/// An induced C5 if there is one (first found by the induced search), else
/// the lexicographically least triangle dominating `k`, else the
/// lexicographically least triangle. Vertices are returned in cyclic order.
pub fn pick_reference_cycle(k: &Graph, budget: Option<u64>) -> Result<Vec<usize>, CycleError> {
    if let Some(c5) = find_induced_subgraph_budgeted(k, &Graph::cycle(5), budget).map_err(CycleError::Search)? {
        return Ok(c5.image);
    }
    let n = k.n();
    let mut first = None;
    for t in triangles(k) {
        first.get_or_insert(t);
        let degree_sum: usize = t.iter().map(|&v| k.degree(v)).sum();
        if degree_sum + 3 >= n && k.closed_neighbourhood_size(&t) == n {
            return Ok(t.to_vec());
        }
    }
    if let Some(t) = first {
        return Ok(t.to_vec());
    }
    match shortest_odd_cycle(k) {
        None => Err(CycleError::Bipartite),
        Some(cycle) => Err(CycleError::TooLong(cycle)),
    }
}

/// Smallest, then lexicographically least, `D ⊆ candidates` with `|D| <= 2`
/// whose closed neighbourhood in `g` contains every target.
pub fn find_dominating_pair(g: &Graph, candidates: &[usize], targets: &[usize]) -> Option<Vec<usize>> {
    let Some(&t0) = targets.first() else {
        return Some(Vec::new());
    };
    let mut is_candidate = vec![false; g.n()];
    for &c in candidates {
        is_candidate[c] = true;
    }
    let covers = |x: usize, t: usize| x == t || g.has_edge(x, t);
    let closed = |t: usize| {
        let mut out: Vec<usize> = g.neighbours(t).iter().copied().chain([t]).filter(|&x| is_candidate[x]).collect();
        out.sort_unstable();
        out
    };

    let near_t0 = closed(t0);
    if let Some(&x) = near_t0.iter().find(|&&x| targets.iter().all(|&t| covers(x, t))) {
        return Some(vec![x]);
    }
    let mut best: Option<(usize, usize)> = None;
    for &x in &near_t0 {
        let Some(&t1) = targets.iter().find(|&&t| !covers(x, t)) else {
            continue;
        };
        for y in closed(t1) {
            let pair = (x.min(y), x.max(y));
            if best.is_some_and(|b| b <= pair) {
                continue;
            }
            if targets.iter().all(|&t| covers(x, t) || covers(y, t)) {
                best = Some(pair);
            }
        }
    }
    best.map(|(a, b)| vec![a, b])
}

/// Smallest, then lexicographically least, `D` with `|D| <= max` drawn from
/// the flagged candidates whose closed neighbourhood contains every target.
pub fn find_small_dominating_set(
    g: &Graph,
    is_candidate: &[bool],
    targets: &[usize],
    max: usize,
) -> Option<Vec<usize>> {
    fn grow(
        g: &Graph,
        is_candidate: &[bool],
        targets: &[usize],
        left: usize,
        chosen: &mut Vec<usize>,
        best: &mut Option<Vec<usize>>,
    ) {
        let covered = |t: usize| chosen.iter().any(|&x| x == t || g.has_edge(x, t));
        let Some(&t) = targets.iter().find(|&&t| !covered(t)) else {
            let mut set = chosen.clone();
            set.sort_unstable();
            if best.as_ref().is_none_or(|b| set < *b) {
                *best = Some(set);
            }
            return;
        };
        if left == 0 {
            return;
        }
        let near = g.neighbours(t).iter().copied().chain([t]).filter(|&x| is_candidate[x]);
        for x in near {
            chosen.push(x);
            grow(g, is_candidate, targets, left - 1, chosen, best);
            chosen.pop();
        }
    }
    for size in 0..=max {
        let mut best = None;
        grow(g, is_candidate, targets, size, &mut Vec::new(), &mut best);
        if best.is_some() {
            return best;
        }
    }
    None
}

/// Every assignment of colours `1..=k` to `vertices` that is proper on the
/// vertices and against the colours already present in `psi`, in
/// lexicographic order of `(position, colour)`. Vertices already coloured by
/// `psi` keep their colour.
pub fn consistent_colourings(g: &Graph, vertices: &[usize], psi: &PartialColouring) -> Vec<Vec<Colour>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(vertices.len());
    extend_colourings(g, vertices, psi, &mut current, &mut out);
    out
}

fn extend_colourings(
    g: &Graph,
    vertices: &[usize],
    psi: &PartialColouring,
    current: &mut Vec<Colour>,
    out: &mut Vec<Vec<Colour>>,
) {
    let i = current.len();
    if i == vertices.len() {
        out.push(current.clone());
        return;
    }
    let v = vertices[i];
    let options: Vec<Colour> = match psi.get(v) {
        Some(c) => vec![c],
        None => {
            let blocked = psi.neighbour_colours(g, v);
            (1..=psi.k()).filter(|&c| !blocked.contains(c)).collect()
        }
    };
    for c in options {
        let clash = (0..i).any(|j| current[j] == c && g.has_edge(vertices[j], v));
        if !clash {
            current.push(c);
            extend_colourings(g, vertices, psi, current, out);
            current.pop();
        }
    }
}
