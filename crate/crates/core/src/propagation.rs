//! Forced-colour propagation for partial `k`-colourings.
//!
//! An uncoloured vertex whose neighbours already show `k - 1` distinct colours
//! can only take the remaining colour. Repeating this until nothing changes
//! either yields an extension of the input or finds a vertex whose
//! neighbourhood shows all `k` colours, in which case no extension exists.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{ColourSet, Graph, PartialColouring};

/// Propagation stopped at a vertex whose neighbours carry every colour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("vertex {vertex} sees all colours in its neighbourhood")]
pub struct Conflict {
    pub vertex: usize,
}

/// Runs propagation to its fixpoint on a copy of `psi`.
pub fn propagate(g: &Graph, psi: &PartialColouring) -> Result<PartialColouring, Conflict> {
    let mut out = psi.clone();
    propagate_in_place(g, &mut out, None)?;
    Ok(out)
}

/// Propagates in place, optionally restricted to the subgraph induced by the
/// vertices flagged in `active`. Returns the number of colours assigned.
///
/// On a conflict `psi` is left partially propagated.
pub fn propagate_in_place(
    g: &Graph,
    psi: &mut PartialColouring,
    active: Option<&[bool]>,
) -> Result<usize, Conflict> {
    let n = g.n();
    let k = psi.k();
    let full = ColourSet::full(k);
    let live = |v: usize| active.is_none_or(|a| a[v]);

    let mut seen = vec![ColourSet::EMPTY; n];
    for v in (0..n).filter(|&v| live(v)) {
        if let Some(c) = psi.get(v) {
            for &w in g.neighbours(v) {
                if live(w) {
                    seen[w] = seen[w].with(c);
                }
            }
        }
    }
    if let Some(vertex) = (0..n).find(|&v| live(v) && seen[v] == full) {
        return Err(Conflict { vertex });
    }

    let mut queue: VecDeque<usize> = (0..n)
        .filter(|&v| live(v) && !psi.is_coloured(v) && seen[v].len() + 1 == k as usize)
        .collect();
    let mut assigned = 0;
    while let Some(v) = queue.pop_front() {
        if psi.is_coloured(v) {
            continue;
        }
        let c = full.minus(seen[v]).first().expect("queued vertex misses one colour");
        psi.set(v, c);
        assigned += 1;
        let mut clash = false;
        for &w in g.neighbours(v) {
            if !live(w) || seen[w].contains(c) {
                continue;
            }
            seen[w] = seen[w].with(c);
            if seen[w] == full {
                clash = true;
            } else if seen[w].len() + 1 == k as usize && !psi.is_coloured(w) {
                queue.push_back(w);
            }
        }
        if clash {
            let vertex = (0..n)
                .find(|&v| live(v) && seen[v] == full)
                .expect("a full neighbourhood was just recorded");
            return Err(Conflict { vertex });
        }
    }
    debug_assert!(assigned <= n);
    Ok(assigned)
}
