//! 3-colouring of connected P5-free graphs through a small dominating set.

use crate::graph::{find_k4, Graph, PartialColouring};
use crate::propagation::propagate;
use crate::twosat::extend_by_2list;

use super::structure::consistent_colourings;
use super::verdict::{Diagnostic, SolveStats, Verdict, ViolationKind};
use super::{checked_certificate, component_stats};

/// First dominating set of order at most three that is a clique or an induced
/// P3: single vertices, then edges, then triples by centre and neighbour
/// pair.
pub fn find_dominating_clique_or_p3(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let dominates = |set: &[usize]| {
        let reach: usize = set.iter().map(|&v| g.degree(v) + 1).sum();
        reach >= n && g.closed_neighbourhood_size(set) == n
    };
    if let Some(v) = (0..n).find(|&v| dominates(&[v])) {
        return Some(vec![v]);
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| dominates(&[u, v])) {
        return Some(vec![u, v]);
    }
    for centre in 0..n {
        let nbrs = g.neighbours(centre);
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if dominates(&[centre, a, b]) {
                    return Some(vec![centre, a, b]);
                }
            }
        }
    }
    None
}

/// Decides 3-colourability of a connected P5-free graph.
pub fn solve_p5free_3col(g: &Graph) -> Verdict {
    let mut stats = SolveStats::default();
    let verdict = solve_inner(g, &mut stats);
    component_stats(verdict, stats)
}

fn solve_inner(g: &Graph, stats: &mut SolveStats) -> Verdict {
    if find_k4(g).is_some() {
        return Verdict::not_colourable(SolveStats::default());
    }
    if g.n() == 0 {
        return Verdict::colourable(Vec::new(), SolveStats::default());
    }
    let Some(d) = find_dominating_clique_or_p3(g) else {
        return Verdict::violation(
            Diagnostic::new(
                ViolationKind::NoDominatingSet,
                Vec::new(),
                "no dominating clique or induced P3 of order at most three",
            ),
            SolveStats::default(),
        );
    };
    let empty = PartialColouring::new(g.n(), 3);
    for colours in consistent_colourings(g, &d, &empty) {
        stats.branches += 1;
        let mut psi = empty.clone();
        for (&v, &c) in d.iter().zip(&colours) {
            psi.set(v, c);
        }
        let Ok(psi) = propagate(g, &psi) else {
            continue;
        };
        stats.two_sat_calls += 1;
        match extend_by_2list(g, &psi, &[]) {
            Ok(Some(full)) => return checked_certificate(g, full.into_raw()),
            Ok(None) => {}
            Err(err) => {
                return Verdict::violation(
                    Diagnostic::new(ViolationKind::ListTooLarge, Vec::new(), err.to_string()),
                    SolveStats::default(),
                )
            }
        }
    }
    Verdict::not_colourable(SolveStats::default())
}
