//! The 3-colouring decision procedure for partitioned probe P5-free graphs.

mod case2;
mod p5free;
mod structure;
mod verdict;
mod verify;

use std::time::Instant;

pub use case2::{decompose, CaseDecomposition};
pub use p5free::{find_dominating_clique_or_p3, solve_p5free_3col};
pub use structure::{
    consistent_colourings, find_dominating_pair, find_small_dominating_set, pick_reference_cycle, CycleError,
};
pub use verdict::{Diagnostic, SolveError, SolveStats, Status, Verdict, ViolationKind};
pub use verify::{verify_colouring, Violation};

use crate::graph::{
    bipartition, connected_components, find_induced_subgraph_budgeted, find_k4, Bipartition, Colour,
    Graph, PartialColouring, ProbeInstance,
};
use crate::oracle::{oracle_k_colourable, ORACLE_MAX_ORDER};
use crate::propagation::propagate_in_place;
use crate::twosat::{extend_by_2list, ListError};

/// Upper bound on 2-SAT calls for one component: 30 cycle colourings, 9
/// colourings of the dominating pair and 3 colours of a branching vertex.
pub const MAX_TWO_SAT_CALLS_PER_COMPONENT: u64 = 810;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolverOptions {
    /// Re-solve components that fail a structural check by brute force.
    pub oracle_fallback: bool,
    /// Cap on search nodes for each induced-subgraph query.
    pub search_budget: Option<u64>,
    /// Recorded in the stats; the solver itself is deterministic.
    pub seed: Option<u64>,
}

/// Result of one branch of the component search.
#[derive(Debug)]
pub(crate) enum Outcome {
    Coloured(Vec<Colour>),
    Backtrack,
    Violation(Diagnostic),
}

/// Decides whether a probe instance is 3-colourable, one connected component
/// at a time. Components that are P5-free as plain graphs go to
/// [`solve_p5free_3col`], the rest to [`solve_probe_component`].
pub fn solve_3col(inst: &ProbeInstance, opts: &SolverOptions) -> Result<Verdict, SolveError> {
    let start = Instant::now();
    let g = inst.graph();
    let mut stats = SolveStats { seed: opts.seed, ..SolveStats::default() };
    let mut colouring = vec![0; g.n()];
    let p5 = Graph::path(5);

    for comp in connected_components(g) {
        let local = g.induced_subgraph(&comp);
        let flags: Vec<bool> = comp.iter().map(|&v| inst.is_probe(v)).collect();
        let mut verdict = if local.n() == 1 {
            component_stats(Verdict::colourable(vec![1], SolveStats::default()), SolveStats::default())
        } else if find_induced_subgraph_budgeted(&local, &p5, opts.search_budget)?.is_none() {
            solve_p5free_3col(&local)
        } else {
            solve_probe_component(&local, &flags, opts.search_budget)?
        };
        if verdict.status == Status::NotProbeP5Free && opts.oracle_fallback {
            if local.n() > ORACLE_MAX_ORDER {
                return Err(SolveError::FallbackTooLarge(local.n()));
            }
            let oracle = oracle_k_colourable(&local, 3).expect("component within oracle range");
            verdict = match oracle {
                Some(cert) => Verdict::colourable(cert, verdict.stats),
                None => Verdict::not_colourable(verdict.stats),
            };
        }
        stats.absorb(&verdict.stats);
        match verdict.status {
            Status::Colourable => {
                let cert = verdict.certificate.expect("colourable verdicts carry a certificate");
                for (&v, c) in comp.iter().zip(cert) {
                    colouring[v] = c;
                }
            }
            Status::NotColourable => {
                stats.time_ms = start.elapsed().as_millis() as u64;
                return Ok(Verdict::not_colourable(stats));
            }
            Status::NotProbeP5Free => {
                stats.time_ms = start.elapsed().as_millis() as u64;
                let diagnostic = verdict.diagnostic.expect("violations carry a diagnostic").relabelled(&comp);
                return Ok(Verdict::violation(diagnostic, stats));
            }
        }
    }
    stats.time_ms = start.elapsed().as_millis() as u64;
    let mut verdict = checked_certificate(g, colouring);
    verdict.stats = stats;
    Ok(verdict)
}

/// Solves one connected component that is not P5-free as a plain graph.
/// `is_probe` flags the probe vertices of `g`.
pub fn solve_probe_component(g: &Graph, is_probe: &[bool], budget: Option<u64>) -> Result<Verdict, SolveError> {
    let mut stats = SolveStats::default();
    let verdict = probe_component(g, is_probe, budget, &mut stats)?;
    Ok(component_stats(verdict, stats))
}

fn probe_component(
    g: &Graph,
    is_probe: &[bool],
    budget: Option<u64>,
    stats: &mut SolveStats,
) -> Result<Verdict, SolveError> {
    let none = SolveStats::default;
    if find_k4(g).is_some() {
        return Ok(Verdict::not_colourable(none()));
    }
    let probes: Vec<usize> = (0..g.n()).filter(|&v| is_probe[v]).collect();
    let probe_graph = g.induced_subgraph(&probes);
    let mut odd = Vec::new();
    let mut sides = vec![0u8; g.n()];
    for comp in connected_components(&probe_graph) {
        let sub = probe_graph.induced_subgraph(&comp);
        match bipartition(&sub) {
            Bipartition::TwoColouring(side) => {
                for (&v, s) in comp.iter().zip(side) {
                    sides[probes[v]] = s;
                }
            }
            Bipartition::OddClosedWalk(_) => odd.push(comp.iter().map(|&v| probes[v]).collect::<Vec<_>>()),
        }
    }
    match odd.len() {
        0 => {
            let cert = (0..g.n()).map(|v| if is_probe[v] { sides[v] + 1 } else { 3 }).collect();
            return Ok(checked_certificate(g, cert));
        }
        1 => {}
        _ => return Ok(Verdict::not_colourable(none())),
    }
    let k = odd.pop().expect("one odd component");
    let kg = g.induced_subgraph(&k);
    let cycle: Vec<usize> = match pick_reference_cycle(&kg, budget) {
        Ok(local) => local.iter().map(|&v| k[v]).collect(),
        Err(CycleError::Search(err)) => return Err(err.into()),
        Err(CycleError::Bipartite) => unreachable!("component was found non-bipartite"),
        Err(CycleError::TooLong(c)) => {
            return Ok(Verdict::violation(
                Diagnostic::new(
                    ViolationKind::OddCycleTooLong,
                    c.iter().map(|&v| k[v]).collect(),
                    format!("shortest odd cycle among probes has length {}", c.len()),
                ),
                none(),
            ))
        }
    };
    if (0..g.n()).any(|v| !cycle.contains(&v) && cycle.iter().all(|&c| g.has_edge(v, c))) {
        return Ok(Verdict::not_colourable(none()));
    }

    let mut in_k = vec![false; g.n()];
    for &v in &k {
        in_k[v] = true;
    }
    let empty = PartialColouring::new(g.n(), 3);
    let mut violation = None;
    for colours in consistent_colourings(g, &cycle, &empty) {
        stats.branches += 1;
        let mut psi = empty.clone();
        for (&v, &c) in cycle.iter().zip(&colours) {
            psi.set(v, c);
        }
        if propagate_in_place(g, &mut psi, Some(&in_k)).is_err() {
            continue;
        }
        let outcome = if cycle.len() == 5 {
            run_case1(g, psi, stats)
        } else {
            case2::run_case2(g, is_probe, &k, psi, stats)
        };
        match outcome {
            Outcome::Coloured(cert) => return Ok(checked_certificate(g, cert)),
            Outcome::Backtrack => {}
            Outcome::Violation(d) => {
                violation.get_or_insert(d);
            }
        }
    }
    Ok(match violation {
        Some(d) => Verdict::violation(d, none()),
        None => Verdict::not_colourable(none()),
    })
}

/// Largest dominating set branched on when the C5 case leaves vertices
/// without a coloured neighbour.
pub const CASE1_MAX_DOMINATOR: usize = 3;

/// The odd cycle is a C5. After propagating over the whole graph, a
/// non-probe joined to the cycle only through fill edges can still lack a
/// coloured neighbour; such vertices are dominated by at most
/// [`CASE1_MAX_DOMINATOR`] uncoloured vertices, whose colourings are tried in
/// turn. Each resulting branch is a 2-list-colouring instance.
fn run_case1(g: &Graph, mut psi: PartialColouring, stats: &mut SolveStats) -> Outcome {
    if propagate_in_place(g, &mut psi, None).is_err() {
        return Outcome::Backtrack;
    }
    let unreached = |psi: &PartialColouring| -> Vec<usize> {
        (0..g.n()).filter(|&v| !psi.is_coloured(v) && psi.neighbour_colours(g, v).is_empty()).collect()
    };
    let targets = unreached(&psi);
    if targets.is_empty() {
        return two_sat_outcome(g, &psi, &[], stats, |_, full| Outcome::Coloured(full));
    }
    let uncoloured: Vec<bool> = (0..g.n()).map(|v| !psi.is_coloured(v)).collect();
    let Some(dominator) = find_small_dominating_set(g, &uncoloured, &targets, CASE1_MAX_DOMINATOR) else {
        return Outcome::Violation(Diagnostic::new(
            ViolationKind::NoColouredNeighbour,
            targets,
            "vertices without a coloured neighbour after propagation from an induced C5 have no small dominating set",
        ));
    };
    let mut violation = None;
    for colours in consistent_colourings(g, &dominator, &psi) {
        stats.branches += 1;
        let mut next = psi.clone();
        for (&v, &c) in dominator.iter().zip(&colours) {
            next.set(v, c);
        }
        if propagate_in_place(g, &mut next, None).is_err() {
            continue;
        }
        if let Some(&v) = unreached(&next).first() {
            violation.get_or_insert(Diagnostic::new(
                ViolationKind::NoColouredNeighbour,
                vec![v],
                "vertex has no coloured neighbour after colouring its dominator",
            ));
            continue;
        }
        match two_sat_outcome(g, &next, &[], stats, |_, full| Outcome::Coloured(full)) {
            Outcome::Backtrack => {}
            Outcome::Violation(d) => {
                violation.get_or_insert(d);
            }
            coloured => return coloured,
        }
    }
    violation.map_or(Outcome::Backtrack, Outcome::Violation)
}

/// Runs 2-SAT on `psi` and hands a success to `finish`.
pub(crate) fn two_sat_outcome(
    g: &Graph,
    psi: &PartialColouring,
    extra: &[crate::twosat::EqualityConstraint],
    stats: &mut SolveStats,
    finish: impl FnOnce(&mut SolveStats, Vec<Colour>) -> Outcome,
) -> Outcome {
    stats.two_sat_calls += 1;
    match extend_by_2list(g, psi, extra) {
        Ok(Some(full)) => finish(stats, full.into_raw()),
        Ok(None) => Outcome::Backtrack,
        Err(ListError::ListTooLarge { vertex, size }) => Outcome::Violation(Diagnostic::new(
            ViolationKind::ListTooLarge,
            vec![vertex],
            format!("uncoloured vertex has {size} available colours"),
        )),
        Err(ListError::Improper(err)) => Outcome::Violation(Diagnostic::new(
            ViolationKind::InvalidCertificate,
            Vec::new(),
            err.to_string(),
        )),
    }
}

/// Wraps a complete colouring after checking it.
pub(crate) fn checked_certificate(g: &Graph, cert: Vec<Colour>) -> Verdict {
    match verify_colouring(g, &cert, 3) {
        Ok(()) => Verdict::colourable(cert, SolveStats::default()),
        Err(err) => Verdict::violation(
            Diagnostic::new(ViolationKind::InvalidCertificate, Vec::new(), err.to_string()),
            SolveStats::default(),
        ),
    }
}

/// Attaches the stats of a single component to its verdict.
pub(crate) fn component_stats(mut verdict: Verdict, mut stats: SolveStats) -> Verdict {
    stats.components = 1;
    stats.max_two_sat_calls_per_component = stats.two_sat_calls;
    verdict.stats = stats;
    verdict
}
