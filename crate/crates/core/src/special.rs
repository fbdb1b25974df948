//! Solvers for narrower classes: triangle-free probe P5-free graphs, probe
//! (P3 + sP1)-free graphs, and the (s+1)P2-freeness check for probe
//! (P2 + sP1)-free graphs.

use std::time::Instant;

use thiserror::Error;

use crate::graph::{
    bipartition, connected_components, find_induced_subgraph, find_k4, find_triangle, Bipartition,
    Colour, Graph, PartialColouring, ProbeInstance, SearchError,
};
use crate::propagation::propagate;
use crate::solver::{
    verify_colouring, Diagnostic, SolveStats, Verdict, ViolationKind,
};
use crate::twosat::extend_by_2list;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecialError {
    #[error("graph contains the triangle {0:?}")]
    NotTriangleFree([usize; 3]),
    #[error("input is not probe P5-free: {0}")]
    Violation(Diagnostic),
    #[error(transparent)]
    Search(#[from] SearchError),
}

/// Colours of the C5 vertices and of the classes `V(i, i+2)`, indexed by
/// the first cycle position `i` of the class.
const CYCLE_COLOURS: [Colour; 5] = [1, 2, 1, 2, 3];
const CLASS_COLOURS: [Colour; 5] = [2, 1, 2, 3, 1];

/// 3-colours a triangle-free graph that is probe P5-free for its partition.
///
/// Per component: if the probes induce a bipartite graph, probes get colours
/// 1 and 2 and non-probes 3. Otherwise an induced C5 among the probes fixes
/// the colouring: every other vertex has exactly two neighbours on it at
/// distance two along the cycle, and the class decides the colour.
pub fn colour_trianglefree_probe_p5(inst: &ProbeInstance) -> Result<Vec<Colour>, SpecialError> {
    let g = inst.graph();
    if let Some(t) = find_triangle(g) {
        return Err(SpecialError::NotTriangleFree(t));
    }
    let mut colouring = vec![0; g.n()];
    for comp in connected_components(g) {
        let probes: Vec<usize> = comp.iter().copied().filter(|&v| inst.is_probe(v)).collect();
        let pg = g.induced_subgraph(&probes);
        match bipartition(&pg) {
            Bipartition::TwoColouring(side) => {
                for &v in &comp {
                    colouring[v] = 3;
                }
                for (&v, s) in probes.iter().zip(side) {
                    colouring[v] = s + 1;
                }
            }
            Bipartition::OddClosedWalk(_) => {
                let c5 = find_induced_subgraph(&pg, &Graph::cycle(5))?.ok_or_else(|| {
                    SpecialError::Violation(Diagnostic::new(
                        ViolationKind::OddCycleTooLong,
                        probes.clone(),
                        "probes induce an odd cycle but no C5",
                    ))
                })?;
                let cycle: Vec<usize> = c5.image.iter().map(|&v| probes[v]).collect();
                for (i, &v) in cycle.iter().enumerate() {
                    colouring[v] = CYCLE_COLOURS[i];
                }
                for &v in comp.iter().filter(|v| !cycle.contains(v)) {
                    let on_cycle: Vec<usize> = (0..5).filter(|&i| g.has_edge(v, cycle[i])).collect();
                    let class = match on_cycle[..] {
                        [a, b] if b == a + 2 => a,
                        [a, b] if a + 3 == b => b,
                        _ => {
                            return Err(SpecialError::Violation(Diagnostic::new(
                                ViolationKind::UnclassifiedVertex,
                                vec![v],
                                "vertex does not see exactly two cycle vertices at distance two",
                            )))
                        }
                    };
                    colouring[v] = CLASS_COLOURS[class];
                }
            }
        }
    }
    verify_colouring(g, &colouring, 3).map_err(|err| {
        SpecialError::Violation(Diagnostic::new(ViolationKind::InvalidCertificate, Vec::new(), err.to_string()))
    })?;
    Ok(colouring)
}

/// Whether `g` has no induced `(s + 1)P2`; defined for `s <= 4`.
pub fn is_multi_p2_free(g: &Graph, s: usize) -> Result<bool, SearchError> {
    Ok(find_induced_subgraph(g, &Graph::multi_p2(s + 1))?.is_none())
}

/// Decides 3-colourability of a partitioned probe `(P3 + sP1)`-free graph.
pub fn solve_3col_p3sp1(inst: &ProbeInstance, s: usize) -> Result<Verdict, SearchError> {
    let start = Instant::now();
    let mut stats = SolveStats::default();
    let g = inst.graph();
    let mut colouring = vec![0; g.n()];
    for comp in connected_components(g) {
        stats.components += 1;
        let local = g.induced_subgraph(&comp);
        let flags: Vec<bool> = comp.iter().map(|&v| inst.is_probe(v)).collect();
        let before = stats.two_sat_calls;
        let outcome = solve_with_deletions(&local, &flags, s, &mut stats)?;
        stats.max_two_sat_calls_per_component =
            stats.max_two_sat_calls_per_component.max(stats.two_sat_calls - before);
        match outcome {
            Ok(Some(cert)) => {
                for (&v, c) in comp.iter().zip(cert) {
                    colouring[v] = c;
                }
            }
            Ok(None) => {
                stats.time_ms = start.elapsed().as_millis() as u64;
                return Ok(Verdict::not_colourable(stats));
            }
            Err(diag) => {
                stats.time_ms = start.elapsed().as_millis() as u64;
                let diag = Diagnostic { witnesses: diag.witnesses.iter().map(|&w| comp[w]).collect(), ..diag };
                return Ok(Verdict::violation(diag, stats));
            }
        }
    }
    stats.time_ms = start.elapsed().as_millis() as u64;
    Ok(match verify_colouring(g, &colouring, 3) {
        Ok(()) => Verdict::colourable(colouring, stats),
        Err(err) => Verdict::violation(
            Diagnostic::new(ViolationKind::InvalidCertificate, Vec::new(), err.to_string()),
            stats,
        ),
    })
}

type Attempt = Result<Option<Vec<Colour>>, Diagnostic>;

/// Strips non-probes of degree below three until none is left, solves what
/// remains component by component, and gives the stripped vertices a free
/// colour in reverse order.
fn solve_with_deletions(g: &Graph, is_probe: &[bool], s: usize, stats: &mut SolveStats) -> Result<Attempt, SearchError> {
    if find_k4(g).is_some() {
        return Ok(Ok(None));
    }
    let n = g.n();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut stack = Vec::new();
    let mut queue: Vec<usize> = (0..n).filter(|&v| !is_probe[v] && degree[v] < 3).collect();
    while let Some(v) = queue.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        stack.push(v);
        for &w in g.neighbours(v) {
            if alive[w] {
                degree[w] -= 1;
                if !is_probe[w] && degree[w] == 2 {
                    queue.push(w);
                }
            }
        }
    }
    let rest: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let core = g.induced_subgraph(&rest);
    let mut colouring = vec![0; n];
    for comp in connected_components(&core) {
        let cg = core.induced_subgraph(&comp);
        let flags: Vec<bool> = comp.iter().map(|&v| is_probe[rest[v]]).collect();
        match solve_core(&cg, &flags, s, stats)? {
            Ok(Some(cert)) => {
                for (&v, c) in comp.iter().zip(cert) {
                    colouring[rest[v]] = c;
                }
            }
            Ok(None) => return Ok(Ok(None)),
            Err(diag) => {
                let witnesses = diag.witnesses.iter().map(|&w| rest[comp[w]]).collect();
                return Ok(Err(Diagnostic { witnesses, ..diag }));
            }
        }
    }
    for &v in stack.iter().rev() {
        let used = g.neighbours(v).iter().map(|&w| colouring[w]).filter(|&c| c != 0).collect::<Vec<_>>();
        let c = (1..=3).find(|c| !used.contains(c)).expect("fewer than three coloured neighbours");
        colouring[v] = c;
    }
    Ok(Ok(Some(colouring)))
}

/// A connected graph in which every non-probe has degree at least three.
fn solve_core(g: &Graph, is_probe: &[bool], s: usize, stats: &mut SolveStats) -> Result<Attempt, SearchError> {
    let n = g.n();
    if n == 1 {
        return Ok(Ok(Some(vec![1])));
    }
    let probes: Vec<usize> = (0..n).filter(|&v| is_probe[v]).collect();
    let nonprobes: Vec<usize> = (0..n).filter(|&v| !is_probe[v]).collect();
    let pg = g.induced_subgraph(&probes);
    let p3 = find_induced_subgraph(&pg, &Graph::path(3))?;

    let Some(q) = p3 else {
        let Some(&u) = nonprobes.first() else {
            // Connected and P3-free: a clique of order at most three.
            return Ok(Ok(Some((1..=n as Colour).collect())));
        };
        return Ok(Ok(case_without_p3(g, is_probe, &probes, u, s, stats)));
    };

    if probes.len() <= 4 * s + 1 {
        return Ok(Ok(branch_then_extend(g, &probes, stats)));
    }

    let q: Vec<usize> = q.image.iter().map(|&v| probes[v]).collect();
    let mut blocked = vec![false; n];
    for &v in &q {
        blocked[v] = true;
        for &w in g.neighbours(v) {
            blocked[w] = true;
        }
    }
    let mut independent: Vec<usize> = Vec::new();
    for &v in &probes {
        if !blocked[v] && independent.iter().all(|&w| !g.has_edge(v, w)) {
            independent.push(v);
        }
    }
    if s == 0 || independent.len() >= s {
        let mut witnesses = q.clone();
        witnesses.extend(independent.iter().take(s));
        return Ok(Err(Diagnostic::new(
            ViolationKind::ForbiddenPattern,
            witnesses,
            format!("probes induce P3 + {s}P1"),
        )));
    }
    let mut d = q;
    d.extend(&independent);
    let rest: Vec<usize> = probes.iter().copied().filter(|v| !d.contains(v)).collect();
    let undominated = |set: &[usize]| nonprobes.iter().any(|&u| set.iter().all(|&x| !g.has_edge(u, x)));
    for size in 0..=(3 * s).min(rest.len()) {
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            let mut set = d.clone();
            set.extend(pick.iter().map(|&i| rest[i]));
            if !undominated(&set) {
                // Any dominating choice decides the instance, because every
                // colouring of the set is then tried exhaustively.
                return Ok(Ok(branch_then_extend(g, &set, stats)));
            }
            if !next_combination(&mut pick, rest.len()) {
                break;
            }
        }
    }
    Ok(Ok(None))
}

/// Case where the probes induce no P3: a non-probe `u` sees all but a few
/// probes, and colour 3 is used exactly on an independent set `S` of its
/// probe non-neighbours together with the non-probes outside `N(S)`.
fn case_without_p3(
    g: &Graph,
    is_probe: &[bool],
    probes: &[usize],
    u: usize,
    s: usize,
    stats: &mut SolveStats,
) -> Option<Vec<Colour>> {
    let far: Vec<usize> = probes.iter().copied().filter(|&v| !g.has_edge(u, v)).collect();
    if far.len() > 3 * (s + 2) {
        return None;
    }
    let n = g.n();
    let mut chosen = Vec::new();
    let mut found = None;
    independent_subsets(g, &far, 0, &mut chosen, &mut |set| {
        stats.branches += 1;
        let mut third = vec![false; n];
        for &v in set {
            third[v] = true;
        }
        for v in (0..n).filter(|&v| !is_probe[v]) {
            third[v] = !set.iter().any(|&x| g.has_edge(v, x));
        }
        let keep: Vec<usize> = (0..n).filter(|&v| !third[v]).collect();
        if let Bipartition::TwoColouring(side) = bipartition(&g.induced_subgraph(&keep)) {
            let mut colouring = vec![3; n];
            for (&v, sd) in keep.iter().zip(side) {
                colouring[v] = sd + 1;
            }
            found = Some(colouring);
            return true;
        }
        false
    });
    found
}

/// Calls `visit` on independent subsets of `pool[from..]` extending `chosen`,
/// smallest-index-first, until it returns `true`.
fn independent_subsets(
    g: &Graph,
    pool: &[usize],
    from: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if visit(chosen) {
        return true;
    }
    for i in from..pool.len() {
        let v = pool[i];
        if chosen.iter().all(|&w| !g.has_edge(v, w)) {
            chosen.push(v);
            if independent_subsets(g, pool, i + 1, chosen, visit) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Tries every colouring of `set` (up to renaming colours, which is safe as
/// nothing else is coloured), propagates, and extends by 2-SAT. Every vertex
/// outside `set` must have a neighbour in it.
fn branch_then_extend(g: &Graph, set: &[usize], stats: &mut SolveStats) -> Option<Vec<Colour>> {
    let mut psi = PartialColouring::new(g.n(), 3);
    first_use_colourings(g, set, 0, 0, &mut psi, &mut |psi| {
        stats.branches += 1;
        let psi = propagate(g, psi).ok()?;
        stats.two_sat_calls += 1;
        extend_by_2list(g, &psi, &[]).ok().flatten().map(PartialColouring::into_raw)
    })
}

fn first_use_colourings(
    g: &Graph,
    set: &[usize],
    i: usize,
    used: Colour,
    psi: &mut PartialColouring,
    leaf: &mut dyn FnMut(&PartialColouring) -> Option<Vec<Colour>>,
) -> Option<Vec<Colour>> {
    if i == set.len() {
        return leaf(psi);
    }
    let v = set[i];
    for c in 1..=(used + 1).min(3) {
        if g.neighbours(v).iter().any(|&w| psi.get(w) == Some(c)) {
            continue;
        }
        psi.set(v, c);
        if let Some(found) = first_use_colourings(g, set, i + 1, used.max(c), psi, leaf) {
            return Some(found);
        }
        psi.clear(v);
    }
    None
}

fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    let Some(i) = (0..k).rev().find(|&i| pick[i] < n - k + i) else {
        return false;
    };
    pick[i] += 1;
    for j in i + 1..k {
        pick[j] = pick[j - 1] + 1;
    }
    true
}
