//! The branch where the reference cycle is a triangle.

use crate::graph::{bipartition, connected_components, Bipartition, Colour, ColourSet, Graph, PartialColouring};
use crate::propagation::propagate_in_place;
use crate::twosat::EqualityConstraint;

use super::structure::{consistent_colourings, find_dominating_pair};
use super::verdict::{Diagnostic, SolveStats, ViolationKind};
use super::{two_sat_outcome, verify_colouring, Outcome};

/// Partition of the vertices relative to the odd probe component `K` and a
/// partial colouring `psi` that has been propagated through `K`.
///
/// Index `i` of the per-colour arrays holds colour `i + 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CaseDecomposition {
    pub k: Vec<usize>,
    /// Coloured vertices of `K`, by colour.
    pub k_c: [Vec<usize>; 3],
    /// Uncoloured vertices of `K` with a neighbour of the given colour.
    pub k_u: [Vec<usize>; 3],
    /// Uncoloured vertices of `K` without coloured neighbours.
    pub k_r: Vec<usize>,
    /// Probes outside `K`.
    pub i: Vec<usize>,
    /// Non-probes adjacent to `I` seeing two colours of `K`.
    pub m_c: Vec<usize>,
    pub m_u: [Vec<usize>; 3],
    pub m_r: Vec<usize>,
    /// Non-probes with no neighbour in `I`.
    pub l_c: Vec<usize>,
    pub l_u: [Vec<usize>; 3],
    pub l_r: Vec<usize>,
    /// Vertices of `I` with no neighbour in `m_c`.
    pub j: Vec<usize>,
    /// Vertices of `l_r` whose neighbours all lie in one `k_u` class, with
    /// the colour they will receive.
    pub removed_lr: Vec<(usize, Colour)>,
}

/// Splits the vertices as described on [`CaseDecomposition`]. Fails if an
/// uncoloured vertex of `K` sees two colours, which propagation rules out.
pub fn decompose(
    g: &Graph,
    is_probe: &[bool],
    k: &[usize],
    psi: &PartialColouring,
) -> Result<CaseDecomposition, Diagnostic> {
    let n = g.n();
    let mut in_k = vec![false; n];
    for &v in k {
        in_k[v] = true;
    }
    let mut d = CaseDecomposition { k: k.to_vec(), ..Default::default() };
    let mut class = vec![None; n];
    for &v in k {
        let seen = psi.neighbour_colours(g, v);
        match psi.get(v) {
            Some(c) => d.k_c[c as usize - 1].push(v),
            None => match seen.len() {
                0 => d.k_r.push(v),
                1 => {
                    let c = seen.first().expect("one colour");
                    d.k_u[c as usize - 1].push(v);
                    class[v] = Some(c);
                }
                _ => {
                    return Err(Diagnostic::new(
                        ViolationKind::UnforcedTwoColourVertex,
                        vec![v],
                        "uncoloured probe sees two colours after propagation",
                    ))
                }
            },
        }
    }
    d.i = (0..n).filter(|&v| is_probe[v] && !in_k[v]).collect();
    let mut in_i = vec![false; n];
    for &v in &d.i {
        in_i[v] = true;
    }
    let mut in_mc = vec![false; n];
    for v in (0..n).filter(|&v| !is_probe[v]) {
        let seen = psi.neighbour_colours(g, v);
        let in_m = g.neighbours(v).iter().any(|&w| in_i[w]);
        let (c_set, u_set, r_set) = if in_m {
            (&mut d.m_c, &mut d.m_u, &mut d.m_r)
        } else {
            (&mut d.l_c, &mut d.l_u, &mut d.l_r)
        };
        match seen.len() {
            0 => r_set.push(v),
            1 => u_set[seen.first().expect("one colour") as usize - 1].push(v),
            _ => {
                c_set.push(v);
                in_mc[v] |= in_m;
            }
        }
    }
    d.j = d.i.iter().copied().filter(|&v| !g.neighbours(v).iter().any(|&w| in_mc[w])).collect();
    for &v in &d.l_r {
        let mut classes = g.neighbours(v).iter().map(|&w| class[w]);
        if let Some(Some(c)) = classes.next() {
            if classes.all(|x| x == Some(c)) {
                d.removed_lr.push((v, c));
            }
        }
    }
    Ok(d)
}

/// How the vertices of `J` get a coloured neighbour.
enum JMode {
    /// `J` is empty.
    Empty,
    /// Two unforced classes are present: branch on this vertex of `M_u`.
    Branch(usize),
    /// Only class `i` is present: drop `J` and tie its neighbourhoods.
    Tie(Colour),
}

/// A vertex subset of the host with id maps in both directions.
struct Sub {
    graph: Graph,
    to_global: Vec<usize>,
    to_local: Vec<usize>,
}

impl Sub {
    fn new(g: &Graph, keep: &[bool]) -> Self {
        let to_global: Vec<usize> = (0..g.n()).filter(|&v| keep[v]).collect();
        let mut to_local = vec![usize::MAX; g.n()];
        for (i, &v) in to_global.iter().enumerate() {
            to_local[v] = i;
        }
        Sub { graph: g.induced_subgraph(&to_global), to_global, to_local }
    }
}

pub(crate) fn run_case2(
    g: &Graph,
    is_probe: &[bool],
    k: &[usize],
    psi: PartialColouring,
    stats: &mut SolveStats,
) -> Outcome {
    let dec = match decompose(g, is_probe, k, &psi) {
        Ok(dec) => dec,
        Err(diag) => return Outcome::Violation(diag),
    };
    let n = g.n();
    let mut keep = vec![true; n];
    for &(v, _) in &dec.removed_lr {
        keep[v] = false;
    }
    for &v in &dec.m_r {
        keep[v] = false;
    }
    let mut targets: Vec<usize> = dec.k_r.clone();
    targets.extend(dec.l_r.iter().copied().filter(|&v| keep[v]));
    targets.sort_unstable();
    let Some(dom) = find_dominating_pair(g, k, &targets) else {
        return Outcome::Violation(Diagnostic::new(
            ViolationKind::NoDominatingPair,
            targets,
            "no two probe-component vertices dominate the vertices without coloured neighbours",
        ));
    };

    let classes: Vec<usize> = (0..3).filter(|&i| !dec.m_u[i].is_empty()).collect();
    let mode = if dec.j.is_empty() {
        JMode::Empty
    } else if classes.len() >= 2 {
        JMode::Branch(dec.m_u.iter().flatten().copied().min().expect("nonempty class"))
    } else if let [i] = classes[..] {
        JMode::Tie(i as Colour + 1)
    } else {
        return Outcome::Violation(Diagnostic::new(
            ViolationKind::EmptyUnforcedNeighbours,
            dec.j.clone(),
            "probes outside the odd component have no neighbour seeing a colour",
        ));
    };
    if let JMode::Tie(_) = mode {
        for &v in &dec.j {
            keep[v] = false;
        }
    }

    let sub = Sub::new(g, &keep);
    let mut local_psi = PartialColouring::new(sub.graph.n(), 3);
    for (i, &v) in sub.to_global.iter().enumerate() {
        if let Some(c) = psi.get(v) {
            local_psi.set(i, c);
        }
    }
    let j_parts = match mode {
        JMode::Tie(_) => j_components(g, &dec.j),
        _ => Vec::new(),
    };
    let equalities: Vec<EqualityConstraint> = match mode {
        JMode::Tie(i) => j_parts
            .iter()
            .filter(|part| part.len() > 1)
            .flat_map(|part| {
                let nbrs: Vec<usize> = outer_neighbours(g, part).into_iter().filter(|&w| keep[w]).map(|w| sub.to_local[w]).collect();
                EqualityConstraint::chain(&nbrs, ColourSet::full(3).without(i))
            })
            .collect(),
        _ => Vec::new(),
    };
    let dom_local: Vec<usize> = dom.iter().map(|&v| sub.to_local[v]).collect();

    let mut violation = None;
    for dcols in consistent_colourings(&sub.graph, &dom_local, &local_psi) {
        stats.branches += 1;
        let mut with_d = local_psi.clone();
        for (&v, &c) in dom_local.iter().zip(&dcols) {
            with_d.set(v, c);
        }
        let options: Vec<PartialColouring> = match mode {
            JMode::Branch(v) => {
                let lv = sub.to_local[v];
                consistent_colourings(&sub.graph, &[lv], &with_d)
                    .into_iter()
                    .map(|c| {
                        let mut p = with_d.clone();
                        p.set(lv, c[0]);
                        p
                    })
                    .collect()
            }
            _ => vec![with_d],
        };
        for mut option in options {
            if matches!(mode, JMode::Branch(_)) {
                stats.branches += 1;
            }
            if propagate_in_place(&sub.graph, &mut option, None).is_err() {
                continue;
            }
            let outcome = two_sat_outcome(&sub.graph, &option, &equalities, stats, |_, local| {
                let mut colouring = vec![0; n];
                for (i, &c) in local.iter().enumerate() {
                    colouring[sub.to_global[i]] = c;
                }
                match finalize_extension(g, &dec, &j_parts, &mode, colouring) {
                    Ok(full) => Outcome::Coloured(full),
                    Err(diag) => Outcome::Violation(diag),
                }
            });
            match outcome {
                Outcome::Coloured(full) => return Outcome::Coloured(full),
                Outcome::Backtrack => {}
                Outcome::Violation(diag) => {
                    let diag = if diag.kind == ViolationKind::ListTooLarge { diag.relabelled(&sub.to_global) } else { diag };
                    violation.get_or_insert(diag);
                }
            }
        }
    }
    match violation {
        Some(diag) => Outcome::Violation(diag),
        None => Outcome::Backtrack,
    }
}

fn j_components(g: &Graph, j: &[usize]) -> Vec<Vec<usize>> {
    let sub = g.induced_subgraph(j);
    connected_components(&sub)
        .into_iter()
        .map(|comp| comp.into_iter().map(|v| j[v]).collect())
        .collect()
}

/// Neighbours of `part` outside it, sorted.
fn outer_neighbours(g: &Graph, part: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = part.iter().flat_map(|&v| g.neighbours(v).iter().copied()).filter(|w| !part.contains(w)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Colours the vertices set aside before 2-SAT: removed `L_r` vertices,
/// the components of `J` when they were dropped, and finally `M_r`.
fn finalize_extension(
    g: &Graph,
    dec: &CaseDecomposition,
    j_parts: &[Vec<usize>],
    mode: &JMode,
    mut colouring: Vec<Colour>,
) -> Result<Vec<Colour>, Diagnostic> {
    for &(v, c) in &dec.removed_lr {
        colouring[v] = c;
    }
    if let JMode::Tie(i) = *mode {
        for part in j_parts {
            if part.len() == 1 {
                colouring[part[0]] = i;
                continue;
            }
            let outer: Vec<Colour> = outer_neighbours(g, part).iter().map(|&w| colouring[w]).filter(|&c| c != 0).collect();
            let common = outer.first().copied().unwrap_or(i);
            if outer.iter().any(|&c| c != common) {
                return Err(Diagnostic::new(
                    ViolationKind::NoFreeColour,
                    part.clone(),
                    "neighbours of a component of J received different colours",
                ));
            }
            let mut pair = ColourSet::full(3).without(common).iter();
            let (a, b) = (pair.next().expect("two colours"), pair.next().expect("two colours"));
            match bipartition(&g.induced_subgraph(part)) {
                Bipartition::TwoColouring(side) => {
                    for (&v, s) in part.iter().zip(side) {
                        colouring[v] = if s == 0 { a } else { b };
                    }
                }
                Bipartition::OddClosedWalk(_) => {
                    return Err(Diagnostic::new(
                        ViolationKind::NoFreeColour,
                        part.clone(),
                        "component of J is not bipartite",
                    ))
                }
            }
        }
    }
    for &v in &dec.m_r {
        let used = g.neighbours(v).iter().map(|&w| colouring[w]).filter(|&c| c != 0).fold(ColourSet::EMPTY, ColourSet::with);
        match ColourSet::full(3).minus(used).first() {
            Some(c) => colouring[v] = c,
            None => {
                return Err(Diagnostic::new(
                    ViolationKind::NoFreeColour,
                    vec![v],
                    "vertex without neighbours in the odd component sees all colours",
                ))
            }
        }
    }
    verify_colouring(g, &colouring, 3)
        .map_err(|err| Diagnostic::new(ViolationKind::InvalidCertificate, Vec::new(), err.to_string()))?;
    Ok(colouring)
}
