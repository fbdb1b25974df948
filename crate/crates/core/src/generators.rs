//! Seeded generators of H-free hosts and of probe instances certified by
//! construction.
//!
//! A probe instance is made by taking an H-free host, choosing a non-probe
//! set `N` and deleting every host edge inside `N`. The deleted edges are a
//! completion certificate: adding them back gives the H-free host.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{connected_components, find_induced_subgraph, Graph, ProbeInstance};
use crate::oracle::CompletionCertificate;

/// Hosts up to this order are drawn by rejection sampling.
pub const REJECTION_MAX_ORDER: usize = 16;
/// Rejection attempts before switching to edge-by-edge growth.
const REJECTION_ATTEMPTS: usize = 64;
/// Hosts above this order only use the sparse structured families.
const DENSE_FAMILY_MAX_ORDER: usize = 64;

/// The forbidden pattern a generated host avoids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Probe P5-free.
    ProbeP5,
    /// Probe (P3 + sP1)-free.
    ProbeP3sP1(usize),
    /// Probe (P2 + sP1)-free.
    ProbeP2sP1(usize),
    /// Triangle-free probe P5-free.
    TriangleFreeProbeP5,
}

impl Family {
    pub fn pattern(self) -> Graph {
        match self {
            Family::ProbeP5 | Family::TriangleFreeProbeP5 => Graph::path(5),
            Family::ProbeP3sP1(s) => Graph::p3_plus_isolated(s),
            Family::ProbeP2sP1(s) => Graph::p2_plus_isolated(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenParams {
    pub family: Family,
    pub n: usize,
    pub density: f64,
    pub seed: u64,
}

/// A generated probe instance with its host and certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedInstance {
    pub instance: ProbeInstance,
    pub host: Graph,
    pub certificate: CompletionCertificate,
    pub params: GenParams,
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A P5-free graph on `n` vertices, deterministic in `(n, density, seed)`.
///
/// Up to sixteen vertices the graph is sampled by rejection. Up to sixty-four
/// it is assembled from P5-free pieces by disjoint union, join, substitution
/// into a small P5-free graph, split graphs and complete multipartite graphs.
/// Larger hosts use only unions of K4-free blocks, a single hub joined to
/// triangle-free blocks, and split graphs whose independent side sees about
/// three clique vertices per vertex.
pub fn gen_p5free_host(n: usize, density: f64, seed: u64) -> Graph {
    gen_hfree_host(n, density, seed, &Graph::path(5))
}

/// An `h`-free graph on `n` vertices for a pattern with at least one edge.
pub fn gen_hfree_host(n: usize, density: f64, seed: u64, h: &Graph) -> Graph {
    assert!(h.edge_count() > 0, "patterns without edges are not supported");
    let mut rng = rng_for(seed);
    let g = if n <= REJECTION_MAX_ORDER {
        small_hfree(n, density, &mut rng, std::slice::from_ref(h))
    } else if *h == Graph::path(5) {
        structured_p5free(n, density, &mut rng)
    } else {
        structured_closed(n, density, &mut rng, h)
    };
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    g.permuted(&perm)
}

fn is_free(g: &Graph, hs: &[Graph]) -> bool {
    hs.iter().all(|h| find_induced_subgraph(g, h).expect("pattern within size limit").is_none())
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.random_bool(p.clamp(0.0, 1.0)))
        .collect();
    Graph::new(n, edges).expect("valid pairs")
}

/// Rejection sampling from `G(n, p)`, then growth from the empty graph that
/// keeps each candidate edge with probability `p` when the graph stays free
/// of every pattern in `hs`.
fn small_hfree(n: usize, p: f64, rng: &mut ChaCha8Rng, hs: &[Graph]) -> Graph {
    for _ in 0..REJECTION_ATTEMPTS {
        let g = gnp(n, p, rng);
        if is_free(&g, hs) {
            return g;
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let mut g = Graph::empty(n);
    for pair in pairs {
        if rng.random_bool(p.clamp(0.0, 1.0)) {
            let candidate = g.with_edges([pair]).expect("valid pair");
            if is_free(&candidate, hs) {
                g = candidate;
            }
        }
    }
    g
}

/// Random composition of `n` into `parts` positive parts.
fn split_sizes(n: usize, parts: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let parts = parts.clamp(1, n.max(1));
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort_unstable();
    let mut sizes = Vec::with_capacity(parts);
    let mut last = 0;
    for c in cuts.into_iter().chain([n]) {
        sizes.push(c - last);
        last = c;
    }
    sizes
}

fn union_all(blocks: impl IntoIterator<Item = Graph>) -> Graph {
    blocks.into_iter().fold(Graph::empty(0), |acc, b| acc.disjoint_union(&b))
}

/// Replaces vertex `i` of `skeleton` by `modules[i]`; modules of adjacent
/// skeleton vertices are completely joined.
pub fn substitute(skeleton: &Graph, modules: &[Graph]) -> Graph {
    assert_eq!(skeleton.n(), modules.len());
    let mut offset = Vec::with_capacity(modules.len());
    let mut total = 0;
    for m in modules {
        offset.push(total);
        total += m.n();
    }
    let mut edges = Vec::new();
    for (i, m) in modules.iter().enumerate() {
        edges.extend(m.edges().map(|(u, v)| (u + offset[i], v + offset[i])));
    }
    for (a, b) in skeleton.edges() {
        for u in 0..modules[a].n() {
            for v in 0..modules[b].n() {
                edges.push((offset[a] + u, offset[b] + v));
            }
        }
    }
    Graph::new(total, edges).expect("valid substitution")
}

/// A split graph: a clique of order `clique` plus independent vertices, each
/// adjacent to every clique vertex with probability `p` (at least one).
fn split_graph(n: usize, clique: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let clique = clique.min(n);
    let mut edges: Vec<(usize, usize)> = (0..clique).flat_map(|u| (u + 1..clique).map(move |v| (u, v))).collect();
    for v in clique..n {
        let before = edges.len();
        for c in 0..clique {
            if rng.random_bool(p.clamp(0.0, 1.0)) {
                edges.push((c, v));
            }
        }
        if edges.len() == before && clique > 0 {
            edges.push((rng.random_range(0..clique), v));
        }
    }
    Graph::new(n, edges).expect("valid split graph")
}

fn complete_multipartite(sizes: &[usize]) -> Graph {
    let skeleton = Graph::complete(sizes.len());
    let modules: Vec<Graph> = sizes.iter().map(|&s| Graph::empty(s)).collect();
    substitute(&skeleton, &modules)
}

#[derive(Debug, Clone, Copy)]
enum Shape {
    Union,
    Join,
    Hub,
    Substitution,
    Split,
    Multipartite,
}

fn structured_p5free(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    if n <= DENSE_FAMILY_MAX_ORDER {
        dense_p5free(n, p, rng)
    } else {
        sparse_p5free(n, p, rng, &[Graph::path(5), Graph::complete(4)])
    }
}

fn dense_p5free(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let p5 = Graph::path(5);
    if n <= 12 {
        return small_hfree(n, p, rng, std::slice::from_ref(&p5));
    }
    let shapes = [Shape::Substitution, Shape::Split, Shape::Multipartite, Shape::Union, Shape::Hub, Shape::Join];
    match *shapes.choose(rng).expect("nonempty") {
        Shape::Union => {
            let parts = rng.random_range(2..=4);
            union_all(split_sizes(n, parts, rng).into_iter().map(|s| dense_p5free(s, p, rng)))
        }
        Shape::Join => {
            let sizes = split_sizes(n, 2, rng);
            dense_p5free(sizes[0], p, rng).join(&dense_p5free(sizes[1], p, rng))
        }
        Shape::Hub => {
            let hub = rng.random_range(1..=2);
            let rest = n - hub;
            let body = union_all(split_sizes(rest, rest.div_ceil(12), rng).into_iter().map(|s| dense_p5free(s, p, rng)));
            Graph::complete(hub).join(&body)
        }
        Shape::Substitution => {
            let m = rng.random_range(4..=7);
            let skeleton = small_hfree(m, 0.5, rng, std::slice::from_ref(&p5));
            let modules: Vec<Graph> = split_sizes(n, m, rng).into_iter().map(|s| dense_p5free(s, p, rng)).collect();
            substitute(&skeleton, &modules)
        }
        Shape::Split => split_graph(n, rng.random_range(1..=4), p, rng),
        Shape::Multipartite => {
            let parts = rng.random_range(2..=4);
            complete_multipartite(&split_sizes(n, parts, rng))
        }
    }
}

/// Large hosts with bounded degree away from hubs and clique sides: unions
/// of K4-free blocks, a single hub joined to triangle-free blocks, and split
/// graphs whose independent vertices see a few clique vertices each.
fn sparse_p5free(n: usize, p: f64, rng: &mut ChaCha8Rng, leaves: &[Graph]) -> Graph {
    if n <= 12 {
        return small_hfree(n, p, rng, leaves);
    }
    match *[Shape::Union, Shape::Hub, Shape::Split].choose(rng).expect("nonempty") {
        Shape::Hub => {
            let triangle_free = [Graph::path(5), Graph::complete(3)];
            let rest = n - 1;
            let body =
                union_all(split_sizes(rest, rest.div_ceil(12), rng).into_iter().map(|s| small_hfree(s, p, rng, &triangle_free)));
            Graph::complete(1).join(&body)
        }
        Shape::Split => {
            let clique = if rng.random_bool(0.5) { rng.random_range(1..=3) } else { rng.random_range(4..=(n / 4).max(4)) };
            split_graph(n, clique, p.min(3.0 / clique as f64), rng)
        }
        _ => {
            let parts = rng.random_range(2..=4);
            union_all(split_sizes(n, parts, rng).into_iter().map(|s| sparse_p5free(s, p, rng, leaves)))
        }
    }
}

/// Larger hosts for patterns other than P5: unions of small hosts when the
/// pattern is connected, joins when its complement is.
fn structured_closed(n: usize, p: f64, rng: &mut ChaCha8Rng, h: &Graph) -> Graph {
    if n <= 12 {
        return small_hfree(n, p, rng, std::slice::from_ref(h));
    }
    let parts = rng.random_range(2..=3);
    let sizes = split_sizes(n, parts, rng);
    let blocks: Vec<Graph> = sizes.into_iter().map(|s| structured_closed(s, p, rng, h)).collect();
    if connected_components(h).len() == 1 {
        union_all(blocks)
    } else if connected_components(&h.complement()).len() == 1 {
        blocks.iter().skip(1).fold(blocks[0].clone(), |acc, b| acc.join(b))
    } else {
        small_hfree(n, p, rng, std::slice::from_ref(h))
    }
}

/// A probe P5-free instance: a P5-free host with the edges inside a random
/// non-probe set removed.
pub fn gen_probe_instance(n: usize, density: f64, seed: u64) -> GeneratedInstance {
    gen_family_instance(Family::ProbeP5, n, density, seed)
}

/// A probe instance from the given family.
pub fn gen_family_instance(family: Family, n: usize, density: f64, seed: u64) -> GeneratedInstance {
    let params = GenParams { family, n, density, seed };
    let host = gen_hfree_host(n, density, seed, &family.pattern());
    let mut rng = rng_for(seed ^ 0x9e37_79b9_7f4a_7c15);
    let is_probe: Vec<bool> = match family {
        Family::TriangleFreeProbeP5 => triangle_sparse_probes(&host, &mut rng),
        _ => random_nonprobes(&host, &mut rng),
    };
    probe_from_host(host, is_probe, params)
}

/// Deletes the host edges between non-probes.
pub fn probe_from_host(host: Graph, is_probe: Vec<bool>, params: GenParams) -> GeneratedInstance {
    let fill: Vec<(usize, usize)> = host.edges().filter(|&(u, v)| !is_probe[u] && !is_probe[v]).collect();
    let graph = host.without_edges(&fill);
    let nonprobes = (0..host.n()).filter(|&v| !is_probe[v]).collect();
    let instance = ProbeInstance::new(graph, is_probe).expect("non-probe edges were removed");
    GeneratedInstance { instance, host, certificate: CompletionCertificate { nonprobes, fill_edges: fill }, params }
}

/// Non-probes drawn independently, or seeded with a greedy maximal clique
/// grown from high-degree vertices, so that deleting its edges leaves long induced paths. Up to two
/// clique vertices stay probes, which keeps triangles among the probes.
fn random_nonprobes(host: &Graph, rng: &mut ChaCha8Rng) -> Vec<bool> {
    let n = host.n();
    let q = rng.random_range(0.2..0.6);
    let mut is_probe: Vec<bool> = (0..n).map(|_| !rng.random_bool(q)).collect();
    if n > 0 && rng.random_bool(0.5) {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        order.sort_by_key(|&v| std::cmp::Reverse(host.degree(v)));
        let mut clique: Vec<usize> = Vec::new();
        for v in order {
            if clique.iter().all(|&u| host.has_edge(u, v)) {
                clique.push(v);
            }
        }
        let keep = rng.random_range(0..=2);
        for (i, v) in clique.into_iter().enumerate() {
            is_probe[v] = i < keep;
        }
    }
    is_probe
}

/// Probes chosen in random order so that no host triangle gets two of them;
/// removing the edges between the remaining vertices leaves no triangle.
fn triangle_sparse_probes(host: &Graph, rng: &mut ChaCha8Rng) -> Vec<bool> {
    let n = host.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut is_probe = vec![false; n];
    for v in order {
        let shares_triangle = host.neighbours(v).iter().any(|&a| {
            is_probe[a] && host.neighbours(a).iter().any(|&b| host.has_edge(v, b))
        });
        if !shares_triangle {
            is_probe[v] = true;
        }
    }
    is_probe
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::find_triangle;

    #[test]
    fn single_vertex_host() {
        assert_eq!(gen_p5free_host(1, 0.5, 3).n(), 1);
    }

    #[test]
    fn hosts_are_p5_free_and_deterministic() {
        for (n, seed) in [(8, 1), (16, 2), (30, 3), (50, 4), (90, 5)] {
            let g = gen_p5free_host(n, 0.4, seed);
            assert_eq!(g.n(), n);
            assert!(is_free(&g, &[Graph::path(5)]), "n = {n}");
            assert_eq!(g, gen_p5free_host(n, 0.4, seed));
        }
    }

    #[test]
    fn substitution_of_c5() {
        let g = substitute(&Graph::cycle(5), &vec![Graph::empty(2); 5]);
        assert_eq!(g.n(), 10);
        assert_eq!(g.edge_count(), 20);
        assert!(is_free(&g, &[Graph::path(5)]));
    }

    #[test]
    fn instance_matches_certificate() {
        let gen = gen_probe_instance(14, 0.5, 11);
        let g = gen.instance.graph();
        assert_eq!(gen.certificate.completed(g), gen.host);
        assert!(g.is_independent(&gen.instance.nonprobes()));
    }

    #[test]
    fn triangle_free_family_has_no_triangles() {
        for seed in 0..5 {
            let gen = gen_family_instance(Family::TriangleFreeProbeP5, 30, 0.5, seed);
            assert_eq!(find_triangle(gen.instance.graph()), None);
        }
    }
}
