//! Simple undirected graphs over dense vertex ids, probe instances, partial
//! colourings and the structural queries the solvers are built from.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

/// Graphs up to this order keep one adjacency bitset row per vertex.
const BITSET_ROW_LIMIT: usize = 16_384;

/// A colour in `1..=k`. Zero is reserved for "uncoloured".
pub type Colour = u8;

/// Largest colour count supported by [`PartialColouring`] and [`ColourSet`].
pub const MAX_COLOURS: u8 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
}

/// Immutable simple undirected graph on vertices `0..n`.
///
/// Neighbour lists are kept sorted. Graphs of moderate order also carry a
/// bitset row per vertex so adjacency tests are a single bit probe.
#[derive(Clone)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    rows: Option<Vec<FixedBitSet>>,
    edge_count: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list, dropping duplicate pairs.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_lists(adj))
    }

    fn from_lists(mut adj: Vec<Vec<usize>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let n = adj.len();
        let rows = (n <= BITSET_ROW_LIMIT).then(|| {
            adj.iter()
                .map(|list| {
                    let mut row = FixedBitSet::with_capacity(n);
                    for &w in list {
                        row.insert(w);
                    }
                    row
                })
                .collect()
        });
        Graph { adj, rows, edge_count }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_lists(vec![Vec::new(); n])
    }

    /// The path on `t` vertices `0-1-...-(t-1)`.
    pub fn path(t: usize) -> Self {
        Self::new(t, (1..t).map(|i| (i - 1, i))).expect("valid path")
    }

    /// The cycle on `t >= 3` vertices in id order.
    pub fn cycle(t: usize) -> Self {
        assert!(t >= 3, "cycles need at least three vertices");
        Self::new(t, (0..t).map(|i| (i, (i + 1) % t))).expect("valid cycle")
    }

    pub fn complete(t: usize) -> Self {
        Self::new(t, (0..t).flat_map(|u| (u + 1..t).map(move |v| (u, v)))).expect("valid clique")
    }

    /// `s` disjoint copies of `P2`.
    pub fn multi_p2(s: usize) -> Self {
        Self::new(2 * s, (0..s).map(|i| (2 * i, 2 * i + 1))).expect("valid matching")
    }

    /// `P3 + sP1`.
    pub fn p3_plus_isolated(s: usize) -> Self {
        Self::path(3).disjoint_union(&Self::empty(s))
    }

    /// `P2 + sP1`.
    pub fn p2_plus_isolated(s: usize) -> Self {
        Self::path(2).disjoint_union(&Self::empty(s))
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|list| list.iter().map(|&w| w + shift).collect()));
        Self::from_lists(adj)
    }

    /// Join: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let total = shift + other.n();
        let mut adj = self.adj.clone();
        for list in &mut adj {
            list.extend(shift..total);
        }
        adj.extend(
            other
                .adj
                .iter()
                .map(|list| (0..shift).chain(list.iter().map(|&w| w + shift)).collect()),
        );
        Self::from_lists(adj)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u && !self.has_edge(u, v)).collect())
            .collect();
        Self::from_lists(adj)
    }

    /// This graph plus the given extra edges.
    pub fn with_edges(&self, extra: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph, GraphError> {
        Graph::new(self.n(), self.edges().chain(extra))
    }

    /// This graph minus the given edges (absent pairs are ignored).
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Graph {
        let mut adj = self.adj.clone();
        for &(u, v) in removed {
            adj[u].retain(|&w| w != v);
            adj[v].retain(|&w| w != u);
        }
        Self::from_lists(adj)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let mut adj = vec![Vec::new(); self.n()];
        for (u, list) in self.adj.iter().enumerate() {
            adj[perm[u]] = list.iter().map(|&w| perm[w]).collect();
        }
        Self::from_lists(adj)
    }

    /// The subgraph induced by `vertices` (in the given order); local vertex
    /// `i` is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect()
            })
            .collect();
        Self::from_lists(adj)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match &self.rows {
            Some(rows) => rows[u].contains(v),
            None => self.adj[u].binary_search(&v).is_ok(),
        }
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Whether `targets` all lie in the closed neighbourhood of `dominators`.
    pub fn dominates(&self, dominators: &[usize], targets: &[usize]) -> bool {
        targets
            .iter()
            .all(|&t| dominators.iter().any(|&d| d == t || self.has_edge(d, t)))
    }

    /// Size of the closed neighbourhood of `set`.
    pub fn closed_neighbourhood_size(&self, set: &[usize]) -> usize {
        let mut seen = FixedBitSet::with_capacity(self.n());
        for &v in set {
            seen.insert(v);
            for &w in &self.adj[v] {
                seen.insert(w);
            }
        }
        seen.count_ones(..)
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("vertex {0} is listed as both probe and non-probe")]
    Overlap(usize),
    #[error("vertex {0} is neither a probe nor a non-probe")]
    Missing(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("non-probes {0} and {1} are adjacent")]
    NonprobeEdge(usize, usize),
}

/// A graph with a probe/non-probe partition whose non-probes are independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeInstance {
    graph: Graph,
    is_probe: Vec<bool>,
}

/// Checks that `probes` and `nonprobes` partition the vertex set and that the
/// non-probes are independent.
pub fn validate_probe_instance(
    graph: Graph,
    probes: &[usize],
    nonprobes: &[usize],
) -> Result<ProbeInstance, InstanceError> {
    let n = graph.n();
    let mut side: Vec<Option<bool>> = vec![None; n];
    for (&v, probe) in probes
        .iter()
        .map(|v| (v, true))
        .chain(nonprobes.iter().map(|v| (v, false)))
    {
        if v >= n {
            return Err(InstanceError::OutOfRange { vertex: v, n });
        }
        match side[v] {
            Some(previous) if previous != probe => return Err(InstanceError::Overlap(v)),
            _ => side[v] = Some(probe),
        }
    }
    let is_probe = side
        .iter()
        .enumerate()
        .map(|(v, s)| s.ok_or(InstanceError::Missing(v)))
        .collect::<Result<Vec<_>, _>>()?;
    ProbeInstance::new(graph, is_probe)
}

impl ProbeInstance {
    /// Builds an instance from a per-vertex probe flag.
    pub fn new(graph: Graph, is_probe: Vec<bool>) -> Result<Self, InstanceError> {
        assert_eq!(graph.n(), is_probe.len(), "one probe flag per vertex");
        if let Some((u, v)) = graph.edges().find(|&(u, v)| !is_probe[u] && !is_probe[v]) {
            return Err(InstanceError::NonprobeEdge(u, v));
        }
        Ok(ProbeInstance { graph, is_probe })
    }

    /// All vertices are probes.
    pub fn all_probes(graph: Graph) -> Self {
        let n = graph.n();
        ProbeInstance { graph, is_probe: vec![true; n] }
    }

    pub fn with_nonprobes(graph: Graph, nonprobes: &[usize]) -> Result<Self, InstanceError> {
        let mut is_probe = vec![true; graph.n()];
        for &v in nonprobes {
            if v >= graph.n() {
                return Err(InstanceError::OutOfRange { vertex: v, n: graph.n() });
            }
            is_probe[v] = false;
        }
        Self::new(graph, is_probe)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn is_probe(&self, v: usize) -> bool {
        self.is_probe[v]
    }

    pub fn probe_flags(&self) -> &[bool] {
        &self.is_probe
    }

    pub fn probes(&self) -> Vec<usize> {
        (0..self.graph.n()).filter(|&v| self.is_probe[v]).collect()
    }

    pub fn nonprobes(&self) -> Vec<usize> {
        (0..self.graph.n()).filter(|&v| !self.is_probe[v]).collect()
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> ProbeInstance {
        let mut is_probe = vec![true; perm.len()];
        for (v, &p) in perm.iter().enumerate() {
            is_probe[p] = self.is_probe[v];
        }
        ProbeInstance { graph: self.graph.permuted(perm), is_probe }
    }
}

/// A set of colours from `1..=32`, stored as a bit mask (bit `c - 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ColourSet(u32);

impl ColourSet {
    pub const EMPTY: ColourSet = ColourSet(0);

    /// `{1, ..., k}`.
    pub fn full(k: u8) -> Self {
        assert!(k <= MAX_COLOURS);
        ColourSet(if k == 32 { u32::MAX } else { (1u32 << k) - 1 })
    }

    pub fn singleton(c: Colour) -> Self {
        ColourSet(1 << (c - 1))
    }

    pub fn from_colours(colours: impl IntoIterator<Item = Colour>) -> Self {
        colours.into_iter().fold(Self::EMPTY, |s, c| s.with(c))
    }

    #[inline]
    pub fn contains(self, c: Colour) -> bool {
        c >= 1 && self.0 & (1 << (c - 1)) != 0
    }

    #[inline]
    pub fn with(self, c: Colour) -> Self {
        ColourSet(self.0 | 1 << (c - 1))
    }

    #[inline]
    pub fn without(self, c: Colour) -> Self {
        ColourSet(self.0 & !(1 << (c - 1)))
    }

    pub fn minus(self, other: ColourSet) -> Self {
        ColourSet(self.0 & !other.0)
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Smallest colour in the set.
    pub fn first(self) -> Option<Colour> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Colour + 1)
    }

    /// Colours in increasing order.
    pub fn iter(self) -> impl Iterator<Item = Colour> {
        (1..=MAX_COLOURS).filter(move |&c| self.contains(c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColouringError {
    #[error("adjacent vertices {0} and {1} share colour {2}")]
    Clash(usize, usize, Colour),
    #[error("vertex {vertex} has colour {colour} outside 1..={k}")]
    OutOfRange { vertex: usize, colour: Colour, k: u8 },
    #[error("colouring covers {got} vertices, graph has {expected}")]
    Length { expected: usize, got: usize },
}

/// A partial `k`-colouring: each vertex carries a colour in `1..=k` or is
/// uncoloured.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialColouring {
    k: u8,
    colours: Vec<Colour>,
}

impl PartialColouring {
    pub fn new(n: usize, k: u8) -> Self {
        assert!((1..=MAX_COLOURS).contains(&k), "colour count must be in 1..=32");
        PartialColouring { k, colours: vec![0; n] }
    }

    /// Wraps a raw assignment where `0` marks an uncoloured vertex.
    pub fn from_raw(k: u8, colours: Vec<Colour>) -> Result<Self, ColouringError> {
        assert!((1..=MAX_COLOURS).contains(&k), "colour count must be in 1..=32");
        if let Some((vertex, &colour)) = colours.iter().enumerate().find(|(_, &c)| c > k) {
            return Err(ColouringError::OutOfRange { vertex, colour, k });
        }
        Ok(PartialColouring { k, colours })
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    #[inline]
    pub fn get(&self, v: usize) -> Option<Colour> {
        match self.colours[v] {
            0 => None,
            c => Some(c),
        }
    }

    #[inline]
    pub fn is_coloured(&self, v: usize) -> bool {
        self.colours[v] != 0
    }

    pub fn set(&mut self, v: usize, c: Colour) {
        assert!((1..=self.k).contains(&c), "colour {c} outside 1..={}", self.k);
        self.colours[v] = c;
    }

    pub fn clear(&mut self, v: usize) {
        self.colours[v] = 0;
    }

    /// Raw assignment, `0` meaning uncoloured.
    pub fn as_raw(&self) -> &[Colour] {
        &self.colours
    }

    pub fn into_raw(self) -> Vec<Colour> {
        self.colours
    }

    pub fn coloured_count(&self) -> usize {
        self.colours.iter().filter(|&&c| c != 0).count()
    }

    pub fn is_complete(&self) -> bool {
        self.colours.iter().all(|&c| c != 0)
    }

    /// Colours present on the neighbourhood of `v`.
    pub fn neighbour_colours(&self, g: &Graph, v: usize) -> ColourSet {
        g.neighbours(v)
            .iter()
            .filter_map(|&w| self.get(w))
            .fold(ColourSet::EMPTY, ColourSet::with)
    }

    /// `true` if every coloured value of `self` is kept by `other`.
    pub fn is_extended_by(&self, other: &PartialColouring) -> bool {
        self.colours
            .iter()
            .zip(&other.colours)
            .all(|(&a, &b)| a == 0 || a == b)
    }

    /// Checks that no edge joins two vertices of the same colour.
    pub fn check_proper(&self, g: &Graph) -> Result<(), ColouringError> {
        if self.colours.len() != g.n() {
            return Err(ColouringError::Length { expected: g.n(), got: self.colours.len() });
        }
        match g
            .edges()
            .find(|&(u, v)| self.colours[u] != 0 && self.colours[u] == self.colours[v])
        {
            Some((u, v)) => Err(ColouringError::Clash(u, v, self.colours[u])),
            None => Ok(()),
        }
    }
}

/// An induced copy of `pattern` in a host graph: `image[p]` is the host vertex
/// playing pattern vertex `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedEmbedding {
    pub pattern: Graph,
    pub image: Vec<usize>,
}

impl InducedEmbedding {
    /// Host vertices of the copy, sorted.
    pub fn vertex_set(&self) -> Vec<usize> {
        let mut vs = self.image.clone();
        vs.sort_unstable();
        vs
    }
}

/// Largest pattern order accepted by [`find_induced_subgraph`].
pub const MAX_PATTERN_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("pattern has {0} vertices; at most {MAX_PATTERN_ORDER} are supported")]
    PatternTooLarge(usize),
    #[error("induced subgraph search exceeded its budget of {0} nodes")]
    BudgetExceeded(u64),
}

/// Connected components, each sorted, ordered by their smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut components = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..g.n() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &w in g.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components
}

/// Result of [`bipartition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    /// `side[v]` is 0 or 1; the smallest vertex of each component gets 0.
    TwoColouring(Vec<u8>),
    /// A closed walk of odd length, listed without repeating its start.
    OddClosedWalk(Vec<usize>),
}

pub fn bipartition(g: &Graph) -> Bipartition {
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if side[start] != u8::MAX {
            continue;
        }
        side[start] = 0;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbours(v) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    parent[w] = v;
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                } else if side[w] == side[v] {
                    return Bipartition::OddClosedWalk(tree_cycle(v, w, &parent, &depth));
                }
            }
        }
    }
    Bipartition::TwoColouring(side)
}

/// Cycle through the tree paths of `u` and `v` up to their common ancestor,
/// closed by the edge `uv`.
fn tree_cycle(u: usize, v: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Some 4-clique, lexicographically least as a sorted quadruple.
pub fn find_k4(g: &Graph) -> Option<[usize; 4]> {
    for u in 0..g.n() {
        for &v in g.neighbours(u).iter().filter(|&&v| v > u) {
            let common: Vec<usize> = g
                .neighbours(u)
                .iter()
                .copied()
                .filter(|&w| w > v && g.has_edge(v, w))
                .collect();
            for (i, &w) in common.iter().enumerate() {
                if let Some(&x) = common[i + 1..].iter().find(|&&x| g.has_edge(w, x)) {
                    return Some([u, v, w, x]);
                }
            }
        }
    }
    None
}

/// Lexicographically least triangle as a sorted triple.
pub fn find_triangle(g: &Graph) -> Option<[usize; 3]> {
    triangles(g).next()
}

/// All triangles as sorted triples, in lexicographic order.
pub fn triangles(g: &Graph) -> impl Iterator<Item = [usize; 3]> + '_ {
    (0..g.n()).flat_map(move |u| {
        g.neighbours(u)
            .iter()
            .copied()
            .filter(move |&v| v > u)
            .flat_map(move |v| {
                g.neighbours(v)
                    .iter()
                    .copied()
                    .filter(move |&w| w > v && g.has_edge(u, w))
                    .map(move |w| [u, v, w])
            })
    })
}

/// A shortest odd cycle in cyclic order, or `None` for bipartite graphs.
///
/// Runs a breadth-first search from every vertex and closes a cycle at the
/// first edge joining two vertices on the same layer. A globally shortest odd
/// closed walk is a chordless cycle.
pub fn shortest_odd_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut best: Option<Vec<usize>> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    let mut touched = Vec::new();
    for source in 0..n {
        for &v in &touched {
            dist[v] = usize::MAX;
        }
        touched.clear();
        dist[source] = 0;
        touched.push(source);
        queue.clear();
        queue.push_back(source);
        let limit = best.as_ref().map_or(usize::MAX, Vec::len);
        'bfs: while let Some(v) = queue.pop_front() {
            if 2 * dist[v] + 1 >= limit {
                break;
            }
            for &w in g.neighbours(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    touched.push(w);
                    queue.push_back(w);
                } else if dist[w] == dist[v] && w > v {
                    let cycle = tree_cycle(v, w, &parent, &dist);
                    if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                        best = Some(cycle);
                    }
                    break 'bfs;
                }
            }
        }
        if best.as_ref().is_some_and(|b| b.len() == 3) {
            break;
        }
    }
    best
}

/// Finds an induced copy of `pattern` in `host`, or `None`.
///
/// Backtracking over pattern vertices: the search starts at a pattern vertex
/// of maximum degree and then always places the vertex with the most placed
/// neighbours (ties: higher degree, then lower id). Host candidates are tried
/// in increasing id order and are drawn from a placed neighbour's adjacency
/// list when possible. The returned image is the first one met in that order.
pub fn find_induced_subgraph(host: &Graph, pattern: &Graph) -> Result<Option<InducedEmbedding>, SearchError> {
    find_induced_subgraph_budgeted(host, pattern, None)
}

/// [`find_induced_subgraph`] with an optional cap on visited search nodes.
pub fn find_induced_subgraph_budgeted(
    host: &Graph,
    pattern: &Graph,
    budget: Option<u64>,
) -> Result<Option<InducedEmbedding>, SearchError> {
    if pattern.n() > MAX_PATTERN_ORDER {
        return Err(SearchError::PatternTooLarge(pattern.n()));
    }
    let mut matcher = Matcher::new(host, pattern, budget);
    if matcher.search(0)? {
        let mut image = vec![0; pattern.n()];
        for (i, &p) in matcher.order.iter().enumerate() {
            image[p] = matcher.mapped[i];
        }
        Ok(Some(InducedEmbedding { pattern: pattern.clone(), image }))
    } else {
        Ok(None)
    }
}

struct Matcher<'a> {
    host: &'a Graph,
    order: Vec<usize>,
    /// Positions (in `order`) of earlier pattern vertices adjacent to `order[i]`.
    earlier_adjacent: Vec<Vec<usize>>,
    earlier_nonadjacent: Vec<Vec<usize>>,
    min_degree: Vec<usize>,
    min_nondegree: Vec<usize>,
    mapped: Vec<usize>,
    used: FixedBitSet,
    nodes: u64,
    budget: Option<u64>,
}

impl<'a> Matcher<'a> {
    fn new(host: &'a Graph, pattern: &Graph, budget: Option<u64>) -> Self {
        let t = pattern.n();
        let mut order: Vec<usize> = Vec::with_capacity(t);
        let mut placed = vec![false; t];
        while order.len() < t {
            let next = (0..t)
                .filter(|&p| !placed[p])
                .max_by_key(|&p| {
                    let linked = pattern.neighbours(p).iter().filter(|&&q| placed[q]).count();
                    (linked, pattern.degree(p), std::cmp::Reverse(p))
                })
                .expect("unplaced vertex");
            placed[next] = true;
            order.push(next);
        }
        let mut position = vec![0; t];
        for (i, &p) in order.iter().enumerate() {
            position[p] = i;
        }
        let earlier_adjacent = order
            .iter()
            .enumerate()
            .map(|(i, &p)| (0..i).filter(|&j| pattern.has_edge(p, order[j])).collect())
            .collect();
        let earlier_nonadjacent = order
            .iter()
            .enumerate()
            .map(|(i, &p)| (0..i).filter(|&j| !pattern.has_edge(p, order[j])).collect())
            .collect();
        let min_degree = order.iter().map(|&p| pattern.degree(p)).collect();
        let min_nondegree = order.iter().map(|&p| t - 1 - pattern.degree(p)).collect();
        Matcher {
            host,
            order,
            earlier_adjacent,
            earlier_nonadjacent,
            min_degree,
            min_nondegree,
            mapped: Vec::with_capacity(t),
            used: FixedBitSet::with_capacity(host.n()),
            nodes: 0,
            budget,
        }
    }

    fn fits(&self, depth: usize, h: usize) -> bool {
        let g = self.host;
        let deg = g.degree(h);
        !self.used.contains(h)
            && deg >= self.min_degree[depth]
            && g.n() - 1 - deg >= self.min_nondegree[depth]
            && self.earlier_adjacent[depth].iter().all(|&j| g.has_edge(self.mapped[j], h))
            && self.earlier_nonadjacent[depth].iter().all(|&j| !g.has_edge(self.mapped[j], h))
    }

    fn search(&mut self, depth: usize) -> Result<bool, SearchError> {
        if depth == self.order.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if let Some(limit) = self.budget {
            if self.nodes > limit {
                return Err(SearchError::BudgetExceeded(limit));
            }
        }
        let anchor = self.earlier_adjacent[depth]
            .iter()
            .map(|&j| self.mapped[j])
            .min_by_key(|&h| (self.host.degree(h), h));
        let host = self.host;
        let candidates: Box<dyn Iterator<Item = usize>> = match anchor {
            Some(a) => Box::new(host.neighbours(a).iter().copied()),
            None => Box::new(0..host.n()),
        };
        for h in candidates {
            if !self.fits(depth, h) {
                continue;
            }
            self.mapped.push(h);
            self.used.insert(h);
            let found = self.search(depth + 1)?;
            if found {
                return Ok(true);
            }
            self.used.set(h, false);
            self.mapped.pop();
        }
        Ok(false)
    }
}
