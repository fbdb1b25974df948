//! 2-SAT and the extension of partial colourings whose uncoloured vertices
//! have at most two available colours.

use thiserror::Error;

use crate::graph::{Colour, ColourSet, ColouringError, Graph, PartialColouring};

/// A possibly negated propositional variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal(u32);

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal((var as u32) << 1)
    }

    pub fn neg(var: usize) -> Self {
        Literal((var as u32) << 1 | 1)
    }

    pub fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_negated(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn negate(self) -> Self {
        Literal(self.0 ^ 1)
    }

    fn node(self) -> usize {
        self.0 as usize
    }

    /// Truth value under `assignment`.
    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var()] != self.is_negated()
    }
}

/// A clause of at most two literals; `Bottom` is the empty clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    Bottom,
    Unit(Literal),
    Pair(Literal, Literal),
}

impl Clause {
    pub fn eval(self, assignment: &[bool]) -> bool {
        match self {
            Clause::Bottom => false,
            Clause::Unit(a) => a.eval(assignment),
            Clause::Pair(a, b) => a.eval(assignment) || b.eval(assignment),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwoSatFormula {
    pub num_vars: usize,
    pub clauses: Vec<Clause>,
}

impl TwoSatFormula {
    pub fn new(num_vars: usize) -> Self {
        TwoSatFormula { num_vars, clauses: Vec::new() }
    }

    pub fn add(&mut self, clause: Clause) {
        let in_range = |l: Literal| l.var() < self.num_vars;
        match clause {
            Clause::Unit(a) => assert!(in_range(a), "literal out of range"),
            Clause::Pair(a, b) => assert!(in_range(a) && in_range(b), "literal out of range"),
            Clause::Bottom => {}
        }
        self.clauses.push(clause);
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.num_vars && self.clauses.iter().all(|c| c.eval(assignment))
    }
}

/// Decides `f` through strongly connected components of its implication
/// graph. Returns a satisfying assignment or `None`.
pub fn solve_two_sat(f: &TwoSatFormula) -> Option<Vec<bool>> {
    if f.clauses.contains(&Clause::Bottom) {
        return None;
    }
    let nodes = 2 * f.num_vars;
    let mut out_degree = vec![0usize; nodes + 1];
    let implications = f.clauses.iter().flat_map(|&c| match c {
        Clause::Unit(a) => [Some((a.negate(), a)), None],
        Clause::Pair(a, b) => [Some((a.negate(), b)), Some((b.negate(), a))],
        Clause::Bottom => [None, None],
    });
    for (from, _) in implications.clone().flatten() {
        out_degree[from.node() + 1] += 1;
    }
    for i in 0..nodes {
        out_degree[i + 1] += out_degree[i];
    }
    let start = out_degree;
    let mut fill = start.clone();
    let mut targets = vec![0usize; start[nodes]];
    for (from, to) in implications.flatten() {
        targets[fill[from.node()]] = to.node();
        fill[from.node()] += 1;
    }

    let comp = tarjan(nodes, &start, &targets);
    (0..f.num_vars)
        .map(|x| {
            let (p, n) = (comp[2 * x], comp[2 * x + 1]);
            // Components are numbered in reverse topological order.
            (p != n).then_some(p < n)
        })
        .collect()
}

/// Iterative Tarjan over a CSR graph; returns the component index of each
/// node, numbered in order of completion.
fn tarjan(nodes: usize, start: &[usize], targets: &[usize]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; nodes];
    let mut low = vec![0; nodes];
    let mut comp = vec![UNSEEN; nodes];
    let mut on_stack = vec![false; nodes];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut counter = 0;
    let mut components = 0;
    for root in 0..nodes {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, start[root]));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(frame) = call.last_mut() {
            let v = frame.0;
            if frame.1 < start[v + 1] {
                let w = targets[frame.1];
                frame.1 += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, start[w]));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("component root is on the stack");
                    on_stack[w] = false;
                    comp[w] = components;
                    if w == v {
                        break;
                    }
                }
                components += 1;
            }
        }
    }
    comp
}

/// Requires `u` and `v` to agree on every colour of `colours`: for each such
/// colour, `u` takes it exactly when `v` does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EqualityConstraint {
    pub u: usize,
    pub v: usize,
    pub colours: ColourSet,
}

impl EqualityConstraint {
    pub fn new(u: usize, v: usize, colours: ColourSet) -> Self {
        assert_ne!(u, v, "equality constraint needs two distinct vertices");
        EqualityConstraint { u, v, colours }
    }

    /// Links consecutive members of `vertices`; equivalent to [`Self::all_pairs`].
    pub fn chain(vertices: &[usize], colours: ColourSet) -> Vec<Self> {
        vertices.windows(2).map(|w| Self::new(w[0], w[1], colours)).collect()
    }

    /// One constraint per unordered pair of `vertices`.
    pub fn all_pairs(vertices: &[usize], colours: ColourSet) -> Vec<Self> {
        vertices
            .iter()
            .enumerate()
            .flat_map(|(i, &u)| vertices[i + 1..].iter().map(move |&v| Self::new(u, v, colours)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListError {
    #[error("uncoloured vertex {vertex} has {size} available colours; at most two are allowed")]
    ListTooLarge { vertex: usize, size: usize },
    #[error("input colouring is not proper: {0}")]
    Improper(#[from] ColouringError),
}

/// Maps each uncoloured vertex to the variables of its available colours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableMap {
    offset: Vec<usize>,
    lists: Vec<ColourSet>,
}

impl VariableMap {
    pub fn num_vars(&self) -> usize {
        *self.offset.last().unwrap_or(&0)
    }

    /// Available colours of `v` (empty for coloured vertices).
    pub fn list(&self, v: usize) -> ColourSet {
        self.lists[v]
    }

    /// Variable for "`v` takes colour `c`", if `c` is available to `v`.
    pub fn var(&self, v: usize, c: Colour) -> Option<usize> {
        let list = self.lists[v];
        list.contains(c)
            .then(|| self.offset[v] + list.iter().take_while(|&d| d < c).count())
    }

    /// `(vertex, colour)` of every variable, in variable order.
    pub fn variables(&self) -> Vec<(usize, Colour)> {
        (0..self.lists.len())
            .flat_map(|v| self.lists[v].iter().map(move |c| (v, c)))
            .collect()
    }
}

/// A literal or a constant, before simplification into clauses.
#[derive(Debug, Clone, Copy)]
enum Term {
    Const(bool),
    Lit(Literal),
}

impl Term {
    fn negate(self) -> Self {
        match self {
            Term::Const(b) => Term::Const(!b),
            Term::Lit(l) => Term::Lit(l.negate()),
        }
    }
}

fn push_or(f: &mut TwoSatFormula, a: Term, b: Term) {
    match (a, b) {
        (Term::Const(true), _) | (_, Term::Const(true)) => {}
        (Term::Const(false), Term::Const(false)) => f.add(Clause::Bottom),
        (Term::Const(false), Term::Lit(l)) | (Term::Lit(l), Term::Const(false)) => f.add(Clause::Unit(l)),
        (Term::Lit(x), Term::Lit(y)) => f.add(Clause::Pair(x, y)),
    }
}

/// Builds the formula whose models are the proper extensions of `psi` that
/// give every uncoloured vertex a colour from its list and honour `extra`.
///
/// The list of an uncoloured vertex is the set of colours absent from its
/// neighbourhood. Every list must have at most two colours.
pub fn build_list_formula(
    g: &Graph,
    psi: &PartialColouring,
    extra: &[EqualityConstraint],
) -> Result<(TwoSatFormula, VariableMap), ListError> {
    psi.check_proper(g)?;
    let k = psi.k();
    let n = g.n();
    let mut lists = vec![ColourSet::EMPTY; n];
    let mut offset = Vec::with_capacity(n + 1);
    let mut total = 0;
    for v in 0..n {
        offset.push(total);
        if psi.is_coloured(v) {
            continue;
        }
        let list = ColourSet::full(k).minus(psi.neighbour_colours(g, v));
        if list.len() > 2 {
            return Err(ListError::ListTooLarge { vertex: v, size: list.len() });
        }
        lists[v] = list;
        total += list.len();
    }
    offset.push(total);
    let map = VariableMap { offset, lists };
    let mut f = TwoSatFormula::new(total);

    let term = |v: usize, c: Colour| match psi.get(v) {
        Some(d) => Term::Const(d == c),
        None => map.var(v, c).map_or(Term::Const(false), |x| Term::Lit(Literal::pos(x))),
    };

    for v in (0..n).filter(|&v| !psi.is_coloured(v)) {
        let mut colours = map.list(v).iter();
        match (colours.next(), colours.next()) {
            (None, _) => f.add(Clause::Bottom),
            (Some(c), None) => push_or(&mut f, term(v, c), Term::Const(false)),
            (Some(c), Some(d)) => push_or(&mut f, term(v, c), term(v, d)),
        }
    }
    for (u, v) in g.edges() {
        if psi.is_coloured(u) && psi.is_coloured(v) {
            continue;
        }
        for c in 1..=k {
            push_or(&mut f, term(u, c).negate(), term(v, c).negate());
        }
    }

    // Equality constraints are only meaningful if each vertex picks a single
    // colour, so their endpoints also get at-most-one clauses.
    let mut exclusive = vec![false; n];
    for eq in extra {
        for c in eq.colours.iter().filter(|&c| c <= k) {
            push_or(&mut f, term(eq.u, c).negate(), term(eq.v, c));
            push_or(&mut f, term(eq.u, c), term(eq.v, c).negate());
        }
        exclusive[eq.u] = true;
        exclusive[eq.v] = true;
    }
    for v in (0..n).filter(|&v| exclusive[v] && map.list(v).len() == 2) {
        let mut colours = map.list(v).iter();
        let (c, d) = (colours.next().unwrap(), colours.next().unwrap());
        push_or(&mut f, term(v, c).negate(), term(v, d).negate());
    }
    Ok((f, map))
}

/// Extends `psi` to a proper colouring of every vertex through 2-SAT, or
/// returns `Ok(None)` if no extension within the lists satisfies `extra`.
pub fn extend_by_2list(
    g: &Graph,
    psi: &PartialColouring,
    extra: &[EqualityConstraint],
) -> Result<Option<PartialColouring>, ListError> {
    let (formula, map) = build_list_formula(g, psi, extra)?;
    let Some(assignment) = solve_two_sat(&formula) else {
        return Ok(None);
    };
    let mut out = psi.clone();
    for v in (0..g.n()).filter(|&v| !psi.is_coloured(v)) {
        let c = map
            .list(v)
            .iter()
            .find(|&c| assignment[map.var(v, c).expect("listed colour")])
            .expect("at-least-one clause holds");
        out.set(v, c);
    }
    debug_assert!(out.check_proper(g).is_ok());
    Ok(Some(out))
}
