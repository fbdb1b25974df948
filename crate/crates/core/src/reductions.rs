//! Instance constructions from Exact 3-Cover and from 3-precolouring
//! extension on bipartite graphs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bipartition, Bipartition, Colour, Graph, ProbeInstance};

/// An Exact 3-Cover instance over the universe `0..universe`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct X3cInstance {
    pub universe: usize,
    pub sets: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("set {index} repeats an element or leaves the universe")]
    BadSet { index: usize },
    #[error("the side flags do not split the graph into two independent sets")]
    NotBipartite,
    #[error("vertex {0} must lie on the probe side")]
    NotOnProbeSide(usize),
    #[error("the three precoloured vertices must be distinct and pairwise non-adjacent")]
    BadTriple,
    #[error("side flags cover {got} vertices, expected {expected}")]
    SideLength { got: usize, expected: usize },
}

impl X3cInstance {
    pub fn validate(&self) -> Result<(), ReductionError> {
        for (index, s) in self.sets.iter().enumerate() {
            let distinct = s[0] != s[1] && s[1] != s[2] && s[0] != s[2];
            if !distinct || s.iter().any(|&x| x >= self.universe) {
                return Err(ReductionError::BadSet { index });
            }
        }
        Ok(())
    }

    /// Indices of the sets in some exact cover, by backtracking on the
    /// smallest uncovered element.
    pub fn exact_cover(&self) -> Option<Vec<usize>> {
        fn rec(inst: &X3cInstance, covered: &mut Vec<bool>, chosen: &mut Vec<usize>) -> bool {
            let Some(x) = covered.iter().position(|&c| !c) else {
                return true;
            };
            for (i, s) in inst.sets.iter().enumerate() {
                if s.contains(&x) && s.iter().all(|&y| !covered[y]) {
                    s.iter().for_each(|&y| covered[y] = true);
                    chosen.push(i);
                    if rec(inst, covered, chosen) {
                        return true;
                    }
                    chosen.pop();
                    s.iter().for_each(|&y| covered[y] = false);
                }
            }
            false
        }
        if !self.universe.is_multiple_of(3) {
            return None;
        }
        let mut covered = vec![false; self.universe];
        let mut chosen = Vec::new();
        rec(self, &mut covered, &mut chosen).then_some(chosen)
    }
}

/// Maps an Exact 3-Cover instance to a probe instance and a colour count `s`
/// such that the instance is `s`-colourable iff an exact cover exists.
///
/// With `|X| = 3k` and `s = |S| >= k`, the graph on `X ∪ Y ∪ Z` (`X` a
/// clique, `Y` one vertex per set adjacent to the set's elements, `Z` of
/// size `s - k` complete to `Y`) is complemented. Vertices are numbered `X`
/// first, then `Y`, then `Z`; `X` becomes the non-probe side. Other inputs
/// give the complete graph on `s + 1` vertices.
pub fn gen_x3c_reduction(x3c: &X3cInstance) -> Result<(ProbeInstance, usize), ReductionError> {
    x3c.validate()?;
    let s = x3c.sets.len();
    let x = x3c.universe;
    if x == 0 || !x.is_multiple_of(3) || s < x / 3 {
        return Ok((ProbeInstance::all_probes(Graph::complete(s + 1)), s));
    }
    let z = s - x / 3;
    let n = x + s + z;
    let y0 = x;
    let z0 = x + s;
    let mut edges = Vec::new();
    for a in 0..x {
        for b in a + 1..x {
            edges.push((a, b));
        }
    }
    for (i, set) in x3c.sets.iter().enumerate() {
        edges.extend(set.iter().map(|&e| (e, y0 + i)));
        edges.extend((0..z).map(|j| (y0 + i, z0 + j)));
    }
    let g = Graph::new(n, edges).expect("valid construction").complement();
    let nonprobes: Vec<usize> = (0..x).collect();
    let inst = ProbeInstance::with_nonprobes(g, &nonprobes).expect("X is independent in the complement");
    Ok((inst, s))
}

/// Adds a triangle on `triple` to a bipartite graph whose probe side
/// `is_a` contains the triple; the other side becomes the non-probes.
///
/// The result is 3-colourable iff the precolouring giving the triple colours
/// 1, 2, 3 extends to a 3-colouring of `bip`.
pub fn gen_precolext_reduction(
    bip: &Graph,
    is_a: &[bool],
    triple: [usize; 3],
) -> Result<ProbeInstance, ReductionError> {
    let n = bip.n();
    if is_a.len() != n {
        return Err(ReductionError::SideLength { got: is_a.len(), expected: n });
    }
    if bip.edges().any(|(u, v)| is_a[u] == is_a[v]) {
        return Err(ReductionError::NotBipartite);
    }
    if triple.iter().any(|&v| v >= n) {
        return Err(ReductionError::BadTriple);
    }
    if let Some(&v) = triple.iter().find(|&&v| !is_a[v]) {
        return Err(ReductionError::NotOnProbeSide(v));
    }
    let [a, b, c] = triple;
    if a == b || b == c || a == c {
        return Err(ReductionError::BadTriple);
    }
    let g = bip.with_edges([(a, b), (b, c), (a, c)]).expect("in range");
    Ok(ProbeInstance::new(g, is_a.to_vec()).expect("the non-probe side is untouched"))
}

/// Side flags from a 2-colouring of `bip`, or an error for a non-bipartite
/// graph.
pub fn sides_of(bip: &Graph) -> Result<Vec<bool>, ReductionError> {
    match bipartition(bip) {
        Bipartition::TwoColouring(c) => Ok(c.into_iter().map(|x| x == 0).collect()),
        Bipartition::OddClosedWalk(_) => Err(ReductionError::NotBipartite),
    }
}

/// The precolouring used by [`gen_precolext_reduction`].
pub fn precolext_colours(triple: [usize; 3]) -> [(usize, Colour); 3] {
    [(triple[0], 1), (triple[1], 2), (triple[2], 3)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_k_colourable;

    fn figure_instance() -> X3cInstance {
        X3cInstance { universe: 6, sets: vec![[0, 1, 2], [1, 2, 4], [3, 4, 5]] }
    }

    #[test]
    fn figure_instance_layout() {
        let (inst, s) = gen_x3c_reduction(&figure_instance()).unwrap();
        assert_eq!(s, 3);
        // |Z| = s - k = 1
        assert_eq!(inst.graph().n(), 10);
        assert_eq!(inst.nonprobes(), vec![0, 1, 2, 3, 4, 5]);
        assert!(oracle_k_colourable(inst.graph(), 3).unwrap().is_some());
    }

    #[test]
    fn universe_not_divisible_by_three() {
        let x3c = X3cInstance { universe: 4, sets: vec![[0, 1, 2], [1, 2, 3]] };
        let (inst, s) = gen_x3c_reduction(&x3c).unwrap();
        assert_eq!(inst.graph(), &Graph::complete(3));
        assert!(oracle_k_colourable(inst.graph(), s as u8).unwrap().is_none());
    }

    #[test]
    fn single_set() {
        let x3c = X3cInstance { universe: 3, sets: vec![[0, 1, 2]] };
        let (inst, s) = gen_x3c_reduction(&x3c).unwrap();
        assert_eq!(s, 1);
        assert_eq!(inst.graph().n(), 4);
        assert!(oracle_k_colourable(inst.graph(), 1).unwrap().is_some());
    }

    #[test]
    fn repeated_element_rejected() {
        let x3c = X3cInstance { universe: 3, sets: vec![[0, 0, 2]] };
        assert_eq!(gen_x3c_reduction(&x3c), Err(ReductionError::BadSet { index: 0 }));
    }

    #[test]
    fn six_cycle_gadget() {
        let bip = Graph::cycle(6);
        let is_a = sides_of(&bip).unwrap();
        let inst = gen_precolext_reduction(&bip, &is_a, [0, 2, 4]).unwrap();
        assert_eq!(inst.graph().edge_count(), 9);
        assert_eq!(inst.nonprobes(), vec![1, 3, 5]);
    }

    #[test]
    fn star_cannot_supply_triple() {
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let is_a = vec![true, false, false, false];
        assert_eq!(gen_precolext_reduction(&star, &is_a, [0, 1, 2]), Err(ReductionError::NotOnProbeSide(1)));
    }
}
