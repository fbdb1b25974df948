#![allow(dead_code)]

use probe_chroma::graph::{Colour, Graph, PartialColouring};
use rand::Rng;

/// Every proper completion of `psi`, by plain backtracking in id order.
pub fn all_extensions(g: &Graph, psi: &PartialColouring) -> Vec<Vec<Colour>> {
    fn rec(g: &Graph, k: u8, v: usize, cur: &mut Vec<Colour>, out: &mut Vec<Vec<Colour>>) {
        if v == g.n() {
            out.push(cur.clone());
            return;
        }
        let fixed = cur[v];
        let options: Vec<Colour> = if fixed > 0 { vec![fixed] } else { (1..=k).collect() };
        for c in options {
            if g.neighbours(v).iter().all(|&w| cur[w] != c) {
                cur[v] = c;
                rec(g, k, v + 1, cur, out);
            }
        }
        cur[v] = fixed;
    }
    let mut cur = psi.as_raw().to_vec();
    let mut out = Vec::new();
    rec(g, psi.k(), 0, &mut cur, &mut out);
    out
}

/// Whether some subfamily of `sets` partitions `0..universe`, by trying all
/// subfamilies.
pub fn has_exact_cover(universe: usize, sets: &[[usize; 3]]) -> bool {
    let full: u64 = (1u64 << universe) - 1;
    (0u64..1 << sets.len()).any(|mask| {
        let mut covered = 0u64;
        for (i, s) in sets.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for &x in s {
                    if covered >> x & 1 == 1 {
                        return false;
                    }
                    covered |= 1 << x;
                }
            }
        }
        covered == full
    })
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.random_bool(p)).collect();
    Graph::new(n, edges).unwrap()
}

fn pair_bit(a: usize, b: usize) -> u32 {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    1 << (b * (b - 1) / 2 + a)
}

fn graph_of(n: usize, code: u32) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|b| (0..b).map(move |a| (a, b))).filter(|&(a, b)| code & pair_bit(a, b) != 0).collect();
    Graph::new(n, edges).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of graphs on `n <= 7` vertices.
pub fn graph_classes(n: usize) -> Vec<Graph> {
    assert!(n <= 7);
    let mut level: Vec<u32> = vec![0];
    for m in 2..=n {
        let perms = permutations(m);
        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|b| (0..b).map(move |a| (a, b))).collect();
        let maps: Vec<Vec<(u32, u32)>> = perms
            .iter()
            .map(|p| pairs.iter().map(|&(a, b)| (pair_bit(a, b), pair_bit(p[a], p[b]))).collect())
            .collect();
        let canon = |code: u32| {
            maps.iter()
                .map(|map| map.iter().filter(|(from, _)| code & from != 0).fold(0, |acc, (_, to)| acc | to))
                .min()
                .unwrap()
        };
        let mut next = std::collections::BTreeSet::new();
        for &code in &level {
            for nb in 0u32..1 << (m - 1) {
                let mut c = code;
                for a in 0..m - 1 {
                    if nb >> a & 1 == 1 {
                        c |= pair_bit(a, m - 1);
                    }
                }
                next.insert(canon(c));
            }
        }
        level = next.into_iter().collect();
    }
    if n == 0 {
        return vec![Graph::empty(0)];
    }
    level.into_iter().map(|c| graph_of(n, c)).collect()
}

pub fn is_connected(g: &Graph) -> bool {
    probe_chroma::graph::connected_components(g).len() <= 1
}

pub fn independent_sets(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    (0u32..1 << n)
        .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>())
        .filter(|s| g.is_independent(s))
        .collect()
}
