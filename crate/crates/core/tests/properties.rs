//! Randomised invariants, each checked against a brute-force reference.

mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use probe_chroma::generators::{gen_family_instance, Family};
use probe_chroma::graph::{
    bipartition, find_induced_subgraph, shortest_odd_cycle, Bipartition, ColourSet, Graph, PartialColouring,
    ProbeInstance,
};
use probe_chroma::oracle::{oracle_is_probe_hfree, oracle_k_colourable};
use probe_chroma::propagation::propagate;
use probe_chroma::solver::{solve_3col, verify_colouring, SolverOptions, Status};
use probe_chroma::special::is_multi_p2_free;
use probe_chroma::twosat::{extend_by_2list, solve_two_sat, Clause, EqualityConstraint, Literal, TwoSatFormula};

fn random_partial(rng: &mut ChaCha8Rng, n: usize, k: u8, p: f64) -> PartialColouring {
    let raw = (0..n).map(|_| if rng.random_bool(p) { rng.random_range(1..=k) } else { 0 }).collect();
    PartialColouring::from_raw(k, raw).unwrap()
}

fn extends(small: &[u8], big: &[u8]) -> bool {
    small.iter().zip(big).all(|(&a, &b)| a == 0 || a == b)
}

/// A random graph with an independent set of non-probes, accepted by the
/// recogniser for that partition. Sometimes a probe C5 or C3 is planted on
/// the first vertices so the structural cases are reached.
fn certified_instance(seed: u64) -> Option<ProbeInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(6..=11);
    let p = rng.random_range(0.15..0.7);
    let mut g = common::random_graph(&mut rng, n, p);
    let mut flags = vec![true; n];
    let planted = match rng.random_range(0..3) {
        0 => 0,
        1 => 5,
        _ => 3,
    };
    if planted > 0 {
        let mut edges: Vec<(usize, usize)> = g.edges().filter(|&(u, v)| u >= planted || v >= planted).collect();
        edges.extend((0..planted).map(|i| (i, (i + 1) % planted)));
        g = Graph::new(n, edges).unwrap();
    }
    for v in planted..n {
        if rng.random_bool(0.45) && (0..v).all(|u| flags[u] || !g.has_edge(u, v)) {
            flags[v] = false;
        }
    }
    oracle_is_probe_hfree(&g, &[Graph::path(5)], Some(&flags)).unwrap()?;
    Some(ProbeInstance::new(g, flags).unwrap())
}

fn brute_lists_ok(g: &Graph, psi: &PartialColouring, extra: &[EqualityConstraint]) -> bool {
    common::all_extensions(g, psi).iter().any(|col| {
        extra.iter().all(|e| e.colours.iter().all(|c| (col[e.u] == c) == (col[e.v] == c)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn propagation_is_sound_and_idempotent(seed in any::<u64>(), n in 1usize..9, k in 1u8..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, n, 0.45);
        let psi = random_partial(&mut rng, n, k, 0.35);
        let exts = common::all_extensions(&g, &psi);
        match propagate(&g, &psi) {
            Ok(out) => {
                prop_assert!(psi.is_extended_by(&out));
                prop_assert_eq!(propagate(&g, &out).unwrap(), out.clone());
                for e in &exts {
                    prop_assert!(extends(out.as_raw(), e));
                }
            }
            Err(conflict) => {
                prop_assert!(exts.is_empty());
                prop_assert!(conflict.vertex < n);
            }
        }
    }

    #[test]
    fn propagation_is_monotone(seed in any::<u64>(), n in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, n, 0.4);
        let big = random_partial(&mut rng, n, 3, 0.5);
        let small = PartialColouring::from_raw(
            3,
            big.as_raw().iter().map(|&c| if rng.random_bool(0.5) { c } else { 0 }).collect(),
        ).unwrap();
        if big.check_proper(&g).is_err() {
            return Ok(());
        }
        if let Ok(out_big) = propagate(&g, &big) {
            let out_small = propagate(&g, &small).unwrap();
            prop_assert!(out_small.is_extended_by(&out_big));
        }
    }

    #[test]
    fn propagation_ignores_vertex_order(seed in any::<u64>(), n in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, n, 0.4);
        let psi = random_partial(&mut rng, n, 3, 0.4);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let mut moved = vec![0; n];
        for v in 0..n {
            moved[perm[v]] = psi.as_raw()[v];
        }
        let a = propagate(&g, &psi);
        let b = propagate(&g.permuted(&perm), &PartialColouring::from_raw(3, moved).unwrap());
        prop_assert_eq!(a.is_ok(), b.is_ok());
        if let (Ok(a), Ok(b)) = (a, b) {
            for v in 0..n {
                prop_assert_eq!(a.as_raw()[v], b.as_raw()[perm[v]]);
            }
        }
    }

    #[test]
    fn two_sat_matches_truth_table(seed in any::<u64>(), vars in 1usize..9, clauses in 0usize..24) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut f = TwoSatFormula::new(vars);
        let lit = |rng: &mut ChaCha8Rng| {
            let v = rng.random_range(0..vars);
            if rng.random_bool(0.5) { Literal::pos(v) } else { Literal::neg(v) }
        };
        for _ in 0..clauses {
            let clause = if rng.random_bool(0.15) { Clause::Unit(lit(&mut rng)) } else { Clause::Pair(lit(&mut rng), lit(&mut rng)) };
            f.add(clause);
        }
        let any = (0..1u32 << vars).any(|mask| {
            let a: Vec<bool> = (0..vars).map(|i| mask >> i & 1 == 1).collect();
            f.is_satisfied_by(&a)
        });
        match solve_two_sat(&f) {
            Some(a) => prop_assert!(f.is_satisfied_by(&a)),
            None => prop_assert!(!any),
        }
    }

    #[test]
    fn list_extension_matches_brute_force(seed in any::<u64>(), n in 2usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, n, 0.5);
        let Ok(psi) = propagate(&g, &random_partial(&mut rng, n, 3, 0.5)) else { return Ok(()) };
        let free: Vec<usize> = (0..n).filter(|&v| !psi.is_coloured(v)).collect();
        let mut extra = Vec::new();
        if free.len() >= 2 && rng.random_bool(0.5) {
            let group: Vec<usize> = free.iter().copied().filter(|_| rng.random_bool(0.6)).collect();
            let colours = ColourSet::singleton(rng.random_range(1..=3));
            extra = EqualityConstraint::chain(&group, colours);
            let pairs = EqualityConstraint::all_pairs(&group, colours);
            let a = extend_by_2list(&g, &psi, &extra).map(|o| o.is_some());
            let b = extend_by_2list(&g, &psi, &pairs).map(|o| o.is_some());
            prop_assert_eq!(a, b);
        }
        let Ok(out) = extend_by_2list(&g, &psi, &extra) else { return Ok(()) };
        let want = brute_lists_ok(&g, &psi, &extra);
        prop_assert_eq!(out.is_some(), want);
        if let Some(col) = out {
            prop_assert!(psi.is_extended_by(&col));
            prop_assert!(col.is_complete());
            prop_assert!(col.check_proper(&g).is_ok());
        }
    }

    #[test]
    fn bipartition_agrees_with_odd_cycles(seed in any::<u64>(), n in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, n, 0.25);
        let odd = shortest_odd_cycle(&g);
        match bipartition(&g) {
            Bipartition::TwoColouring(side) => {
                prop_assert!(odd.is_none());
                prop_assert!(g.edges().all(|(u, v)| side[u] != side[v]));
            }
            Bipartition::OddClosedWalk(w) => {
                prop_assert_eq!(w.len() % 2, 1);
                prop_assert!((0..w.len()).all(|i| g.has_edge(w[i], w[(i + 1) % w.len()])));
                let c = odd.expect("odd walk implies an odd cycle");
                prop_assert_eq!(c.len() % 2, 1);
                // chordless: the cycle induces exactly its own edges
                prop_assert_eq!(g.induced_subgraph(&c).edge_count(), c.len());
                prop_assert!((0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()])));
            }
        }
    }

    #[test]
    fn induced_p5_search_matches_subset_scan(seed in any::<u64>(), n in 1usize..11) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = rng.random_range(0.2..0.7);
    let g = common::random_graph(&mut rng, n, p);
        let is_p5 = |s: &[usize]| {
            let h = g.induced_subgraph(s);
            h.edge_count() == 4 && common::is_connected(&h) && (0..5).all(|v| h.degree(v) <= 2)
        };
        let mut found = false;
        let vs: Vec<usize> = (0..n).collect();
        for_each_subset(&vs, 5, &mut |s| found |= is_p5(s));
        match find_induced_subgraph(&g, &Graph::path(5)).unwrap() {
            Some(emb) => {
                prop_assert!(found);
                prop_assert!((0..4).all(|i| g.has_edge(emb.image[i], emb.image[i + 1])));
                prop_assert!(is_p5(&emb.vertex_set()));
            }
            None => prop_assert!(!found),
        }
    }

    #[test]
    fn multi_p2_freeness_matches_subset_scan(seed in any::<u64>(), n in 1usize..10, s in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = rng.random_range(0.1..0.6);
    let g = common::random_graph(&mut rng, n, p);
        let mut found = false;
        let vs: Vec<usize> = (0..n).collect();
        // the function looks for an induced (s + 1)P2
        let t = s + 1;
        for_each_subset(&vs, 2 * t, &mut |set| {
            let h = g.induced_subgraph(set);
            found |= h.edge_count() == t && (0..2 * t).all(|v| h.degree(v) == 1);
        });
        prop_assert_eq!(is_multi_p2_free(&g, s).unwrap(), !found);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn solver_matches_oracle_on_certified_inputs(seed in any::<u64>()) {
        let Some(inst) = certified_instance(seed) else { return Ok(()) };
        let g = inst.graph();
        let v = solve_3col(&inst, &SolverOptions::default()).unwrap();
        let want = oracle_k_colourable(g, 3).unwrap().is_some();
        match v.status {
            Status::Colourable => {
                prop_assert!(want);
                verify_colouring(g, v.certificate.as_ref().unwrap(), 3).unwrap();
            }
            Status::NotColourable => prop_assert!(!want),
            Status::NotProbeP5Free => prop_assert!(false, "certified input flagged: {:?}", v.diagnostic),
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rng);
        let moved = solve_3col(&inst.permuted(&perm), &SolverOptions::default()).unwrap();
        prop_assert_eq!(moved.status, v.status);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generators_are_deterministic_and_certified(
        seed in any::<u64>(),
        n in 1usize..13,
        density in 0.05f64..0.95,
        which in 0usize..4,
    ) {
        let family = [Family::ProbeP5, Family::ProbeP3sP1(1), Family::ProbeP2sP1(2), Family::TriangleFreeProbeP5][which];
        let a = gen_family_instance(family, n, density, seed);
        let b = gen_family_instance(family, n, density, seed);
        prop_assert_eq!(&a.instance, &b.instance);
        prop_assert_eq!(&a.certificate, &b.certificate);
        prop_assert_eq!(a.instance.graph().n(), n);

        let flags = a.instance.probe_flags().to_vec();
        prop_assert!(oracle_is_probe_hfree(a.instance.graph(), &[family.pattern()], Some(&flags)).unwrap().is_some());
        let completed = a.certificate.completed(a.instance.graph());
        prop_assert!(probe_chroma::oracle::oracle_is_hfree(&completed, &[family.pattern()]));
        prop_assert!(a.certificate.fill_edges.iter().all(|&(u, v)| !flags[u] && !flags[v]));
    }
}

fn for_each_subset(vs: &[usize], size: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(vs: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for i in start..vs.len() {
            cur.push(vs[i]);
            rec(vs, size, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(vs, size, 0, &mut Vec::new(), f);
}

#[test]
fn generated_colourings_are_proper_for_triangle_free_family() {
    for seed in 0..40 {
        let gen = gen_family_instance(Family::TriangleFreeProbeP5, 10, 0.4, seed);
        let g = gen.instance.graph();
        if let Ok(col) = probe_chroma::special::colour_trianglefree_probe_p5(&gen.instance) {
            verify_colouring(g, &col, 3).unwrap();
        } else {
            assert!(oracle_k_colourable(g, 3).unwrap().is_none() || probe_chroma::graph::find_triangle(g).is_some());
        }
    }
}
