//! Acceptance run: one line per criterion, non-zero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use probe_chroma::generators::{gen_family_instance, gen_probe_instance, Family};
use probe_chroma::graph::{Colour, Graph, PartialColouring, ProbeInstance};
use probe_chroma::oracle::{oracle_extend, oracle_is_hfree, oracle_is_probe_hfree, oracle_k_colourable};
use probe_chroma::patterns::parse_pattern;
use probe_chroma::propagation::{propagate, Conflict};
use probe_chroma::reductions::{gen_precolext_reduction, gen_x3c_reduction, X3cInstance};
use probe_chroma::solver::{solve_3col, verify_colouring, SolverOptions, Status, MAX_TWO_SAT_CALLS_PER_COMPONENT};
use probe_chroma::special::{colour_trianglefree_probe_p5, is_multi_p2_free, solve_3col_p3sp1};
use probe_chroma::fixtures::twin_path;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn expected_status(g: &Graph) -> Status {
    match oracle_k_colourable(g, 3).unwrap() {
        Some(_) => Status::Colourable,
        None => Status::NotColourable,
    }
}

/// Solves and checks status and certificate against the oracle. Returns a
/// description of the mismatch, if any.
fn check_against_oracle(inst: &ProbeInstance) -> Option<String> {
    let verdict = match solve_3col(inst, &SolverOptions::default()) {
        Ok(v) => v,
        Err(e) => return Some(format!("solver error {e}")),
    };
    let want = expected_status(inst.graph());
    if verdict.status != want {
        return Some(format!("status {:?}, oracle {:?}, diagnostic {:?}", verdict.status, want, verdict.diagnostic));
    }
    if let Some(c) = &verdict.certificate {
        if let Err(e) = verify_colouring(inst.graph(), c, 3) {
            return Some(format!("certificate rejected: {e}"));
        }
    }
    None
}

fn describe(inst: &ProbeInstance) -> String {
    format!("edges {:?} nonprobes {:?}", inst.graph().edges().collect::<Vec<_>>(), inst.nonprobes())
}

fn exhaustive_small() -> Outcome {
    let p5 = Graph::path(5);
    let (mut graphs, mut partitions, mut mismatches) = (0, 0, Vec::new());
    for n in 1..=7 {
        for g in common::graph_classes(n).into_iter().filter(common::is_connected) {
            graphs += 1;
            for nonprobes in common::independent_sets(&g) {
                let flags: Vec<bool> = (0..n).map(|v| !nonprobes.contains(&v)).collect();
                if oracle_is_probe_hfree(&g, std::slice::from_ref(&p5), Some(&flags)).unwrap().is_none() {
                    continue;
                }
                partitions += 1;
                let inst = ProbeInstance::new(g.clone(), flags).unwrap();
                if let Some(m) = check_against_oracle(&inst) {
                    mismatches.push(format!("{m}; {}", describe(&inst)));
                }
            }
        }
    }
    let detail = format!(
        "{graphs} connected graphs, {partitions} certified partitions, {} mismatches{}",
        mismatches.len(),
        mismatches.first().map(|m| format!(" (first: {m})")).unwrap_or_default()
    );
    outcome(mismatches.is_empty() && graphs == 1 + 1 + 2 + 6 + 21 + 112 + 853, detail)
}

fn randomized_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let densities = [0.15, 0.3, 0.45, 0.6, 0.75, 0.9];
    let (mut violations, mut mismatches, mut colourable) = (0, Vec::new(), 0);
    let total = 10_000;
    for i in 0..total {
        let n = rng.random_range(1..=24);
        let density = densities[i % densities.len()];
        let family = if i % 4 == 3 { Family::TriangleFreeProbeP5 } else { Family::ProbeP5 };
        let gen = gen_family_instance(family, n, density, i as u64);
        let verdict = solve_3col(&gen.instance, &SolverOptions::default()).unwrap();
        if verdict.status == Status::NotProbeP5Free {
            violations += 1;
        }
        colourable += usize::from(verdict.is_colourable());
        if let Some(m) = check_against_oracle(&gen.instance) {
            mismatches.push(format!("{m}; seed {i} n {n} density {density} {family:?}"));
        }
    }
    let detail = format!(
        "{total} instances ({colourable} colourable), {} mismatches, {violations} structural violations{}",
        mismatches.len(),
        mismatches.first().map(|m| format!(" (first: {m})")).unwrap_or_default()
    );
    outcome(mismatches.is_empty() && violations == 0, detail)
}

fn counterexample_catalogue() -> Outcome {
    let p5 = [Graph::path(5)];
    let p6 = [parse_pattern("p6").unwrap()];
    let two_p2 = [parse_pattern("2p2").unwrap()];
    let mut checks: Vec<(String, bool, bool)> = vec![
        ("C7 probe P5-free".into(), oracle_is_probe_hfree(&Graph::cycle(7), &p5, None).unwrap().is_some(), false),
        ("C9 probe P5-free".into(), oracle_is_probe_hfree(&Graph::cycle(9), &p5, None).unwrap().is_some(), false),
        ("L probe P5-free".into(), oracle_is_probe_hfree(&twin_path(), &p5, None).unwrap().is_some(), false),
        ("C7 probe P6-free".into(), oracle_is_probe_hfree(&Graph::cycle(7), &p6, None).unwrap().is_some(), true),
    ];
    for m in 2..=5 {
        let c = Graph::cycle(2 * m);
        let free = oracle_is_probe_hfree(&c, &two_p2, None).unwrap();
        let confirmed = free.as_ref().is_some_and(|cert| oracle_is_hfree(&cert.completed(&c), &two_p2));
        checks.push((format!("C{} probe 2P2-free", 2 * m), confirmed, true));
    }
    let wrong: Vec<&str> = checks.iter().filter(|(_, got, want)| got != want).map(|(s, _, _)| s.as_str()).collect();
    outcome(wrong.is_empty(), format!("{} checks, wrong: {wrong:?}", checks.len()))
}

fn propagation_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut conflicts, mut failures) = (0, Vec::new());
    for i in 0..1000 {
        let n = rng.random_range(1..=10);
        let p = rng.random_range(0.2..0.8);
        let g = common::random_graph(&mut rng, n, p);
        let mut psi = PartialColouring::new(n, 3);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        for v in order.into_iter().take(rng.random_range(0..=n)) {
            let used = psi.neighbour_colours(&g, v);
            let free: Vec<Colour> = (1..=3).filter(|&c| !used.contains(c)).collect();
            if let Some(&c) = free.choose(&mut rng) {
                psi.set(v, c);
            }
        }
        let extensions = common::all_extensions(&g, &psi);
        match propagate(&g, &psi) {
            Err(Conflict { .. }) => {
                conflicts += 1;
                if !extensions.is_empty() || oracle_extend(&g, &psi).unwrap().is_some() {
                    failures.push(format!("case {i}: conflict on an extendable colouring"));
                }
            }
            Ok(out) => {
                if !psi.is_extended_by(&out) {
                    failures.push(format!("case {i}: output does not extend the input"));
                }
                let forced_ok = extensions.iter().all(|ext| (0..n).all(|v| out.get(v).is_none_or(|c| ext[v] == c)));
                if !forced_ok {
                    failures.push(format!("case {i}: a propagated colour disagrees with an extension"));
                }
                if propagate(&g, &out).as_ref() != Ok(&out) {
                    failures.push(format!("case {i}: not idempotent"));
                }
                if naive_fixpoint(&g, &psi, &mut rng).as_ref() != Some(&out) {
                    failures.push(format!("case {i}: order-dependent result"));
                }
            }
        }
    }
    outcome(failures.is_empty(), format!("1000 cases, {conflicts} conflicts, failures: {:?}", failures.first()))
}

/// Propagation by repeated sweeps in random vertex order.
fn naive_fixpoint(g: &Graph, psi: &PartialColouring, rng: &mut ChaCha8Rng) -> Option<PartialColouring> {
    let mut out = psi.clone();
    loop {
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.shuffle(rng);
        let mut changed = false;
        for v in order {
            let seen = out.neighbour_colours(g, v);
            if seen.len() == 3 {
                return None;
            }
            if !out.is_coloured(v) && seen.len() == 2 {
                out.set(v, (1..=3).find(|&c| !seen.contains(c)).unwrap());
                changed = true;
            }
        }
        if !changed {
            return Some(out);
        }
    }
}

fn reduction_correctness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    let mut yes = 0;
    for i in 0..200 {
        let count = rng.random_range(1..=6);
        let sets: Vec<[usize; 3]> = (0..count)
            .map(|_| {
                let mut xs: Vec<usize> = (0..6).collect();
                xs.shuffle(&mut rng);
                let mut s = [xs[0], xs[1], xs[2]];
                s.sort_unstable();
                s
            })
            .collect();
        let cover = common::has_exact_cover(6, &sets);
        yes += usize::from(cover);
        let (inst, s) = gen_x3c_reduction(&X3cInstance { universe: 6, sets: sets.clone() }).unwrap();
        let colourable = oracle_k_colourable(inst.graph(), s as u8).unwrap().is_some();
        if cover != colourable {
            failures.push(format!("x3c case {i}: cover {cover}, colourable {colourable}, sets {sets:?}"));
        }
    }
    let mut precol_checked = 0;
    while precol_checked < 200 {
        let n = rng.random_range(3..=12);
        let is_a: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
        let a_side: Vec<usize> = (0..n).filter(|&v| is_a[v]).collect();
        if a_side.len() < 3 {
            continue;
        }
        let p = rng.random_range(0.2..0.7);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| is_a[u] != is_a[v])
            .filter(|_| rng.random_bool(p))
            .collect();
        let bip = Graph::new(n, edges).unwrap();
        let mut pick = a_side.clone();
        pick.shuffle(&mut rng);
        let triple = [pick[0], pick[1], pick[2]];
        let mut psi = PartialColouring::new(n, 3);
        for (c, &v) in triple.iter().enumerate() {
            psi.set(v, c as Colour + 1);
        }
        let extendable = !common::all_extensions(&bip, &psi).is_empty();
        let inst = gen_precolext_reduction(&bip, &is_a, triple).unwrap();
        let colourable = oracle_k_colourable(inst.graph(), 3).unwrap().is_some();
        if extendable != colourable {
            failures.push(format!("precolouring case {precol_checked}: extendable {extendable}, colourable {colourable}"));
        }
        precol_checked += 1;
    }
    outcome(
        failures.is_empty(),
        format!("200 X3C ({yes} with a cover) and 200 precolouring cases, failures: {:?}", failures.first()),
    )
}

fn auxiliary_solvers() -> Outcome {
    let mut failures = Vec::new();
    let mut p3_cases = 0;
    for s in 0..=2usize {
        for seed in 0..200u64 {
            let n = 1 + (seed as usize * 7 + s) % 12;
            let density = [0.25, 0.5, 0.75][seed as usize % 3];
            let gen = gen_family_instance(Family::ProbeP3sP1(s), n, density, seed);
            let pattern = [Graph::p3_plus_isolated(s)];
            let certified = oracle_is_hfree(&gen.certificate.completed(gen.instance.graph()), &pattern);
            if !certified {
                failures.push(format!("p3sp1 s {s} seed {seed}: generated instance not certified"));
                continue;
            }
            p3_cases += 1;
            match solve_3col_p3sp1(&gen.instance, s) {
                Ok(v) => {
                    let want = expected_status(gen.instance.graph());
                    let cert_ok = v.certificate.as_ref().is_none_or(|c| verify_colouring(gen.instance.graph(), c, 3).is_ok());
                    if v.status != want || !cert_ok {
                        failures.push(format!("p3sp1 s {s} seed {seed}: {:?} vs {want:?} {:?}", v.status, v.diagnostic));
                    }
                }
                Err(e) => failures.push(format!("p3sp1 s {s} seed {seed}: {e}")),
            }
        }
    }
    let mut tf_cases = 0;
    for seed in 0..500u64 {
        let n = 1 + (seed as usize * 13) % 40;
        let density = [0.2, 0.4, 0.6, 0.8][seed as usize % 4];
        let gen = gen_family_instance(Family::TriangleFreeProbeP5, n, density, seed);
        tf_cases += 1;
        match colour_trianglefree_probe_p5(&gen.instance) {
            Ok(c) if verify_colouring(gen.instance.graph(), &c, 3).is_ok() => {}
            Ok(_) => failures.push(format!("triangle-free seed {seed}: improper colouring")),
            Err(e) => failures.push(format!("triangle-free seed {seed}: {e}")),
        }
    }
    outcome(
        failures.is_empty() && p3_cases >= 500 && tf_cases >= 500,
        format!("{p3_cases} (P3+sP1) cases, {tf_cases} triangle-free cases, failures: {:?}", failures.first()),
    )
}

fn structural_check() -> Outcome {
    let mut failures = Vec::new();
    for i in 0..1000u64 {
        let s = 1 + (i % 2) as usize;
        let n = 2 + (i as usize * 5) % 13;
        let gen = gen_family_instance(Family::ProbeP2sP1(s), n, [0.3, 0.6, 0.9][i as usize % 3], i);
        let pattern = [Graph::p2_plus_isolated(s)];
        if !oracle_is_hfree(&gen.certificate.completed(gen.instance.graph()), &pattern) {
            failures.push(format!("case {i}: not certified"));
        } else if !is_multi_p2_free(gen.instance.graph(), s).unwrap() {
            failures.push(format!("case {i}: contains {}P2", s + 1));
        }
    }
    outcome(failures.is_empty(), format!("1000 instances, failures: {:?}", failures.first()))
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort_unstable();
    let m = xs.len() / 2;
    if xs.len().is_multiple_of(2) { (xs[m - 1] + xs[m]) / 2 } else { xs[m] }
}

fn scaling() -> Outcome {
    let sizes = [1000, 2000, 4000, 8000];
    let mut medians = Vec::new();
    let mut worst_calls = 0;
    let mut failures = Vec::new();
    for &n in &sizes {
        let mut times = Vec::new();
        for seed in 0..10u64 {
            let gen = gen_probe_instance(n, 0.3, seed);
            let start = Instant::now();
            let verdict = solve_3col(&gen.instance, &SolverOptions::default()).unwrap();
            times.push(start.elapsed());
            worst_calls = worst_calls.max(verdict.stats.max_two_sat_calls_per_component);
            if verdict.status == Status::NotProbeP5Free {
                failures.push(format!("n {n} seed {seed}: {:?}", verdict.diagnostic));
            }
            if let Some(c) = &verdict.certificate {
                if verify_colouring(gen.instance.graph(), c, 3).is_err() {
                    failures.push(format!("n {n} seed {seed}: bad certificate"));
                }
            }
        }
        medians.push(median(times));
    }
    let ratios: Vec<f64> = medians.windows(2).map(|w| w[1].as_secs_f64() / w[0].as_secs_f64().max(1e-9)).collect();
    let passed = failures.is_empty() && worst_calls <= MAX_TWO_SAT_CALLS_PER_COMPONENT && ratios.iter().all(|&r| r <= 10.0);
    outcome(
        passed,
        format!(
            "medians {:?}, ratios {:.2?}, max 2-SAT calls per component {worst_calls}, failures: {:?}",
            medians,
            ratios,
            failures.first()
        ),
    )
}

fn relabelling_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut failures = Vec::new();
    for i in 0..1000u64 {
        let n = rng.random_range(1..=30);
        let gen = gen_probe_instance(n, rng.random_range(0.1..0.9), 50_000 + i);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let before = solve_3col(&gen.instance, &SolverOptions::default()).unwrap();
        let after = solve_3col(&gen.instance.permuted(&perm), &SolverOptions::default()).unwrap();
        if before.status != after.status {
            failures.push(format!("case {i}: {:?} vs {:?}", before.status, after.status));
        }
    }
    outcome(failures.is_empty(), format!("1000 pairs, failures: {:?}", failures.first()))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        ("exhaustive small-instance equivalence", Duration::from_secs(15 * 60), exhaustive_small),
        ("randomized equivalence", Duration::from_secs(15 * 60), randomized_equivalence),
        ("counterexample catalogue", Duration::from_secs(60), counterexample_catalogue),
        ("propagation soundness", Duration::from_secs(5 * 60), propagation_soundness),
        ("reduction correctness", Duration::from_secs(10 * 60), reduction_correctness),
        ("auxiliary solvers", Duration::from_secs(10 * 60), auxiliary_solvers),
        ("structural pattern check", Duration::from_secs(5 * 60), structural_check),
        ("polynomial scaling and branch budget", Duration::from_secs(30 * 60), scaling),
        ("relabelling invariance", Duration::from_secs(5 * 60), relabelling_invariance),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut all_passed = true;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        if only.is_some_and(|o| o != i + 1) {
            continue;
        }
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let passed = result.passed && elapsed <= *limit;
        all_passed &= passed;
        println!(
            "{} [{}] {name}: {} ({:.1}s, limit {}s)",
            if passed { "PASS" } else { "FAIL" },
            i + 1,
            result.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if !all_passed {
        std::process::exit(1);
    }
}
