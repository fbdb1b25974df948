//! Named graphs with known probe H-freeness status.

use crate::graph::{Graph, ProbeInstance};

/// A catalogued graph and the statuses it is known to have.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub graph: Graph,
    /// Pattern names paired with whether the graph is probe free of them.
    pub expected: Vec<(&'static str, bool)>,
    /// A known valid probe partition, when the fixture carries one.
    pub partition: Option<Vec<bool>>,
}

/// Two disjoint five-vertex paths `u` and `u'` (vertices `0..5` and `5..10`)
/// with each `u_i u'_i` added and, for `i < 4`, `u_i u'_{i+1}` and
/// `u'_i u_{i+1}`. Each `u_i`, `u'_i` pair are true twins.
pub fn twin_path() -> Graph {
    let mut edges = Vec::new();
    for i in 0..4 {
        edges.push((i, i + 1));
        edges.push((5 + i, 5 + i + 1));
        edges.push((i, 5 + i + 1));
        edges.push((5 + i, i + 1));
    }
    edges.extend((0..5).map(|i| (i, 5 + i)));
    Graph::new(10, edges).expect("valid construction")
}

/// The path on `2m` vertices with probes at ids `0, 2, 4, ...`.
pub fn path_split(m: usize) -> ProbeInstance {
    let g = Graph::path(2 * m);
    let flags = (0..2 * m).map(|v| v % 2 == 0).collect();
    ProbeInstance::new(g, flags).expect("alternate vertices of a path are independent")
}

/// The whole catalogue.
pub fn fixtures_counterexamples() -> Vec<Fixture> {
    let mut out = vec![
        Fixture {
            name: "C7".into(),
            graph: Graph::cycle(7),
            expected: vec![("p5", false), ("p6", true)],
            partition: None,
        },
        Fixture { name: "C9".into(), graph: Graph::cycle(9), expected: vec![("p5", false)], partition: None },
        Fixture { name: "L".into(), graph: twin_path(), expected: vec![("p5", false)], partition: None },
    ];
    for m in 2..=5 {
        out.push(Fixture {
            name: format!("C{}", 2 * m),
            graph: Graph::cycle(2 * m),
            expected: vec![("2p2", true)],
            partition: Some((0..2 * m).map(|v| v % 2 == 0).collect()),
        });
    }
    for m in [2, 4, 6] {
        let inst = path_split(m);
        out.push(Fixture {
            name: format!("path-split({})", 2 * m),
            graph: inst.graph().clone(),
            expected: vec![("2p2", true), ("p5", true)],
            partition: Some(inst.probe_flags().to_vec()),
        });
    }
    out
}

/// A fixture by name.
pub fn fixture(name: &str) -> Option<Fixture> {
    fixtures_counterexamples().into_iter().find(|f| f.name == name)
}
