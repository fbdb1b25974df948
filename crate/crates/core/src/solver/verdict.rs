use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Colour, SearchError};

/// Outcome class of a colouring decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Colourable,
    NotColourable,
    /// A structural property that holds for every probe P5-free input failed,
    /// so the input cannot be probe P5-free.
    NotProbeP5Free,
}

/// Which structural step failed on an input that is not probe P5-free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// The non-bipartite probe component has no triangle and no induced C5.
    OddCycleTooLong,
    /// After propagation an uncoloured vertex has no coloured neighbour.
    NoColouredNeighbour,
    /// An uncoloured vertex still has three available colours.
    ListTooLarge,
    /// An uncoloured vertex of the probe component sees two colours.
    UnforcedTwoColourVertex,
    /// No set of at most two probe-component vertices dominates the
    /// unreached vertices.
    NoDominatingPair,
    /// Some probe vertex outside the odd component has no usable neighbour.
    EmptyUnforcedNeighbours,
    /// Finalising the colouring found a vertex with no free colour.
    NoFreeColour,
    /// A P5-free component has no dominating clique or induced P3 of order
    /// at most three.
    NoDominatingSet,
    /// An assembled certificate failed verification.
    InvalidCertificate,
    /// The probes induce a pattern the input promised to exclude.
    ForbiddenPattern,
    /// A vertex has the wrong neighbours on the reference C5.
    UnclassifiedVertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub kind: ViolationKind,
    pub witnesses: Vec<usize>,
    pub message: String,
}

impl Diagnostic {
    pub fn new(kind: ViolationKind, witnesses: Vec<usize>, message: impl Into<String>) -> Self {
        Diagnostic { kind, witnesses, message: message.into() }
    }

    pub(crate) fn relabelled(mut self, to_global: &[usize]) -> Self {
        for w in &mut self.witnesses {
            *w = to_global[*w];
        }
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (witnesses {:?})", self.message, self.witnesses)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub branches: u64,
    pub two_sat_calls: u64,
    pub max_two_sat_calls_per_component: u64,
    pub components: usize,
    pub time_ms: u64,
    pub seed: Option<u64>,
}

impl SolveStats {
    pub(crate) fn absorb(&mut self, other: &SolveStats) {
        self.branches += other.branches;
        self.two_sat_calls += other.two_sat_calls;
        self.max_two_sat_calls_per_component =
            self.max_two_sat_calls_per_component.max(other.max_two_sat_calls_per_component);
        self.components += other.components;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    /// Colours `1..=3` per vertex; present iff the status is `Colourable`.
    pub certificate: Option<Vec<Colour>>,
    pub diagnostic: Option<Diagnostic>,
    pub stats: SolveStats,
}

impl Verdict {
    pub fn colourable(certificate: Vec<Colour>, stats: SolveStats) -> Self {
        Verdict { status: Status::Colourable, certificate: Some(certificate), diagnostic: None, stats }
    }

    pub fn not_colourable(stats: SolveStats) -> Self {
        Verdict { status: Status::NotColourable, certificate: None, diagnostic: None, stats }
    }

    pub fn violation(diagnostic: Diagnostic, stats: SolveStats) -> Self {
        Verdict { status: Status::NotProbeP5Free, certificate: None, diagnostic: Some(diagnostic), stats }
    }

    pub fn is_colourable(&self) -> bool {
        self.status == Status::Colourable
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("capability limit reached: {0}")]
    Capability(#[from] SearchError),
    #[error("brute-force fallback refused a component of {0} vertices")]
    FallbackTooLarge(usize),
}
