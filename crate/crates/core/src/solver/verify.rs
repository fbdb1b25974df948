use thiserror::Error;

use crate::graph::{Colour, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("edge ({0}, {1}) joins two vertices of colour {2}")]
    Edge(usize, usize, Colour),
    #[error("vertex {vertex} has colour {colour} outside 1..={k}")]
    OutOfRange { vertex: usize, colour: Colour, k: u8 },
    #[error("colouring has {got} entries for {expected} vertices")]
    Length { expected: usize, got: usize },
}

/// Checks that `colouring` is a proper `k`-colouring of every vertex of `g`.
/// Out-of-range colours are reported before edge clashes.
pub fn verify_colouring(g: &Graph, colouring: &[Colour], k: u8) -> Result<(), Violation> {
    if colouring.len() != g.n() {
        return Err(Violation::Length { expected: g.n(), got: colouring.len() });
    }
    if let Some((vertex, &colour)) = colouring.iter().enumerate().find(|(_, &c)| c == 0 || c > k) {
        return Err(Violation::OutOfRange { vertex, colour, k });
    }
    match g.edges().find(|&(u, v)| colouring[u] == colouring[v]) {
        Some((u, v)) => Err(Violation::Edge(u, v, colouring[u])),
        None => Ok(()),
    }
}
