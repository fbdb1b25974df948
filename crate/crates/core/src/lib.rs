//! Three-colouring of partitioned probe P5-free graphs.

pub mod fixtures;
pub mod format;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod patterns;
pub mod propagation;
pub mod reductions;
pub mod solver;
pub mod special;
pub mod twosat;
