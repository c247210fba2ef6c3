//! Random r-uniform hypergraphs and the phase transition of their
//! s-th-order connected components.
//!
//! - [`combinatorics`]: exact binomials and dense ranking of s-sets and s-tuples
//! - [`model`]: the binomial random hypergraph `H^r(n, p)` and its edge-list format
//! - [`connectivity`]: component labeling under four adjacency rules, plus
//!   the stack-based exploration engines
//! - [`branching`]: multi-fold Poisson and binomial Galton–Watson processes
//! - [`experiments`]: seeded Monte Carlo sweeps with theory columns
//! - [`cli`]: the `hyperphase` command-line front end

pub mod branching;
pub mod cli;
pub mod combinatorics;
pub mod connectivity;
pub mod experiments;
pub mod model;
