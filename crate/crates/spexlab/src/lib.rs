//! Exact spectral and edge-extremal analysis of small graphs.
//!
//! The crate revolves around one family of near-complete graphs: an
//! (n-1)-clique plus a single extra vertex joined to k-1 clique vertices
//! (built by [`FamilySpec::ExtremalH`]). For a spanning forbidden subgraph F
//! with minimum degree k, this graph is the conjectured maximizer of both the
//! edge count and the spectral radius among F-free graphs, and the modules
//! here exist to test that claim from every angle that is tractable on a
//! desktop:
//!
//! * [`graph`] — immutable bitset graphs up to 512 vertices, the named
//!   constructions, graph6 encoding, cliques and components;
//! * [`spectra`] — dominant eigenpairs of the adjacency matrix, the signless
//!   Laplacian Q = D + A, and the convex blend A_alpha, by residual-certified
//!   power iteration;
//! * [`bounds`] — classical eigenvalue bounds (Hong, Wilf, Feng–Yu,
//!   Motzkin–Straus) evaluated as checkable reports;
//! * [`embed`] — exact spanning-subgraph containment and degree-constrained
//!   factor existence;
//! * [`enumerate`] — isomorph-free generation of all small graphs and
//!   exhaustive extremal search over them;
//! * [`lemmas`] — instrumented inequality chains that replay the structural
//!   argument pinning down the extremal graph, as numbered diagnostics.
//!
//! Everything is deterministic: fixed inputs produce bit-identical outputs,
//! including under the `parallel` feature at any worker count.

pub mod bounds;
pub mod embed;
pub mod enumerate;
mod error;
pub mod graph;
pub mod lemmas;
mod matching;
pub mod spectra;

pub use error::{Error, Result};
pub use graph::{DegreeSummary, FamilySpec, Graph};

/// Hard cap on vertex count for the bitset graph representation.
pub const MAX_VERTICES: usize = 512;

/// Cap for operations that require a canonical form or exact clique number.
pub const MAX_CANONICAL_VERTICES: usize = 64;
