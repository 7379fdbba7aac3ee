//! Gamma-vectors of symmetric edge polytopes.
//!
//! The polytope of a graph is never built geometrically. Everything is
//! derived from the combinatorial non-face description of the boundary
//! triangulation induced by a total order on the edges.

pub mod contraction;
pub mod cycles;
pub mod error;
pub mod gamma;
pub mod graph;
pub mod numeric;
pub mod random;
pub mod sweep;
pub mod triangulation;

pub use error::{Error, Result};
pub use graph::Graph;
