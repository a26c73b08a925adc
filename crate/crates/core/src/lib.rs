//! Minimum generators of pseudo-closures, geodesic convexity and isometric
//! hulls in graphs, and constructions of the associated hardness gadgets.

pub mod closure;
pub mod error;
pub mod graph;
pub mod hulls;
pub mod io;
pub mod lattice;
pub mod mingen;
pub mod oracles;
pub mod reductions;
pub mod verify;
pub mod vset;

pub use error::{Error, Result};
pub use graph::{Digraph, Geodesics, Graph};
pub use vset::{SetFamily, VertexSet};
