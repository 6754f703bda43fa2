//! Exact signature computations for adjacency matrices of simple graphs,
//! together with the derived-graph constructions, cycle census, family
//! generators and bound checks built on top of them.

pub mod census;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod inertia;
pub mod structure;
pub mod transforms;

pub use error::{Error, Result};
pub use graph::{Graph, Label, VertexMap};
