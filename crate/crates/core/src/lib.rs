//! Vertex connectivity solvers, brute-force oracles and the 4-clique
//! reductions to all-pairs and Steiner vertex connectivity.
//!
//! Flow-based solvers live in [`flow`] and [`solvers`], the constructions in
//! [`reductions`]. Everything operates on the plain undirected [`Graph`];
//! group labels of constructed instances are carried by
//! [`LabeledInstance`].

pub mod error;
pub mod flow;
pub mod format;
pub mod graph;
pub mod oracles;
pub mod par;
pub mod reductions;
pub mod solvers;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{EdgeSet, Graph, GroupTag, InstanceMeta, LabeledInstance};
pub use solvers::ConnectivityMatrix;
