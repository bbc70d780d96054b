//! List coloring of ordered graphs that exclude a fixed induced ordered
//! pattern, together with compilers from SAT variants to hard instances.

mod branch;
pub mod cnf_reduction;
pub mod easy;
pub mod error;
pub mod formula;
pub mod graph;
pub mod kernel;
pub mod links;
pub mod nae_reduction;
pub mod oracle;
pub mod padded_fork;
pub mod patterns;
pub mod random;
pub mod single_edge;

pub use error::{Error, Result};
pub use graph::{is_proper, ColorSet, Coloring, Instance, OrderedGraph};
