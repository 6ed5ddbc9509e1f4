//! Exterior-algebra ("extensor") coding for parameterized graph and
//! set-system problems.

pub mod algebra;
pub mod constrained;
pub mod container;
pub mod dynamic;
pub mod error;
pub mod graph;
pub mod kpath;
pub mod reference;
pub mod undirected;
pub mod ring;

pub use error::{Error, Result};
