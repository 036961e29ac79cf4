//! Coarse-geometry experiments on finite graphs and on the marking graph of
//! the torus.

pub mod cli;
pub mod contraction;
pub mod error;
pub mod generators;
pub mod graph;
pub mod hyperbolicity;
pub mod metric;
pub mod product;
pub mod stability;
pub mod torus;

pub use error::{Error, Result};
pub use graph::{distance_matrix, DistanceMatrix, Graph, PathSeq, QuasiConstant};
