//! Random walks on weighted graphs, dipole spectra on the dyadic tree, path
//! measures, and transfer operators on the circle.

pub mod circle;
pub mod cli;
pub mod encoding;
pub mod error;
pub mod graph;
pub mod gram;
pub mod linalg;
pub mod path_measure;
pub mod scalar;
pub mod tree;

pub use error::{Error, Result};
pub use graph::{VertexFunction, WeightedGraph};
pub use scalar::Scalar;
pub use tree::{DyadicTree, Word};
