//! Local prime factor decomposition of graphs with respect to the strong product.
//!
//! The pipeline works on thin connected graphs: the backbone of strictly
//! maximal closed neighborhoods drives a covering of the factor fibers by
//! locally factored neighborhoods, the resulting partial product coloring is
//! completed to the Cartesian skeleton, and the skeleton is checked against
//! the input to decide whether the local factorizations glue together.

mod bitset;
pub mod coloring;
pub mod error;
pub mod factor;
pub mod graph;
pub mod io;
pub mod iso;
pub mod oracle;
pub mod product;
pub mod recognize;
pub mod sclass;
pub mod skeleton;
pub mod union_find;

pub use error::{Error, Result};
pub use graph::{Graph, InducedSubgraph, VertexSet};
pub use product::{cartesian_product, strong_product, Coordinatization, Fiber};
