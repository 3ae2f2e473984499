//! SINR reception diagrams for networks with non-uniform transmission powers.

pub mod algebra;
pub mod cli;
pub mod diagram1d;
pub mod error;
pub mod geometry;
pub mod model;
pub mod pointloc;
pub mod render;
pub mod rng;
pub mod sinr;
pub mod verify;

pub use error::{Error, Result};
pub use model::{Network, Point, SimilarityTransform, Station};
