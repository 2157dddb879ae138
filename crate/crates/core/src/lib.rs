//! Graphon signal processing with group symmetries.
//!
//! Graphs are sampled from graphons (step graphons, Cayley graphons on symmetric
//! groups, the Watts-Strogatz graphon on the circle) and analyzed through the
//! eigenspaces of their shift operators. For Cayley graphs of symmetric groups
//! the [`rep`] and [`frames`] modules build Parseval frames out of irreducible
//! representations.

pub mod error;
pub mod frames;
pub mod graphon;
pub mod group;
pub mod gsp;
pub mod linalg;
pub mod rep;
pub mod rng;
pub mod sampler;
pub mod spectral;

pub use error::{Error, Result};
