//! Combinatorics of closed and bordered surfaces built from unit equilateral
//! triangles: translation structures, bounded-degree replacement,
//! parallelogram decompositions and canonical 6-covers.

pub mod canonical;
pub mod census;
pub mod cover;
pub mod degree_bound;
pub mod double;
pub mod eisenstein;
pub mod error;
pub mod parallelogram;
pub mod random;
pub mod subdivide;
pub mod surface;
pub mod translation;

pub use error::{Error, Result};
pub use surface::GluedSurface;
