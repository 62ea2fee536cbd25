//! Homology of bar and Galois-orbit complexes of finite groups with exact
//! integer arithmetic, first-quadrant double complexes and their low
//! spectral-sequence pages, and RO(Z/2)-graded tables for a point and for
//! complex projective space.

pub mod bar;
pub mod bredon;
pub mod complexes;
pub mod error;
pub mod exact;
pub mod spectral;

pub use error::{Error, Result};
pub use exact::{CoefficientRing, FgAbelianGroup, Int, IntMatrix};
