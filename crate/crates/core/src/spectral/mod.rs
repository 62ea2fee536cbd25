//! First-quadrant double complexes, their total complexes, the first two
//! pages of the associated spectral sequences over prime fields, and the
//! edge map onto the bottom row.

mod double;
mod fp;
mod pages;

pub use double::{build_constant_row_grid, totalize, DoubleComplex};
pub use pages::{edge_map, page, EdgeMap, Orientation, SpectralPage};
