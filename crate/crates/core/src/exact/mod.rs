//! Exact integer linear algebra: Smith normal form, lattices and homology of
//! composable pairs of integer matrices.

pub mod abelian;
pub mod eliminate;
pub mod homology;
pub mod int;
pub mod lattice;
pub mod matrix;
pub mod smith;

pub use abelian::{CoefficientRing, FgAbelianGroup, SerialGroup};
pub use homology::{cohomology_at, dualize, field_rank, homology_at, homology_from_factors, homology_presentation, rank, rank_mod};
pub use int::Int;
pub use lattice::{fixed_subgroup, Lattice, Subquotient};
pub use matrix::IntMatrix;
pub use smith::{invariant_factors, smith_normal_form, SmithDecomposition};
