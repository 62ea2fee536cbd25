//! Chain complexes, coefficient change and simplicial abelian groups.

mod chain;
mod simplicial;

pub use chain::{tensor, ChainComplex, TensoredComplex};
pub use simplicial::{
    alternating_sum_complex, nondegenerate_basis, normalize, SimplicialAbelianGroup, SimplicialMap,
};
