//! Finite groups, Galois-type actions, bar and orbit complexes, and the maps
//! between their homology groups.

mod action;
mod group;
mod invariants;
mod maps;
mod orbit;
mod simplicial;

pub use action::{GroupAction, OrbitBasis};
pub use group::FiniteGroup;
pub use invariants::{invariants_homology, normalized_action_matrix};
pub use maps::{
    induced_by_chain_map, induced_map, pullback_then_transfer, transfer_scalar, CoverModel, GroupHomomorphism,
    HomologyMap, ScalarEndomorphism,
};
pub use orbit::{check_orbit_faces, galois_homology, orbit_complex, product_relation_is_boundary};
pub use simplicial::{
    bar_complex, bar_simplicial, bar_simplicial_unlabelled, degeneracy_tuple, face_tuple, nondegenerate_tuples,
    normalized_bar_complex, tuple_label, TupleCodec,
};

use crate::error::Result;
use crate::exact::{CoefficientRing, FgAbelianGroup};

/// `H_i(G; coeff)` from the bar complex truncated at `max_degree`.
pub fn group_homology(g: &FiniteGroup, coeff: CoefficientRing, i: usize, max_degree: usize) -> Result<FgAbelianGroup> {
    bar_complex(g, max_degree).homology(i, coeff)
}
