//! The group `Aut(H(m,2)) = B ⋊ L`, code automorphism groups, closures and
//! orbit computations.

mod automorphism;
mod code_aut;
mod group;
mod search;

pub use automorphism::{generators_to_string, parse_generators, GraphAutomorphism};
pub use code_aut::{
    code_automorphism_group, code_automorphisms, find_equivalence, find_permutation_equivalence,
    setwise_stabilizer_perms, CodeAutomorphisms,
};
pub use group::{orbit_sizes_divide, permute_subset, GroupHandle, Orbits, DEFAULT_ELEMENT_BUDGET};
pub use search::{set_system_isomorphism, setwise_stabilizer_search, StabilizerSearch};
