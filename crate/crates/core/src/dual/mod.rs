//! The dual group J°, the actions on it, and orbit enumeration.

pub mod character;
pub mod orbits;

pub use character::{dual_act, eval_char, fixed_dual, DualAction, FixedDual, LinearCharacter};
pub use orbits::{
    orbit_through, orbits, partition_from_perms, sigma_invariant_filter, ActionKind, InvariantOrbit, Orbit,
    OrbitContext, OrbitPartition, Side, Space,
};
