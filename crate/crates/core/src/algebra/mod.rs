//! Nilpotent matrix algebras J, the algebra group P = 1 + J, the Cayley
//! transform, involutions and their fixed points.

pub mod cayley;
pub mod fixed;
pub mod group;
pub mod involution;
pub mod matrix;
pub mod nilpotent;
pub mod spec;

pub use cayley::{cayley, phi_matrix, psi_matrix, CayleyArg, CayleyDirection};
pub use fixed::FixedStructures;
pub use group::EnumeratedGroup;
pub use involution::{sigma_act, Involution, InvolutionKind, SigmaArg, SigmaSpace};
pub use matrix::Mat;
pub use nilpotent::{
    AlgebraElement, AlgebraSource, GroupElement, GroupOp, NilpotentAlgebra, DEFAULT_CAP,
};
