//! Exact supercharacter theories of algebra groups P = 1 + J over finite
//! fields of odd characteristic, and of the fixed-point subgroups C_P(σ)
//! under an involution σ.

pub mod algebra;
pub mod arith;
pub mod classical;
pub mod dual;
pub mod error;
pub mod oracle;
pub mod sct;

pub use error::{Error, Result};

/// Exact rational scalar used for character values.
pub type Scalar = num_rational::BigRational;
/// Exact element of Q(ζ_p).
pub type Cyclo = arith::Cyclotomic<Scalar>;
/// Floating scalar used by the numeric oracle.
pub type Real = f64;
