//! Finite fields of odd characteristic, exact cyclotomic numbers, and
//! small F_p linear algebra.

pub mod cyclotomic;
pub mod field;
pub mod fp;

pub use cyclotomic::{cyclo_op, rat, Coefficient, Cyclo, CycloArg, CycloOp, Cyclotomic};
pub use field::{fq_op, Fq, FqElement, FqOp, GaloisField};
pub use fp::FpMatrix;
