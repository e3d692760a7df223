//! Superclasses, supercharacters and their tables for P and C_P(σ).

pub mod counts;
pub mod fixed;
pub mod function;
pub mod ptheory;
pub mod report;
pub mod table;
pub mod verify;

pub use fixed::FixedTheory;
pub use function::{frobenius_inner, ClassLayout, GroupTag, SuperclassFunction};
pub use ptheory::PTheory;
pub use report::{CheckResult, CheckSelection, CheckStatus, SCTReport, FIXED_CHECKS, P_CHECKS};
pub use table::{Column, Row, SupercharacterTable};
pub use verify::{build_and_verify, build_and_verify_timed, build_table, context};
