//! Numeric irreducible characters of small groups, used to cross-check the
//! exact supercharacter computations.

pub mod classes;
pub mod irr;
pub mod glauberman;

pub use classes::{conjugacy_classes, ConjugacyClasses, ORACLE_CAP};
pub use irr::{decompose, decompose_numeric, irr_numeric, IrrChar, IrreducibleSet, IrreducibleSetF64, DEFAULT_SEED};
pub use glauberman::{decompose_fixed, glauberman, Correspondence, DecompositionReport, FixedOracle, GlaubermanReport, Support};
