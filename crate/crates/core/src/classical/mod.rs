//! UT_n under the canonical involutions of the symplectic, orthogonal and
//! unitary groups: basic pairs, the subgroups L_D and Q_D, and the
//! comparison of induced characters with supercharacters.

pub mod checks;
pub mod pairs;
pub mod preset;
pub mod subgroups;

pub use checks::{
    classical_report, pair_label, ClassicalData, ClassicalReport, Elem2Entry, PairRecord, XiMode, CLASSICAL_CHECKS,
};
pub use pairs::{elementary_pair, enumerate_basic_pairs, invariant_pairs, mirror, vphi_invariant, BasicPair};
pub use preset::{antidiagonal, canonical_preset, involution_matrix, ClassicalKind, ClassicalPreset};
pub use subgroups::{induce_linear, l_positions, l_positions_of, literal_factor, q_factor, QFactor, QSubgroup};
