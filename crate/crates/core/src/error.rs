use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not an odd prime")]
    BadCharacteristic(u32),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("field of order {0} is too large for table arithmetic")]
    FieldTooLarge(u64),
    #[error("modulus is not a monic irreducible polynomial of the requested degree")]
    ReducibleModulus,
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("basis is linearly dependent")]
    LinearlyDependent,
    #[error("basis span is not closed under multiplication (b_{0} * b_{1} leaves the span)")]
    NotClosed(usize, usize),
    #[error("algebra is not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("elementary elements generate {found} of {expected} group elements")]
    GenerationFailure { found: u64, expected: u64 },
    #[error("matrix u is not invertible")]
    SingularMatrix,
    #[error("symmetry condition on u violated: {0}")]
    SymmetryViolated(String),
    #[error("involution does not preserve the algebra (sigma(b_{0}) leaves J)")]
    NotInvariant(usize),
    #[error("second-kind involution needs an even extension degree, got k = {0}")]
    OddDegreeSecondKind(u32),
    #[error("enumeration of {size} elements exceeds the cap {cap}")]
    CapExceeded { size: u64, cap: u64 },
    #[error("linear character is not sigma-invariant")]
    NotSigmaInvariant,
    #[error("basic pair is not sigma-invariant")]
    PairNotInvariant,
    #[error("invalid space/action combination: {0}")]
    InvalidAction(String),
    #[error("subset is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("unsupported preset: {0}")]
    Unsupported(String),
    #[error("verification failed: {what} (witness: {witness})")]
    Violation { what: String, witness: String },
    #[error("numeric oracle failure: {0}")]
    Oracle(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn violation(what: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Violation {
            what: what.into(),
            witness: witness.into(),
        }
    }
}
