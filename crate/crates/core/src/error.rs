use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different field towers")]
    TowerMismatch,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("element code {code} is out of range for a field of order {order}")]
    ElementOutOfRange { code: u64, order: u64 },
    #[error("element {code} does not lie in the subfield of degree {degree}")]
    NotInSubfield { code: u32, degree: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("block index {0} out of range")]
    BadBlock(usize),
    #[error("the first support is not contained in the ambient support")]
    NotASubspace,
    #[error("enumeration of {count} items exceeds the budget of {budget}")]
    BudgetExceeded { count: u128, budget: u64 },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("the pair A', A does not satisfy A' A^T = I")]
    BadComplement,
    #[error("the second code is not strictly contained in the first")]
    NotNested,
    #[error("index {index} outside the valid range 1..={max}")]
    BadIndex { index: usize, max: usize },
    #[error("invalid refinement: {0}")]
    BadRefinement(String),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error("identity violated: {0}")]
    IdentityViolated(String),
    #[error("numeric overflow while evaluating {0}")]
    Overflow(&'static str),
    #[error("skew polynomials use different sigma powers or fields")]
    SkewMismatch,
    #[error("conjugating element must be nonzero")]
    ZeroBeta,
    #[error("the point set is not P-independent")]
    NotPIndependent,
    #[error("the function table is not defined on the P-basis")]
    NotAPBasis,
    #[error("block structure does not match the decomposition")]
    StructureMismatch,
    #[error("code dimension {k} outside 1..={n}")]
    BadDimension { k: usize, n: usize },
    #[error("field of order {order} is too large for exhaustive scans (limit {limit})")]
    FieldTooLarge { order: u64, limit: u64 },
}

/// Coarse classification used by front ends to pick exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Budget,
    Domain,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::BudgetExceeded { .. } | Error::FieldTooLarge { .. } => ErrorClass::Budget,
            _ => ErrorClass::Domain,
        }
    }

    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::TowerMismatch => "tower_mismatch",
            Error::InvalidField(_) => "invalid_field",
            Error::InvalidTower(_) => "invalid_tower",
            Error::ElementOutOfRange { .. } => "element_out_of_range",
            Error::NotInSubfield { .. } => "not_in_subfield",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::BadBlock(_) => "bad_block",
            Error::NotASubspace => "not_a_subspace",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::SingularMatrix => "singular_matrix",
            Error::BadComplement => "bad_complement",
            Error::NotNested => "not_nested",
            Error::BadIndex { .. } => "bad_index",
            Error::BadRefinement(_) => "bad_refinement",
            Error::CrossCheck(_) => "cross_check_failed",
            Error::IdentityViolated(_) => "identity_violated",
            Error::Overflow(_) => "overflow",
            Error::SkewMismatch => "skew_mismatch",
            Error::ZeroBeta => "zero_beta",
            Error::NotPIndependent => "not_p_independent",
            Error::NotAPBasis => "not_a_p_basis",
            Error::StructureMismatch => "structure_mismatch",
            Error::BadDimension { .. } => "bad_dimension",
            Error::FieldTooLarge { .. } => "field_too_large",
        }
    }
}

/// Upper bound on the number of items an exhaustive routine may enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(10_000_000);

    pub fn check(self, count: u128) -> Result<()> {
        if count > self.0 as u128 {
            Err(Error::BudgetExceeded { count, budget: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}
