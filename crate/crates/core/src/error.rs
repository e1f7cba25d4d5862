use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Variants split into two families: malformed input (bad shapes, invalid
/// contexts, broken frames) and violated mathematical preconditions (wild
/// orders, non-unit pivots, missing roots of unity). The CLI maps the first
/// family to exit code 1 and the second to exit code 2, see
/// [`Error::is_precondition`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring context: {0}")]
    InvalidContext(String),
    #[error("operands live in different ring contexts")]
    ContextMismatch,
    #[error("element is not a unit")]
    NonUnit,
    #[error("{order} does not divide p^m - 1 = {group_order}; enlarge the residue degree m")]
    InsufficientResidueField { order: u64, group_order: u128 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("kernel is not free at this precision")]
    PrecisionLoss,
    #[error("integer overflow in exact integer arithmetic")]
    Overflow,
    #[error("matrix is not invertible over the ring")]
    Singular,
    #[error("order {order} is divisible by p = {p}")]
    NotTame { p: u64, order: u64 },
    #[error("order {order} is divisible by p = {p} on the finite-height part")]
    NotWeaklyTame { p: u64, order: u64 },
    #[error("matrix raised to the power {order} is not the identity")]
    OrderMismatch { order: u64 },
    #[error("vector is not an eigenvector modulo p")]
    NotAnEigenvector,
    #[error("eigenprojection of the lifted vector vanishes modulo p")]
    ProjectionCollapse,
    #[error("initial value is not a root modulo p")]
    NotARootModP,
    #[error("derivative at the initial value is not a unit")]
    NonSimpleRoot,
    #[error("pairing u.v is not a unit")]
    BadPairing,
    #[error("u.u is not divisible by p")]
    NotNearIsotropic,
    #[error("pivot pairing c.u is not a unit")]
    NonUnitPivot,
    #[error("coordinate {index} has valuation {valuation:?}, need at least {required}")]
    ValuationViolation {
        index: usize,
        valuation: Option<u32>,
        required: u32,
    },
    #[error("the ambient pairing is not perfect")]
    FormNotPerfect,
    #[error("invalid period frame: {0}")]
    InvalidFrame(String),
    #[error("invalid connection data: {0}")]
    InvalidConnection(String),
    #[error("no convergence after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("the Hodge line is not an eigenline of the isometry modulo p")]
    HodgeLineNotEigen,
    #[error("the isometry acts trivially on the Hodge line (symplectic input)")]
    SymplecticInput,
    #[error("the isometry acts nontrivially on the Hodge line (non-symplectic input)")]
    NotSymplectic,
    #[error("no vector in the eigenspace pairs to a unit with the Hodge lift")]
    NoUnitPartner,
    #[error("Hodge vector and ample class are linearly dependent modulo p")]
    IndependenceFailure,
    #[error("configuration needs rank at least {needed}, found {found}")]
    RankTooSmall { needed: usize, found: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable identifier, used in CLI error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidContext(_) => "InvalidContext",
            Error::ContextMismatch => "ContextMismatch",
            Error::NonUnit => "NonUnit",
            Error::InsufficientResidueField { .. } => "InsufficientResidueField",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::DegenerateForm => "DegenerateForm",
            Error::PrecisionLoss => "PrecisionLoss",
            Error::Overflow => "Overflow",
            Error::Singular => "Singular",
            Error::NotTame { .. } => "NotTame",
            Error::NotWeaklyTame { .. } => "NotWeaklyTame",
            Error::OrderMismatch { .. } => "OrderMismatch",
            Error::NotAnEigenvector => "NotAnEigenvector",
            Error::ProjectionCollapse => "ProjectionCollapse",
            Error::NotARootModP => "NotARootModP",
            Error::NonSimpleRoot => "NonSimpleRoot",
            Error::BadPairing => "BadPairing",
            Error::NotNearIsotropic => "NotNearIsotropic",
            Error::NonUnitPivot => "NonUnitPivot",
            Error::ValuationViolation { .. } => "ValuationViolation",
            Error::FormNotPerfect => "FormNotPerfect",
            Error::InvalidFrame(_) => "InvalidFrame",
            Error::InvalidConnection(_) => "InvalidConnection",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::HodgeLineNotEigen => "HodgeLineNotEigen",
            Error::SymplecticInput => "SymplecticInput",
            Error::NotSymplectic => "NotSymplectic",
            Error::NoUnitPartner => "NoUnitPartner",
            Error::IndependenceFailure => "IndependenceFailure",
            Error::RankTooSmall { .. } => "RankTooSmall",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// True when the input was well formed but a mathematical precondition
    /// of the requested construction does not hold.
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            Error::InvalidContext(_)
                | Error::ContextMismatch
                | Error::DimensionMismatch(_)
                | Error::Overflow
                | Error::InvalidFrame(_)
                | Error::InvalidConnection(_)
                | Error::InvalidInput(_)
                | Error::OrderMismatch { .. }
        )
    }
}
