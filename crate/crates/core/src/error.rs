use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("generator count mismatch: {left} vs {right}")]
    GeneratorCountMismatch { left: usize, right: usize },
    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("limit along the cocharacter does not exist")]
    LimitDoesNotExist,
    #[error("element is not in the unipotent radical of P_λ")]
    NotInUnipotentRadical,
    #[error("generators are not block diagonal for block sizes {0:?}")]
    NotBlockDiagonal(Vec<usize>),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("enveloping algebra of the subgroup is not stable under conjugation: {0}")]
    AlgebraNotStable(String),
    #[error("input is already completely reducible; there is nothing to destabilise")]
    PreconditionNotDestabilizable,
    #[error("search space exceeded: {0}")]
    SearchSpaceExceeded(String),
    #[error("resource bound exceeded: {0}")]
    ResourceBoundExceeded(String),
    #[error("conjugacy certificate search exhausted: {0}")]
    CertificateSearchExhausted(String),
    #[error("semisimplifications are not conjugate")]
    NotConjugate,
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

impl Error {
    /// True for errors caused by configured caps rather than bad input.
    pub fn is_resource_bound(&self) -> bool {
        matches!(
            self,
            Error::SearchSpaceExceeded(_)
                | Error::ResourceBoundExceeded(_)
                | Error::CertificateSearchExhausted(_)
                | Error::Undecided(_)
        )
    }
}
