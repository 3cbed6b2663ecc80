use thiserror::Error;

use crate::linalg::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("map does not preserve the given subspaces")]
    SubspaceNotPreserved,
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("not a module map: {0}")]
    NotAMorphism(String),
    #[error("resolution too short: degree {degree} needs length > {degree}, got {length}")]
    TruncationTooShort { degree: usize, length: usize },
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("variable count mismatch: sequence has {expected}, module has {found}")]
    VariableCountMismatch { expected: usize, found: usize },
    #[error("invalid polynomial sequence: {0}")]
    InvalidSequence(String),
    #[error("invalid nerve: {0}")]
    InvalidNerve(String),
    #[error("presheaf functoriality violated at face {0:?}")]
    FunctorialityViolation(Vec<usize>),
    #[error("invalid double complex: {0}")]
    InvalidDoubleComplex(String),
    #[error("module is not free: {0}")]
    NotFree(String),
    #[error("total degree {found} does not match top degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("degenerate pairing: {0}")]
    Degenerate(String),
    #[error("unknown verification suite {0:?}")]
    UnknownSuite(String),
}

impl Error {
    /// A stable machine-readable code for reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidField(_) => "E_FIELD",
            Error::FieldMismatch(..) => "E_FIELD_MISMATCH",
            Error::Shape(_) => "E_SHAPE",
            Error::Parse(_) => "E_PARSE",
            Error::SubspaceNotPreserved => "E_SUBSPACE",
            Error::InvalidComplex(_) => "E_COMPLEX",
            Error::NotAChainMap(_) => "E_CHAIN_MAP",
            Error::NotExact(_) => "E_NOT_EXACT",
            Error::InvalidAlgebra(_) => "E_ALGEBRA",
            Error::InvalidModule(_) => "E_MODULE",
            Error::NotAMorphism(_) => "E_MORPHISM",
            Error::TruncationTooShort { .. } => "E_TRUNCATION",
            Error::NotACocycle(_) => "E_COCYCLE",
            Error::VariableCountMismatch { .. } => "E_VARIABLES",
            Error::InvalidSequence(_) => "E_SEQUENCE",
            Error::InvalidNerve(_) => "E_NERVE",
            Error::FunctorialityViolation(_) => "E_FUNCTORIALITY",
            Error::InvalidDoubleComplex(_) => "E_DOUBLE_COMPLEX",
            Error::NotFree(_) => "E_NOT_FREE",
            Error::DegreeMismatch { .. } => "E_DEGREE",
            Error::EndpointMismatch(_) => "E_ENDPOINT",
            Error::InvalidExtension(_) => "E_EXTENSION",
            Error::Degenerate(_) => "E_DEGENERATE",
            Error::UnknownSuite(_) => "E_SUITE",
        }
    }
}
