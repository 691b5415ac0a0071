use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("unknown lattice family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("generators are not independent")]
    Dependent,
    #[error("commutation matrices differ")]
    CommutationMismatch,
    #[error("domains overlap on qubit {0}")]
    OverlappingDomains(String),
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("operator is not X-type")]
    NotXType,
    #[error("operator does not preserve the code space")]
    NotCodespacePreserving,
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("synthesis failed: {0}")]
    Synthesis(String),
    #[error("gate check failed: {0}")]
    Gate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
