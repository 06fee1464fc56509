use thiserror::Error;

/// Errors reported by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation is not square or does not match the {labels} labels")]
    Shape { labels: usize },
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("{0} < {0} violates irreflexivity")]
    ReflexiveViolation(String),
    #[error("{0} < {1} and {1} < {2} but not {0} < {2}")]
    TransitivityViolation(String, String, String),
    #[error("forced pairs close a cycle: {}", .0.join(" < "))]
    CycleIntroduced(Vec<String>),
    #[error("closure contains a cycle: {}", .0.join(" < "))]
    CycleFound(Vec<String>),
    #[error("orders range over a different element set than the poset")]
    ElementMismatch,
    #[error("factor {0} is not a chain")]
    NotLinear(usize),
    #[error("poset has {0} elements, need at least 4")]
    TooSmall(usize),
    #[error("{what} exceeded the budget of {limit}")]
    LimitExceeded { what: &'static str, limit: u64 },
    #[error("the orders do not realize the partial order")]
    NotARealizer,
    #[error("partial embedding is invalid: {0}")]
    InvalidEmbedding(String),
    #[error("map does not preserve the strict order")]
    NotOrderPreserving,
    #[error("points {0} and {1} share a coordinate")]
    Colinear(usize, usize),
    #[error("expected dimension {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no coordinate permutation carries one sign pattern to the other")]
    PatternMismatch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable variant name, used as the `error` field of serialized errors.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Shape { .. } => "Shape",
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::ReflexiveViolation(_) => "ReflexiveViolation",
            Error::TransitivityViolation(..) => "TransitivityViolation",
            Error::CycleIntroduced(_) => "CycleIntroduced",
            Error::CycleFound(_) => "CycleFound",
            Error::ElementMismatch => "ElementMismatch",
            Error::NotLinear(_) => "NotLinear",
            Error::TooSmall(_) => "TooSmall",
            Error::LimitExceeded { .. } => "LimitExceeded",
            Error::NotARealizer => "NotARealizer",
            Error::InvalidEmbedding(_) => "InvalidEmbedding",
            Error::NotOrderPreserving => "NotOrderPreserving",
            Error::Colinear(..) => "Colinear",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::PatternMismatch => "PatternMismatch",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse(_) => "Parse",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
