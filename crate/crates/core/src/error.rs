use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library reports. `name()` gives the stable identifier
/// the command line prints.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label {label:?} occurs {count} times (expected 2)")]
    MalformedWord { label: String, count: usize },

    #[error("unrecognised token {0:?}")]
    BadToken(String),

    #[error("edge {edge} occurs {count} times (expected 2)")]
    InconsistentEdges { edge: i64, count: usize },

    #[error("planar code does not close into a single loop ({visited} of {total} slots reached)")]
    DisconnectedTraversal { visited: usize, total: usize },

    #[error("planar code has {faces} faces, a spherical diagram with {crossings} crossings has {}", crossings + 2)]
    NonPlanar { faces: usize, crossings: usize },

    #[error("diagram is invalid: {0}")]
    InvalidDiagram(String),

    #[error("{what}: size {size} exceeds the bound {bound}")]
    TooLarge {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("operation needs planar data but the diagram only has a Gauss word")]
    MissingPlanarData,

    #[error("polygon is not in general position: {0}")]
    DegeneratePolygon(String),

    #[error("invalid chord system: {0}")]
    InvalidChordSystem(String),

    #[error("node has no dissection step")]
    NotAStep,

    #[error("dissection tree is incomplete: {0}")]
    IncompleteTree(String),

    #[error("level {level} supplies {supplied} chord systems for {live} live disks")]
    ArityMismatch {
        level: usize,
        supplied: usize,
        live: usize,
    },

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("malformed input: {0}")]
    Format(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::MalformedWord { .. } => "MalformedWord",
            Error::BadToken(_) => "BadToken",
            Error::InconsistentEdges { .. } => "InconsistentEdges",
            Error::DisconnectedTraversal { .. } => "DisconnectedTraversal",
            Error::NonPlanar { .. } => "NonPlanar",
            Error::InvalidDiagram(_) => "InvalidDiagram",
            Error::TooLarge { .. } => "TooLarge",
            Error::MissingPlanarData => "MissingPlanarData",
            Error::DegeneratePolygon(_) => "DegeneratePolygon",
            Error::InvalidChordSystem(_) => "InvalidChordSystem",
            Error::NotAStep => "NotAStep",
            Error::IncompleteTree(_) => "IncompleteTree",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::Format(_) => "Format",
        }
    }
}
