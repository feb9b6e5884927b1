use thiserror::Error;

/// Why a `(F, R)` pair fails to be a rooted forest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotRootedReason {
    /// `|F| != |G_{d-1} \ R|`.
    SizeMismatch {
        facets: usize,
        non_root_ridges: usize,
    },
    /// The square minor of the boundary matrix vanishes.
    SingularMinor,
}

impl std::fmt::Display for NotRootedReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotRootedReason::SizeMismatch {
                facets,
                non_root_ridges,
            } => write!(
                f,
                "size mismatch: {facets} facets but {non_root_ridges} non-root ridges"
            ),
            NotRootedReason::SingularMinor => write!(f, "singular minor: det = 0"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("facet list is empty")]
    EmptyFacets,
    #[error("face {0:?} has a repeated vertex")]
    DuplicateVertex(Vec<i64>),
    #[error("face {0:?} has a non-positive vertex label")]
    NonPositiveVertex(Vec<i64>),
    #[error("face {0:?} has dimension 0; facets must have dimension at least 1")]
    FacetTooSmall(Vec<i64>),
    #[error("dimension {k} out of range 1..={max}")]
    DimensionOutOfRange { k: usize, max: usize },
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix dimensions do not match: {0}")]
    ShapeMismatch(String),
    #[error("index {index} out of bounds (len {len})")]
    IndexOutOfBounds { index: usize, len: usize },
    #[error("index {0} appears more than once")]
    DuplicateIndex(usize),
    #[error("interpolated coefficient of x^{degree} is not an integer: {value}")]
    NonIntegerCoefficient { degree: usize, value: String },
    #[error("boundary composition D_{lower} * D_{upper} is not zero")]
    BoundaryNotClosed { lower: usize, upper: usize },
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error("{what} has size {size}, exceeding cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("missing weight for {0}")]
    MissingWeight(String),
    #[error("not a rooted forest ({0})")]
    NotRootedForest(NotRootedReason),
    #[error("ridge set is not a root of the complex")]
    NotARoot,
    #[error("orientation is not fitting: {0}")]
    NotFitting(String),
    #[error("invalid complex file: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
