use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("point set is empty")]
    Empty,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero vector cannot be a direction")]
    ZeroDirection,
    #[error("integer overflow converting a normal vector to i64")]
    Overflow,
    #[error("cannot parse rational `{0}`")]
    Parse(String),
    #[error("halfspace intersection is unbounded")]
    Unbounded,
    #[error("halfspace intersection is empty")]
    Infeasible,
    #[error("result has empty interior")]
    EmptyInterior,
    #[error("operation requires a full-dimensional polytope (dim {dim} in R^{ambient})")]
    NotFullDimensional { dim: usize, ambient: usize },
    #[error("expected {expected} bodies, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("parameter t = {0} is outside the admissible range")]
    OutOfRange(String),
    #[error("origin must lie in the interior of the base body")]
    OriginNotInterior,
    #[error("direction {0} is not a facet normal")]
    NotFacetNormal(String),
    #[error("negative atom {0} in an aggregated mixed area measure")]
    NegativeAtom(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;
