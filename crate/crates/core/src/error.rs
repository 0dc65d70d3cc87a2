use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero vector is not a projective point")]
    ZeroVector,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("exact comparison requires tol = 0")]
    ToleranceForExact,
    #[error("expected rank {expected}, found {actual}")]
    Rank { expected: usize, actual: usize },
    #[error("number of pairs must be between {min} and {max}, got {got}")]
    PairCount { min: usize, max: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dependent basis")]
    DependentBasis,
    #[error("line inside determinantal variety")]
    LineInDeterminantal,
    #[error("non-generic line: {0}")]
    NonGenericLine(String),
    #[error("degenerate map: {0}")]
    DegenerateMap(String),
    #[error("not permissible: {0}")]
    NotPermissible(String),
    #[error("quadric does not pass through camera center {0}")]
    CenterNotOnQuadric(usize),
    #[error("matrix is proportional to the fundamental matrix")]
    ProportionalToF,
    #[error("not in nullspace: {0}")]
    NotInNullspace(String),
    #[error("configuration degenerate for hexahedral form")]
    HexahedralDegenerate,
    #[error("determinant identically zero: plane meets rank-one locus")]
    KappaDegenerate,
    #[error("indeterminate at x")]
    Indeterminate,
    #[error("point is not on the epipolar curve")]
    NotOnCurve,
    #[error("configuration not generic enough for epipole intersection: {0}")]
    EpipoleCount(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("multiply deficient: nullspace dimension {0}")]
    MultiplyDeficient(usize),
    #[error("triangulation degenerate: {0}")]
    TriangulationDegenerate(String),
    #[error("empty nullspace beyond F")]
    EmptyQuadricSpace,
    #[error("net dimension {0}, expected 3")]
    NetDimension(usize),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
