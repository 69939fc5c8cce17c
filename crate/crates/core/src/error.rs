use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed scalar {0:?}")]
pub struct ParseScalarError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("column count mismatch: expected {expected}, found {found}")]
    ColumnMismatch { expected: usize, found: usize },
    #[error("row count mismatch: expected {expected}, found {found}")]
    RowMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("matrix is not Hermitian at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },
    #[error("entry ({row}, {col}) has nonzero imaginary part")]
    NotReal { row: usize, col: usize },
    #[error("empty list of matrices")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("dimension {0} is not a positive even number")]
    OddDimension(usize),
    #[error("dimension {0} exceeds the supported maximum of 12")]
    TooLarge(usize),
    #[error("J must be a {dim}x{dim} matrix, found {rows} rows with lengths {lens:?}")]
    BadJShape { dim: usize, rows: usize, lens: Vec<usize> },
    #[error("bracket entry {entry}: frame index {index} out of range 1..={dim}")]
    IndexOutOfRange { entry: usize, index: usize, dim: usize },
    #[error("bracket entry {entry}: [X{i}, X{i}] must vanish")]
    SelfBracket { entry: usize, i: usize },
    #[error("bracket entries disagree with antisymmetry for [X{i}, X{j}] along X{k}")]
    Antisymmetry { i: usize, j: usize, k: usize },
    #[error("field {field}: {source}")]
    Scalar { field: String, source: ParseScalarError },
    #[error("unsupported model format version {0}, expected 1")]
    Format(u64),
    #[error("malformed model document: {0}")]
    Json(String),
    #[error("unknown catalog model {0:?}")]
    UnknownCatalog(String),
    #[error("Jacobi identity fails on (X{0}, X{1}, X{2})")]
    Jacobi(usize, usize, usize),
    #[error("J does not square to -1")]
    NotAlmostComplex,
    #[error("J is not orthogonal for the frame metric")]
    NotCompatible,
    #[error("holomorphic frame {0:?} does not span the +i eigenspace of J")]
    EigenspaceDefect(Vec<usize>),
    #[error("fundamental form is degenerate")]
    DegenerateForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("bidegree ({p},{q}) out of range for half-dimension {m}")]
    BidegreeOutOfRange { p: usize, q: usize, m: usize },
    #[error("Hodge star defining system is singular in bidegree ({p},{q})")]
    SingularStar { p: usize, q: usize },
    #[error("Gram matrix in bidegree ({p},{q}) is not positive definite")]
    DegenerateGram { p: usize, q: usize },
    #[error("operator has no well-defined total degree")]
    InhomogeneousOperator,
    #[error("{0} requires an almost Kähler model")]
    NotAlmostKahler(&'static str),
    #[error("{0} requires a 4-dimensional model")]
    NotFourDimensional(&'static str),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
