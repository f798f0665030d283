//! Error types for the exact kernels and the geometric layers above them.

use thiserror::Error;

/// Errors from scalar, polynomial and linear-algebra kernels.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("radicand {0} is not a square-free integer >= 2")]
    BadRadicand(u32),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("matrix is not symmetric at entry ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("matrix is singular")]
    Singular,
}

/// Errors from frame construction and bracket computation.
#[derive(Debug, Clone, Error)]
pub enum FrameError {
    #[error("frame dimension must be odd and >= 3, got {0}")]
    BadDimension(usize),
    #[error("vector length {got} does not match frame dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("bracket table entry [{a}, {b}] conflicts with antisymmetry")]
    NotAntisymmetric { a: String, b: String },
    #[error("Jacobi identity fails on ({a}, {b}, {c}): residual {residual}")]
    JacobiFailure {
        a: String,
        b: String,
        c: String,
        residual: String,
    },
    #[error("frame matrix determinant {det} is not a nonzero constant")]
    NonConstantDeterminant { det: String },
    #[error("coordinate chart has {coords} coordinates but {fields} frame fields")]
    ChartMismatch { coords: usize, fields: usize },
    #[error("abstract Lie frame cannot differentiate the nonconstant function {0}")]
    NoChart(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Errors from assembling structure data.
#[derive(Debug, Clone, Error)]
pub enum StructureError {
    #[error("{field} has wrong dimensions: expected {expected}, got {got}")]
    BadShape {
        field: &'static str,
        expected: String,
        got: String,
    },
    #[error("metric is not symmetric at entry ({0}, {1})")]
    MetricNotSymmetric(usize, usize),
    #[error("metric is singular")]
    MetricSingular,
    #[error("{field} entry uses variables outside the frame's chart")]
    ForeignVariables { field: &'static str },
}

/// Errors from D_c-homothetic deformation.
#[derive(Debug, Clone, Error)]
pub enum DeformError {
    #[error("deformation parameter c must be nonzero")]
    ZeroC,
    #[error("deformed metric entry ({i}, {j}) is not constant in the frame: {entry}")]
    NonConstantMetric { i: usize, j: usize, entry: String },
    #[error("deformed structure failed revalidation:\n{0}")]
    RevalidationFailed(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Errors from the pointwise canonical-form construction.
#[derive(Debug, Clone, Error)]
pub enum CanonicalError {
    #[error("not applicable: not a (-1, mu)-point ({0})")]
    NotApplicable(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Errors from catalog constructors.
#[derive(Debug, Clone, Error)]
pub enum CatalogError {
    #[error("invalid parameters: need n >= 1 and 0 <= m <= n, got n = {n}, m = {m}")]
    InvalidParams { n: usize, m: usize },
}
