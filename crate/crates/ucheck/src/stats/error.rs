use thiserror::Error;

/// Errors from the numerical kernels and dataset handling.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("column has zero sample standard deviation")]
    ZeroVariance,
    #[error("too few rows: need at least {needed}, got {got}")]
    TooFewRows { needed: usize, got: usize },
    #[error("design matrix is rank deficient (column {column} collinear within pivot tolerance)")]
    RankDeficient { column: usize },
    #[error("residual variance is zero; standard errors are undefined")]
    ZeroResidualVariance,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate column name `{0}`")]
    DuplicateColumn(String),
    #[error("column names must be non-empty")]
    EmptyColumnName,
    #[error("column `{name}` has {got} rows, expected {expected}")]
    RaggedColumn {
        name: String,
        got: usize,
        expected: usize,
    },
    #[error("invalid uniform range: a={a} must be strictly below b={b}")]
    BadRange { a: f64, b: f64 },
    #[error("csv error at line {line}: {msg}")]
    Csv { line: usize, msg: String },
}
