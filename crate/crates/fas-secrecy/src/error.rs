//! Crate-wide error type.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by rule construction, matrix assembly, estimators and
/// configuration loading.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Quadrature order outside the supported range 1..=128.
    InvalidOrder(usize),
    /// Newton iteration for a Laguerre root did not converge.
    RootNotConverged { order: usize, index: usize },
    /// An integrand returned a non-finite value at a quadrature node.
    NonFiniteIntegrand { index: usize, node: f64 },
    /// Port grid violates its invariants.
    InvalidGrid(String),
    /// 1-based flat port index outside 1..=K.
    PortIndexOutOfRange { index: usize, total: usize },
    /// Normalized covariance entry outside [-1, 1] beyond tolerance.
    CorrelationEntryOutOfRange { row: usize, col: usize, value: f64 },
    /// Covariance input is not square/symmetric or has a non-positive diagonal.
    InvalidCovariance(String),
    /// Correlation matrix could not be repaired to positive definite.
    NotPositiveDefinite,
    /// Vector length does not match the matrix dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// Argument outside the mathematical domain of the operation.
    Domain(String),
    /// Scenario or sweep parameter violates a precondition.
    InvalidParameter(String),
    /// Configuration file error; names the offending key and, when known,
    /// the line it appears on.
    Config {
        key: String,
        line: Option<usize>,
        message: String,
    },
    /// Underlying I/O failure (CLI paths).
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidOrder(n) => write!(f, "quadrature order {n} not in 1..=128"),
            Self::RootNotConverged { order, index } => write!(
                f,
                "Laguerre root {index} of order-{order} rule did not converge within 200 iterations"
            ),
            Self::NonFiniteIntegrand { index, node } => {
                write!(f, "integrand non-finite at node {index} (x = {node})")
            }
            Self::InvalidGrid(msg) => write!(f, "invalid port grid: {msg}"),
            Self::PortIndexOutOfRange { index, total } => {
                write!(f, "port index {index} outside 1..={total}")
            }
            Self::CorrelationEntryOutOfRange { row, col, value } => write!(
                f,
                "normalized correlation entry ({row},{col}) = {value} outside [-1, 1]"
            ),
            Self::InvalidCovariance(msg) => write!(f, "invalid covariance: {msg}"),
            Self::NotPositiveDefinite => {
                write!(f, "correlation matrix not positive definite after repair")
            }
            Self::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Self::Domain(msg) => write!(f, "domain error: {msg}"),
            Self::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Self::Config { key, line, message } => match line {
                Some(l) => write!(f, "config key `{key}` (line {l}): {message}"),
                None => write!(f, "config key `{key}`: {message}"),
            },
            Self::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}
