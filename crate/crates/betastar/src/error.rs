use std::path::PathBuf;

use chrono::NaiveDate;
use thiserror::Error;

use crate::estimators::Estimator;

/// Which side of a paired sample a diagnostic refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleSide {
    Market,
    Investment,
}

impl std::fmt::Display for SampleSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SampleSide::Market => write!(f, "market"),
            SampleSide::Investment => write!(f, "investment"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("insufficient data for {context}: need at least {required}, got {actual}")]
    InsufficientData {
        context: &'static str,
        required: usize,
        actual: usize,
    },

    #[error("non-positive price {price} at {date} (row {row})")]
    NonPositivePrice {
        row: usize,
        date: NaiveDate,
        price: f64,
    },

    #[error("dates must be strictly increasing: {date} at row {row} does not advance")]
    NonIncreasingDates { row: usize, date: NaiveDate },

    #[error("series misaligned: {0}")]
    Misaligned(String),

    #[error("degenerate sample: {side} returns have zero variance")]
    DegenerateSample { side: SampleSide },

    #[error("reverse regression slope is undefined when the correlation is zero")]
    UndefinedReverseSlope,

    #[error("volatility-ratio slope has no sign when the correlation is zero")]
    SignUndefined,

    #[error("expected a {expected:?} fit, got {actual:?}")]
    EstimatorMismatch {
        expected: Estimator,
        actual: Estimator,
    },

    #[error("a zero-slope line degenerates the area objective")]
    DegenerateLine,

    #[error(
        "area minimization did not converge: best slope {slope}, intercept {intercept}, objective {objective}"
    )]
    NoConvergence {
        slope: f64,
        intercept: f64,
        objective: f64,
    },

    #[error("{0}")]
    Domain(String),

    #[error("duplicate asset id {0:?}")]
    DuplicateAsset(String),

    #[error("{}: line {line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
