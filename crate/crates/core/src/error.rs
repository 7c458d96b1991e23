use thiserror::Error;

/// Errors produced by the library.
///
/// `is_input_error` distinguishes bad input (CLI exit code 2) from
/// numeric failures inside a test (exit code 3).
#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("column '{0}' not found in CSV header")]
    MissingColumn(String),
    #[error("no parseable rows in input")]
    EmptyInput,
    #[error("series invalid: {0}")]
    InvalidSeries(String),
    #[error("series too short: need at least {needed} observations, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("non-positive value {value} at index {index}: first-digit analysis requires strictly positive data")]
    NonPositiveValue { index: usize, value: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degenerate dichotomy: every observation falls on one side of the cutoff")]
    DegenerateDichotomy,
    #[error("degenerate epsilon: correlation integral is {0}, BDS variance vanishes")]
    DegenerateEpsilon(f64),
    #[error("design matrix is rank deficient (pivot {pivot} of {total} below tolerance)")]
    RankDeficient { pivot: usize, total: usize },
    #[error("observed and expected totals differ: {observed} vs {expected}")]
    TotalMismatch { observed: usize, expected: usize },
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl Error {
    /// True for errors caused by bad user input rather than numeric failure.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Numeric(_) | Error::RankDeficient { .. } | Error::DegenerateEpsilon(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
