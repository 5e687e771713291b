use thiserror::Error;

/// Errors raised by the estimators, the sample constructors and the harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} = {value} is outside the admissible domain")]
    Domain { what: &'static str, value: f64 },

    #[error("tail index {0} >= 1: the mean is infinite")]
    InfiniteMean(f64),

    #[error("degenerate censoring design: p = {0} must lie strictly inside (0, 1)")]
    DegenerateDesign(f64),

    #[error("length mismatch: {left} vs {right}")]
    Shape { left: usize, right: usize },

    #[error("row {row}: {msg}")]
    Parse { row: usize, msg: String },

    #[error("sample size {0} is below the minimum of 2")]
    TooSmall(usize),

    #[error("{what} = {value} out of range [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: usize,
        lo: usize,
        hi: usize,
    },

    #[error("all top-{0} observations are censored, tail index estimate undefined")]
    AllCensoredTail(usize),

    #[error("no admissible k in [{k_min}, {k_max}]")]
    Selection { k_min: usize, k_max: usize },

    #[error("censored tail index estimate {0} >= 1, tail mean estimate undefined")]
    InfiniteMeanEstimate(f64),

    #[error("singular parameters: {0}")]
    Parameter(&'static str),

    #[error("bootstrap unreliable: {failures} of {b} replicates failed")]
    UnreliableBootstrap { failures: usize, b: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
