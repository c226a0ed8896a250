use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvacError {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A meeting query lies outside the range where its bracket is valid.
    #[error("regime error: {0}")]
    Regime(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    /// Initial separation larger than the exit distance. Only a bound is
    /// available there, see `bounds::wireless_gap_bound`.
    #[error("unsupported regime: zeta = {zeta} exceeds d = {d}; use bounds::wireless_gap_bound")]
    UnsupportedRegime { zeta: f64, d: f64 },

    #[error("wrong evaluator: {0}")]
    WrongEvaluator(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    /// The replay reached a state its decision rules do not cover.
    #[error("invalid trace: {0}")]
    TraceInvalid(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("empty input")]
    EmptyInput,

    #[error("grid mismatch: {0}")]
    GridMismatch(String),
}
