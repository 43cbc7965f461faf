use thiserror::Error;

/// Errors raised by integration, threshold search and the averaging model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("initial value must be finite and satisfy a >= 0, got {0}")]
    InvalidInitialValue(f64),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(&'static str),

    #[error("step size underflow at x = {x} (h = {h:e})")]
    StepUnderflow { x: f64, h: f64 },

    #[error("step limit of {limit} exceeded at x = {x}")]
    TooManySteps { x: f64, limit: usize },

    #[error("x = {x} outside the integrated span [{lo}, {hi}]")]
    OutOfRange { x: f64, lo: f64, hi: f64 },

    #[error("argument {value} outside the domain of {what}")]
    Domain { what: &'static str, value: f64 },

    #[error("no class change for n = {n} found in [{lo}, {hi}]")]
    BracketFailure { n: u32, lo: f64, hi: f64 },

    #[error("solution from {value} did not settle into a band; raise x_max")]
    NearSeparatrixIndecision { value: f64 },

    #[error("maxima count decreased from {count_lo} at a = {a_lo} to {count_hi} at a = {a_hi}")]
    NonMonotoneCount {
        a_lo: f64,
        count_lo: usize,
        a_hi: f64,
        count_hi: usize,
    },

    #[error("bracket ends classify as {lo} and {hi}, expected a unit step at index {n}")]
    UnexpectedClasses { n: u32, lo: usize, hi: usize },
}
