use thiserror::Error;

use crate::partition::Partition;

/// Errors raised by the library. Each variant maps onto one failure class
/// (domain violation, numerical cap, guard exhaustion) so front ends can
/// translate them into exit codes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("partitions {left} and {right} have different moduli")]
    ModulusMismatch { left: Partition, right: Partition },

    #[error("partition {partition} has length {len} > number of variables {n_vars}")]
    TooManyParts {
        partition: Partition,
        len: usize,
        n_vars: usize,
    },

    #[error("elementary symmetric index {n} outside 0..={n_vars}")]
    ElementaryIndex { n: usize, n_vars: usize },

    #[error("invalid parameter: {0}")]
    Domain(String),

    #[error("vector {name} must be strictly increasing")]
    Unordered { name: &'static str },

    #[error("vector {name} has coincident components")]
    Coincident { name: &'static str },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("degenerate Jack spectrum: E({tau}) == E({lambda}) at alpha = {alpha} with {n_vars} variables")]
    DegenerateSpectrum {
        tau: Partition,
        lambda: Partition,
        alpha: String,
        n_vars: usize,
    },

    #[error("operator action left a non-polynomial remainder at monomial {exponents:?}")]
    NonPolynomial { exponents: Vec<u32> },

    #[error("series did not converge by degree {degree}: last layer {last_layer:e}")]
    SeriesNotConverged { degree: usize, last_layer: f64 },

    #[error("collision guard exhausted on trajectory {trajectory} at t = {time}")]
    GuardExhausted { trajectory: usize, time: f64 },

    #[error("jump thinning cap exceeded on trajectory {trajectory} at t = {time}")]
    ThinningCap { trajectory: usize, time: f64 },

    #[error("ODE step size underflow at t = {time}")]
    StepUnderflow { time: f64 },

    #[error("ensembles are not on a common grid")]
    GridMismatch,

    #[error("unsupported case: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
