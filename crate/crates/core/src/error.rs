use thiserror::Error;

/// Library-wide error type.
///
/// `Validation` variants indicate bad input (rejected before any numerics run);
/// everything else is a runtime failure of the computation itself.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Validation(String),

    #[error("dimension mismatch: state has N = {state}, operator has N = {operator}")]
    DimensionMismatch { state: usize, operator: usize },

    #[error("pair interaction resonance at atoms ({i}, {j}): denominator {denom:.3e}")]
    PairPole { i: usize, j: usize, denom: f64 },

    #[error("triple interaction resonance at atoms ({i}, {j}, {k}): denominator {denom:.3e}")]
    TriplePole { i: usize, j: usize, k: usize, denom: f64 },

    #[error("eigenvector tracking ambiguous: best overlap with the reference product state is {overlap:.3}")]
    CrossingAmbiguity { overlap: f64 },

    #[error("steady-state kernel is not one-dimensional (dimension {dim})")]
    DegenerateKernel { dim: usize },

    #[error("integration step too coarse: halving the step changes the result by {delta:.3e}")]
    StepTooCoarse { delta: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validate(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Validation(msg.into()))
    }
}
