use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite argument")]
    NonFinite,
    #[error("argument must be non-negative, got {0}")]
    NegativeArgument(f64),
    #[error("relaxation time must be positive and finite, got {0}")]
    InvalidRelaxationTime(f64),
    #[error("wave number must be non-negative and finite, got {0}")]
    InvalidWaveNumber(f64),
    #[error("supercritical scaled wave number tau*k = {0} >= sqrt(pi/2)")]
    Supercritical(f64),
    #[error("series order {order} outside the supported range {min}..={max}")]
    OrderOutOfRange { order: usize, min: usize, max: usize },
    #[error("formal power series is not invertible: {0}")]
    NotInvertible(&'static str),
    #[error("velocity count {0} outside 2..=256")]
    VelocityCount(usize),
    #[error("time integration parameters invalid: {0}")]
    InvalidTimeGrid(&'static str),
    #[error("norm growth detected with dt = {dt}; reduce dt")]
    UnstableTimeStep { dt: f64 },
    #[error("eigenvalue iteration did not converge for a {0}x{0} operator")]
    EigenNonConvergence(usize),
    #[error("root bracketing failed: {0}")]
    Bracketing(&'static str),
}
