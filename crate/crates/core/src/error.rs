//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The signal has no nonzero coefficient or sample.
    #[error("signal is identically zero")]
    ZeroSignal,

    /// The first trigonometric moment vanishes, so the angular variance (and
    /// with it the periodic uncertainty constant) is undefined. Every pure
    /// exponential `C e^{ikx}` lands here.
    #[error("angular variance undefined: |tau| = {tau_abs:e}")]
    AngularVarianceUndefined { tau_abs: f64 },

    /// A sample grid or coefficient search did not reach the point where the
    /// signal has decayed; the reported moments would be untrustworthy.
    #[error("signal tails not captured: edge magnitude {edge:e} exceeds limit {limit:e}")]
    TailNotCaptured { edge: f64, limit: f64 },

    /// Uniform sample grids need a minimum number of points for quadrature.
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },

    /// A grid or spectrum was constructed with a non-positive step.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// Condition checks need at least two levels with strictly increasing q.
    #[error("need at least 2 levels with strictly increasing q, got {got}")]
    InsufficientLevels { got: usize },

    /// The infinite mask product was still far from its limit at the cap.
    #[error("mask product not converged at (j={j}, k={k}): last factor offset {defect:e}")]
    ProductNotConverged { j: u32, k: i64, defect: f64 },

    /// A tabulated mask failed validation.
    #[error("invalid mask table: {0}")]
    InvalidMask(String),

    /// The test function has energy beyond the frame's resolved band.
    #[error("signal has energy beyond resolved band |k| <= {band}")]
    BandExceeded { band: i64 },

    /// The embedded spectrum's frequency centre violates the truncation-band
    /// bound; reported rather than silently clipped.
    #[error("frequency centre {centre} outside band bound {bound}")]
    CentreOutOfBand { centre: f64, bound: f64 },

    /// Hermite index beyond the supported recurrence range.
    #[error("Hermite index {n} exceeds supported maximum {max}")]
    IndexTooLarge { n: u32, max: u32 },

    /// Argument too close to a pole of the Gamma-ratio function F, or a series
    /// denominator vanished.
    #[error("argument {x} within {tol:e} of a pole")]
    AtPole { x: f64, tol: f64 },
}
