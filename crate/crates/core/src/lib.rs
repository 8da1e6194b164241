//! Time–frequency localization toolkit for periodic and real-line signals.
//!
//! The crate computes the Breitenberger (periodic) and Heisenberg (real-line)
//! uncertainty constants from exact coefficient sums and quadrature, builds
//! periodic Parseval wavelet frames from scaling masks through the unitary
//! extension principle, and runs the truncation → piecewise-linear spectral
//! embedding → recentering pipeline that connects the two settings level by
//! level. A separate module studies the constrained line minimization problem
//! through Hermite expansions and a Gamma-ratio system.
//!
//! Normalization conventions used throughout (fixed once, here):
//!
//! * periodic inner product `(f, g) = (2π)⁻¹ ∫_{-π}^{π} f ḡ = Σ_k c_k d̄_k`,
//! * line inner product `(f, g) = (2π)⁻¹ ∫_ℝ f ḡ`,
//! * Fourier transform `f̂(ξ) = (2π)⁻¹ ∫_ℝ f(x) e^{-iξx} dx`,
//!
//! so that Parseval reads `‖f‖² = ∫_ℝ |f̂(ξ)|² dξ` with a plain Lebesgue
//! integral on the spectrum side. Mixing these factors is the main correctness
//! hazard in this domain; every spectrum-side moment below uses plain
//! integrals and every signal-side norm carries the `(2π)⁻¹` weight.

pub mod bridge;
pub mod error;
pub mod frames;
pub mod line;
pub mod minimizer;
pub mod numeric;
pub mod periodic;
pub mod sampling;
pub mod special;
pub mod wavelets;

pub use error::{Error, Result};
pub use line::{LineUcReport, PiecewiseLinearSpectrum, SampledLineSignal};
pub use periodic::{PeriodicSignal, PeriodicUcReport};
