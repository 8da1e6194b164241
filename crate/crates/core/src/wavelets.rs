//! Built-in real-line wavelet spectra used as periodization inputs, with
//! closed-form derivatives and an independent quadrature route to their
//! Heisenberg constants.

use crate::line::LineUcReport;
use crate::numeric::adaptive_simpson;

/// Frequency beyond which every built-in spectrum is numerically zero.
const XI_MAX: f64 = 12.0;

/// Built-in spectrum choices. `GaussDeriv` and `MexicanGauss` are admissible
/// wavelets (`ψ̂(0) = 0`); `Gaussian` is the extremal case of the
/// uncertainty principle and is kept for calibration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinWavelet {
    /// `ψ̂(ξ) = ξ e^{-ξ²}`
    GaussDeriv,
    /// `ψ̂(ξ) = ξ² e^{-ξ²/2}`
    MexicanGauss,
    /// `ψ̂(ξ) = e^{-ξ²/2}`
    Gaussian,
}

impl BuiltinWavelet {
    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "gauss-deriv" => Some(Self::GaussDeriv),
            "mexican-gauss" => Some(Self::MexicanGauss),
            "gaussian" => Some(Self::Gaussian),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::GaussDeriv => "gauss-deriv",
            Self::MexicanGauss => "mexican-gauss",
            Self::Gaussian => "gaussian",
        }
    }

    /// Spectrum value `ψ̂(ξ)`.
    pub fn spectrum(self, xi: f64) -> f64 {
        match self {
            Self::GaussDeriv => xi * (-xi * xi).exp(),
            Self::MexicanGauss => xi * xi * (-0.5 * xi * xi).exp(),
            Self::Gaussian => (-0.5 * xi * xi).exp(),
        }
    }

    /// Closed-form `ψ̂'(ξ)`.
    pub fn spectrum_deriv(self, xi: f64) -> f64 {
        match self {
            Self::GaussDeriv => (1.0 - 2.0 * xi * xi) * (-xi * xi).exp(),
            Self::MexicanGauss => xi * (2.0 - xi * xi) * (-0.5 * xi * xi).exp(),
            Self::Gaussian => -xi * (-0.5 * xi * xi).exp(),
        }
    }

    /// Wavelet admissibility `ψ̂(0) = 0`.
    pub fn admissible(self) -> bool {
        self.spectrum(0.0) == 0.0
    }

    /// Heisenberg report computed by adaptive quadrature of the analytic
    /// spectrum — independent of the piecewise-linear closed forms, which
    /// makes it usable as the oracle for the embedding pipeline.
    pub fn uc_by_quadrature(self) -> LineUcReport {
        let tol = 1e-13;
        let v = |xi: f64| self.spectrum(xi);
        let d = |xi: f64| self.spectrum_deriv(xi);
        let norm_sq = adaptive_simpson(&|xi| v(xi) * v(xi), -XI_MAX, XI_MAX, tol);
        let freq_first = adaptive_simpson(&|xi| xi * v(xi) * v(xi), -XI_MAX, XI_MAX, tol);
        let freq_second = adaptive_simpson(&|xi| xi * xi * v(xi) * v(xi), -XI_MAX, XI_MAX, tol);
        let weight_sq = adaptive_simpson(&|xi| d(xi) * d(xi), -XI_MAX, XI_MAX, tol);
        // Real spectra: ∫ f̂' f̂ = 0, so the time centre vanishes.
        let time_centre = 0.0;
        let freq_centre = freq_first / norm_sq;
        let time_var = weight_sq / norm_sq;
        let freq_var = freq_second / norm_sq - freq_centre * freq_centre;
        LineUcReport {
            norm_sq,
            time_centre,
            freq_centre,
            time_var,
            freq_var,
            uc: (time_var * freq_var).sqrt(),
        }
    }
}
