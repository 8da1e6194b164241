//! Hermite functions with their closed-form integrals and uncertainty
//! constants, the Gamma-ratio function `F` with its series identity, and the
//! numerical no-solution scan for the constrained line minimization system
//!
//! ```text
//! -β F(α + βε)  = π^{-3/2} ε
//!  β² F'(α + βε) = 2 π^{-1/2}
//! ```
//!
//! `F(x) = Γ(1/2) Γ(1/4 - x/4) / Γ(3/4 - x/4)` has poles at `x ∈ {1, 5, 9, …}`
//! (numerator) and zeros at `x ∈ {3, 7, 11, …}` (denominator poles). The scan
//! corroborates, never proves: non-existence for ε ≠ 0 is an analytic fact.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::line::SampledLineSignal;
use crate::numeric::CompensatedSum;
use crate::special::{digamma, ln_gamma_signed, rgamma, rgamma_deriv};

/// Largest Hermite index accepted by the public single-value evaluator.
pub const HERMITE_MAX: u32 = 60;

/// Grid points closer than this to a pole of `F` are rejected or skipped.
pub const F_POLE_TOL: f64 = 1e-8;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Hermite functions `φ_m(x)` for m = 0..=n_max, normalized so that
/// `(2π)^{-1} ∫ |φ_m|² = 1`. Uses the stable orthonormal three-term
/// recurrence; values stay O(1) for any index, so there is no cap here.
fn phi_all(n_max: usize, x: f64) -> Vec<f64> {
    let sqrt_2pi = (2.0 * std::f64::consts::PI).sqrt();
    let mut out = Vec::with_capacity(n_max + 1);
    // h_0 = π^{-1/4} e^{-x²/2}, h_1 = √2 x h_0; φ_m = √(2π) h_m.
    let h0 = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    out.push(sqrt_2pi * h0);
    if n_max == 0 {
        return out;
    }
    let h1 = std::f64::consts::SQRT_2 * x * h0;
    out.push(sqrt_2pi * h1);
    let mut prev = h0;
    let mut cur = h1;
    for m in 1..n_max {
        let next = x * (2.0 / (m as f64 + 1.0)).sqrt() * cur
            - ((m as f64) / (m as f64 + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        out.push(sqrt_2pi * cur);
    }
    out
}

/// `φ_n(x)` for n ≤ [`HERMITE_MAX`].
pub fn hermite_eval(n: u32, x: f64) -> Result<f64> {
    if n > HERMITE_MAX {
        return Err(Error::IndexTooLarge { n, max: HERMITE_MAX });
    }
    Ok(phi_all(n as usize, x)[n as usize])
}

/// Central-binomial ratios `t_k = (2k)!/(2^k k!)² = C(2k,k)/4^k` up to k_max.
fn central_binomial_ratios(k_max: usize) -> Vec<f64> {
    let mut t = Vec::with_capacity(k_max + 1);
    t.push(1.0);
    for k in 0..k_max {
        let k = k as f64;
        t.push(t[t.len() - 1] * (2.0 * k + 1.0) / (2.0 * k + 2.0));
    }
    t
}

/// Closed form of `∫_ℝ φ_n`: zero for odd n, `2 π^{3/4} √((2k)!)/(2^k k!)`
/// for n = 2k.
pub fn hermite_integral(n: u32) -> Result<f64> {
    if n > HERMITE_MAX {
        return Err(Error::IndexTooLarge { n, max: HERMITE_MAX });
    }
    if n % 2 == 1 {
        return Ok(0.0);
    }
    let k = (n / 2) as usize;
    let t = central_binomial_ratios(k);
    Ok(2.0 * std::f64::consts::PI.powf(0.75) * t[k].sqrt())
}

/// `UC_H(φ_n) = (2n + 1)/2` exactly; the quadrature cross-check lives in the
/// tests, via [`sample_hermite`] and the sampled-line report.
pub fn hermite_uc(n: u32) -> Result<f64> {
    if n > HERMITE_MAX {
        return Err(Error::IndexTooLarge { n, max: HERMITE_MAX });
    }
    Ok((2.0 * n as f64 + 1.0) / 2.0)
}

/// Sample `φ_n` on a uniform grid.
pub fn sample_hermite(n: u32, x_min: f64, dx: f64, count: usize) -> Result<SampledLineSignal> {
    if n > HERMITE_MAX {
        return Err(Error::IndexTooLarge { n, max: HERMITE_MAX });
    }
    let samples = (0..count)
        .map(|m| {
            let x = x_min + m as f64 * dx;
            Complex64::new(phi_all(n as usize, x)[n as usize], 0.0)
        })
        .collect();
    SampledLineSignal::new(x_min, dx, samples)
}

/// Distance from x to the nearest pole of F, i.e. the set {1, 5, 9, …}.
fn pole_distance(x: f64) -> f64 {
    if x <= 1.0 {
        return 1.0 - x;
    }
    let m = ((x - 1.0) / 4.0).round();
    (x - (1.0 + 4.0 * m)).abs()
}

fn reject_near_pole(x: f64) -> Result<()> {
    let d = pole_distance(x);
    if d.abs() < F_POLE_TOL {
        return Err(Error::AtPole { x, tol: F_POLE_TOL });
    }
    Ok(())
}

/// `F(x) = Γ(1/2) Γ(1/4 - x/4) / Γ(3/4 - x/4)`, evaluated as
/// `√π · Γ(u) · rgamma(v)` with `u = (1-x)/4`, `v = (3-x)/4`, so the
/// denominator poles become exact zeros and the sign is tracked through the
/// reflection formula inside `Γ(u)`.
pub fn gamma_ratio_f(x: f64) -> Result<f64> {
    reject_near_pole(x)?;
    let u = (1.0 - x) / 4.0;
    let v = (3.0 - x) / 4.0;
    let (ln_u, sign_u) = ln_gamma_signed(u);
    Ok(SQRT_PI * sign_u * ln_u.exp() * rgamma(v))
}

/// Analytic derivative `F'(x) = -(√π/4) Γ(u) [ψ(u)·rgamma(v) + rgamma'(v)]`,
/// finite at the zeros of F where the digamma route `F·(ψ(v₊) - ψ(u))/4`
/// would be 0·∞. Finite differences serve only as a test oracle.
pub fn gamma_ratio_f_deriv(x: f64) -> Result<f64> {
    reject_near_pole(x)?;
    let u = (1.0 - x) / 4.0;
    let v = (3.0 - x) / 4.0;
    let (ln_u, sign_u) = ln_gamma_signed(u);
    let gamma_u = sign_u * ln_u.exp();
    Ok(-(SQRT_PI / 4.0) * gamma_u * (digamma(u) * rgamma(v) + rgamma_deriv(v)))
}

/// Partial sum of the series identity behind the constraint rewrite:
/// `2 Σ_{n=0}^{N} t_n / (2n + 1/2 - s/2) → F(s)`, terms decaying like
/// n^{-3/2}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// Estimated magnitude of the dropped tail (the partial sum converges
    /// like N^{-1/2}); reported so identity tests can tell truncation error
    /// from genuine mismatch.
    pub tail_bound: f64,
}

pub fn series_lhs(s: f64, n_terms: usize) -> Result<SeriesValue> {
    assert!(n_terms >= 10, "series_lhs needs at least 10 terms");
    reject_near_pole(s)?;
    let mut acc = CompensatedSum::new();
    let mut t = 1.0f64; // t_0
    let mut last = 0.0;
    for n in 0..=n_terms {
        let nf = n as f64;
        let denom = 2.0 * nf + 0.5 - 0.5 * s;
        if denom.abs() < F_POLE_TOL {
            return Err(Error::AtPole { x: s, tol: F_POLE_TOL });
        }
        last = t / denom;
        acc.add(last);
        t *= (2.0 * nf + 1.0) / (2.0 * nf + 2.0);
    }
    Ok(SeriesValue {
        value: 2.0 * acc.value(),
        tail_bound: 3.0 * n_terms as f64 * last.abs(),
    })
}

/// Residuals of the two-equation system at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemResidual {
    pub alpha: f64,
    pub beta: f64,
    pub eps: f64,
    /// `-β F(α + βε) - π^{-3/2} ε`
    pub r1: f64,
    /// `β² F'(α + βε) - 2 π^{-1/2}`
    pub r2: f64,
}

impl SystemResidual {
    pub fn norm(&self) -> f64 {
        self.r1.hypot(self.r2)
    }
}

pub fn system_residual(alpha: f64, beta: f64, eps: f64) -> Result<SystemResidual> {
    let x = alpha + beta * eps;
    let f = gamma_ratio_f(x)?;
    let fp = gamma_ratio_f_deriv(x)?;
    Ok(SystemResidual {
        alpha,
        beta,
        eps,
        r1: -beta * f - std::f64::consts::PI.powf(-1.5) * eps,
        r2: beta * beta * fp - 2.0 * std::f64::consts::PI.powf(-0.5),
    })
}

/// Lagrange multiplier implied by `α²/2 + λ + κε/2 = 0`.
pub fn lagrange_lambda(alpha: f64, kappa: f64, eps: f64) -> f64 {
    -0.5 * alpha * alpha - 0.5 * kappa * eps
}

/// Outcome of a residual-norm grid scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOutcome {
    pub min_residual: f64,
    pub argmin_alpha: f64,
    pub argmin_beta: f64,
    pub evaluated: usize,
    pub skipped_near_pole: usize,
}

/// Evaluate the system residual on an inclusive `grid_n × grid_n` grid over
/// the given α and β ranges and report the minimum of `sqrt(r1² + r2²)`.
/// Grid points within [`F_POLE_TOL`] of a pole are skipped and counted.
/// Rows run in parallel.
pub fn scan_no_solution(
    eps: f64,
    alpha_range: (f64, f64),
    beta_range: (f64, f64),
    grid_n: usize,
) -> Result<ScanOutcome> {
    assert!(grid_n >= 2, "grid_n must be at least 2");
    let step = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / (grid_n - 1) as f64;
    let rows: Vec<(f64, f64, f64, usize, usize)> = (0..grid_n)
        .into_par_iter()
        .map(|ia| {
            let alpha = step(alpha_range.0, alpha_range.1, ia);
            let mut best = f64::INFINITY;
            let mut best_beta = f64::NAN;
            let mut evaluated = 0;
            let mut skipped = 0;
            for ib in 0..grid_n {
                let beta = step(beta_range.0, beta_range.1, ib);
                match system_residual(alpha, beta, eps) {
                    Ok(res) => {
                        evaluated += 1;
                        let norm = res.norm();
                        if norm < best {
                            best = norm;
                            best_beta = beta;
                        }
                    }
                    Err(Error::AtPole { .. }) => skipped += 1,
                    Err(e) => unreachable!("unexpected scan error: {e}"),
                }
            }
            (alpha, best_beta, best, evaluated, skipped)
        })
        .collect();

    let mut out = ScanOutcome {
        min_residual: f64::INFINITY,
        argmin_alpha: f64::NAN,
        argmin_beta: f64::NAN,
        evaluated: 0,
        skipped_near_pole: 0,
    };
    for (alpha, beta, norm, evaluated, skipped) in rows {
        out.evaluated += evaluated;
        out.skipped_near_pole += skipped;
        if norm < out.min_residual {
            out.min_residual = norm;
            out.argmin_alpha = alpha;
            out.argmin_beta = beta;
        }
    }
    Ok(out)
}

/// Truncated Hermite-series candidate
/// `f₀(x) = -π^{3/4} (κ/α) Σ_{n=0}^{N} √((2n)!)/(2^n n!) · φ_{2n}(x) / (2n + 1/2 - s/2)`
/// with `s = α + κε/α`, sampled on a uniform grid. The caller measures
/// `∫ f₀` and `‖f₀‖` against the constraint series (see
/// [`candidate_constraint_series`]).
pub fn candidate_series(
    alpha: f64,
    kappa: f64,
    eps: f64,
    n_terms: usize,
    x_min: f64,
    dx: f64,
    count: usize,
) -> Result<SampledLineSignal> {
    let coeffs = candidate_coefficients(alpha, kappa, eps, n_terms)?;
    let samples: Vec<Complex64> = (0..count)
        .into_par_iter()
        .map(|m| {
            let x = x_min + m as f64 * dx;
            let phis = phi_all(2 * n_terms, x);
            let mut acc = CompensatedSum::new();
            for (n, c) in coeffs.iter().enumerate() {
                acc.add(c * phis[2 * n]);
            }
            Complex64::new(acc.value(), 0.0)
        })
        .collect();
    SampledLineSignal::new(x_min, dx, samples)
}

/// Coefficients of `φ_{2n}` in the candidate series.
pub fn candidate_coefficients(
    alpha: f64,
    kappa: f64,
    eps: f64,
    n_terms: usize,
) -> Result<Vec<f64>> {
    let s = alpha + kappa * eps / alpha;
    let beta = kappa / alpha;
    let t = central_binomial_ratios(n_terms);
    let scale = -std::f64::consts::PI.powf(0.75) * beta;
    let mut coeffs = Vec::with_capacity(n_terms + 1);
    for (n, tn) in t.iter().enumerate() {
        let denom = 2.0 * n as f64 + 0.5 - 0.5 * s;
        if denom.abs() < F_POLE_TOL {
            return Err(Error::AtPole { x: s, tol: F_POLE_TOL });
        }
        coeffs.push(scale * tn.sqrt() / denom);
    }
    Ok(coeffs)
}

/// The two constraint displays evaluated as truncated series:
/// `∫ f₀ = -2π^{3/2} β Σ t_n/(2n+1/2-s/2)` and
/// `‖f₀‖² = π^{3/2} β² Σ t_n/(2n+1/2-s/2)²`.
pub fn candidate_constraint_series(
    alpha: f64,
    kappa: f64,
    eps: f64,
    n_terms: usize,
) -> Result<(f64, f64)> {
    let s = alpha + kappa * eps / alpha;
    let beta = kappa / alpha;
    let t = central_binomial_ratios(n_terms);
    let mut integral = CompensatedSum::new();
    let mut norm = CompensatedSum::new();
    for (n, tn) in t.iter().enumerate() {
        let denom = 2.0 * n as f64 + 0.5 - 0.5 * s;
        if denom.abs() < F_POLE_TOL {
            return Err(Error::AtPole { x: s, tol: F_POLE_TOL });
        }
        integral.add(tn / denom);
        norm.add(tn / (denom * denom));
    }
    let pi32 = std::f64::consts::PI.powf(1.5);
    Ok((
        -2.0 * pi32 * beta * integral.value(),
        pi32 * beta * beta * norm.value(),
    ))
}
