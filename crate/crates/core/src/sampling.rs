//! Seeded generators for the randomized suites: periodic signals with complex
//! Gaussian coefficients, band-limited trig polynomials, and piecewise-linear
//! spectra. Shared by the property tests and the CLI's `identities` runner so
//! both honour the same `UCLAB_SEED` convention.

use num_complex::Complex64;
use rand::Rng;

use crate::line::PiecewiseLinearSpectrum;
use crate::periodic::PeriodicSignal;

/// Read `UCLAB_SEED` from the environment, falling back to `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var("UCLAB_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}

/// One standard complex Gaussian sample (Box–Muller).
pub fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let r = (-2.0 * u1.ln()).sqrt();
    Complex64::new(r * u2.cos(), r * u2.sin())
}

/// Random periodic signal with at most `max_support` consecutive complex
/// Gaussian coefficients starting at a random k0 with |k0| ≤ `k0_range`.
pub fn random_signal<R: Rng>(rng: &mut R, max_support: usize, k0_range: i64) -> PeriodicSignal {
    let len = rng.gen_range(1..=max_support.max(1));
    let k0 = rng.gen_range(-k0_range..=k0_range);
    let coeffs = (0..len).map(|_| complex_gaussian(rng)).collect();
    PeriodicSignal::new(k0, coeffs)
}

/// Random trig polynomial of exactly the given degree: dense complex Gaussian
/// coefficients on |k| ≤ degree with the top coefficient forced nonzero.
pub fn random_trig_poly<R: Rng>(rng: &mut R, degree: i64) -> PeriodicSignal {
    let len = (2 * degree + 1) as usize;
    let mut coeffs: Vec<Complex64> = (0..len).map(|_| complex_gaussian(rng)).collect();
    if coeffs[len - 1].norm_sqr() == 0.0 {
        coeffs[len - 1] = Complex64::new(1.0, 0.0);
    }
    PeriodicSignal::new(-degree, coeffs)
}

/// Random piecewise-linear spectrum: `nodes` complex Gaussian node values on
/// a grid of density `q`, offset zero.
pub fn random_spectrum<R: Rng>(rng: &mut R, nodes: usize, q: f64) -> PiecewiseLinearSpectrum {
    let k0 = rng.gen_range(-(nodes as i64)..=(nodes as i64));
    let values = (0..nodes.max(1)).map(|_| complex_gaussian(rng)).collect();
    PiecewiseLinearSpectrum::new(q, 0.0, k0, values).expect("q > 0 by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_are_deterministic_for_a_seed() {
        let a = random_signal(&mut ChaCha8Rng::seed_from_u64(5), 16, 8);
        let b = random_signal(&mut ChaCha8Rng::seed_from_u64(5), 16, 8);
        assert_eq!(a, b);
    }

    #[test]
    fn complex_gaussian_moments_are_sane() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let n = 20_000;
        let mut mean = Complex64::default();
        let mut var = 0.0;
        for _ in 0..n {
            let z = complex_gaussian(&mut rng);
            mean += z;
            var += z.norm_sqr();
        }
        mean /= n as f64;
        var /= n as f64;
        assert!(mean.norm() < 0.05, "mean {mean}");
        assert!((var - 2.0).abs() < 0.1, "var {var}");
    }
}
