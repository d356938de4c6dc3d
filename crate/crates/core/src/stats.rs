//! Normal quantiles and Poisson-Binomial simulation.

use crate::error::{Error, Result};
use crate::rng::Seed;
use rand::Rng as _;
use statrs::distribution::{ContinuousCDF, Normal};

fn standard_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("unit normal parameters are valid")
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    standard_normal().cdf(x)
}

/// Standard normal quantile `Φ⁻¹(p)`; infinite at 0 and 1.
pub fn normal_quantile(p: f64) -> f64 {
    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }
    standard_normal().inverse_cdf(p)
}

/// Simulates `trials` draws of `(1/l) Σ_t Bernoulli(probs[t])` and returns the
/// sorted sample means.
pub fn simulate_poisson_binomial_means(probs: &[f64], trials: usize, seed: Seed) -> Vec<f64> {
    let mut rng = seed.rng();
    let l = probs.len() as f64;
    let mut out: Vec<f64> = (0..trials)
        .map(|_| {
            let hits = probs.iter().filter(|&&p| rng.random::<f64>() < p).count();
            hits as f64 / l
        })
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// Smallest sample value `v` with empirical `Pr(X ≤ v) ≥ alpha`.
pub fn empirical_quantile(sorted: &[f64], alpha: f64) -> Result<f64> {
    if sorted.is_empty() {
        return Err(Error::domain("empirical quantile of an empty sample"));
    }
    let idx = ((alpha * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len()) - 1;
    Ok(sorted[idx])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantile_reference_values() {
        // reference values from the standard normal table (high precision)
        let cases = [
            (0.05, -1.644_853_626_951_472_2),
            (0.1, -1.281_551_565_544_600_4),
            (0.5, 0.0),
            (0.975, 1.959_963_984_540_054),
            (0.01, -2.326_347_874_040_841),
            (1e-6, -4.753_424_308_822_899),
        ];
        for (p, z) in cases {
            assert!((normal_quantile(p) - z).abs() < 1e-9, "p={p}: {}", normal_quantile(p));
        }
    }

    #[test]
    fn quantile_inverts_cdf() {
        let mut worst = 0.0f64;
        for i in 1..1000 {
            let p = i as f64 / 1000.0;
            let err = (normal_cdf(normal_quantile(p)) - p).abs();
            worst = worst.max(err);
        }
        assert!(worst < 1e-10, "{worst:e}");
    }

    #[test]
    fn monte_carlo_degenerate() {
        let s = simulate_poisson_binomial_means(&[1.0; 7], 100, Seed::new(1));
        assert_eq!(empirical_quantile(&s, 0.05).unwrap(), 1.0);
        let s = simulate_poisson_binomial_means(&[0.0; 7], 100, Seed::new(1));
        assert_eq!(empirical_quantile(&s, 0.05).unwrap(), 0.0);
    }
}
