//! End-to-end helpers: γ-range estimation, ensemble sampling and HC.

use crate::ensemble::{generate_ensemble, PartitionEnsemble};
use crate::error::Result;
use crate::graph::Graph;
use crate::resolution::{estimate_gamma_min, gamma_max, sample_gammas, GammaMinOptions, GammaStrategy};
use crate::rng::Seed;

/// `(γ_min, γ_max)` for `g`.
pub fn gamma_range(g: &Graph, seed: Seed) -> Result<(f64, f64)> {
    let lo = estimate_gamma_min(g, GammaMinOptions::default(), seed.domain(b"gamma_min"))?;
    Ok((lo, gamma_max(g)?))
}

/// Samples `count` resolution values over the estimated γ-range and optimizes
/// modularity at each one.
pub fn sample_ensemble(
    g: &Graph,
    strategy: GammaStrategy,
    count: usize,
    seed: Seed,
    workers: usize,
) -> Result<PartitionEnsemble> {
    let range = gamma_range(g, seed)?;
    let gammas = sample_gammas(g, strategy, count, range)?;
    generate_ensemble(g, &gammas, seed.domain(b"ensemble"), workers)
}
