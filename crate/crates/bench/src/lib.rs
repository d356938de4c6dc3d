//! Shared fixtures for the criterion benchmarks.

use hiercons::{generate_network, sample_hierarchy, Graph, HierBenchmarkSpec, Partition, Seed};

/// A planted-hierarchy network of `n` nodes with the default edge mix.
pub fn network(n: usize, seed: u64) -> (Graph, Partition) {
    let spec = HierBenchmarkSpec { n, seed: Seed::new(seed), ..Default::default() };
    let h = sample_hierarchy(&spec).expect("valid spec");
    let g = generate_network(&spec, &h).expect("network generates");
    (g, h.level2.clone())
}
