//! Two-level hierarchical degree-corrected block model benchmark.
//!
//! The planted hierarchy splits the node set twice. Each split draws a child
//! count `c ~ Poisson(child_mean)` conditioned on `c ≥ child_cutoff`, child
//! probabilities from a symmetric Dirichlet, and assigns members i.i.d.
//! Edges are placed one at a time: each picks a level (0, 1 or 2) with
//! probabilities `p`, then a block at that level proportional to its total
//! target degree, then both endpoints proportional to target degree inside
//! the block (the whole node set at level 0).

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::rng::{Rng, Seed};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng as _;
use rand_distr::{Gamma, Poisson};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

const MAX_DRAWS: usize = 1_000_000;
const MAX_EDGE_RETRIES: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HierBenchmarkSpec {
    pub n: usize,
    /// Fractions of edges placed at random, within level-1 and within level-2 blocks.
    pub p: [f64; 3],
    pub degree_exponent: f64,
    pub k_min: usize,
    pub k_max: usize,
    pub child_mean: f64,
    pub child_cutoff: usize,
    pub dirichlet_sigma: f64,
    pub seed: Seed,
}

impl Default for HierBenchmarkSpec {
    fn default() -> Self {
        HierBenchmarkSpec {
            n: 1000,
            p: [0.2, 0.2, 0.6],
            degree_exponent: 2.0,
            k_min: 5,
            k_max: 70,
            child_mean: 4.0,
            child_cutoff: 2,
            dirichlet_sigma: 1.5,
            seed: Seed::new(0),
        }
    }
}

impl HierBenchmarkSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n < 4 {
            return Err(Error::domain("benchmark needs n ≥ 4"));
        }
        if self.p.iter().any(|&x| !(x >= 0.0)) || (self.p.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!("level fractions {:?} must be nonnegative and sum to 1", self.p)));
        }
        if self.k_min < 1 || self.k_max < self.k_min {
            return Err(Error::domain("degree bounds need 1 ≤ k_min ≤ k_max"));
        }
        if !(self.child_mean > 0.0) || self.child_cutoff < 2 {
            return Err(Error::domain("child count needs a positive mean and a cutoff of at least 2"));
        }
        if !(self.dirichlet_sigma > 0.0) || !self.degree_exponent.is_finite() {
            return Err(Error::domain("dirichlet_sigma must be positive and degree_exponent finite"));
        }
        Ok(())
    }
}

/// Planted partitions; `level2` refines `level1`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlantedHierarchy {
    pub level1: Partition,
    pub level2: Partition,
}

pub(crate) fn draw_child_count(spec: &HierBenchmarkSpec, rng: &mut Rng) -> Result<usize> {
    let poisson = Poisson::new(spec.child_mean).map_err(|e| Error::domain(e.to_string()))?;
    for _ in 0..MAX_DRAWS {
        let c = poisson.sample(rng) as usize;
        if c >= spec.child_cutoff {
            return Ok(c);
        }
    }
    Err(Error::domain("child-count rejection sampling exceeded its draw cap"))
}

/// Child labels for `size` members from a symmetric Dirichlet over `c` children.
/// Empty children are simply absent from the returned labels.
pub(crate) fn assign_children(size: usize, c: usize, sigma: f64, rng: &mut Rng) -> Result<Vec<usize>> {
    let gamma = Gamma::new(sigma, 1.0).map_err(|e| Error::domain(e.to_string()))?;
    let w: Vec<f64> = (0..c).map(|_| gamma.sample(rng)).collect();
    let pick = WeightedIndex::new(&w).map_err(|e| Error::domain(e.to_string()))?;
    Ok((0..size).map(|_| pick.sample(rng)).collect())
}

// Splits `members` into at least two non-empty children, redrawing the
// child count and probabilities when everything lands in one child.
fn split(members: &[usize], spec: &HierBenchmarkSpec, rng: &mut Rng) -> Result<Vec<usize>> {
    if members.len() < 2 {
        return Ok(vec![0; members.len()]);
    }
    for _ in 0..MAX_DRAWS {
        let c = draw_child_count(spec, rng)?;
        let labels = assign_children(members.len(), c, spec.dirichlet_sigma, rng)?;
        if labels.iter().any(|&l| l != labels[0]) {
            return Ok(labels);
        }
    }
    Err(Error::domain("could not split a community into two non-empty children"))
}

pub fn sample_hierarchy(spec: &HierBenchmarkSpec) -> Result<PlantedHierarchy> {
    spec.validate()?;
    let mut rng = spec.seed.domain(b"hierarchy").rng();
    let all: Vec<usize> = (0..spec.n).collect();
    let level1 = Partition::from_labels(&split(&all, spec, &mut rng)?);
    let mut fine = vec![(0usize, 0usize); spec.n];
    for (c, members) in level1.clusters().into_iter().enumerate() {
        let sub = split(&members, spec, &mut rng)?;
        for (&i, &s) in members.iter().zip(&sub) {
            fine[i] = (c, s);
        }
    }
    let level2 = Partition::from_labels(&fine);
    debug_assert!(level2.refines(&level1));
    Ok(PlantedHierarchy { level1, level2 })
}

/// Exact inverse-CDF sampler for `P(k) ∝ k^(−exponent)` on `k_min..=k_max`.
pub(crate) fn sample_degrees(spec: &HierBenchmarkSpec, rng: &mut Rng) -> Vec<usize> {
    let mut cdf: Vec<f64> = (spec.k_min..=spec.k_max)
        .map(|k| (k as f64).powf(-spec.degree_exponent))
        .scan(0.0, |acc, w| {
            *acc += w;
            Some(*acc)
        })
        .collect();
    let total = *cdf.last().unwrap();
    cdf.iter_mut().for_each(|c| *c /= total);
    (0..spec.n)
        .map(|_| {
            let u: f64 = rng.random();
            spec.k_min + cdf.partition_point(|&c| c <= u).min(cdf.len() - 1)
        })
        .collect()
}

/// Generated graph together with the sampler's bookkeeping.
#[derive(Clone, Debug)]
pub struct BenchmarkNetwork {
    pub graph: Graph,
    pub target_degrees: Vec<usize>,
    /// Edges placed at each level.
    pub level_counts: [usize; 3],
}

struct Blocks {
    members: Vec<Vec<usize>>,
    pick_block: Option<WeightedIndex<f64>>,
    pick_member: Vec<Option<WeightedIndex<f64>>>,
}

impl Blocks {
    fn new(p: &Partition, k: &[usize]) -> Self {
        let members = p.clusters();
        let weight = |m: &Vec<usize>| m.iter().map(|&i| k[i] as f64).sum::<f64>();
        // blocks with a single node cannot host an internal edge
        let block_w: Vec<f64> = members.iter().map(|m| if m.len() < 2 { 0.0 } else { weight(m) }).collect();
        let pick_member = members
            .iter()
            .map(|m| WeightedIndex::new(m.iter().map(|&i| k[i] as f64)).ok())
            .collect();
        Blocks {
            pick_block: WeightedIndex::new(&block_w).ok(),
            members,
            pick_member,
        }
    }

    fn draw_pair(&self, b: usize, rng: &mut Rng) -> (usize, usize) {
        let pick = self.pick_member[b].as_ref().expect("block has positive weight");
        let m = &self.members[b];
        (m[pick.sample(rng)], m[pick.sample(rng)])
    }
}

pub fn generate_network(spec: &HierBenchmarkSpec, h: &PlantedHierarchy) -> Result<Graph> {
    Ok(generate_network_detailed(spec, h)?.graph)
}

pub fn generate_network_detailed(spec: &HierBenchmarkSpec, h: &PlantedHierarchy) -> Result<BenchmarkNetwork> {
    spec.validate()?;
    if h.level1.n() != spec.n || h.level2.n() != spec.n || !h.level2.refines(&h.level1) {
        return Err(Error::domain("planted hierarchy does not match the benchmark spec"));
    }
    let mut rng = spec.seed.domain(b"network").rng();
    let k = sample_degrees(spec, &mut rng);
    let m = (k.iter().sum::<usize>() as f64 / 2.0).round() as usize;
    let levels = [
        Blocks::new(&Partition::all_in_one(spec.n), &k),
        Blocks::new(&h.level1, &k),
        Blocks::new(&h.level2, &k),
    ];
    let level_pick = WeightedIndex::new(spec.p).map_err(|e| Error::domain(e.to_string()))?;
    let mut weights: HashMap<(usize, usize), f64> = HashMap::with_capacity(m);
    let mut level_counts = [0usize; 3];
    for _ in 0..m {
        let level = level_pick.sample(&mut rng);
        let blocks = &levels[level];
        let pick_block = blocks
            .pick_block
            .as_ref()
            .ok_or_else(|| Error::domain(format!("no level-{level} block can hold an internal edge")))?;
        let b = pick_block.sample(&mut rng);
        let mut pair = blocks.draw_pair(b, &mut rng);
        for _ in 0..MAX_EDGE_RETRIES {
            let key = (pair.0.min(pair.1), pair.0.max(pair.1));
            if pair.0 != pair.1 && !weights.contains_key(&key) {
                break;
            }
            pair = blocks.draw_pair(b, &mut rng);
        }
        *weights.entry((pair.0.min(pair.1), pair.0.max(pair.1))).or_insert(0.0) += 1.0;
        level_counts[level] += 1;
    }
    let mut edges: Vec<(usize, usize, f64)> = weights.into_iter().map(|((i, j), w)| (i, j, w)).collect();
    edges.sort_by_key(|&(i, j, _)| (i, j));
    Ok(BenchmarkNetwork {
        graph: Graph::from_edges(spec.n, edges)?,
        target_degrees: k,
        level_counts,
    })
}
