//! Flat consensus clustering of partition ensembles.
//!
//! [`consensus_partition`] maximizes consensus modularity
//! `Q_C(g) = Σ_ij (C_ij − P_ij(α)) δ(g_i, g_j)`, re-sampling the ensemble from
//! `Q_C` until every partition agrees (C binary). [`lf_consensus`] is the
//! thresholding baseline: entries of `C` below `τ` are zeroed and the result
//! is clustered as a weighted graph until all partitions are identical.

use crate::ensemble::{
    coclassification, coclassification_counts, null_matrix_from_moments, null_moments, NullKind, PartitionEnsemble,
    ThresholdMethod,
};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::modularity::{iterated_louvain, QualityProblem};
use crate::partition::Partition;
use crate::rng::Seed;
use rayon::prelude::*;

/// Settings for [`consensus_partition_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConsensusOptions {
    pub alpha: f64,
    pub null: NullKind,
    pub method: ThresholdMethod,
    pub max_iter: usize,
}

impl ConsensusOptions {
    pub fn new(alpha: f64) -> Self {
        ConsensusOptions {
            alpha,
            null: NullKind::LocalPermutation,
            method: ThresholdMethod::Normal,
            max_iter: 50,
        }
    }
}

/// Consensus partition at significance level `alpha` with the local
/// permutation null model. With `subset` the result is indexed by position
/// within `subset`.
pub fn consensus_partition(
    e: &PartitionEnsemble,
    alpha: f64,
    seed: Seed,
    subset: Option<&[usize]>,
) -> Result<Partition> {
    consensus_partition_with(e, &ConsensusOptions::new(alpha), seed, subset)
}

pub fn consensus_partition_with(
    e: &PartitionEnsemble,
    opts: &ConsensusOptions,
    seed: Seed,
    subset: Option<&[usize]>,
) -> Result<Partition> {
    if !(opts.alpha > 0.0 && opts.alpha < 1.0) {
        return Err(Error::domain(format!("alpha = {} must lie in (0, 1)", opts.alpha)));
    }
    let mut current = match subset {
        Some(s) => e.restrict(s),
        None => e.clone(),
    };
    let l = current.len();
    for iter in 0..=opts.max_iter {
        if all_identical(&current) {
            return Ok(current.partitions()[0].clone());
        }
        if iter == opts.max_iter {
            break;
        }
        let c = coclassification(&current);
        let moments = null_moments(&current, opts.null, None)?;
        let p = null_matrix_from_moments(&moments, opts.alpha, opts.method)?;
        let problem = QualityProblem::new_symmetrized(c.sub(&p)?)?;
        let round = seed.child(iter as u64);
        let parts: Vec<Partition> = (0..l)
            .into_par_iter()
            .map(|t| iterated_louvain(&problem, round.child(t as u64)))
            .collect::<Result<_>>()?;
        current = PartitionEnsemble::new(parts)?;
    }
    Err(Error::IterationCap {
        what: "consensus clustering",
        iterations: opts.max_iter,
        last: Some(Box::new(current.partitions()[0].clone())),
    })
}

// C is binary exactly when every partition is the same.
fn all_identical(e: &PartitionEnsemble) -> bool {
    let first = &e.partitions()[0];
    e.partitions()[1..].iter().all(|p| p == first)
}

/// Clusters a nonnegative symmetric weight matrix.
pub trait Clusterer: Sync {
    fn cluster(&self, weights: &DenseMatrix, seed: Seed) -> Result<Partition>;
}

/// Iterated Louvain on modularity with the configuration null model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModularityClusterer {
    pub gamma: f64,
}

impl Default for ModularityClusterer {
    fn default() -> Self {
        ModularityClusterer { gamma: 1.0 }
    }
}

impl Clusterer for ModularityClusterer {
    fn cluster(&self, weights: &DenseMatrix, seed: Seed) -> Result<Partition> {
        if weights.sum() <= 0.0 {
            return Ok(Partition::singletons(weights.n()));
        }
        iterated_louvain(&QualityProblem::modularity_dense(weights, self.gamma)?, seed)
    }
}

/// Thresholded co-classification: entries below `tau` and the diagonal are
/// zeroed.
pub fn thresholded_coclassification(e: &PartitionEnsemble, tau: f64) -> DenseMatrix {
    let n = e.n();
    let l = e.len() as f64;
    let counts = coclassification_counts(e);
    DenseMatrix::from_fn(n, |i, j| {
        let c = counts[i * n + j] as f64 / l;
        if i == j || c < tau {
            0.0
        } else {
            c
        }
    })
}

/// Thresholded consensus baseline. Each round clusters the thresholded `C`
/// `l` times with `clusterer` and stops once all partitions coincide.
pub fn lf_consensus(
    e: &PartitionEnsemble,
    tau: f64,
    clusterer: &dyn Clusterer,
    max_iter: usize,
    seed: Seed,
) -> Result<Partition> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::domain(format!("tau = {tau} must lie in [0, 1]")));
    }
    let mut current = e.clone();
    let l = current.len();
    for iter in 0..=max_iter {
        if all_identical(&current) {
            return Ok(current.partitions()[0].clone());
        }
        if iter == max_iter {
            break;
        }
        let w = thresholded_coclassification(&current, tau);
        let round = seed.child(iter as u64);
        let parts: Vec<Partition> = (0..l)
            .into_par_iter()
            .map(|t| clusterer.cluster(&w, round.child(t as u64)))
            .collect::<Result<_>>()?;
        current = PartitionEnsemble::new(parts)?;
    }
    Err(Error::IterationCap {
        what: "LF consensus",
        iterations: max_iter,
        last: Some(Box::new(current.partitions()[0].clone())),
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use rand::Rng as _;

    /// Two blocks of 10. Each partition merges the blocks with probability
    /// 0.1 and isolates every node with probability 0.03.
    pub(crate) fn noisy_two_block(seed: u64) -> PartitionEnsemble {
        let mut rng = Seed::new(seed).rng();
        let parts = (0..100)
            .map(|_| {
                let merged = rng.random::<f64>() < 0.1;
                let labels: Vec<usize> = (0..20)
                    .map(|i| {
                        if rng.random::<f64>() < 0.03 {
                            100 + i
                        } else if merged {
                            0
                        } else {
                            i / 10
                        }
                    })
                    .collect();
                Partition::from_labels(&labels)
            })
            .collect();
        PartitionEnsemble::new(parts).unwrap()
    }

    fn blocks() -> Partition {
        Partition::from_labels(&(0..20).map(|i| i / 10).collect::<Vec<_>>())
    }

    #[test]
    fn binary_input_returns_immediately() {
        let p = Partition::from_labels(&[0, 0, 1, 1, 1]);
        let e = PartitionEnsemble::new(vec![p.clone(); 4]).unwrap();
        assert_eq!(consensus_partition(&e, 0.3, Seed::new(0), None).unwrap(), p);
        let e = PartitionEnsemble::new(vec![Partition::singletons(5); 3]).unwrap();
        assert!(consensus_partition(&e, 0.05, Seed::new(0), None).unwrap().is_singletons());
    }

    #[test]
    fn noisy_two_block_instance() {
        let e = noisy_two_block(11);
        let c = coclassification(&e);
        let p = crate::ensemble::consensus_null_matrix(&e, 0.05, NullKind::LocalPermutation, None, ThresholdMethod::Normal)
            .unwrap();
        let truth = blocks();
        // B > 0 within blocks and B < 0 across makes the two blocks the unique maximizer of Q_C
        for i in 0..20 {
            for j in (0..20).filter(|&j| j != i) {
                let b = c.get(i, j) - p.get(i, j);
                if truth.label(i) == truth.label(j) {
                    assert!(c.get(i, j) >= 0.8 && b > 0.0);
                } else {
                    assert!(c.get(i, j) <= 0.2 && b < 0.0);
                }
            }
        }
        assert_eq!(consensus_partition(&e, 0.05, Seed::new(3), None).unwrap(), truth);
        let lf = lf_consensus(&e, 0.9, &ModularityClusterer::default(), 50, Seed::new(3)).unwrap();
        assert_eq!(lf, truth);
    }

    #[test]
    fn subset_consensus_is_local() {
        let e = noisy_two_block(5);
        let subset: Vec<usize> = (5..15).collect();
        let p = consensus_partition(&e, 0.05, Seed::new(1), Some(&subset)).unwrap();
        assert_eq!(p, Partition::from_labels(&[0, 0, 0, 0, 0, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn lf_tau_extremes() {
        let blocks = Partition::from_labels(&[0, 0, 0, 1, 1, 1]);
        let e = PartitionEnsemble::new(vec![blocks.clone(); 3]).unwrap();
        assert_eq!(lf_consensus(&e, 0.0, &ModularityClusterer::default(), 10, Seed::new(0)).unwrap(), blocks);

        // level-1 set of C is {0,1} and {2,3}; nodes 4, 5 are never fully co-classified with anyone
        let e = PartitionEnsemble::new(vec![
            Partition::from_labels(&[0, 0, 1, 1, 1, 2]),
            Partition::from_labels(&[0, 0, 1, 1, 0, 2]),
            Partition::from_labels(&[0, 0, 1, 1, 2, 1]),
        ])
        .unwrap();
        let p = lf_consensus(&e, 1.0, &ModularityClusterer::default(), 10, Seed::new(0)).unwrap();
        assert_eq!(p, Partition::from_labels(&[0, 0, 1, 1, 2, 3]));
        assert!(lf_consensus(&e, 1.5, &ModularityClusterer::default(), 10, Seed::new(0)).is_err());
    }

    #[test]
    fn iteration_cap_reports_last_partition() {
        let e = noisy_two_block(2);
        let opts = ConsensusOptions {
            max_iter: 0,
            ..ConsensusOptions::new(0.05)
        };
        match consensus_partition_with(&e, &opts, Seed::new(0), None) {
            Err(Error::IterationCap { last: Some(p), .. }) => assert_eq!(p.n(), 20),
            other => panic!("unexpected {other:?}"),
        }
        assert!(consensus_partition(&e, 1.0, Seed::new(0), None).is_err());
    }
}
