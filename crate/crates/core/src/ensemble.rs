//! Partition ensembles, co-classification and partition null models.
//!
//! Under a partition null model each entry of the co-classification matrix is
//! a mean of independent Bernoulli variables, `C⁰_ij = (1/l) Σ_t Bernoulli(p⁰_ij(t))`,
//! with mean `μ_ij = (1/l) Σ_t p⁰_ij(t)` and variance
//! `σ²_ij = (1/l²) Σ_t p⁰_ij(t)(1 − p⁰_ij(t))`.
//!
//! Two choices of `p⁰_ij(t)` are supported:
//! * permutation: cluster sizes fixed, all labels shuffled;
//!   `p = Σ_c (s_c/n)((s_c − 1)/(n − 1))`, the same for every pair;
//! * local permutation: `i`'s assignment fixed, `j` shuffled;
//!   `p = (s(i) − 1)/(n − 1)`, which depends on `i` only.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::DenseMatrix;
use crate::modularity::{iterated_louvain, QualityProblem};
use crate::partition::Partition;
use crate::rng::Seed;
use crate::stats::{empirical_quantile, normal_quantile, simulate_poisson_binomial_means};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Partitions of one node set, optionally tagged with the resolution each was
/// sampled at.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionEnsemble {
    partitions: Vec<Partition>,
    gammas: Option<Vec<f64>>,
}

impl PartitionEnsemble {
    pub fn new(partitions: Vec<Partition>) -> Result<Self> {
        let first = partitions
            .first()
            .ok_or_else(|| Error::domain("an ensemble needs at least one partition"))?;
        let n = first.n();
        if partitions.iter().any(|p| p.n() != n) {
            return Err(Error::domain("ensemble partitions cover different node counts"));
        }
        Ok(PartitionEnsemble {
            partitions,
            gammas: None,
        })
    }

    pub fn with_gammas(partitions: Vec<Partition>, gammas: Vec<f64>) -> Result<Self> {
        if gammas.len() != partitions.len() {
            return Err(Error::domain("one gamma per partition is required"));
        }
        let mut e = Self::new(partitions)?;
        e.gammas = Some(gammas);
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.partitions[0].n()
    }

    /// Ensemble size `l`.
    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn gammas(&self) -> Option<&[f64]> {
        self.gammas.as_deref()
    }

    /// Every partition restricted to `subset` (cluster sizes recomputed).
    pub fn restrict(&self, subset: &[usize]) -> PartitionEnsemble {
        PartitionEnsemble {
            partitions: self.partitions.iter().map(|p| p.restrict(subset)).collect(),
            gammas: self.gammas.clone(),
        }
    }

    /// One row per node, one column per partition. When gammas are known the
    /// first row lists them (always written with a decimal point, which is
    /// how a header is told apart from label rows).
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if let Some(g) = &self.gammas {
            let header: Vec<String> = g.iter().map(|x| format!("{x:?}")).collect();
            out.push_str(&header.join(","));
            out.push('\n');
        }
        for i in 0..self.n() {
            let row: Vec<String> = self.partitions.iter().map(|p| p.label(i).to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .peekable();
        let mut gammas = None;
        if let Some(&(lineno, first)) = lines.peek() {
            let fields: Vec<&str> = first.split(',').map(str::trim).collect();
            if fields.iter().any(|f| f.parse::<u64>().is_err()) {
                let g = fields
                    .iter()
                    .map(|f| {
                        f.parse::<f64>()
                            .map_err(|e| Error::parse(lineno + 1, format!("bad gamma {f:?}: {e}")))
                    })
                    .collect::<Result<Vec<f64>>>()?;
                gammas = Some(g);
                lines.next();
            }
        }
        let mut columns: Vec<Vec<u64>> = Vec::new();
        for (lineno, line) in lines {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if columns.is_empty() {
                columns = vec![Vec::new(); fields.len()];
            }
            if fields.len() != columns.len() {
                return Err(Error::parse(
                    lineno + 1,
                    format!("expected {} columns, found {}", columns.len(), fields.len()),
                ));
            }
            for (col, f) in columns.iter_mut().zip(&fields) {
                col.push(
                    f.parse::<u64>()
                        .map_err(|e| Error::parse(lineno + 1, format!("bad label {f:?}: {e}")))?,
                );
            }
        }
        if columns.is_empty() {
            return Err(Error::domain("ensemble file has no rows"));
        }
        let partitions: Vec<Partition> = columns.iter().map(|c| Partition::from_labels(c)).collect();
        match gammas {
            Some(g) => Self::with_gammas(partitions, g),
            None => Self::new(partitions),
        }
    }
}

/// Optimizes modularity once per resolution value.
///
/// Partition `t` uses seed `seed.child(t)`, so the output does not depend on
/// `workers` (`0` means the global rayon pool).
pub fn generate_ensemble(g: &Graph, gammas: &[f64], seed: Seed, workers: usize) -> Result<PartitionEnsemble> {
    if gammas.is_empty() {
        return Err(Error::domain("no gamma values to sample at"));
    }
    let run = || -> Result<Vec<Partition>> {
        gammas
            .par_iter()
            .enumerate()
            .map(|(t, &gamma)| {
                let problem = QualityProblem::modularity(g, gamma)?;
                iterated_louvain(&problem, seed.child(t as u64))
            })
            .collect()
    };
    let partitions = if workers == 0 {
        run()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::domain(format!("cannot build worker pool: {e}")))?
            .install(run)?
    };
    PartitionEnsemble::with_gammas(partitions, gammas.to_vec())
}

/// Co-classification counts `Σ_t δ(g_i(t), g_j(t))`, i.e. the entries of `GGᵀ`
/// for the node-cluster indicator matrix `G` of the ensemble.
pub fn coclassification_counts(e: &PartitionEnsemble) -> Vec<u32> {
    let n = e.n();
    let mut counts = vec![0u32; n * n];
    for p in e.partitions() {
        for members in p.clusters() {
            for &i in &members {
                let row = &mut counts[i * n..(i + 1) * n];
                for &j in &members {
                    row[j] += 1;
                }
            }
        }
    }
    counts
}

/// `C_ij = (1/l) Σ_t δ(g_i(t), g_j(t))`.
pub fn coclassification(e: &PartitionEnsemble) -> DenseMatrix {
    let l = e.len() as f64;
    let n = e.n();
    let data = coclassification_counts(e).into_iter().map(|c| c as f64 / l).collect();
    DenseMatrix::from_vec(n, data).expect("counts are n×n")
}

/// True when every entry is exactly 0 or 1.
pub fn is_binary(c: &DenseMatrix) -> bool {
    c.as_slice().iter().all(|&v| v == 0.0 || v == 1.0)
}

/// Partition null model for co-classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NullKind {
    Permutation,
    LocalPermutation,
}

fn require_pair(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::domain("null probabilities need at least two nodes"))
    } else {
        Ok(())
    }
}

/// Probability that two distinct nodes share a cluster when labels are
/// shuffled with cluster sizes fixed.
pub fn null_prob_permutation(p: &Partition) -> Result<f64> {
    let n = p.n();
    require_pair(n)?;
    let (nf, nm1) = (n as f64, (n - 1) as f64);
    Ok(p.sizes()
        .iter()
        .map(|&s| (s as f64 / nf) * ((s as f64 - 1.0) / nm1))
        .sum())
}

/// Probability that a shuffled node lands in `i`'s cluster.
pub fn null_prob_local(p: &Partition, i: usize) -> Result<f64> {
    let n = p.n();
    require_pair(n)?;
    Ok((p.size_of(i) as f64 - 1.0) / (n - 1) as f64)
}

/// Null means and variances of `C⁰_ij` for `i ≠ j`.
///
/// Both supported models make `μ_ij` and `σ²_ij` independent of `j`, so they
/// are stored per row. The diagonal is `μ = 1`, `σ² = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct NullMoments {
    pub kind: NullKind,
    mu: Vec<f64>,
    sigma2: Vec<f64>,
    // p⁰_i·(t) for every t, row-major by node; kept for Monte-Carlo thresholds
    probs: Vec<Vec<f64>>,
}

impl NullMoments {
    pub fn n(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self, i: usize, j: usize) -> f64 {
        if i == j {
            1.0
        } else {
            self.mu[i]
        }
    }

    pub fn sigma2(&self, i: usize, j: usize) -> f64 {
        if i == j {
            0.0
        } else {
            self.sigma2[i]
        }
    }

    /// `p⁰_ij(t)` over the ensemble for row `i` (any `j ≠ i`).
    pub fn probabilities(&self, i: usize) -> &[f64] {
        &self.probs[i]
    }

    pub fn mu_matrix(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n(), |i, j| self.mu(i, j))
    }

    pub fn sigma2_matrix(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n(), |i, j| self.sigma2(i, j))
    }
}

/// Moments of the null co-classification, optionally on the ensemble
/// restricted to `subset` (indices then refer to positions in `subset`).
pub fn null_moments(e: &PartitionEnsemble, kind: NullKind, subset: Option<&[usize]>) -> Result<NullMoments> {
    let restricted;
    let e = match subset {
        Some(s) => {
            restricted = e.restrict(s);
            &restricted
        }
        None => e,
    };
    let n = e.n();
    let l = e.len() as f64;
    let mut probs = vec![Vec::with_capacity(e.len()); n];
    if n >= 2 {
        for p in e.partitions() {
            match kind {
                NullKind::Permutation => {
                    let q = null_prob_permutation(p)?;
                    probs.iter_mut().for_each(|row| row.push(q));
                }
                NullKind::LocalPermutation => {
                    for (i, row) in probs.iter_mut().enumerate() {
                        row.push(null_prob_local(p, i)?);
                    }
                }
            }
        }
    } else {
        probs.iter_mut().for_each(|row| row.resize(e.len(), 1.0));
    }
    let mu = probs.iter().map(|r| r.iter().sum::<f64>() / l).collect();
    let sigma2 = probs
        .iter()
        .map(|r| r.iter().map(|p| p - p * p).sum::<f64>() / (l * l))
        .collect();
    Ok(NullMoments {
        kind,
        mu,
        sigma2,
        probs,
    })
}

/// How the α-quantile of `C⁰_ij` is obtained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThresholdMethod {
    /// `μ + Φ⁻¹(α) σ`.
    Normal,
    /// Empirical quantile of simulated Poisson-Binomial means.
    MonteCarlo { trials: usize, seed: Seed },
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("alpha = {alpha} must lie in (0, 1)")))
    }
}

/// Normal-approximation threshold `p` with `Pr(C⁰ ≤ p) = α`, clamped to [0, 1].
pub fn significance_threshold(mu: f64, sigma2: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if sigma2 < 0.0 {
        return Err(Error::domain(format!("negative variance {sigma2}")));
    }
    if sigma2 == 0.0 {
        return Ok(mu.clamp(0.0, 1.0));
    }
    Ok((mu + normal_quantile(alpha) * sigma2.sqrt()).clamp(0.0, 1.0))
}

/// α-quantile of `(1/l) Σ_t Bernoulli(probs[t])` by the requested method.
pub fn threshold_for(probs: &[f64], alpha: f64, method: ThresholdMethod) -> Result<f64> {
    check_alpha(alpha)?;
    let l = probs.len() as f64;
    match method {
        ThresholdMethod::Normal => {
            let mu = probs.iter().sum::<f64>() / l;
            let var = probs.iter().map(|p| p - p * p).sum::<f64>() / (l * l);
            significance_threshold(mu, var, alpha)
        }
        ThresholdMethod::MonteCarlo { trials, seed } => {
            let sims = simulate_poisson_binomial_means(probs, trials, seed);
            Ok(empirical_quantile(&sims, alpha)?.clamp(0.0, 1.0))
        }
    }
}

/// Per-row α-quantiles `q_i` of the null co-classification.
pub fn row_thresholds(moments: &NullMoments, alpha: f64, method: ThresholdMethod) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    (0..moments.n())
        .map(|i| match method {
            ThresholdMethod::Normal => significance_threshold(moments.mu[i], moments.sigma2[i], alpha),
            ThresholdMethod::MonteCarlo { trials, seed } => threshold_for(
                &moments.probs[i],
                alpha,
                ThresholdMethod::MonteCarlo {
                    trials,
                    seed: seed.child(i as u64),
                },
            ),
        })
        .collect()
}

/// Null matrix of consensus modularity.
///
/// `P_ij(α)` is the level `p` at which `max{Pr[C⁰_ij ≤ p], Pr[C⁰_ji ≤ p]} = α`.
/// Since each orientation's CDF is increasing, this is the smaller of the two
/// orientation quantiles, `min(q_i, q_j)`. The diagonal is 1.
pub fn consensus_null_matrix(
    e: &PartitionEnsemble,
    alpha: f64,
    kind: NullKind,
    subset: Option<&[usize]>,
    method: ThresholdMethod,
) -> Result<DenseMatrix> {
    let moments = null_moments(e, kind, subset)?;
    null_matrix_from_moments(&moments, alpha, method)
}

pub fn null_matrix_from_moments(moments: &NullMoments, alpha: f64, method: ThresholdMethod) -> Result<DenseMatrix> {
    let q = row_thresholds(moments, alpha, method)?;
    Ok(DenseMatrix::from_fn(moments.n(), |i, j| {
        if i == j {
            1.0
        } else {
            q[i].min(q[j])
        }
    }))
}

/// Co-classification matrix together with its null model.
#[derive(Clone, Debug)]
pub struct CoclassStats {
    pub c: DenseMatrix,
    pub moments: NullMoments,
}

impl CoclassStats {
    pub fn compute(e: &PartitionEnsemble, kind: NullKind) -> Result<Self> {
        Ok(CoclassStats {
            c: coclassification(e),
            moments: null_moments(e, kind, None)?,
        })
    }

    /// Significance matrix `P(α)` (see [`consensus_null_matrix`]).
    pub fn null_matrix(&self, alpha: f64, method: ThresholdMethod) -> Result<DenseMatrix> {
        null_matrix_from_moments(&self.moments, alpha, method)
    }
}

/// Raw export of a square matrix: little-endian `u64` n, then `n²` little-endian
/// `f64` values row-major.
pub fn matrix_to_bytes(m: &DenseMatrix) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + 8 * m.n() * m.n());
    out.extend_from_slice(&(m.n() as u64).to_le_bytes());
    for v in m.as_slice() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn matrix_from_bytes(bytes: &[u8]) -> Result<DenseMatrix> {
    if bytes.len() < 8 {
        return Err(Error::domain("matrix file is truncated"));
    }
    let n = u64::from_le_bytes(bytes[..8].try_into().unwrap()) as usize;
    let body = &bytes[8..];
    if body.len() != n * n * 8 {
        return Err(Error::domain(format!("expected {} matrix bytes, found {}", n * n * 8, body.len())));
    }
    let data = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    DenseMatrix::from_vec(n, data)
}

pub fn matrix_to_csv(m: &DenseMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.n() {
        let row: Vec<String> = m.row(i).iter().map(|v| format!("{v:?}")).collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ens(parts: &[&[usize]]) -> PartitionEnsemble {
        PartitionEnsemble::new(parts.iter().map(|p| Partition::from_labels(p)).collect()).unwrap()
    }

    #[test]
    fn coclassification_examples() {
        let e = ens(&[&[0, 0, 1, 1], &[0, 0, 1, 1]]);
        let c = coclassification(&e);
        assert!(is_binary(&c));
        assert_eq!(c.get(0, 1), 1.0);
        assert_eq!(c.get(1, 2), 0.0);

        let e = ens(&[&[0, 0, 1], &[0, 1, 2]]);
        assert_eq!(coclassification(&e).get(0, 1), 0.5);

        let e = ens(&[&[0, 1, 2], &[0, 1, 2]]);
        let c = coclassification(&e);
        assert_eq!(c, DenseMatrix::from_fn(3, |i, j| if i == j { 1.0 } else { 0.0 }));
    }

    #[test]
    fn permutation_probability() {
        let two_two = Partition::from_labels(&[0, 0, 1, 1]);
        assert!((null_prob_permutation(&two_two).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(null_prob_permutation(&Partition::singletons(5)).unwrap(), 0.0);
        assert_eq!(null_prob_permutation(&Partition::all_in_one(5)).unwrap(), 1.0);
        assert!(null_prob_permutation(&Partition::all_in_one(1)).is_err());
    }

    #[test]
    fn local_probability() {
        let p = Partition::from_labels(&[0, 0, 1, 2]);
        assert!((null_prob_local(&p, 0).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(null_prob_local(&p, 3).unwrap(), 0.0);
        assert_eq!(null_prob_local(&Partition::all_in_one(4), 2).unwrap(), 1.0);
        assert!(null_prob_local(&Partition::singletons(1), 0).is_err());
    }

    #[test]
    fn moments() {
        let p: Vec<Partition> = vec![Partition::from_labels(&[0, 0, 1, 1]); 100];
        let e = PartitionEnsemble::new(p).unwrap();
        let m = null_moments(&e, NullKind::Permutation, None).unwrap();
        assert!((m.mu(0, 1) - 1.0 / 3.0).abs() < 1e-12);
        assert!((m.sigma2(0, 1) - 1.0 / 450.0).abs() < 1e-15);
        assert_eq!(m.mu(2, 2), 1.0);

        let e = ens(&[&[0, 1, 2, 3], &[0, 1, 2, 3]]);
        for kind in [NullKind::Permutation, NullKind::LocalPermutation] {
            let m = null_moments(&e, kind, None).unwrap();
            assert_eq!(m.mu(0, 1), 0.0);
            assert_eq!(m.sigma2(0, 1), 0.0);
        }
    }

    #[test]
    fn bernoulli_half_scaling() {
        // every partition gives p = 1/2 for node 0 under the local model: 3 of 7 others share its cluster
        let labels = [0, 0, 0, 0, 1, 1, 1, 1];
        let e = PartitionEnsemble::new(vec![Partition::from_labels(&labels); 8]).unwrap();
        let m = null_moments(&e, NullKind::LocalPermutation, None).unwrap();
        assert!((m.mu(0, 5) - 3.0 / 7.0).abs() < 1e-15);
        let p = Partition::from_labels(&[0, 0, 1, 1, 1]);
        let e = PartitionEnsemble::new(vec![p; 10]).unwrap();
        let m = null_moments(&e, NullKind::LocalPermutation, None).unwrap();
        assert!((m.mu(2, 0) - 0.5).abs() < 1e-15);
        assert!((m.sigma2(2, 0) - 0.25 / 10.0).abs() < 1e-15);
        assert!((m.mu(0, 2) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn restriction_recomputes_sizes() {
        let e = ens(&[&[0, 0, 0, 1, 1, 1]]);
        let m = null_moments(&e, NullKind::LocalPermutation, Some(&[0, 1, 3])).unwrap();
        assert!((m.mu(0, 2) - 0.5).abs() < 1e-15);
        assert_eq!(m.mu(2, 0), 0.0);
    }

    #[test]
    fn thresholds() {
        let t = significance_threshold(0.5, 0.01, 0.05).unwrap();
        assert!((t - (0.5 - 1.644_853_626_951_472 * 0.1)).abs() < 1e-12);
        assert!((t - 0.33551).abs() < 1e-5);
        assert_eq!(significance_threshold(0.3, 0.0, 0.2).unwrap(), 0.3);
        assert!(significance_threshold(0.3, -1.0, 0.2).is_err());
        assert!(significance_threshold(0.3, 0.1, 0.0).is_err());
        assert_eq!(significance_threshold(0.01, 0.01, 0.05).unwrap(), 0.0);
        let mc = ThresholdMethod::MonteCarlo { trials: 200, seed: Seed::new(2) };
        assert_eq!(threshold_for(&[1.0; 10], 0.05, mc).unwrap(), 1.0);
    }

    #[test]
    fn consensus_null_examples() {
        let e = PartitionEnsemble::new(vec![Partition::from_labels(&[0, 0, 1, 1]); 100]).unwrap();
        let p = consensus_null_matrix(&e, 0.05, NullKind::LocalPermutation, None, ThresholdMethod::Normal).unwrap();
        let expected = 1.0 / 3.0 - 1.644_853_626_951_472 * (1.0f64 / 450.0).sqrt();
        assert!((p.get(0, 2) - expected).abs() < 1e-12);
        assert!((p.get(0, 2) - 0.2558).abs() < 1e-4);
        assert_eq!(p.get(1, 1), 1.0);
        assert!(p.is_symmetric(0.0));

        let e = ens(&[&[0, 1, 2], &[0, 1, 2]]);
        let p = consensus_null_matrix(&e, 0.05, NullKind::LocalPermutation, None, ThresholdMethod::Normal).unwrap();
        assert_eq!(p.get(0, 1), 0.0);
    }

    #[test]
    fn asymmetric_orientations_take_the_lower_quantile() {
        let e = ens(&[&[0, 0, 0, 1], &[0, 0, 1, 1], &[0, 0, 0, 0]]);
        let m = null_moments(&e, NullKind::LocalPermutation, None).unwrap();
        assert_ne!(m.mu(0, 3), m.mu(3, 0));
        let p = null_matrix_from_moments(&m, 0.1, ThresholdMethod::Normal).unwrap();
        let q0 = significance_threshold(m.mu(0, 3), m.sigma2(0, 3), 0.1).unwrap();
        let q3 = significance_threshold(m.mu(3, 0), m.sigma2(3, 0), 0.1).unwrap();
        assert_eq!(p.get(0, 3), q0.min(q3));
        assert_eq!(p.get(3, 0), p.get(0, 3));
    }

    #[test]
    fn ensemble_csv() {
        let e = PartitionEnsemble::with_gammas(
            vec![Partition::from_labels(&[0, 0, 1]), Partition::singletons(3)],
            vec![1.0, 2.5],
        )
        .unwrap();
        let text = e.to_csv();
        assert!(text.starts_with("1.0,2.5\n"));
        assert_eq!(PartitionEnsemble::from_csv(&text).unwrap(), e);
        let plain = ens(&[&[0, 1, 1]]);
        assert_eq!(PartitionEnsemble::from_csv(&plain.to_csv()).unwrap(), plain);
        assert!(PartitionEnsemble::from_csv("0,1\n0\n").is_err());
        assert!(PartitionEnsemble::new(vec![]).is_err());
    }

    #[test]
    fn matrix_binary_round_trip() {
        let m = DenseMatrix::from_fn(3, |i, j| (i * 3 + j) as f64 / 7.0);
        let bytes = matrix_to_bytes(&m);
        assert_eq!(&bytes[..8], &3u64.to_le_bytes());
        assert_eq!(matrix_from_bytes(&bytes).unwrap(), m);
        assert!(matrix_from_bytes(&bytes[..20]).is_err());
    }

    #[test]
    fn generate_examples() {
        let g = Graph::from_edges(
            6,
            [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0)],
        )
        .unwrap();
        let e = generate_ensemble(&g, &[1.0], Seed::new(1), 1).unwrap();
        assert_eq!(e.partitions()[0], Partition::from_labels(&[0, 0, 0, 1, 1, 1]));
        let e = generate_ensemble(&g, &[3.03; 5], Seed::new(1), 0).unwrap();
        assert!(e.partitions().iter().all(Partition::is_singletons));
        assert!(generate_ensemble(&g, &[], Seed::new(1), 1).is_err());
    }
}
