//! Modularity-like quality functions and their Louvain-style optimization.
//!
//! A [`QualityProblem`] holds a dense symmetric interaction matrix `B` and
//! scores a partition `g` as `Q(g) = Σ_ij B_ij δ(g_i, g_j)` (diagonal included,
//! no normalization). Graph clustering uses `B = A − γP`; consensus clustering
//! uses `B = C − P(α)`.
//!
//! The optimizer follows the two-phase Louvain scheme. In the first phase
//! nodes are visited in a fresh random order each sweep. For the visited node
//! every strictly improving destination is collected (each existing community
//! plus a fresh singleton) and one is drawn with probability proportional to
//! its gain. When a sweep makes no move, communities are collapsed into
//! supernodes by summing blocks of `B`, and the first phase is repeated on the
//! aggregate. [`iterated_louvain`] restarts the whole procedure from its own
//! output until the score stops improving.

use crate::error::{Error, Result};
use crate::graph::{config_null_matrix, Graph};
use crate::matrix::DenseMatrix;
use crate::partition::Partition;
use crate::rng::{Rng, Seed};
use rand::seq::SliceRandom;
use rand::Rng as _;
use std::borrow::Cow;

/// Restarts in [`iterated_louvain`] stop once the score gains no more than this.
pub const CONVERGENCE_TOL: f64 = 1e-10;

const MAX_RESTARTS: usize = 1000;

// Moves must gain more than this multiple of max|B| to count as improving.
const RELATIVE_MOVE_TOL: f64 = 1e-12;

/// Dense symmetric interaction matrix defining `Q(g) = Σ_ij B_ij δ(g_i, g_j)`.
#[derive(Clone, Debug)]
pub struct QualityProblem {
    b: DenseMatrix,
}

impl QualityProblem {
    /// Wraps `b`, which must be finite and symmetric.
    pub fn new(b: DenseMatrix) -> Result<Self> {
        if b.as_slice().iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("interaction matrix has non-finite entries"));
        }
        let tol = 1e-12 * b.max_abs().max(1.0);
        if !b.is_symmetric(tol) {
            return Err(Error::domain("interaction matrix is not symmetric"));
        }
        Ok(QualityProblem { b })
    }

    /// Symmetrizes `b` as `(B + Bᵀ)/2` before wrapping it.
    pub fn new_symmetrized(mut b: DenseMatrix) -> Result<Self> {
        b.symmetrize();
        Self::new(b)
    }

    /// Multiresolution modularity `B = A − γ k kᵀ / 2m` of a graph.
    pub fn modularity(graph: &Graph, gamma: f64) -> Result<Self> {
        let a = graph.adjacency();
        let p = config_null_matrix(graph)?;
        let n = graph.n();
        Self::new(DenseMatrix::from_fn(n, |i, j| a.get(i, j) - gamma * p.get(i, j)))
    }

    /// Modularity of a weighted graph given as a dense symmetric adjacency.
    pub fn modularity_dense(adjacency: &DenseMatrix, gamma: f64) -> Result<Self> {
        let n = adjacency.n();
        let k: Vec<f64> = (0..n).map(|i| adjacency.row(i).iter().sum()).collect();
        let two_m: f64 = k.iter().sum();
        if !(two_m > 0.0) {
            return Err(Error::domain("graph has zero total weight"));
        }
        Self::new(DenseMatrix::from_fn(n, |i, j| {
            adjacency.get(i, j) - gamma * k[i] * k[j] / two_m
        }))
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.b
    }
}

/// `Σ_ij B_ij δ(g_i, g_j)`.
pub fn modularity_score(problem: &QualityProblem, p: &Partition) -> Result<f64> {
    if p.n() != problem.n() {
        return Err(Error::domain(format!(
            "partition covers {} nodes but the problem has {}",
            p.n(),
            problem.n()
        )));
    }
    Ok(score(&problem.b, p.labels()))
}

fn score(b: &DenseMatrix, labels: &[usize]) -> f64 {
    let n = b.n();
    let mut q = 0.0;
    for i in 0..n {
        let row = b.row(i);
        let li = labels[i];
        let mut acc = 0.0;
        for j in 0..n {
            if labels[j] == li {
                acc += row[j];
            }
        }
        q += acc;
    }
    q
}

/// One Louvain run (local moves + aggregation until no improving move exists).
pub fn louvain_once(problem: &QualityProblem, seed: Seed, init: Option<&Partition>) -> Result<Partition> {
    let mut rng = seed.rng();
    louvain_with_rng(problem, &mut rng, init)
}

/// [`louvain_once`] drawing from a caller-owned generator.
pub fn louvain_with_rng(problem: &QualityProblem, rng: &mut Rng, init: Option<&Partition>) -> Result<Partition> {
    let n = problem.n();
    if let Some(p) = init {
        if p.n() != n {
            return Err(Error::domain("initial partition does not match problem size"));
        }
    }
    if n == 0 {
        return Ok(Partition::singletons(0));
    }
    let tol = RELATIVE_MOVE_TOL * problem.b.max_abs();

    let mut matrix: Cow<DenseMatrix> = Cow::Borrowed(&problem.b);
    // original node -> node of the current level
    let mut node_of: Vec<usize> = (0..n).collect();
    let mut comm: Vec<usize> = match init {
        Some(p) => p.labels().to_vec(),
        None => (0..n).collect(),
    };
    #[cfg(debug_assertions)]
    let mut last_q = score(&matrix, &comm);

    loop {
        local_moves(&matrix, &mut comm, rng, tol);
        #[cfg(debug_assertions)]
        {
            let q = score(&matrix, &comm);
            debug_assert!(q >= last_q - 1e-9 * (1.0 + q.abs()), "Q decreased: {last_q} -> {q}");
            last_q = q;
        }
        let (n_comm, relabel) = renumber(&comm);
        let k = matrix.n();
        if n_comm == k {
            break;
        }
        let aggregated = aggregate(&matrix, &comm, &relabel, n_comm);
        for v in node_of.iter_mut() {
            *v = relabel[comm[*v]];
        }
        matrix = Cow::Owned(aggregated);
        comm = (0..n_comm).collect();
    }
    let labels: Vec<usize> = node_of.iter().map(|&v| comm[v]).collect();
    Ok(Partition::from_labels(&labels))
}

/// Maps community ids to `0..count`; returns `(count, map)` where `map` is
/// indexed by the old id.
fn renumber(comm: &[usize]) -> (usize, Vec<usize>) {
    let mut map = vec![usize::MAX; comm.len()];
    let mut next = 0;
    for &c in comm {
        if map[c] == usize::MAX {
            map[c] = next;
            next += 1;
        }
    }
    (next, map)
}

/// Block sums `M'_cd = Σ_{u∈c, v∈d} M_uv`.
fn aggregate(m: &DenseMatrix, comm: &[usize], relabel: &[usize], n_comm: usize) -> DenseMatrix {
    let super_of: Vec<usize> = comm.iter().map(|&c| relabel[c]).collect();
    let mut out = DenseMatrix::zeros(n_comm);
    for (u, &cu) in super_of.iter().enumerate() {
        let row = m.row(u);
        for (v, &w) in row.iter().enumerate() {
            out.add(cu, super_of[v], w);
        }
    }
    out
}

/// Phase one. Returns whether any node moved.
fn local_moves(m: &DenseMatrix, comm: &mut [usize], rng: &mut Rng, tol: f64) -> bool {
    let k = m.n();
    let mut count = vec![0usize; k];
    for &c in comm.iter() {
        count[c] += 1;
    }
    // nonempty community ids, with positions for O(1) removal
    let mut nonempty: Vec<usize> = Vec::with_capacity(k);
    let mut pos = vec![usize::MAX; k];
    for c in 0..k {
        if count[c] > 0 {
            pos[c] = nonempty.len();
            nonempty.push(c);
        }
    }
    let mut free: Vec<usize> = (0..k).filter(|&c| count[c] == 0).rev().collect();

    let mut s = vec![0.0f64; k];
    let mut order: Vec<usize> = (0..k).collect();
    let mut candidates: Vec<(usize, f64)> = Vec::new();
    let mut any_move = false;

    loop {
        order.shuffle(rng);
        let mut moved_this_sweep = false;
        for &v in &order {
            let a = comm[v];
            for &c in &nonempty {
                s[c] = 0.0;
            }
            let row = m.row(v);
            for (u, &w) in row.iter().enumerate() {
                s[comm[u]] += w;
            }
            let s_own = s[a] - row[v];

            candidates.clear();
            let mut total = 0.0;
            for &b in &nonempty {
                if b == a {
                    continue;
                }
                let gain = 2.0 * (s[b] - s_own);
                if gain > tol {
                    candidates.push((b, gain));
                    total += gain;
                }
            }
            if count[a] > 1 {
                let gain = -2.0 * s_own;
                if gain > tol {
                    candidates.push((usize::MAX, gain));
                    total += gain;
                }
            }
            if candidates.is_empty() {
                continue;
            }

            let mut r = rng.random::<f64>() * total;
            let mut target = candidates[candidates.len() - 1].0;
            for &(b, gain) in &candidates {
                if r < gain {
                    target = b;
                    break;
                }
                r -= gain;
            }
            if target == usize::MAX {
                target = free.pop().expect("a free community id exists while a community has >1 member");
                pos[target] = nonempty.len();
                nonempty.push(target);
            }

            count[a] -= 1;
            if count[a] == 0 {
                let p = pos[a];
                let last = *nonempty.last().unwrap();
                nonempty.swap_remove(p);
                if last != a {
                    pos[last] = p;
                }
                pos[a] = usize::MAX;
                free.push(a);
            }
            count[target] += 1;
            comm[v] = target;
            moved_this_sweep = true;
        }
        if !moved_this_sweep {
            break;
        }
        any_move = true;
    }
    any_move
}

/// Louvain restarted from its own output until `Q` stops increasing.
pub fn iterated_louvain(problem: &QualityProblem, seed: Seed) -> Result<Partition> {
    let mut rng = seed.rng();
    let mut best = louvain_with_rng(problem, &mut rng, None)?;
    let mut q = score(&problem.b, best.labels());
    for _ in 0..MAX_RESTARTS {
        let next = louvain_with_rng(problem, &mut rng, Some(&best))?;
        let qn = score(&problem.b, next.labels());
        if qn - q <= CONVERGENCE_TOL {
            if qn > q {
                best = next;
            }
            break;
        }
        best = next;
        q = qn;
    }
    Ok(best)
}
