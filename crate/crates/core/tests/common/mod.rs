//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use hiercons::{Graph, Partition, PartitionEnsemble, Seed};
use rand::Rng as _;

/// Erdős–Rényi graph with uniform weights in [0.1, 2); retries until it has an edge.
pub fn random_weighted_graph(n: usize, density: f64, seed: Seed) -> Graph {
    let mut rng = seed.rng();
    loop {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.random::<f64>() < density {
                    edges.push((i, j, rng.random_range(0.1..2.0)));
                }
            }
        }
        if !edges.is_empty() {
            return Graph::from_edges(n, edges).unwrap();
        }
    }
}

/// Calls `f` with every set partition of `0..n` as a restricted growth string.
pub fn for_each_set_partition(n: usize, mut f: impl FnMut(&[usize])) {
    fn rec(i: usize, max: usize, labels: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if i == labels.len() {
            f(labels);
            return;
        }
        for c in 0..=max + 1 {
            labels[i] = c;
            rec(i + 1, max.max(c), labels, f);
        }
    }
    if n == 0 {
        return;
    }
    let mut labels = vec![0; n];
    rec(1, 0, &mut labels, &mut f);
}

/// `max_g Σ_ij (A_ij − γ k_i k_j / 2m) δ(g_i, g_j)` by exhaustive enumeration,
/// evaluated from the edge list directly.
pub fn brute_force_modularity(g: &Graph, gamma: f64) -> f64 {
    let n = g.n();
    let mut a = vec![vec![0.0; n]; n];
    for &(i, j, w) in g.edges() {
        a[i][j] += w;
        if i != j {
            a[j][i] += w;
        }
    }
    let k: Vec<f64> = a.iter().map(|r| r.iter().sum()).collect();
    let two_m: f64 = k.iter().sum();
    let mut best = f64::NEG_INFINITY;
    for_each_set_partition(n, |labels| {
        let mut q = 0.0;
        for i in 0..n {
            for j in 0..n {
                if labels[i] == labels[j] {
                    q += a[i][j] - gamma * k[i] * k[j] / two_m;
                }
            }
        }
        best = best.max(q);
    });
    best
}

/// β(γ) by direct summation over ordered pairs `i ≠ j`.
pub fn beta_direct(g: &Graph, gamma: f64) -> f64 {
    let n = g.n();
    let mut a = vec![vec![0.0; n]; n];
    for &(i, j, w) in g.edges() {
        a[i][j] += w;
        a[j][i] += w;
    }
    let k = g.strengths();
    let two_m = g.total_weight();
    let (mut below, mut total) = (0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let p = k[i] * k[j] / two_m;
            let b = a[i][j] - gamma * p;
            total += b.abs();
            if b <= 0.0 {
                below += b.abs();
            }
        }
    }
    if total == 0.0 {
        1.0
    } else {
        below / total
    }
}

/// Mean of `I(g, σ(h))` over all `n!` permutations σ of the nodes.
pub fn enumerated_expected_mi(g: &Partition, h: &Partition) -> f64 {
    fn heap(k: usize, perm: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if k <= 1 {
            f(perm);
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, f);
            let swap = if k % 2 == 0 { i } else { 0 };
            perm.swap(swap, k - 1);
        }
    }
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let (mut sum, mut count) = (0.0, 0u64);
    heap(n, &mut perm, &mut |p| {
        sum += mi_direct(g.labels(), &p.iter().map(|&i| h.label(i)).collect::<Vec<_>>());
        count += 1;
    });
    sum / count as f64
}

/// Mutual information from raw label vectors.
pub fn mi_direct(a: &[usize], b: &[usize]) -> f64 {
    use std::collections::HashMap;
    let n = a.len() as f64;
    let mut joint: HashMap<(usize, usize), f64> = HashMap::new();
    let mut ra: HashMap<usize, f64> = HashMap::new();
    let mut rb: HashMap<usize, f64> = HashMap::new();
    for (&x, &y) in a.iter().zip(b) {
        *joint.entry((x, y)).or_default() += 1.0;
        *ra.entry(x).or_default() += 1.0;
        *rb.entry(y).or_default() += 1.0;
    }
    joint
        .iter()
        .map(|(&(x, y), &c)| c / n * (n * c / (ra[&x] * rb[&y])).ln())
        .sum()
}

/// Fraction of the `n!` relabelings under which two distinct nodes share a cluster.
pub fn enumerated_permutation_probability(p: &Partition) -> f64 {
    let n = p.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let (mut hits, mut total) = (0u64, 0u64);
    fn all(k: usize, perm: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if k == perm.len() {
            f(perm);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            all(k + 1, perm, f);
            perm.swap(k, i);
        }
    }
    all(0, &mut perm, &mut |s| {
        // node 0 and node 1 receive the labels at positions s[0] and s[1]
        if p.label(s[0]) == p.label(s[1]) {
            hits += 1;
        }
        total += 1;
    });
    hits as f64 / total as f64
}

/// 100 partitions of two blocks of 10. Each partition merges the blocks with
/// probability 0.1 and isolates every node with probability 0.03.
pub fn noisy_two_block(seed: u64) -> PartitionEnsemble {
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

pub fn two_blocks() -> Partition {
    Partition::from_labels(&(0..20).map(|i| i / 10).collect::<Vec<_>>())
}
