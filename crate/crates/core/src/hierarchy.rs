//! Hierarchical consensus: recursive consensus clustering inside clusters,
//! and cuts of the resulting tree by cluster strength.

use crate::consensus::{consensus_partition_with, ConsensusOptions};
use crate::ensemble::{coclassification, PartitionEnsemble};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::partition::Partition;
use crate::rng::Seed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

pub const TREE_FORMAT_VERSION: u32 = 1;

/// Scalar strength of a cluster given its (sorted) members and the full `C`.
pub type StrengthFn = dyn Fn(&[usize], &DenseMatrix) -> f64 + Sync;

/// `⟨C⟩`: mean of `C_ij` over ordered member pairs with `i ≠ j`.
pub fn mean_coclassification(members: &[usize], c: &DenseMatrix) -> f64 {
    let k = members.len();
    if k < 2 {
        return f64::NAN;
    }
    let mut sum = 0.0;
    for &i in members {
        let row = c.row(i);
        sum += members.iter().map(|&j| row[j]).sum::<f64>() - row[i];
    }
    sum / (k * (k - 1)) as f64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeNode {
    pub id: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub members: Vec<usize>,
    /// `None` for single-node clusters.
    pub strength: Option<f64>,
}

impl TreeNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// Rooted cluster hierarchy. Node 0 is the root (all nodes); ids follow a
/// depth-first preorder with children ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsensusTree {
    pub version: u32,
    pub n: usize,
    pub nodes: Vec<TreeNode>,
}

struct Subtree {
    members: Vec<usize>,
    strength: Option<f64>,
    children: Vec<Subtree>,
}

impl ConsensusTree {
    fn from_subtree(n: usize, root: Subtree) -> Self {
        fn push(nodes: &mut Vec<TreeNode>, s: Subtree, parent: Option<usize>) -> usize {
            let id = nodes.len();
            nodes.push(TreeNode {
                id,
                parent,
                children: Vec::new(),
                members: s.members,
                strength: s.strength,
            });
            for child in s.children {
                let cid = push(nodes, child, Some(id));
                nodes[id].children.push(cid);
            }
            id
        }
        let mut nodes = Vec::new();
        push(&mut nodes, root, None);
        ConsensusTree {
            version: TREE_FORMAT_VERSION,
            n,
            nodes,
        }
    }

    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    /// Root-only tree: no significant split was found.
    pub fn is_trivial(&self) -> bool {
        self.nodes.len() == 1
    }

    pub fn leaves(&self) -> Vec<&TreeNode> {
        self.nodes.iter().filter(|v| v.is_leaf()).collect()
    }

    /// Number of edges on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        let mut depth = vec![0usize; self.nodes.len()];
        for v in &self.nodes {
            if let Some(p) = v.parent {
                depth[v.id] = depth[p] + 1;
            }
        }
        depth.into_iter().max().unwrap_or(0)
    }

    fn partition_of(&self, clusters: &[usize]) -> Partition {
        let mut labels = vec![0usize; self.n];
        for (c, &id) in clusters.iter().enumerate() {
            for &i in &self.nodes[id].members {
                labels[i] = c;
            }
        }
        Partition::from_labels(&labels)
    }

    /// Finest level: every leaf is a cluster.
    pub fn leaf_partition(&self) -> Partition {
        let ids: Vec<usize> = self.nodes.iter().filter(|v| v.is_leaf()).map(|v| v.id).collect();
        self.partition_of(&ids)
    }

    /// Coarsest non-trivial level: the root's children (all-in-one if the
    /// root is a leaf).
    pub fn coarsest_partition(&self) -> Partition {
        if self.root().is_leaf() {
            self.partition_of(&[0])
        } else {
            self.partition_of(&self.root().children)
        }
    }

    /// Checks that children partition their parent's members.
    pub fn validate(&self) -> Result<()> {
        let mut root_members = self.root().members.clone();
        root_members.sort_unstable();
        if root_members != (0..self.n).collect::<Vec<_>>() {
            return Err(Error::domain("root does not contain every node exactly once"));
        }
        for v in &self.nodes {
            if v.is_leaf() {
                continue;
            }
            let mut union: Vec<usize> = v
                .children
                .iter()
                .flat_map(|&c| self.nodes[c].members.iter().copied())
                .collect();
            union.sort_unstable();
            let mut own = v.members.clone();
            own.sort_unstable();
            if union != own {
                return Err(Error::domain(format!("children of tree node {} do not partition it", v.id)));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let t: ConsensusTree = serde_json::from_str(text)?;
        if t.version != TREE_FORMAT_VERSION {
            return Err(Error::domain(format!("unsupported tree format version {}", t.version)));
        }
        if t.nodes.is_empty() {
            return Err(Error::domain("tree has no nodes"));
        }
        t.validate()?;
        Ok(t)
    }

    /// `node_id,leaf_cluster,coarse_cluster` per node.
    pub fn to_flat_csv(&self) -> String {
        let leaf = self.leaf_partition();
        let coarse = self.coarsest_partition();
        let mut out = String::from("node_id,leaf_cluster,coarse_cluster\n");
        for i in 0..self.n {
            let _ = writeln!(out, "{i},{},{}", leaf.label(i), coarse.label(i));
        }
        out
    }
}

/// Hierarchical consensus with the default options: local permutation null,
/// normal-approximation thresholds and `⟨C⟩` as cluster strength.
pub fn hierarchical_consensus(e: &PartitionEnsemble, alpha: f64, seed: Seed) -> Result<ConsensusTree> {
    hierarchical_consensus_with(e, &ConsensusOptions::new(alpha), seed, &mean_coclassification)
}

/// Splits the node set by consensus clustering, then recursively splits each
/// cluster using the ensemble restricted to it. A cluster is a leaf when its
/// consensus partition is all-in-one or it has a single node. Sibling
/// subtrees run in parallel; child `k` of a cluster with seed `s` uses
/// `s.child(k)`, so the result does not depend on scheduling.
pub fn hierarchical_consensus_with(
    e: &PartitionEnsemble,
    opts: &ConsensusOptions,
    seed: Seed,
    strength: &StrengthFn,
) -> Result<ConsensusTree> {
    if !(opts.alpha > 0.0 && opts.alpha < 1.0) {
        return Err(Error::domain(format!("alpha = {} must lie in (0, 1)", opts.alpha)));
    }
    if e.len() == 1 {
        log::warn!("ensemble has a single partition; significance levels are degenerate");
    }
    let c = coclassification(e);
    let all: Vec<usize> = (0..e.n()).collect();
    let root = split(e, all, opts, seed, &c, strength)?;
    let tree = ConsensusTree::from_subtree(e.n(), root);
    debug_assert!(tree.validate().is_ok());
    Ok(tree)
}

fn split(
    e: &PartitionEnsemble,
    members: Vec<usize>,
    opts: &ConsensusOptions,
    seed: Seed,
    c: &DenseMatrix,
    strength: &StrengthFn,
) -> Result<Subtree> {
    let s = (members.len() >= 2).then(|| strength(&members, c));
    let leaf = |members| Subtree {
        members,
        strength: s,
        children: Vec::new(),
    };
    if members.len() < 2 {
        return Ok(leaf(members));
    }
    let p = consensus_partition_with(e, opts, seed, Some(&members))?;
    if p.is_all_in_one() {
        return Ok(leaf(members));
    }
    let groups: Vec<Vec<usize>> = p
        .clusters()
        .into_iter()
        .map(|local| local.into_iter().map(|a| members[a]).collect())
        .collect();
    let children = groups
        .into_par_iter()
        .enumerate()
        .map(|(k, g)| split(e, g, opts, seed.child(k as u64), c, strength))
        .collect::<Result<Vec<_>>>()?;
    Ok(Subtree {
        members,
        strength: s,
        children,
    })
}

/// Partition obtained by merging every cluster whose strength exceeds
/// `threshold`: descending from the root, a cluster is kept whole when it is a
/// leaf or its strength is greater than the threshold. The root itself is
/// always split, so low thresholds give the coarsest non-trivial level and
/// thresholds at or above every strength give the leaves.
pub fn cut_tree(t: &ConsensusTree, threshold: f64) -> Partition {
    if t.root().is_leaf() {
        return t.partition_of(&[0]);
    }
    let mut kept = Vec::new();
    let mut stack: Vec<usize> = t.root().children.iter().rev().copied().collect();
    while let Some(id) = stack.pop() {
        let v = t.node(id);
        if v.is_leaf() || v.strength.is_some_and(|s| s > threshold) {
            kept.push(id);
        } else {
            stack.extend(v.children.iter().rev());
        }
    }
    t.partition_of(&kept)
}

/// Distinct cuts from coarsest to finest as `(threshold, partition)`. The
/// first threshold is `-inf`; each later one is a cluster strength at which
/// the partition changes. The last cut is the leaf partition.
pub fn all_cuts(t: &ConsensusTree) -> Vec<(f64, Partition)> {
    let mut levels: Vec<f64> = t
        .nodes
        .iter()
        .skip(1)
        .filter(|v| !v.is_leaf())
        .filter_map(|v| v.strength)
        .collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let mut cuts: Vec<(f64, Partition)> = Vec::with_capacity(levels.len() + 1);
    for th in std::iter::once(f64::NEG_INFINITY).chain(levels) {
        let p = cut_tree(t, th);
        if cuts.last().is_none_or(|(_, q)| *q != p) {
            cuts.push((th, p));
        }
    }
    cuts
}
