//! Cluster assignment vectors.

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::Hash;

/// A partition of nodes `0..n` into non-empty clusters.
///
/// Labels are canonical: clusters are numbered `0..k` in order of their
/// smallest member, so two partitions are equal exactly when they group the
/// nodes the same way.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    labels: Vec<usize>,
    sizes: Vec<usize>,
}

impl Partition {
    /// Canonicalizes arbitrary labels.
    pub fn from_labels<L: Eq + Hash + Clone>(labels: &[L]) -> Self {
        let mut map: HashMap<L, usize> = HashMap::new();
        let mut sizes = Vec::new();
        let canon = labels
            .iter()
            .map(|l| {
                let next = map.len();
                let c = *map.entry(l.clone()).or_insert(next);
                if c == sizes.len() {
                    sizes.push(0);
                }
                sizes[c] += 1;
                c
            })
            .collect();
        Partition { labels: canon, sizes }
    }

    /// Every node in its own cluster.
    pub fn singletons(n: usize) -> Self {
        Partition {
            labels: (0..n).collect(),
            sizes: vec![1; n],
        }
    }

    /// All nodes in one cluster.
    pub fn all_in_one(n: usize) -> Self {
        Partition {
            labels: vec![0; n],
            sizes: if n == 0 { vec![] } else { vec![n] },
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn n_clusters(&self) -> usize {
        self.sizes.len()
    }

    /// `|{g = c}|` for every cluster `c`.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Size of the cluster containing node `i`.
    pub fn size_of(&self, i: usize) -> usize {
        self.sizes[self.labels[i]]
    }

    pub fn is_all_in_one(&self) -> bool {
        self.sizes.len() <= 1
    }

    pub fn is_singletons(&self) -> bool {
        self.sizes.len() == self.labels.len()
    }

    /// Member lists, one per cluster, each sorted ascending.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
        for (i, &c) in self.labels.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    /// The partition induced on `subset`; node `subset[a]` becomes node `a`.
    pub fn restrict(&self, subset: &[usize]) -> Partition {
        let labels: Vec<usize> = subset.iter().map(|&i| self.labels[i]).collect();
        Partition::from_labels(&labels)
    }

    /// True when every cluster of `self` lies inside one cluster of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.n() != coarser.n() {
            return false;
        }
        let mut parent = vec![usize::MAX; self.n_clusters()];
        self.labels.iter().zip(&coarser.labels).all(|(&f, &c)| {
            if parent[f] == usize::MAX {
                parent[f] = c;
            }
            parent[f] == c
        })
    }

    /// Single-column CSV of labels, one row per node.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.n() * 4);
        for l in &self.labels {
            let _ = writeln!(out, "{l}");
        }
        out
    }

    /// Parses a single-column label file. Labels may be any token; they are
    /// canonicalized.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut labels = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            if t.contains(',') {
                return Err(Error::parse(lineno + 1, "expected a single column"));
            }
            labels.push(t.to_string());
        }
        if labels.is_empty() {
            return Err(Error::domain("partition file is empty"));
        }
        Ok(Partition::from_labels(&labels))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_labels() {
        let p = Partition::from_labels(&[7, 7, 3, 9, 3]);
        assert_eq!(p.labels(), &[0, 0, 1, 2, 1]);
        assert_eq!(p.sizes(), &[2, 2, 1]);
        assert_eq!(p, Partition::from_labels(&["a", "a", "b", "c", "b"]));
        assert_eq!(p.sizes().iter().sum::<usize>(), p.n());
    }

    #[test]
    fn restrict_recomputes_sizes() {
        let p = Partition::from_labels(&[0, 0, 0, 1, 1, 2]);
        let r = p.restrict(&[2, 3, 4]);
        assert_eq!(r.labels(), &[0, 1, 1]);
        assert_eq!(r.sizes(), &[1, 2]);
    }

    #[test]
    fn refinement() {
        let fine = Partition::from_labels(&[0, 1, 2, 2]);
        let coarse = Partition::from_labels(&[0, 0, 1, 1]);
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(coarse.refines(&Partition::all_in_one(4)));
    }

    #[test]
    fn csv_round_trip() {
        let p = Partition::from_labels(&[3, 1, 3, 0]);
        assert_eq!(Partition::from_csv(&p.to_csv()).unwrap(), p);
        assert!(Partition::from_csv("").is_err());
        assert!(Partition::from_csv("1,2\n").is_err());
    }

    #[test]
    fn trivial_partitions() {
        assert!(Partition::all_in_one(3).is_all_in_one());
        assert!(Partition::singletons(3).is_singletons());
        assert_eq!(Partition::singletons(3).clusters(), vec![vec![0], vec![1], vec![2]]);
    }
}
