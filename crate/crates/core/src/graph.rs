//! Weighted undirected graphs and the configuration null model.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

/// How `load_edge_list` treats a pair listed in both orientations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DirectedPolicy {
    /// `A_ij = w(i→j) + w(j→i)`; a pair listed once keeps its weight.
    #[default]
    Symmetrize,
    /// A pair listed in both orientations must carry equal weights and is read
    /// as one undirected edge. Unequal weights are an error.
    Reject,
}

/// Mapping between node ids found in an input file and internal ids `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdMap {
    original: Vec<String>,
}

impl IdMap {
    pub fn identity(n: usize) -> Self {
        IdMap {
            original: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.original.len()
    }

    pub fn is_empty(&self) -> bool {
        self.original.is_empty()
    }

    pub fn original(&self, internal: usize) -> &str {
        &self.original[internal]
    }

    /// Two-column CSV `original_id,internal_id`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("original_id,internal_id\n");
        for (i, id) in self.original.iter().enumerate() {
            let _ = writeln!(out, "{id},{i}");
        }
        out
    }
}

/// Weighted undirected graph with nodes `0..n`.
///
/// Each undirected edge is stored once as `(i, j, w)` with `i <= j`. A self-loop
/// `(i, i, w)` sets `A_ii = w` and adds `w` to the strength of `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    strengths: Vec<f64>,
    total_weight: f64,
    self_loops: Vec<f64>,
}

impl Graph {
    /// Builds a graph from undirected edges. Repeated pairs (in either
    /// orientation) have their weights summed.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut acc: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (i, j, w) in edges {
            if i >= n || j >= n {
                return Err(Error::domain(format!("edge ({i}, {j}) out of range for n = {n}")));
            }
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::domain(format!("edge ({i}, {j}) has invalid weight {w}")));
            }
            *acc.entry((i.min(j), i.max(j))).or_insert(0.0) += w;
        }
        Ok(Self::from_canonical(n, acc.into_iter().map(|((i, j), w)| (i, j, w)).collect()))
    }

    fn from_canonical(n: usize, edges: Vec<(usize, usize, f64)>) -> Self {
        let mut strengths = vec![0.0; n];
        let mut self_loops = vec![0.0; n];
        for &(i, j, w) in &edges {
            if i == j {
                strengths[i] += w;
                self_loops[i] += w;
            } else {
                strengths[i] += w;
                strengths[j] += w;
            }
        }
        let total_weight = strengths.iter().sum();
        Graph {
            n,
            edges,
            strengths,
            total_weight,
            self_loops,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    /// Node strengths `k_i = Σ_j A_ij`.
    pub fn strengths(&self) -> &[f64] {
        &self.strengths
    }

    /// `2m = Σ_i k_i`.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn self_loop_weights(&self) -> &[f64] {
        &self.self_loops
    }

    pub fn adjacency(&self) -> DenseMatrix {
        let mut a = DenseMatrix::zeros(self.n);
        for &(i, j, w) in &self.edges {
            a.add(i, j, w);
            if i != j {
                a.add(j, i, w);
            }
        }
        a
    }

    /// Writes the graph as `i j w` lines with internal ids.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(i, j, w) in &self.edges {
            let _ = writeln!(out, "{i} {j} {w:?}");
        }
        out
    }
}

/// Parses a whitespace-separated edge list (`src dst [weight]`, weight 1.0 when
/// absent). Blank lines and lines starting with `#` or `%` are skipped.
pub fn parse_edge_list(reader: impl Read, policy: DirectedPolicy) -> Result<(Graph, IdMap)> {
    let reader = BufReader::new(reader);
    let mut raw: Vec<(String, String, f64)> = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let w = match fields.len() {
            2 => 1.0,
            3 => fields[2]
                .parse::<f64>()
                .map_err(|e| Error::parse(lineno, format!("bad weight {:?}: {e}", fields[2])))?,
            k => return Err(Error::parse(lineno, format!("expected 2 or 3 fields, found {k}"))),
        };
        if !w.is_finite() {
            return Err(Error::parse(lineno, format!("non-finite weight {w}")));
        }
        if w < 0.0 {
            return Err(Error::domain(format!("negative weight {w} on line {lineno}")));
        }
        raw.push((fields[0].to_string(), fields[1].to_string(), w));
    }
    if raw.is_empty() {
        return Err(Error::domain("no edges"));
    }

    let all_numeric = raw
        .iter()
        .all(|(s, t, _)| s.parse::<u64>().is_ok() && t.parse::<u64>().is_ok());
    if all_numeric {
        for (s, t, _) in raw.iter_mut() {
            *s = s.parse::<u64>().unwrap().to_string();
            *t = t.parse::<u64>().unwrap().to_string();
        }
    }
    let ids = build_id_map(&raw, all_numeric);
    let index: HashMap<&str, usize> = ids
        .original
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();

    let mut directed: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for (s, t, w) in &raw {
        *directed.entry((index[s.as_str()], index[t.as_str()])).or_insert(0.0) += w;
    }

    let mut edges = Vec::new();
    for (&(i, j), &w) in &directed {
        if i == j {
            edges.push((i, i, w));
            continue;
        }
        let reverse = directed.get(&(j, i)).copied();
        match (policy, reverse) {
            (_, None) => edges.push((i.min(j), i.max(j), w)),
            (DirectedPolicy::Symmetrize, Some(r)) => {
                if i < j {
                    edges.push((i, j, w + r));
                }
            }
            (DirectedPolicy::Reject, Some(r)) => {
                if r != w {
                    return Err(Error::domain(format!(
                        "asymmetric input: {} -> {} has weight {w} but the reverse has {r}",
                        ids.original[i], ids.original[j]
                    )));
                }
                if i < j {
                    edges.push((i, j, w));
                }
            }
        }
    }
    let graph = Graph::from_edges(ids.len(), edges)?;
    Ok((graph, ids))
}

/// Reads an edge list from disk. See [`parse_edge_list`].
pub fn load_edge_list(path: impl AsRef<Path>, policy: DirectedPolicy) -> Result<(Graph, IdMap)> {
    let file = std::fs::File::open(path)?;
    parse_edge_list(file, policy)
}

// Numeric ids are ordered numerically (so files already using 0..n-1 keep their
// ids); anything else is ordered by first appearance.
fn build_id_map(raw: &[(String, String, f64)], all_numeric: bool) -> IdMap {
    let mut seen: HashMap<&str, ()> = HashMap::new();
    let mut order: Vec<String> = Vec::new();
    for (s, t, _) in raw {
        for id in [s, t] {
            if seen.insert(id.as_str(), ()).is_none() {
                order.push(id.clone());
            }
        }
    }
    if all_numeric {
        order.sort_by_key(|s| s.parse::<u64>().unwrap());
    }
    IdMap { original: order }
}

/// Configuration-model null matrix `P_ij = k_i k_j / 2m`.
pub fn config_null_matrix(g: &Graph) -> Result<DenseMatrix> {
    let two_m = g.total_weight();
    if !(two_m > 0.0) {
        return Err(Error::domain("graph has zero total weight"));
    }
    let k = g.strengths();
    Ok(DenseMatrix::from_fn(g.n(), |i, j| k[i] * k[j] / two_m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str, policy: DirectedPolicy) -> Result<Graph> {
        parse_edge_list(s.as_bytes(), policy).map(|(g, _)| g)
    }

    #[test]
    fn triangle() {
        let g = parse("0 1\n1 2\n2 0\n", DirectedPolicy::Symmetrize).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.strengths(), &[2.0, 2.0, 2.0]);
        assert_eq!(g.total_weight(), 6.0);
        let p = config_null_matrix(&g).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((p.get(i, j) - 2.0 / 3.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn both_orientations_are_summed_when_symmetrizing() {
        let g = parse("0 1 2.0\n1 0 2.0\n", DirectedPolicy::Symmetrize).unwrap();
        assert_eq!(g.edges(), &[(0, 1, 4.0)]);
        assert_eq!(g.total_weight(), 8.0);
    }

    #[test]
    fn reject_policy() {
        let g = parse("0 1 2.0\n1 0 2.0\n", DirectedPolicy::Reject).unwrap();
        assert_eq!(g.edges(), &[(0, 1, 2.0)]);
        let err = parse("0 1 2.0\n1 0 3.0\n", DirectedPolicy::Reject).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse("", DirectedPolicy::Symmetrize).unwrap_err(),
            Error::Domain(m) if m == "no edges"
        ));
        assert!(matches!(
            parse("0 1\n1 x y z\n", DirectedPolicy::Symmetrize).unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse("0 1 abc\n", DirectedPolicy::Symmetrize).unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse("0 1 -1\n", DirectedPolicy::Symmetrize).unwrap_err(),
            Error::Domain(_)
        ));
    }

    #[test]
    fn self_loop_counts_once() {
        let g = parse("0 0 3\n0 1\n", DirectedPolicy::Symmetrize).unwrap();
        assert_eq!(g.strengths(), &[4.0, 1.0]);
        assert_eq!(g.self_loop_weights(), &[3.0, 0.0]);
        assert_eq!(g.adjacency().get(0, 0), 3.0);
    }

    #[test]
    fn string_ids_keep_first_appearance_order() {
        let (g, ids) = parse_edge_list("b a\na c\n".as_bytes(), DirectedPolicy::Symmetrize).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(ids.original(0), "b");
        assert_eq!(ids.original(2), "c");
        assert_eq!(ids.to_csv(), "original_id,internal_id\nb,0\na,1\nc,2\n");
    }

    #[test]
    fn numeric_ids_sorted() {
        let (_, ids) = parse_edge_list("10 2\n2 007\n".as_bytes(), DirectedPolicy::Symmetrize).unwrap();
        assert_eq!(ids.original(0), "2");
        assert_eq!(ids.original(1), "7");
        assert_eq!(ids.original(2), "10");
    }

    #[test]
    fn null_matrix_examples() {
        let g = Graph::from_edges(6, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0)]).unwrap();
        let p = config_null_matrix(&g).unwrap();
        assert!(p.as_slice().iter().all(|&v| (v - 1.0 / 3.0).abs() < 1e-15));

        let star = Graph::from_edges(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap();
        let p = config_null_matrix(&star).unwrap();
        assert!((p.get(0, 1) - 0.5).abs() < 1e-15);
        assert!((p.get(1, 2) - 1.0 / 6.0).abs() < 1e-15);
        assert!((p.sum() - 6.0).abs() < 1e-12);

        let empty = Graph::from_edges(2, [(0, 1, 0.0)]).unwrap();
        assert!(config_null_matrix(&empty).is_err());
    }

    #[test]
    fn reserialization_is_stable() {
        let g = parse("0 1 0.1\n1 2 0.7\n2 0 1e-3\n2 2 5\n", DirectedPolicy::Symmetrize).unwrap();
        let again = parse(&g.to_edge_list(), DirectedPolicy::Symmetrize).unwrap();
        assert_eq!(g.strengths(), again.strengths());
    }
}
