//! Partition similarity: entropy, mutual information, NMI and AMI (max
//! normalization). Natural logarithms throughout.

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rng::Seed;
use rand::seq::SliceRandom;
use serde::Serialize;

/// Cluster-pair overlap counts of two partitions of the same nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContingencyTable {
    pub counts: Vec<Vec<usize>>,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub n: usize,
}

impl ContingencyTable {
    pub fn new(g: &Partition, h: &Partition) -> Result<Self> {
        if g.n() != h.n() {
            return Err(Error::domain(format!(
                "partitions cover different node counts ({} vs {})",
                g.n(),
                h.n()
            )));
        }
        let mut counts = vec![vec![0usize; h.n_clusters()]; g.n_clusters()];
        for (&a, &b) in g.labels().iter().zip(h.labels()) {
            counts[a][b] += 1;
        }
        Ok(ContingencyTable {
            counts,
            rows: g.sizes().to_vec(),
            cols: h.sizes().to_vec(),
            n: g.n(),
        })
    }
}

fn entropy_of_sizes(sizes: &[usize], n: usize) -> f64 {
    let n = n as f64;
    -sizes
        .iter()
        .filter(|&&s| s > 0)
        .map(|&s| {
            let p = s as f64 / n;
            p * p.ln()
        })
        .sum::<f64>()
}

/// `H(g) = −Σ_c (n_c/n) ln(n_c/n)`.
pub fn entropy(p: &Partition) -> f64 {
    entropy_of_sizes(p.sizes(), p.n())
}

// Both orderings of the arguments evaluate the same table so results are
// exactly symmetric.
fn ordered<'a>(g: &'a Partition, h: &'a Partition) -> (&'a Partition, &'a Partition) {
    if g <= h {
        (g, h)
    } else {
        (h, g)
    }
}

fn mi_of_table(t: &ContingencyTable) -> f64 {
    let n = t.n as f64;
    let mut mi = 0.0;
    for (c, row) in t.counts.iter().enumerate() {
        for (d, &ncd) in row.iter().enumerate() {
            if ncd > 0 {
                let ncd = ncd as f64;
                mi += ncd / n * (n * ncd / (t.rows[c] as f64 * t.cols[d] as f64)).ln();
            }
        }
    }
    mi.max(0.0)
}

pub fn mutual_information(g: &Partition, h: &Partition) -> Result<f64> {
    let (g, h) = ordered(g, h);
    Ok(mi_of_table(&ContingencyTable::new(g, h)?))
}

fn log_factorials(n: usize) -> Vec<f64> {
    let mut lf = vec![0.0; n + 1];
    for k in 1..=n {
        lf[k] = lf[k - 1] + (k as f64).ln();
    }
    lf
}

/// Exact `E[I(g, h)]` over random contingency tables with the marginals of
/// `g` and `h` (hypergeometric overlap of each cluster pair).
pub fn expected_mi(g: &Partition, h: &Partition) -> Result<f64> {
    let (g, h) = ordered(g, h);
    let t = ContingencyTable::new(g, h)?;
    Ok(expected_mi_of_marginals(&t.rows, &t.cols, t.n))
}

fn expected_mi_of_marginals(rows: &[usize], cols: &[usize], n: usize) -> f64 {
    let lf = log_factorials(n);
    let nf = n as f64;
    let mut emi = 0.0;
    for &a in rows {
        for &b in cols {
            let lo = (a + b).saturating_sub(n).max(1);
            let hi = a.min(b);
            // log of a! b! (n−a)! (n−b)! / n!
            let base = lf[a] + lf[b] + lf[n - a] + lf[n - b] - lf[n];
            for k in lo..=hi {
                let log_p = base - lf[k] - lf[a - k] - lf[b - k] - lf[n + k - a - b];
                let kf = k as f64;
                emi += kf / nf * (nf * kf / (a as f64 * b as f64)).ln() * log_p.exp();
            }
        }
    }
    emi
}

/// Monte-Carlo estimate of `E[I]` from random relabelings of `h`, for cases
/// where the exact triple sum is too slow.
pub fn expected_mi_monte_carlo(g: &Partition, h: &Partition, samples: usize, seed: Seed) -> Result<f64> {
    let (g, h) = ordered(g, h);
    ContingencyTable::new(g, h)?;
    if samples == 0 {
        return Err(Error::domain("need at least one sample"));
    }
    let mut rng = seed.rng();
    let mut labels = h.labels().to_vec();
    let mut sum = 0.0;
    for _ in 0..samples {
        labels.shuffle(&mut rng);
        sum += mutual_information(g, &Partition::from_labels(&labels))?;
    }
    Ok(sum / samples as f64)
}

/// `I / max{H(g), H(h)}`.
pub fn nmi_max(g: &Partition, h: &Partition) -> Result<f64> {
    let i = mutual_information(g, h)?;
    let hmax = entropy(g).max(entropy(h));
    if hmax == 0.0 {
        return if g == h {
            Ok(1.0)
        } else {
            Err(Error::domain("NMI undefined: both partitions have zero entropy"))
        };
    }
    Ok((i / hmax).clamp(0.0, 1.0))
}

/// All comparison measures for one pair of partitions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub mi: f64,
    pub expected_mi: f64,
    pub nmi_max: f64,
    pub ami_max: f64,
    pub entropy_g: f64,
    pub entropy_h: f64,
    /// AMI denominator vanished for distinct partitions; `ami_max` was set to 0.
    pub degenerate: bool,
}

pub fn compare(g: &Partition, h: &Partition) -> Result<Comparison> {
    let (a, b) = ordered(g, h);
    let t = ContingencyTable::new(a, b)?;
    let mi = mi_of_table(&t);
    let emi = expected_mi_of_marginals(&t.rows, &t.cols, t.n);
    let (hg, hh) = (entropy(g), entropy(h));
    let hmax = hg.max(hh);
    let nmi = if hmax == 0.0 { 1.0 } else { (mi / hmax).clamp(0.0, 1.0) };
    let denom = hmax - emi;
    let mut degenerate = false;
    let ami = if g == h {
        1.0
    } else if denom.abs() <= 1e-15 * hmax.max(1.0) {
        log::warn!("AMI denominator is zero for distinct partitions; reporting 0");
        degenerate = true;
        0.0
    } else {
        ((mi - emi) / denom).min(1.0)
    };
    Ok(Comparison {
        mi,
        expected_mi: emi,
        nmi_max: nmi,
        ami_max: ami,
        entropy_g: hg,
        entropy_h: hh,
        degenerate,
    })
}

/// `(I − E[I]) / (max{H(g), H(h)} − E[I])`; 1 for identical partitions, 0
/// (with a warning) when the denominator vanishes otherwise. May be negative.
pub fn ami_max(g: &Partition, h: &Partition) -> Result<f64> {
    Ok(compare(g, h)?.ami_max)
}
