//! The resolution-parameter range and strategies for sampling it.
//!
//! For each ordered pair `i ≠ j` the interaction `A_ij − γP_ij` changes sign at
//! `γ = A_ij / P_ij`. These crossing points are the events of the graph. Between
//! two consecutive events the sets of positive (`E⁺`) and negative (`E⁻`) pairs
//! are frozen, so
//!
//! ```text
//! β(γ) = Σ_{E⁻} |A − γP| / Σ_{i≠j} |A − γP|
//! ```
//!
//! is a ratio of two affine functions of `γ` on every inter-event interval and
//! can be inverted in closed form. Pairs sitting exactly on an event
//! contribute zero and are counted in `E⁻`.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::modularity::{iterated_louvain, QualityProblem};
use crate::partition::Partition;
use crate::rng::Seed;
use rayon::prelude::*;
use std::fmt::Write as _;

/// Largest event `max_{i≠j} A_ij / P_ij`; above it every pair is repulsive.
pub fn gamma_max(g: &Graph) -> Result<f64> {
    let two_m = g.total_weight();
    let k = g.strengths();
    let best = g
        .edges()
        .iter()
        .filter(|&&(i, j, w)| i != j && w > 0.0 && k[i] * k[j] > 0.0)
        .map(|&(i, j, w)| w * two_m / (k[i] * k[j]))
        .fold(f64::NEG_INFINITY, f64::max);
    if best.is_finite() {
        Ok(best)
    } else {
        Err(Error::domain("graph has no weighted edge between distinct nodes"))
    }
}

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Default)]
struct CompensatedSum {
    sum: f64,
    c: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.c
    }
}

/// A distinct crossing point with the summed pair weights of every ordered
/// pair crossing there.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Event {
    pub gamma: f64,
    pub a: f64,
    pub p: f64,
    pub multiplicity: usize,
}

/// Precomputed sums that make `β(γ)` and its inverse cheap to evaluate.
#[derive(Clone, Debug)]
pub struct EventProfile {
    events: Vec<Event>,
    // Sums over events [0, k): below_a[k], below_p[k]; over [k, len): above_a[k], above_p[k].
    below_a: Vec<f64>,
    below_p: Vec<f64>,
    above_a: Vec<f64>,
    above_p: Vec<f64>,
    // P mass of pairs with A_ij = 0 (always repulsive for γ > 0)
    zero_p: f64,
    beta_at_event: Vec<f64>,
    gamma_max: f64,
}

impl EventProfile {
    pub fn build(g: &Graph) -> Result<Self> {
        let gmax = gamma_max(g)?;
        let two_m = g.total_weight();
        let k = g.strengths();

        let mut raw: Vec<(f64, f64, f64)> = g
            .edges()
            .iter()
            .filter(|&&(i, j, w)| i != j && w > 0.0 && k[i] * k[j] > 0.0)
            .map(|&(i, j, w)| {
                let p = k[i] * k[j] / two_m;
                (w / p, w, p)
            })
            .collect();
        raw.sort_by(|x, y| x.0.total_cmp(&y.0));

        let mut events: Vec<Event> = Vec::new();
        for (gamma, a, p) in raw {
            // each undirected edge stands for two ordered pairs
            match events.last_mut() {
                Some(e) if e.gamma == gamma => {
                    e.a += 2.0 * a;
                    e.p += 2.0 * p;
                    e.multiplicity += 2;
                }
                _ => events.push(Event {
                    gamma,
                    a: 2.0 * a,
                    p: 2.0 * p,
                    multiplicity: 2,
                }),
            }
        }

        // P mass over all ordered pairs i≠j, minus the mass on edges.
        let mut total_p = CompensatedSum::default();
        let sum_k: f64 = k.iter().sum();
        let sum_k2: f64 = k.iter().map(|x| x * x).sum();
        total_p.add((sum_k * sum_k - sum_k2) / two_m);
        let mut edge_p = CompensatedSum::default();
        for e in &events {
            edge_p.add(e.p);
        }
        let zero_p = (total_p.value() - edge_p.value()).max(0.0);

        let m = events.len();
        let mut below_a = vec![0.0; m + 1];
        let mut below_p = vec![0.0; m + 1];
        let (mut sa, mut sp) = (CompensatedSum::default(), CompensatedSum::default());
        for (idx, e) in events.iter().enumerate() {
            sa.add(e.a);
            sp.add(e.p);
            below_a[idx + 1] = sa.value();
            below_p[idx + 1] = sp.value();
        }
        let mut above_a = vec![0.0; m + 1];
        let mut above_p = vec![0.0; m + 1];
        let (mut sa, mut sp) = (CompensatedSum::default(), CompensatedSum::default());
        for (idx, e) in events.iter().enumerate().rev() {
            sa.add(e.a);
            sp.add(e.p);
            above_a[idx] = sa.value();
            above_p[idx] = sp.value();
        }

        let mut profile = EventProfile {
            events,
            below_a,
            below_p,
            above_a,
            above_p,
            zero_p,
            beta_at_event: Vec::new(),
            gamma_max: gmax,
        };
        profile.beta_at_event = profile
            .events
            .iter()
            .enumerate()
            .map(|(idx, e)| profile.beta_with(idx + 1, e.gamma))
            .collect();
        if let Some(last) = profile.beta_at_event.last_mut() {
            *last = 1.0;
        }
        Ok(profile)
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn gamma_max(&self) -> f64 {
        self.gamma_max
    }

    /// `β` at each distinct event.
    pub fn beta_at_events(&self) -> &[f64] {
        &self.beta_at_event
    }

    // β(γ) with events [0, split) repulsive.
    fn beta_with(&self, split: usize, gamma: f64) -> f64 {
        let a_minus = self.below_a[split];
        let p_minus = self.zero_p + self.below_p[split];
        let a_plus = self.above_a[split];
        let p_plus = self.above_p[split];
        let neg = (gamma * p_minus - a_minus).max(0.0);
        let pos = (a_plus - gamma * p_plus).max(0.0);
        if neg + pos == 0.0 {
            0.0
        } else {
            neg / (neg + pos)
        }
    }

    /// Relative magnitude of repulsive interactions at `γ`.
    pub fn beta(&self, gamma: f64) -> f64 {
        if gamma <= 0.0 {
            return 0.0;
        }
        if gamma >= self.gamma_max {
            return 1.0;
        }
        let split = self.events.partition_point(|e| e.gamma <= gamma);
        self.beta_with(split, gamma)
    }

    /// Inverse of [`beta`](Self::beta): the smallest `γ ≥ 0` with `β(γ) = beta`.
    pub fn gamma_of_beta(&self, beta: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::domain(format!("beta = {beta} is outside [0, 1]")));
        }
        if beta == 0.0 {
            return Ok(0.0);
        }
        if beta == 1.0 {
            return Ok(self.gamma_max);
        }
        // first event with β(event) ≥ beta; the answer lies in (e_{k-1}, e_k]
        let k = self.beta_at_event.partition_point(|&b| b < beta);
        let hi = self.events[k].gamma;
        if self.beta_at_event[k] == beta {
            return Ok(hi);
        }
        let lo = if k == 0 { 0.0 } else { self.events[k - 1].gamma };
        let a_minus = self.below_a[k];
        let p_minus = self.zero_p + self.below_p[k];
        let a_plus = self.above_a[k];
        let p_plus = self.above_p[k];
        let num = a_minus + beta * (a_plus - a_minus);
        let den = p_minus + beta * (p_plus - p_minus);
        let gamma = num / den;
        Ok(if gamma.is_finite() { gamma.clamp(lo, hi) } else { hi })
    }

    /// `gamma,beta` table at `γ = 0` and every event, for plotting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("gamma,beta\n0.0,0.0\n");
        for (e, b) in self.events.iter().zip(&self.beta_at_event) {
            let _ = writeln!(out, "{:?},{:?}", e.gamma, b);
        }
        out
    }
}

/// How resolution values are spread over `[γ_min, γ_max]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaStrategy {
    /// Equally spaced in `β`.
    Event,
    Linear,
    Exponential,
}

impl std::str::FromStr for GammaStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "event" => Ok(GammaStrategy::Event),
            "linear" => Ok(GammaStrategy::Linear),
            "exponential" | "log" => Ok(GammaStrategy::Exponential),
            other => Err(Error::domain(format!("unknown strategy {other:?}"))),
        }
    }
}

/// Positive stand-in for `γ_min = 0` under exponential sampling: the smallest
/// event divided by 1000.
pub fn exponential_floor(g: &Graph) -> Result<f64> {
    let profile = EventProfile::build(g)?;
    Ok(profile.events[0].gamma / 1000.0)
}

/// `count` resolution values in `range`, sorted ascending.
pub fn sample_gammas(g: &Graph, strategy: GammaStrategy, count: usize, range: (f64, f64)) -> Result<Vec<f64>> {
    let (lo, hi) = range;
    if count < 2 {
        return Err(Error::domain("at least two gamma samples are required"));
    }
    if !(lo < hi) {
        return Err(Error::domain(format!("empty gamma range [{lo}, {hi}]")));
    }
    let steps = (count - 1) as f64;
    let mut out: Vec<f64> = match strategy {
        GammaStrategy::Linear => (0..count)
            .map(|i| lo + (hi - lo) * (i as f64 / steps))
            .collect(),
        GammaStrategy::Exponential => {
            if lo <= 0.0 {
                return Err(Error::domain(format!(
                    "exponential sampling needs gamma_min > 0 (got {lo}); \
                     clamp it to the smallest event / 1000 (--clamp-exponential) or use event sampling"
                )));
            }
            let (l0, l1) = (lo.ln(), hi.ln());
            (0..count)
                .map(|i| (l0 + (l1 - l0) * (i as f64 / steps)).exp())
                .collect()
        }
        GammaStrategy::Event => {
            let profile = EventProfile::build(g)?;
            let b0 = profile.beta(lo);
            let b1 = profile.beta(hi);
            (0..count)
                .map(|i| {
                    let b = b0 + (b1 - b0) * (i as f64 / steps);
                    profile.gamma_of_beta(b.clamp(0.0, 1.0)).map(|x| x.clamp(lo, hi))
                })
                .collect::<Result<_>>()?
        }
    };
    if strategy != GammaStrategy::Event {
        out[0] = lo;
        out[count - 1] = hi;
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Parameters of [`estimate_gamma_min`].
#[derive(Clone, Copy, Debug)]
pub struct GammaMinOptions {
    pub samples_per_iter: usize,
    /// Step below the current estimate; `None` means `1e-3 · γ_max`.
    pub epsilon: Option<f64>,
    pub max_iter: usize,
}

impl Default for GammaMinOptions {
    fn default() -> Self {
        GammaMinOptions {
            samples_per_iter: 10,
            epsilon: None,
            max_iter: 100,
        }
    }
}

/// Intra-cluster sums `(Σ A_ij δ, Σ P_ij δ)` over all `i, j`.
fn internal_sums(g: &Graph, p: &Partition) -> (f64, f64) {
    let labels = p.labels();
    let mut a_in = 0.0;
    for &(i, j, w) in g.edges() {
        if labels[i] == labels[j] {
            a_in += if i == j { w } else { 2.0 * w };
        }
    }
    let mut cluster_k = vec![0.0; p.n_clusters()];
    for (i, &k) in g.strengths().iter().enumerate() {
        cluster_k[labels[i]] += k;
    }
    let p_in = cluster_k.iter().map(|k| k * k).sum::<f64>() / g.total_weight();
    (a_in, p_in)
}

/// The `γ` above which `p` scores higher than the all-in-one partition, or
/// `None` for the all-in-one partition itself.
pub fn crossing_with_trivial(g: &Graph, p: &Partition) -> Option<f64> {
    let two_m = g.total_weight();
    let (a_in, p_in) = internal_sums(g, p);
    let den = two_m - p_in;
    if p.is_all_in_one() || den <= 0.0 {
        return None;
    }
    Some(((two_m - a_in) / den).max(0.0))
}

/// Iterative estimate of the largest `γ` at which the all-in-one partition is
/// still optimal.
///
/// Starts from the crossing of the all-singleton partition (an upper bound),
/// samples partitions at `γ = 1`, lowers the estimate to the smallest crossing
/// found, and resamples just below it until only the trivial partition comes
/// back. If the first sample is already trivial the search moves upward by
/// bisection between 1 and the current bound.
pub fn estimate_gamma_min(g: &Graph, opts: GammaMinOptions, seed: Seed) -> Result<f64> {
    if opts.samples_per_iter == 0 {
        return Err(Error::domain("samples_per_iter must be at least 1"));
    }
    let gmax = gamma_max(g)?;
    let eps = opts.epsilon.unwrap_or(1e-3 * gmax);
    if !(eps > 0.0) {
        return Err(Error::domain("epsilon must be positive"));
    }
    let n = g.n();
    let mut best = crossing_with_trivial(g, &Partition::singletons(n)).unwrap_or(gmax);

    let sample = |gamma: f64, iter: usize| -> Result<Option<f64>> {
        let problem = QualityProblem::modularity(g, gamma)?;
        let stream = seed.child(iter as u64);
        let parts: Vec<Partition> = (0..opts.samples_per_iter)
            .into_par_iter()
            .map(|s| iterated_louvain(&problem, stream.child(s as u64)))
            .collect::<Result<_>>()?;
        Ok(parts
            .iter()
            .filter_map(|p| crossing_with_trivial(g, p))
            .min_by(f64::total_cmp))
    };

    let mut gamma = 1.0f64.min(best);
    let mut lower = f64::NEG_INFINITY;
    let mut descending = false;
    for iter in 0..opts.max_iter {
        match sample(gamma, iter)? {
            Some(c) => {
                descending = true;
                best = best.min(c);
                gamma = best - eps;
            }
            None if descending => return Ok(best),
            None => {
                // nothing non-trivial yet: bisect upward towards the bound
                lower = lower.max(gamma);
                if best - lower <= eps {
                    return Ok(best);
                }
                gamma = 0.5 * (lower + best);
            }
        }
    }
    Err(Error::GammaMinNotConverged {
        iterations: opts.max_iter,
        best,
    })
}
