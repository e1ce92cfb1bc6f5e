//! Independent baselines: exact domination number by enumeration and a
//! Monte-Carlo run of the random-sampling argument behind the dense
//! dominator.

use rand::distributions::{Distribution as _, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dense::{g_value, DenseTriple};
use crate::digraph::{ColorScope, ColoredMultidigraph};
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

pub const DEFAULT_VERTEX_CAP: usize = 30;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactResult {
    /// The domination number, or `size_cap + 1` as a lower bound when
    /// `timed_out` is set.
    pub gamma: usize,
    pub optimal_set: Vec<usize>,
    pub nodes_explored: u64,
    pub timed_out: bool,
}

/// Smallest dominating set by cardinality-increasing enumeration over
/// 64-bit coverage masks. Sets larger than `size_cap` are not searched.
pub fn exact_gamma(
    d: &ColoredMultidigraph,
    size_cap: usize,
    vertex_cap: usize,
) -> Result<ExactResult> {
    let n = d.n();
    if n > vertex_cap || n > 64 {
        return Err(Error::TooLarge {
            n,
            cap: vertex_cap.min(64),
        });
    }
    if n == 0 {
        return Ok(ExactResult {
            gamma: 0,
            optimal_set: Vec::new(),
            nodes_explored: 0,
            timed_out: false,
        });
    }
    let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let masks: Vec<u64> = (0..n)
        .map(|u| {
            d.closed_out_neighborhood(ColorScope::All, u)
                .iter()
                .fold(0u64, |m, v| m | 1 << v)
        })
        .collect();

    let greedy = greedy_cover(&masks, full);
    let mut search = Search {
        masks: &masks,
        full,
        max_popcount: masks.iter().map(|m| m.count_ones()).max().unwrap_or(0),
        chosen: Vec::new(),
        nodes: 0,
    };
    let limit = size_cap.min(greedy.len().saturating_sub(1));
    for size in 1..=limit {
        if search.descend(0, n, size) {
            let mut set = search.chosen.clone();
            set.sort_unstable();
            return Ok(ExactResult {
                gamma: size,
                optimal_set: set,
                nodes_explored: search.nodes,
                timed_out: false,
            });
        }
    }
    if greedy.len() <= size_cap {
        let mut set = greedy;
        set.sort_unstable();
        Ok(ExactResult {
            gamma: set.len(),
            optimal_set: set,
            nodes_explored: search.nodes,
            timed_out: false,
        })
    } else {
        Ok(ExactResult {
            gamma: size_cap + 1,
            optimal_set: Vec::new(),
            nodes_explored: search.nodes,
            timed_out: true,
        })
    }
}

fn greedy_cover(masks: &[u64], full: u64) -> Vec<usize> {
    let mut covered = 0u64;
    let mut picks = Vec::new();
    while covered != full {
        let (best, _) = masks
            .iter()
            .enumerate()
            .map(|(v, m)| (v, (m & !covered).count_ones()))
            .fold((0, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
        covered |= masks[best];
        picks.push(best);
    }
    picks
}

struct Search<'a> {
    masks: &'a [u64],
    full: u64,
    max_popcount: u32,
    chosen: Vec<usize>,
    nodes: u64,
}

impl Search<'_> {
    /// Picks `remaining` more vertices below `below`, largest first, so
    /// combinations come out in colexicographic order.
    fn descend(&mut self, covered: u64, below: usize, remaining: usize) -> bool {
        self.nodes += 1;
        if covered == self.full {
            return true;
        }
        if remaining == 0 || below < remaining {
            return false;
        }
        let missing = (self.full & !covered).count_ones();
        if missing > remaining as u32 * self.max_popcount {
            return false;
        }
        // Some pick must cover the lowest uncovered vertex.
        let target = (self.full & !covered).trailing_zeros();
        for v in (remaining - 1)..below {
            let any_cover = (0..=v).any(|u| self.masks[u] >> target & 1 == 1);
            if !any_cover {
                continue;
            }
            self.chosen.push(v);
            if self.descend(covered | self.masks[v], v, remaining - 1) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloSummary {
    pub trials: usize,
    pub seed: u64,
    pub samples_per_trial: usize,
    pub mean_uncovered: f64,
    /// Sample standard deviation of the uncovered mass.
    pub std_uncovered: f64,
    /// Fraction of trials leaving less than `eps` uncovered.
    pub success_fraction: f64,
    /// Fraction of trials whose sample dominates all of `C`.
    pub dominated_fraction: f64,
}

impl MonteCarloSummary {
    /// Standard error of `mean_uncovered`.
    pub fn standard_error(&self) -> f64 {
        self.std_uncovered / (self.trials as f64).sqrt()
    }
}

/// Draws `g(eps)` vertices i.i.d. from `w_A` per trial. Trial `t` uses
/// ChaCha8 seeded with `seed` on stream `t`, so any trial can be replayed
/// on its own.
pub fn monte_carlo_lemma2(
    d: &ColoredMultidigraph,
    t: &DenseTriple,
    trials: usize,
    seed: u64,
) -> Result<MonteCarloSummary> {
    if trials == 0 {
        return Err(Error::Domain("trials must be positive".into()));
    }
    let samples = g_value(t.eps)?;
    let scope = ColorScope::One(t.color);
    let support: Vec<usize> = t.a.iter().filter(|&v| t.w_a.weight(v) > 0.0).collect();
    let sampler = WeightedIndex::new(support.iter().map(|&v| t.w_a.weight(v)))
        .map_err(|e| Error::InvalidDistribution(e.to_string()))?;

    let mut uncovered_masses = Vec::with_capacity(trials);
    let mut successes = 0usize;
    let mut dominated = 0usize;
    let mut picked = VertexSet::empty(d.n());
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        picked.clear();
        for _ in 0..samples {
            picked.insert(support[sampler.sample(&mut rng)]);
        }
        let covered = d.closed_out_neighborhood_set(scope, &picked)?;
        let uncovered = t.w_b.mass(&t.b.difference(&covered));
        if uncovered < t.eps {
            successes += 1;
        }
        if t.c.is_subset(&covered) {
            dominated += 1;
        }
        uncovered_masses.push(uncovered);
    }
    let mean = uncovered_masses.iter().sum::<f64>() / trials as f64;
    let var = if trials > 1 {
        uncovered_masses
            .iter()
            .map(|x| (x - mean).powi(2))
            .sum::<f64>()
            / (trials - 1) as f64
    } else {
        0.0
    };
    Ok(MonteCarloSummary {
        trials,
        seed,
        samples_per_trial: samples,
        mean_uncovered: mean,
        std_uncovered: var.sqrt(),
        success_fraction: successes as f64 / trials as f64,
        dominated_fraction: dominated as f64 / trials as f64,
    })
}
