//! Fractional domination as a zero-sum 0/1 matrix game.
//!
//! The column player places a distribution `w` on the vertices of a
//! subset `W`; the row player answers with a vertex `x ∈ W` and receives
//! `w(N^-(x) ∩ W)`. On a complete multidigraph the value of this game is
//! at least 1/2, so some `w` gives every closed in-neighborhood half of the
//! mass. We approximate the value with multiplicative-weights self-play and
//! fall back to an exact simplex solve when the duality gap does not close
//! within the iteration budget.

use crate::digraph::{ColorScope, ColoredMultidigraph};
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

const SUM_TOLERANCE: f64 = 1e-12;

/// A probability distribution over a vertex subset, stored densely over
/// the whole vertex range (zero outside the support).
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    support: VertexSet,
    weights: Vec<f64>,
}

impl Distribution {
    pub fn new(support: VertexSet, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != support.universe() {
            return Err(Error::InvalidDistribution(format!(
                "{} weights for a universe of {}",
                weights.len(),
                support.universe()
            )));
        }
        let mut sum = 0.0;
        for (v, &w) in weights.iter().enumerate() {
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::InvalidDistribution(format!(
                    "weight {w} at vertex {v}"
                )));
            }
            if w > 0.0 && !support.contains(v) {
                return Err(Error::InvalidDistribution(format!(
                    "positive weight at vertex {v} outside the support"
                )));
            }
            sum += w;
        }
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!("weights sum to {sum}")));
        }
        Ok(Self { support, weights })
    }

    /// Clips negatives to zero and rescales to total mass one.
    pub fn from_unnormalized(support: VertexSet, mut weights: Vec<f64>) -> Result<Self> {
        let mut sum = 0.0;
        for (v, w) in weights.iter_mut().enumerate() {
            if !support.contains(v) || !w.is_finite() || *w < 0.0 {
                *w = 0.0;
            }
            sum += *w;
        }
        if sum <= 0.0 {
            return Err(Error::InvalidDistribution("no positive mass".into()));
        }
        weights.iter_mut().for_each(|w| *w /= sum);
        Self::new(support, weights)
    }

    pub fn point_mass(universe: usize, v: usize) -> Self {
        let mut weights = vec![0.0; universe];
        weights[v] = 1.0;
        Self {
            support: VertexSet::singleton(universe, v),
            weights,
        }
    }

    pub fn uniform(support: &VertexSet) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::EmptySubset);
        }
        let share = 1.0 / support.len() as f64;
        let weights = (0..support.universe())
            .map(|v| if support.contains(v) { share } else { 0.0 })
            .collect();
        Ok(Self {
            support: support.clone(),
            weights,
        })
    }

    pub fn support(&self) -> &VertexSet {
        &self.support
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weight of `v`; zero outside the support (and outside the universe).
    #[inline]
    pub fn weight(&self, v: usize) -> f64 {
        self.weights.get(v).copied().unwrap_or(0.0)
    }

    pub fn mass(&self, set: &VertexSet) -> f64 {
        set.iter().map(|v| self.weight(v)).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SolverConfig {
    /// Additive tolerance on the 1/2 game-value guarantee.
    pub delta: f64,
    /// Budget for the multiplicative-weights rounds.
    pub max_iterations: usize,
    /// Slack for floating-point comparisons in verifiers.
    pub eta_numeric: f64,
    /// Finish with an exact simplex solve when the iterative scheme stalls.
    pub exact_fallback: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            delta: 1e-6,
            max_iterations: 1000,
            eta_numeric: 1e-9,
            exact_fallback: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 0.5) {
            return Err(Error::InvalidConfig(format!(
                "delta {} not in (0, 1/2)",
                self.delta
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig(
                "max_iterations must be at least 1".into(),
            ));
        }
        if !(self.eta_numeric >= 0.0 && self.eta_numeric.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "eta_numeric {}",
                self.eta_numeric
            )));
        }
        Ok(())
    }

    /// The guaranteed lower bound on every closed in-neighborhood mass.
    pub fn fractional_target(&self) -> f64 {
        0.5 - self.delta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethod {
    MultiplicativeWeights,
    Simplex,
}

#[derive(Debug, Clone)]
pub struct FractionalSolution {
    pub distribution: Distribution,
    /// Verified `min_x w(N^-(x) ∩ W)`.
    pub slack: f64,
    pub iterations: usize,
    pub method: SolveMethod,
}

/// `min_{x ∈ targets} w(N^-_scope(x) ∩ within)`, or `+∞` for no targets.
pub fn distribution_slack(
    d: &ColoredMultidigraph,
    within: &VertexSet,
    w: &Distribution,
    scope: ColorScope,
    targets: &VertexSet,
) -> Result<f64> {
    d.check_set(within)?;
    d.check_set(targets)?;
    d.check_scope(scope)?;
    let mut slack = f64::INFINITY;
    for x in targets {
        if !within.contains(x) {
            return Err(Error::NotInSubset { vertex: x });
        }
        let mass = w.weight(x)
            + d.in_neighbors(scope, x)
                .iter()
                .filter(|&y| within.contains(y))
                .map(|y| w.weight(y))
                .sum::<f64>();
        slack = slack.min(mass);
    }
    Ok(slack)
}

/// Finds `w` on `within` with `w(N^-(x) ∩ within) ≥ 1/2 − delta` for all
/// `x ∈ within`.
pub fn solve_fractional_domination(
    d: &ColoredMultidigraph,
    within: &VertexSet,
    cfg: &SolverConfig,
) -> Result<Distribution> {
    solve_fractional_domination_detailed(d, within, cfg).map(|s| s.distribution)
}

pub fn solve_fractional_domination_detailed(
    d: &ColoredMultidigraph,
    within: &VertexSet,
    cfg: &SolverConfig,
) -> Result<FractionalSolution> {
    cfg.validate()?;
    d.check_set(within)?;
    if within.is_empty() {
        return Err(Error::EmptySubset);
    }
    let game = LocalGame::new(d, within);
    let required = cfg.fractional_target();

    let mwu = game.multiplicative_weights(cfg.delta, cfg.max_iterations);
    let (local, iterations, method) = match mwu {
        Mwu::Converged {
            strategy,
            iterations,
        } => (strategy, iterations, SolveMethod::MultiplicativeWeights),
        Mwu::Stalled {
            strategy,
            iterations,
        } => {
            if cfg.exact_fallback {
                match game.simplex() {
                    Some((strategy, pivots)) => {
                        (strategy, iterations + pivots, SolveMethod::Simplex)
                    }
                    None => (strategy, iterations, SolveMethod::MultiplicativeWeights),
                }
            } else {
                (strategy, iterations, SolveMethod::MultiplicativeWeights)
            }
        }
    };

    let mut weights = vec![0.0; d.n()];
    for (i, &v) in game.members.iter().enumerate() {
        weights[v] = local[i];
    }
    let distribution = Distribution::from_unnormalized(within.clone(), weights)?;
    let slack = distribution_slack(d, within, &distribution, ColorScope::All, within)?;
    if slack < required {
        return Err(Error::SolverNonConvergence {
            achieved: slack,
            required,
            iterations,
        });
    }
    Ok(FractionalSolution {
        distribution,
        slack,
        iterations,
        method,
    })
}

enum Mwu {
    Converged {
        strategy: Vec<f64>,
        iterations: usize,
    },
    Stalled {
        strategy: Vec<f64>,
        iterations: usize,
    },
}

/// The game restricted to `within`, in local indices `0..m`.
struct LocalGame {
    members: Vec<usize>,
    /// `covers[y]`: rows `x` with `y ∈ N^-(x)`, i.e. `x ∈ N^+(y) ∩ W`.
    covers: Vec<Vec<usize>>,
}

impl LocalGame {
    fn new(d: &ColoredMultidigraph, within: &VertexSet) -> Self {
        let members = within.to_vec();
        let mut local = vec![usize::MAX; d.n()];
        for (i, &v) in members.iter().enumerate() {
            local[v] = i;
        }
        let covers = members
            .iter()
            .enumerate()
            .map(|(i, &y)| {
                let mut rows: Vec<usize> = d
                    .out_neighbors(ColorScope::All, y)
                    .iter()
                    .filter(|&x| within.contains(x))
                    .map(|x| local[x])
                    .collect();
                rows.push(i);
                rows.sort_unstable();
                rows
            })
            .collect();
        Self { members, covers }
    }

    fn size(&self) -> usize {
        self.members.len()
    }

    /// Index of the column maximizing the `p`-mass it covers; ties go to
    /// the smallest index.
    fn best_response(&self, p: &[f64]) -> (usize, f64) {
        let mut best = (0, f64::NEG_INFINITY);
        for (y, rows) in self.covers.iter().enumerate() {
            let score: f64 = rows.iter().map(|&x| p[x]).sum();
            if score > best.1 {
                best = (y, score);
            }
        }
        best
    }

    /// Row player runs Hedge over vertices, column player best-responds.
    /// The averaged column plays form the returned strategy; the averaged
    /// row strategy certifies an upper bound on the game value.
    fn multiplicative_weights(&self, delta: f64, max_iterations: usize) -> Mwu {
        let m = self.size();
        let schedule = ((m.max(2) as f64).ln() / (delta * delta)).ceil();
        let rounds = (schedule.min(max_iterations as f64) as usize).max(1);
        let eta = ((m.max(2) as f64).ln() / rounds as f64).sqrt();

        let mut hits = vec![0u64; m];
        let mut plays = vec![0u64; m];
        let mut row_avg = vec![0.0; m];
        let mut p = vec![0.0; m];

        for t in 1..=rounds {
            let min_hits = hits.iter().copied().min().unwrap_or(0);
            for (px, &h) in p.iter_mut().zip(&hits) {
                *px = (-eta * (h - min_hits) as f64).exp();
            }
            let z: f64 = p.iter().sum();
            for (px, acc) in p.iter_mut().zip(row_avg.iter_mut()) {
                *px /= z;
                *acc += *px;
            }

            let (y, _) = self.best_response(&p);
            plays[y] += 1;
            for &x in &self.covers[y] {
                hits[x] += 1;
            }

            if t % 8 == 0 || t == rounds {
                let lower = hits.iter().copied().min().unwrap_or(0) as f64 / t as f64;
                let avg: Vec<f64> = row_avg.iter().map(|a| a / t as f64).collect();
                let upper = self.best_response(&avg).1.min(1.0);
                if upper - lower <= delta || lower >= 1.0 {
                    return Mwu::Converged {
                        strategy: plays.iter().map(|&c| c as f64 / t as f64).collect(),
                        iterations: t,
                    };
                }
            }
        }
        Mwu::Stalled {
            strategy: plays.iter().map(|&c| c as f64 / rounds as f64).collect(),
            iterations: rounds,
        }
    }

    /// Exact optimum via the covering LP `min Σu s.t. Mu ≥ 1, u ≥ 0`,
    /// solved through its packing dual with a dense tableau and Bland's
    /// rule. The optimal `u` is read off the slack reduced costs.
    fn simplex(&self) -> Option<(Vec<f64>, usize)> {
        const TOL: f64 = 1e-12;
        let m = self.size();
        let cols = 2 * m;
        let width = cols + 1;
        // Row y: Σ_x M[x][y] z_x + s_y = 1.
        let mut tab = vec![0.0; m * width];
        for (y, rows) in self.covers.iter().enumerate() {
            for &x in rows {
                tab[y * width + x] = 1.0;
            }
            tab[y * width + m + y] = 1.0;
            tab[y * width + cols] = 1.0;
        }
        let mut obj = vec![0.0; width];
        obj[..m].iter_mut().for_each(|c| *c = -1.0);
        let mut basis: Vec<usize> = (m..cols).collect();

        let max_pivots = 100 * m + 1000;
        let mut pivots = 0;
        while let Some(enter) = (0..cols).find(|&j| obj[j] < -TOL) {
            if pivots >= max_pivots {
                return None;
            }
            let mut leave: Option<usize> = None;
            let mut best_ratio = f64::INFINITY;
            for r in 0..m {
                let a = tab[r * width + enter];
                if a > TOL {
                    let ratio = tab[r * width + cols] / a;
                    let better = match leave {
                        None => true,
                        Some(l) => {
                            ratio < best_ratio - TOL
                                || (ratio <= best_ratio + TOL && basis[r] < basis[l])
                        }
                    };
                    if better {
                        leave = Some(r);
                        best_ratio = ratio;
                    }
                }
            }
            // Unbounded cannot happen: every column has a diagonal one.
            let r = leave?;
            let pivot = tab[r * width + enter];
            for j in 0..width {
                tab[r * width + j] /= pivot;
            }
            let pivot_row: Vec<f64> = tab[r * width..(r + 1) * width].to_vec();
            for rr in 0..m {
                if rr == r {
                    continue;
                }
                let f = tab[rr * width + enter];
                if f != 0.0 {
                    for j in 0..width {
                        tab[rr * width + j] -= f * pivot_row[j];
                    }
                }
            }
            let f = obj[enter];
            for j in 0..width {
                obj[j] -= f * pivot_row[j];
            }
            basis[r] = enter;
            pivots += 1;
        }
        let u: Vec<f64> = (0..m).map(|y| obj[m + y].max(0.0)).collect();
        let total: f64 = u.iter().sum();
        if total.is_nan() || total <= 0.0 {
            return None;
        }
        Some((u.into_iter().map(|v| v / total).collect(), pivots))
    }
}
