//! Dominating a doubly dense set inside a single quasi-order.
//!
//! Setting: one color class `P` (transitive), sets `C ⊆ B ⊆ A`, `w_A` on `A`
//! giving every `x ∈ B` closed in-mass at least `ε`, and `w_B` on `B` doing
//! the same for every `y ∈ C`. Sampling `g(ε)` elements from `w_A` leaves
//! less than `ε` of `w_B` uncovered in expectation; any `y ∈ C` then has an
//! in-neighbor in `B` that is covered, and transitivity carries the
//! domination through to `y`.
//!
//! Instead of sampling we pick greedily. For the uncovered part `U` of `B`,
//!
//! ```text
//! Σ_a w_A(a) · w_B(U ∩ N^+(a)) = Σ_{x ∈ U} w_B(x) · w_A(N^-(x)) ≥ ε · w_B(U)
//! ```
//!
//! so the best single element covers at least an `ε` fraction of what is
//! left, and after `i` picks at most `(1 − ε)^i` remains: the same budget
//! `g(ε)` as the sampling argument, with no randomness.

use crate::digraph::{ColorScope, ColoredMultidigraph};
use crate::error::{Error, Result};
use crate::game::{distribution_slack, Distribution};
use crate::vertex_set::VertexSet;

/// `⌊ln ε / ln(1 − ε)⌋ + 1`, the smallest count with `(1 − ε)^g < ε`.
pub fn g_value(eps: f64) -> Result<usize> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!("eps = {eps} is not in (0, 1)")));
    }
    let ratio = eps.ln() / (1.0 - eps).ln();
    let mut g = ratio.floor() as usize + 1;
    // Round-off right at an integer ratio can land one short.
    while (1.0 - eps).powi(g as i32) >= eps {
        g += 1;
    }
    Ok(g)
}

/// Nested sets `C ⊆ B ⊆ A` with their density witnesses in one color.
#[derive(Debug, Clone)]
pub struct DenseTriple {
    pub color: usize,
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
    pub w_a: Distribution,
    pub w_b: Distribution,
    pub eps: f64,
}

impl DenseTriple {
    /// Checks nesting, supports, and both density conditions (up to `eta`).
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        d: &ColoredMultidigraph,
        color: usize,
        a: VertexSet,
        b: VertexSet,
        c: VertexSet,
        w_a: Distribution,
        w_b: Distribution,
        eps: f64,
        eta: f64,
    ) -> Result<Self> {
        d.check_scope(ColorScope::One(color))?;
        for s in [&a, &b, &c] {
            d.check_set(s)?;
        }
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::Domain(format!("eps = {eps} is not in (0, 1)")));
        }
        if !c.is_subset(&b) || !b.is_subset(&a) {
            return Err(Error::InvalidTriple("sets are not nested C ⊆ B ⊆ A".into()));
        }
        if (w_a.mass(&a) - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidTriple("w_A has mass outside A".into()));
        }
        if (w_b.mass(&b) - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidTriple("w_B has mass outside B".into()));
        }
        let scope = ColorScope::One(color);
        let outer = distribution_slack(d, &a, &w_a, scope, &b)?;
        if outer < eps - eta {
            return Err(Error::InvalidTriple(format!(
                "B is only {outer}-dense under w_A, need {eps}"
            )));
        }
        let inner = distribution_slack(d, &b, &w_b, scope, &c)?;
        if inner < eps - eta {
            return Err(Error::InvalidTriple(format!(
                "C is only {inner}-dense under w_B, need {eps}"
            )));
        }
        Ok(Self {
            color,
            a,
            b,
            c,
            w_a,
            w_b,
            eps,
        })
    }

    /// `w_B`-mass of `B` outside `N^+_color(set)`.
    pub fn uncovered_mass(&self, d: &ColoredMultidigraph, set: &VertexSet) -> Result<f64> {
        let covered = d.closed_out_neighborhood_set(ColorScope::One(self.color), set)?;
        Ok(self.w_b.mass(&self.b.difference(&covered)))
    }
}

#[derive(Debug, Clone)]
pub struct GreedyOutcome {
    pub set: VertexSet,
    /// Picks in order.
    pub picks: Vec<usize>,
    /// `trace[i]`: uncovered `w_B`-mass of `B` after `i` picks.
    pub uncovered_trace: Vec<f64>,
}

/// Derandomized extraction of at most `g(eps)` elements of `A` dominating
/// `C` in the triple's color. `eta` absorbs floating-point slack in the
/// per-step checks.
pub fn greedy_dense_dominators(
    d: &ColoredMultidigraph,
    t: &DenseTriple,
    eta: f64,
) -> Result<GreedyOutcome> {
    let scope = ColorScope::One(t.color);
    let budget = g_value(t.eps)?;
    let n = d.n();

    let mut uncovered = t.b.clone();
    let mut gain = vec![0.0; n];
    for y in &t.a {
        let reach = d.closed_out_neighborhood(scope, y);
        gain[y] = reach
            .iter()
            .filter(|&x| t.b.contains(x))
            .map(|x| t.w_b.weight(x))
            .sum();
    }
    let mut set = VertexSet::empty(n);
    let mut picks = Vec::new();
    let mut remaining = t.w_b.mass(&uncovered);
    let mut trace = vec![remaining];

    while remaining >= t.eps {
        let step = picks.len();
        let mut best: Option<(usize, f64)> = None;
        for y in &t.a {
            if set.contains(y) {
                continue;
            }
            if best.is_none_or(|(_, g)| gain[y] > g) {
                best = Some((y, gain[y]));
            }
        }
        let Some((y, best_gain)) = best else {
            return Err(Error::CoverageStalled {
                step,
                best: 0.0,
                uncovered: remaining,
                eps: t.eps,
            });
        };
        if best_gain < t.eps * remaining - eta {
            return Err(Error::CoverageStalled {
                step,
                best: best_gain,
                uncovered: remaining,
                eps: t.eps,
            });
        }
        set.insert(y);
        picks.push(y);

        let newly: Vec<usize> = d
            .closed_out_neighborhood(scope, y)
            .iter()
            .filter(|&x| uncovered.contains(x))
            .collect();
        for x in newly {
            uncovered.remove(x);
            let wx = t.w_b.weight(x);
            if wx == 0.0 {
                continue;
            }
            gain[x] -= wx;
            for z in d.in_neighbors(scope, x) {
                gain[z] -= wx;
            }
        }
        remaining = t.w_b.mass(&uncovered);
        trace.push(remaining);

        let limit = (1.0 - t.eps).powi(picks.len() as i32);
        if remaining > limit + eta {
            return Err(Error::DecayViolation {
                step: picks.len(),
                uncovered: remaining,
                limit,
            });
        }
        if picks.len() > budget {
            return Err(Error::Verification(vec![format!(
                "greedy exceeded its budget of {budget} picks"
            )]));
        }
    }

    let dominated = d.closed_out_neighborhood_set(scope, &set)?;
    let covered_b = t.b.difference(&uncovered);
    for y in &t.c {
        let reaches_covered = d
            .closed_in_neighborhood(scope, y, &t.b)?
            .intersects(&covered_b);
        if !reaches_covered || !dominated.contains(y) {
            return Err(Error::Verification(vec![format!(
                "vertex {y} of C is not dominated in color {}",
                t.color
            )]));
        }
    }
    Ok(GreedyOutcome {
        set,
        picks,
        uncovered_trace: trace,
    })
}
