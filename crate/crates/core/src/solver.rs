//! End-to-end construction of a bounded dominating set.
//!
//! Every leaf of the partition tree sits at the end of a color path of
//! length `k + 1`, so some color repeats at positions `i < l`. The ancestors
//! at depths `i − 1`, `i` and `l` then form a dense triple in that color and
//! the greedy of [`crate::dense`] dominates the depth-`l` set, which
//! contains the leaf, with at most `g(ε)` vertices. The union over all
//! leaves dominates everything.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::dense::{g_value, greedy_dense_dominators, DenseTriple, GreedyOutcome};
use crate::digraph::{ColorScope, ColoredMultidigraph, Witness};
use crate::error::{Error, Result};
use crate::game::{Distribution, SolverConfig};
use crate::partition::{build_partition_tree, PartitionTree};
use crate::vertex_set::VertexSet;

/// First pair `(i, l)`, `i < l`, with `path[i] == path[l]` (0-based).
pub fn find_repeat(path: &[usize], k: usize) -> Result<(usize, usize)> {
    if let Some(&c) = path.iter().find(|&&c| c >= k) {
        return Err(Error::ColorOutOfRange { color: c, k });
    }
    let found = (0..path.len()).find_map(|i| {
        (i + 1..path.len())
            .find(|&l| path[i] == path[l])
            .map(|l| (i, l))
    });
    let Some(pair) = found else {
        return Err(Error::NoRepeat {
            path: path.to_vec(),
        });
    };
    if path.len() != k + 1 {
        return Err(Error::Domain(format!(
            "path {path:?} has length {}, expected {}",
            path.len(),
            k + 1
        )));
    }
    Ok(pair)
}

/// `k^{k+1} · g(eps)` in checked 64-bit arithmetic.
pub fn bound_value(k: usize, eps: f64) -> Result<u64> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let g = g_value(eps)? as u64;
    let exp = u32::try_from(k + 1).map_err(|_| Error::Overflow { k })?;
    (k as u64)
        .checked_pow(exp)
        .and_then(|p| p.checked_mul(g))
        .ok_or(Error::Overflow { k })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeafReport {
    /// Leaf path `(j_1, …, j_{k+1})`, 0-based colors.
    pub path: Vec<usize>,
    /// Repeat positions `(i, l)`, 1-based.
    pub repeat: (usize, usize),
    /// Size of the set extracted for this leaf.
    pub dominators: usize,
    pub members: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominationCertificate {
    pub dominating_set: Vec<usize>,
    pub size: usize,
    pub bound: u64,
    pub epsilon_eff: f64,
    pub leaf_reports: Vec<LeafReport>,
    pub witnesses: Vec<Witness>,
}

/// A leaf's dense triple together with its provenance.
#[derive(Debug, Clone)]
pub struct LeafTriple {
    pub path: Vec<usize>,
    /// 0-based repeat positions.
    pub repeat: (usize, usize),
    pub leaf_members: VertexSet,
    pub triple: DenseTriple,
}

/// Builds the dense triple for every leaf, in lexicographic path order.
pub fn leaf_triples(
    d: &ColoredMultidigraph,
    tree: &PartitionTree,
    cfg: &SolverConfig,
) -> Result<Vec<LeafTriple>> {
    let k = tree.k;
    tree.leaves()
        .into_iter()
        .map(|leaf| {
            let (p, q) = find_repeat(&leaf.path, k)?;
            let chain = tree.chain(&leaf.path).expect("leaf path resolves");
            let a = chain[p];
            let b = chain[p + 1];
            let c = chain[q + 1];
            let w_holder = chain[q];
            let missing = |path: &[usize]| {
                Error::Verification(vec![format!("node {path:?} has no distribution")])
            };
            let w_a = a.dist.clone().ok_or_else(|| missing(&a.path))?;
            let w_b_src = w_holder
                .dist
                .as_ref()
                .ok_or_else(|| missing(&w_holder.path))?;
            // Zero-extend from the depth-(l−1) node to B.
            let w_b = Distribution::new(b.members.clone(), w_b_src.weights().to_vec())?;
            let triple = DenseTriple::new(
                d,
                leaf.path[p],
                a.members.clone(),
                b.members.clone(),
                c.members.clone(),
                w_a,
                w_b,
                tree.epsilon_eff,
                cfg.eta_numeric,
            )
            .map_err(|e| e.at_path(&leaf.path))?;
            Ok(LeafTriple {
                path: leaf.path.clone(),
                repeat: (p, q),
                leaf_members: leaf.members.clone(),
                triple,
            })
        })
        .collect()
}

/// Everything produced by a solve, for callers that want more than the
/// certificate.
#[derive(Debug, Clone)]
pub struct SolveRun {
    /// The digraph actually solved (closed per color if the input was not).
    pub digraph: ColoredMultidigraph,
    pub closed_input: bool,
    pub tree: PartitionTree,
    pub leaves: Vec<(LeafTriple, GreedyOutcome)>,
    pub certificate: DominationCertificate,
    pub timings: StageTimings,
}

/// Wall-clock time per stage. Not part of any reproducible output.
#[derive(Debug, Clone, Copy, Default)]
pub struct StageTimings {
    pub tree: Duration,
    pub leaves: Duration,
    pub verify: Duration,
}

/// Closes non-transitive color classes, as in the reduction from
/// edge-colored tournaments.
pub fn prepare(d: &ColoredMultidigraph) -> (ColoredMultidigraph, bool) {
    if d.is_quasi_order_family().into_iter().all(|t| t) {
        (d.clone(), false)
    } else {
        (d.transitive_closure_per_color(), true)
    }
}

pub fn solve(d: &ColoredMultidigraph, cfg: &SolverConfig) -> Result<DominationCertificate> {
    solve_detailed(d, cfg).map(|run| run.certificate)
}

pub fn solve_detailed(input: &ColoredMultidigraph, cfg: &SolverConfig) -> Result<SolveRun> {
    cfg.validate()?;
    let (d, closed_input) = prepare(input);
    if closed_input {
        log::warn!("color classes are not transitive; solving their transitive closures");
    }
    if let Some((u, v)) = d.find_non_adjacent_pair() {
        return Err(Error::NotComplete { u, v });
    }
    let mut timings = StageTimings::default();
    let clock = Instant::now();
    let tree = build_partition_tree(&d, cfg)?;
    timings.tree = clock.elapsed();
    let bound = bound_value(d.k(), tree.epsilon_eff)?;

    let clock = Instant::now();

    let mut union = VertexSet::empty(d.n());
    let mut reports = Vec::new();
    let mut leaves = Vec::new();
    for lt in leaf_triples(&d, &tree, cfg)? {
        let outcome = greedy_dense_dominators(&d, &lt.triple, cfg.eta_numeric)
            .map_err(|e| e.at_path(&lt.path))?;
        union.union_with(&outcome.set);
        reports.push(LeafReport {
            path: lt.path.clone(),
            repeat: (lt.repeat.0 + 1, lt.repeat.1 + 1),
            dominators: outcome.set.len(),
            members: lt.leaf_members.len(),
        });
        leaves.push((lt, outcome));
    }

    timings.leaves = clock.elapsed();

    let clock = Instant::now();
    let (dominating, witnesses) = d.dominating_witnesses(&union)?;
    if !dominating {
        return Err(Error::Verification(vec![
            "union of leaf dominators does not dominate".into(),
        ]));
    }
    let certificate = DominationCertificate {
        dominating_set: union.to_vec(),
        size: union.len(),
        bound,
        epsilon_eff: tree.epsilon_eff,
        leaf_reports: reports,
        witnesses,
    };
    let verdict = verify_certificate(&d, &certificate);
    if !verdict.ok {
        return Err(Error::Verification(verdict.reasons));
    }
    timings.verify = clock.elapsed();
    Ok(SolveRun {
        digraph: d,
        closed_input,
        tree,
        leaves,
        certificate,
        timings,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub ok: bool,
    pub reasons: Vec<String>,
}

/// Re-checks a certificate against `input` without trusting how it was
/// built. Non-transitive inputs are closed first, as in [`solve`].
pub fn verify_certificate(input: &ColoredMultidigraph, cert: &DominationCertificate) -> Verdict {
    let (d, _) = prepare(input);
    let n = d.n();
    let k = d.k();
    let mut reasons = Vec::new();

    let mut set = VertexSet::empty(n);
    let mut in_range = true;
    for &v in &cert.dominating_set {
        if v >= n {
            reasons.push(format!("dominating set vertex {v} out of range"));
            in_range = false;
        } else if !set.insert(v) {
            reasons.push(format!("vertex {v} listed twice"));
        }
    }
    if cert.size != cert.dominating_set.len() {
        reasons.push(format!(
            "size {} does not match the set of {} vertices",
            cert.size,
            cert.dominating_set.len()
        ));
    }

    match bound_value(k, cert.epsilon_eff) {
        Ok(b) if b != cert.bound => reasons.push(format!(
            "bound {} does not match k^(k+1)·g(eps) = {b}",
            cert.bound
        )),
        Ok(_) => {}
        Err(e) => reasons.push(format!("bound not computable: {e}")),
    }
    if !(cert.epsilon_eff > 0.0 && cert.epsilon_eff <= 0.5 / k as f64) {
        reasons.push(format!(
            "epsilon_eff {} outside (0, 1/2k]",
            cert.epsilon_eff
        ));
    }
    if cert.size as u64 > cert.bound {
        reasons.push("bound exceeded".into());
    }

    if in_range
        && !d
            .closed_out_neighborhood_set(ColorScope::All, &set)
            .map(|s| s.is_full())
            .unwrap_or(false)
    {
        reasons.push("set is not dominating".into());
    }

    let mut witnessed = vec![false; n];
    for w in &cert.witnesses {
        if w.vertex >= n || w.dominator >= n {
            reasons.push(format!("witness {w:?} out of range"));
            continue;
        }
        if std::mem::replace(&mut witnessed[w.vertex], true) {
            reasons.push(format!("vertex {} witnessed twice", w.vertex));
        }
        if !set.contains(w.dominator) {
            reasons.push(format!("witness dominator {} not in the set", w.dominator));
        }
        let arc_ok = match w.color {
            None => w.dominator == w.vertex,
            Some(c) => d.has_arc(w.dominator, w.vertex, c),
        };
        if !arc_ok {
            reasons.push(format!(
                "witness arc missing: {} -> {} in color {:?}",
                w.dominator, w.vertex, w.color
            ));
        }
    }
    if let Some(v) = witnessed.iter().position(|&seen| !seen) {
        reasons.push(format!("vertex {v} has no witness"));
    }

    let mut member_total = 0;
    let mut previous: Option<&Vec<usize>> = None;
    for report in &cert.leaf_reports {
        let (i, l) = report.repeat;
        let valid_path = report.path.len() == k + 1 && report.path.iter().all(|&c| c < k);
        let valid_repeat =
            valid_path && 1 <= i && i < l && l <= k + 1 && report.path[i - 1] == report.path[l - 1];
        if !valid_repeat {
            reasons.push(format!(
                "invalid repeat indices {:?} for path {:?}",
                report.repeat, report.path
            ));
        }
        if let Some(prev) = previous {
            if prev >= &report.path {
                reasons.push(format!("leaf paths out of order at {:?}", report.path));
            }
        }
        previous = Some(&report.path);
        if report.members == 0 {
            reasons.push(format!("empty leaf {:?}", report.path));
        }
        member_total += report.members;
    }
    if member_total != n {
        reasons.push(format!(
            "leaf reports cover {member_total} vertices, expected {n}"
        ));
    }

    Verdict {
        ok: reasons.is_empty(),
        reasons,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_repeat_examples() {
        let one_based = |p: &[usize], k| find_repeat(p, k).map(|(i, l)| (i + 1, l + 1)).unwrap();
        assert_eq!(one_based(&[0, 1, 0], 2), (1, 3));
        assert_eq!(one_based(&[0, 0, 1], 2), (1, 2));
        assert_eq!(one_based(&[2, 0, 1, 2, 1], 4), (1, 4));
    }

    #[test]
    fn find_repeat_rejects_malformed_paths() {
        assert!(matches!(
            find_repeat(&[0, 1], 2),
            Err(Error::NoRepeat { .. })
        ));
        assert!(matches!(find_repeat(&[1, 1], 2), Err(Error::Domain(_))));
        assert!(matches!(
            find_repeat(&[0, 5, 0], 2),
            Err(Error::ColorOutOfRange { .. })
        ));
    }

    #[test]
    fn bound_examples() {
        assert_eq!(bound_value(1, 0.5).unwrap(), 2);
        assert_eq!(bound_value(2, 0.25).unwrap(), 40);
        assert_eq!(bound_value(3, 1.0 / 6.0).unwrap(), 810);
        assert_eq!(bound_value(4, 0.125).unwrap(), 16384);
        assert!(matches!(
            bound_value(20, 0.025),
            Err(Error::Overflow { k: 20 })
        ));
        assert!(bound_value(0, 0.5).is_err());
    }

    fn linear_order(n: usize) -> ColoredMultidigraph {
        ColoredMultidigraph::new(
            n,
            1,
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j, 0))),
        )
        .unwrap()
    }

    #[test]
    fn single_order_picks_its_minimum() {
        let cert = solve(&linear_order(5), &SolverConfig::default()).unwrap();
        assert_eq!(cert.dominating_set, vec![0]);
        assert_eq!(cert.bound, 2);
        assert_eq!(cert.leaf_reports.len(), 1);
        assert_eq!(cert.leaf_reports[0].repeat, (1, 2));
    }

    #[test]
    fn single_vertex() {
        let d = ColoredMultidigraph::new(1, 3, []).unwrap();
        let cert = solve(&d, &SolverConfig::default()).unwrap();
        assert_eq!(cert.dominating_set, vec![0]);
        assert_eq!(cert.size, 1);
    }

    #[test]
    fn incomplete_input_is_rejected() {
        let d = ColoredMultidigraph::new(3, 1, [(0, 1, 0)]).unwrap();
        assert!(matches!(
            solve(&d, &SolverConfig::default()),
            Err(Error::NotComplete { u: 0, v: 2 })
        ));
    }

    #[test]
    fn colored_cycle_is_closed_first() {
        // Monochromatic 3-cycle with distinct colors per arc: not transitive
        // only if a color has a path; use one color so closure matters.
        let d = ColoredMultidigraph::new(3, 1, [(0, 1, 0), (1, 2, 0), (2, 0, 0)]).unwrap();
        let run = solve_detailed(&d, &SolverConfig::default()).unwrap();
        assert!(run.closed_input);
        assert_eq!(run.certificate.size, 1);
        assert!(verify_certificate(&d, &run.certificate).ok);
    }

    #[test]
    fn tampered_certificates_fail() {
        let d = crate::generate::gen_linear_orders(15, 2, 4)
            .unwrap()
            .to_digraph()
            .unwrap();
        let cert = solve(&d, &SolverConfig::default()).unwrap();
        assert!(verify_certificate(&d, &cert).ok);

        let mut bad = cert.clone();
        let w = bad
            .witnesses
            .iter_mut()
            .find(|w| matches!(w.color, Some(c) if !d.has_arc(w.dominator, w.vertex, 1 - c)))
            .expect("some witness arc exists in one color only");
        w.color = w.color.map(|c| 1 - c);
        let verdict = verify_certificate(&d, &bad);
        assert!(!verdict.ok);
        assert!(
            verdict
                .reasons
                .iter()
                .any(|r| r.contains("witness arc missing")),
            "{verdict:?}"
        );

        let mut bad = cert.clone();
        bad.size = bad.bound as usize + 1;
        let verdict = verify_certificate(&d, &bad);
        assert!(verdict.reasons.iter().any(|r| r == "bound exceeded"));

        let mut bad = cert;
        bad.leaf_reports[0].repeat = (2, 1);
        assert!(!verify_certificate(&d, &bad).ok);
    }
}
