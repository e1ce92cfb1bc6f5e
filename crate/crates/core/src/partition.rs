//! Density partitions and the depth-`k+1` partition tree.
//!
//! Given `w` on `S` with `w(N^-(x) ∩ S) ≥ k·ε` everywhere, every vertex has
//! some color `i` with `w(N^-_i(x) ∩ S) ≥ ε`, since `N^-(x)` is the union of
//! the `N^-_i(x)`. Grouping vertices by such a color gives one level of the
//! tree; repeating on every part (with a freshly solved distribution)
//! `k + 1` times gives the whole tree.

use serde::Serialize;

use crate::digraph::{ColorScope, ColoredMultidigraph};
use crate::error::{Error, Result};
use crate::game::{
    distribution_slack, solve_fractional_domination_detailed, Distribution, SolverConfig,
};
use crate::vertex_set::VertexSet;

/// Splits `set` into `k` parts: `x` goes to the smallest color `i` with
/// `w(N^-_i(x) ∩ set) ≥ eps`.
pub fn partition_once(
    d: &ColoredMultidigraph,
    set: &VertexSet,
    w: &Distribution,
    eps: f64,
) -> Result<Vec<VertexSet>> {
    d.check_set(set)?;
    let mut parts = vec![VertexSet::empty(d.n()); d.k()];
    for x in set {
        let mut masses = Vec::with_capacity(d.k());
        let mut chosen = None;
        for c in 0..d.k() {
            let nb = d.closed_in_neighborhood(ColorScope::One(c), x, set)?;
            let mass = w.mass(&nb);
            masses.push(mass);
            if mass >= eps {
                chosen = Some(c);
                break;
            }
        }
        match chosen {
            Some(c) => {
                parts[c].insert(x);
            }
            None => {
                return Err(Error::DensityViolation {
                    vertex: x,
                    masses,
                    threshold: eps,
                })
            }
        }
    }
    Ok(parts)
}

#[derive(Debug, Clone)]
pub struct PartitionNode {
    /// Colors `(j_1, …, j_l)` leading here; empty at the root.
    pub path: Vec<usize>,
    pub members: VertexSet,
    /// Distribution solved on `members`; absent at the leaves, which are
    /// never split.
    pub dist: Option<Distribution>,
    /// Verified fractional slack of `dist` on `members`.
    pub slack: Option<f64>,
    /// Nonempty children in increasing color order.
    pub children: Vec<PartitionNode>,
}

impl PartitionNode {
    pub fn depth(&self) -> usize {
        self.path.len()
    }

    /// Color of the arc into this node from its parent.
    pub fn color(&self) -> Option<usize> {
        self.path.last().copied()
    }

    pub fn child(&self, color: usize) -> Option<&PartitionNode> {
        self.children.iter().find(|c| c.color() == Some(color))
    }

    fn walk<'a>(&'a self, out: &mut Vec<&'a PartitionNode>) {
        out.push(self);
        for c in &self.children {
            c.walk(out);
        }
    }
}

#[derive(Debug, Clone)]
pub struct PartitionTree {
    pub root: PartitionNode,
    pub epsilon_eff: f64,
    pub k: usize,
    pub n: usize,
    pub solver_calls: usize,
}

impl PartitionTree {
    /// Depth of every leaf: one level per color plus one.
    pub fn depth(&self) -> usize {
        self.k + 1
    }

    /// All nodes in pre-order (children by color).
    pub fn nodes(&self) -> Vec<&PartitionNode> {
        let mut out = Vec::new();
        self.root.walk(&mut out);
        out
    }

    /// Leaves in lexicographic path order.
    pub fn leaves(&self) -> Vec<&PartitionNode> {
        self.nodes()
            .into_iter()
            .filter(|n| n.children.is_empty())
            .collect()
    }

    pub fn nodes_at_depth(&self, depth: usize) -> Vec<&PartitionNode> {
        self.nodes()
            .into_iter()
            .filter(|n| n.depth() == depth)
            .collect()
    }

    /// The chain root → … → node following `path`; `chain[l]` has depth `l`.
    pub fn chain(&self, path: &[usize]) -> Option<Vec<&PartitionNode>> {
        let mut chain = vec![&self.root];
        let mut node = &self.root;
        for &c in path {
            node = node.child(c)?;
            chain.push(node);
        }
        Some(chain)
    }

    /// Independent re-check of the structural and density invariants.
    /// Returns a list of violations (empty when the tree is sound).
    pub fn audit(&self, d: &ColoredMultidigraph, eta: f64) -> Vec<String> {
        let mut problems = Vec::new();
        if !self.root.members.is_full() || !self.root.path.is_empty() {
            problems.push("root is not the full vertex set".to_string());
        }
        for depth in 0..=self.depth() {
            let mut seen = VertexSet::empty(self.n);
            for node in self.nodes_at_depth(depth) {
                if seen.intersects(&node.members) {
                    problems.push(format!("overlapping members at depth {depth}"));
                }
                seen.union_with(&node.members);
            }
            if !seen.is_full() {
                problems.push(format!("depth {depth} does not cover every vertex"));
            }
        }
        for node in self.nodes() {
            if node.members.is_empty() {
                problems.push(format!("empty node {:?}", node.path));
            }
            if node.children.is_empty() && node.depth() != self.depth() {
                problems.push(format!("leaf {:?} at depth {}", node.path, node.depth()));
            }
            if node.children.is_empty() {
                continue;
            }
            let Some(dist) = &node.dist else {
                problems.push(format!("internal node {:?} has no distribution", node.path));
                continue;
            };
            let mut union = VertexSet::empty(self.n);
            for child in &node.children {
                let color = child.color().unwrap_or(usize::MAX);
                if child.path[..child.path.len() - 1] != node.path[..] || color >= self.k {
                    problems.push(format!("malformed child path {:?}", child.path));
                    continue;
                }
                union.union_with(&child.members);
                match distribution_slack(
                    d,
                    &node.members,
                    dist,
                    ColorScope::One(color),
                    &child.members,
                ) {
                    Ok(s) if s >= self.epsilon_eff - eta => {}
                    Ok(s) => problems.push(format!(
                        "node {:?}: density {s} below {}",
                        child.path, self.epsilon_eff
                    )),
                    Err(e) => problems.push(format!("node {:?}: {e}", child.path)),
                }
            }
            if union != node.members {
                problems.push(format!("children of {:?} do not partition it", node.path));
            }
        }
        problems
    }

    pub fn dump(&self, d: &ColoredMultidigraph) -> TreeDump {
        TreeDump {
            k: self.k,
            n: self.n,
            epsilon_eff: self.epsilon_eff,
            nodes: self
                .nodes()
                .into_iter()
                .map(|node| NodeDump {
                    path: node.path.clone(),
                    members: node.members.to_vec(),
                    slack: node.slack,
                    child_density: node
                        .children
                        .iter()
                        .map(|child| {
                            let color = child.color().expect("child has a color");
                            let density = node
                                .dist
                                .as_ref()
                                .and_then(|w| {
                                    distribution_slack(
                                        d,
                                        &node.members,
                                        w,
                                        ColorScope::One(color),
                                        &child.members,
                                    )
                                    .ok()
                                })
                                .unwrap_or(f64::NAN);
                            ChildDensity { color, density }
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Debug view of a tree: one entry per node.
#[derive(Debug, Clone, Serialize)]
pub struct TreeDump {
    pub k: usize,
    pub n: usize,
    pub epsilon_eff: f64,
    pub nodes: Vec<NodeDump>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeDump {
    pub path: Vec<usize>,
    pub members: Vec<usize>,
    pub slack: Option<f64>,
    pub child_density: Vec<ChildDensity>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChildDensity {
    pub color: usize,
    pub density: f64,
}

/// `(1/2 − δ)/k`.
pub fn effective_epsilon(k: usize, cfg: &SolverConfig) -> f64 {
    cfg.fractional_target() / k as f64
}

pub fn build_partition_tree(d: &ColoredMultidigraph, cfg: &SolverConfig) -> Result<PartitionTree> {
    cfg.validate()?;
    if d.n() == 0 {
        return Err(Error::EmptySubset);
    }
    let eps = effective_epsilon(d.k(), cfg);
    let mut calls = 0;
    let root = build_node(d, cfg, eps, Vec::new(), d.vertices(), &mut calls)?;
    Ok(PartitionTree {
        root,
        epsilon_eff: eps,
        k: d.k(),
        n: d.n(),
        solver_calls: calls,
    })
}

fn build_node(
    d: &ColoredMultidigraph,
    cfg: &SolverConfig,
    eps: f64,
    path: Vec<usize>,
    members: VertexSet,
    calls: &mut usize,
) -> Result<PartitionNode> {
    if path.len() == d.k() + 1 {
        return Ok(PartitionNode {
            path,
            members,
            dist: None,
            slack: None,
            children: Vec::new(),
        });
    }
    *calls += 1;
    let solution =
        solve_fractional_domination_detailed(d, &members, cfg).map_err(|e| e.at_path(&path))?;
    let parts =
        partition_once(d, &members, &solution.distribution, eps).map_err(|e| e.at_path(&path))?;
    let mut children = Vec::new();
    for (color, part) in parts.into_iter().enumerate() {
        if part.is_empty() {
            continue;
        }
        let mut child_path = path.clone();
        child_path.push(color);
        children.push(build_node(d, cfg, eps, child_path, part, calls)?);
    }
    Ok(PartitionNode {
        path,
        members,
        dist: Some(solution.distribution),
        slack: Some(solution.slack),
        children,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear_order(n: usize) -> ColoredMultidigraph {
        ColoredMultidigraph::new(
            n,
            1,
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j, 0))),
        )
        .unwrap()
    }

    #[test]
    fn partition_once_two_vertex_example() {
        let d = ColoredMultidigraph::new(2, 2, [(0, 1, 0), (1, 0, 1)]).unwrap();
        let all = d.vertices();
        let w = Distribution::uniform(&all).unwrap();
        let parts = partition_once(&d, &all, &w, 0.25).unwrap();
        assert_eq!(parts[0].to_vec(), vec![0, 1]);
        assert!(parts[1].is_empty());
    }

    #[test]
    fn partition_once_single_color_keeps_everything() {
        let d = linear_order(6);
        let all = d.vertices();
        let w = solve_fractional_domination_detailed(&d, &all, &SolverConfig::default())
            .unwrap()
            .distribution;
        let parts =
            partition_once(&d, &all, &w, effective_epsilon(1, &SolverConfig::default())).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0], all);
    }

    #[test]
    fn partition_once_single_vertex_lands_in_color_zero() {
        let d = ColoredMultidigraph::new(1, 3, []).unwrap();
        let all = d.vertices();
        let parts = partition_once(&d, &all, &Distribution::point_mass(1, 0), 0.4).unwrap();
        assert_eq!(parts[0].to_vec(), vec![0]);
        assert!(parts[1].is_empty() && parts[2].is_empty());
    }

    #[test]
    fn partition_once_reports_density_violation() {
        // No arcs: each vertex only holds its own mass.
        let d = ColoredMultidigraph::new(4, 2, []).unwrap();
        let all = d.vertices();
        let w = Distribution::uniform(&all).unwrap();
        match partition_once(&d, &all, &w, 0.3) {
            Err(Error::DensityViolation { vertex, masses, .. }) => {
                assert_eq!(vertex, 0);
                assert_eq!(masses, vec![0.25, 0.25]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tree_for_one_linear_order_is_a_path() {
        let d = linear_order(5);
        let cfg = SolverConfig::default();
        let tree = build_partition_tree(&d, &cfg).unwrap();
        assert_eq!(tree.solver_calls, 2);
        let leaves = tree.leaves();
        assert_eq!(leaves.len(), 1);
        assert_eq!(leaves[0].path, vec![0, 0]);
        assert!(leaves[0].members.is_full());
        assert!(tree.audit(&d, cfg.eta_numeric).is_empty());
    }

    #[test]
    fn tree_for_single_vertex() {
        let d = ColoredMultidigraph::new(1, 2, []).unwrap();
        let tree = build_partition_tree(&d, &SolverConfig::default()).unwrap();
        let leaves = tree.leaves();
        assert_eq!(leaves.len(), 1);
        assert_eq!(leaves[0].path, vec![0, 0, 0]);
        assert_eq!(tree.nodes().len(), 4);
        let chain = tree.chain(&[0, 0, 0]).unwrap();
        assert_eq!(chain.len(), 4);
        assert!(tree.chain(&[1]).is_none());
    }

    #[test]
    fn tree_errors_carry_path() {
        let d = ColoredMultidigraph::new(3, 2, []).unwrap();
        let err = build_partition_tree(&d, &SolverConfig::default()).unwrap_err();
        match err {
            Error::AtPath { path, source } => {
                assert!(path.is_empty());
                assert!(matches!(*source, Error::SolverNonConvergence { .. }));
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn audit_catches_tampering() {
        let d = ColoredMultidigraph::new(3, 2, [(0, 1, 0), (1, 2, 1), (0, 2, 1)]).unwrap();
        let cfg = SolverConfig::default();
        let mut tree = build_partition_tree(&d, &cfg).unwrap();
        assert!(tree.audit(&d, cfg.eta_numeric).is_empty());
        tree.root.children[0].members.insert(0);
        tree.root.children[0].members.insert(1);
        tree.root.children[0].members.insert(2);
        assert!(!tree.audit(&d, cfg.eta_numeric).is_empty());
    }
}
