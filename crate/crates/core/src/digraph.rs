//! Complete multidigraphs whose arc set is split into `k` color classes.
//!
//! Vertices are `0..n`, colors are `0..k`. A color class is read as the
//! strict part of a quasi-order: an arc `u -> v` of color `c` means
//! `u <= v` in order `c`. Loops are never stored; every neighborhood
//! operation is *closed*, i.e. it always contains the queried vertex.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Which arcs a neighborhood query looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColorScope {
    All,
    One(usize),
}

/// A witness that `vertex` is dominated: either it is in the set itself
/// (`color == None`) or `dominator -> vertex` is an arc of `color`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Witness {
    pub vertex: usize,
    pub dominator: usize,
    pub color: Option<usize>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct ColoredMultidigraph {
    n: usize,
    k: usize,
    /// `out_adj[c][u]`: strict out-neighbors of `u` in color `c`.
    out_adj: Vec<Vec<VertexSet>>,
    in_adj: Vec<Vec<VertexSet>>,
    /// Unions over all colors.
    out_all: Vec<VertexSet>,
    in_all: Vec<VertexSet>,
}

impl std::fmt::Debug for ColoredMultidigraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ColoredMultidigraph")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

impl ColoredMultidigraph {
    /// Builds a digraph from `(u, v, color)` triples. Repeated triples
    /// collapse (set semantics).
    pub fn new<I>(n: usize, k: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        if k == 0 {
            return Err(Error::Domain("color count must be at least 1".into()));
        }
        let mut out_adj = vec![vec![VertexSet::empty(n); n]; k];
        for (u, v, c) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if c >= k {
                return Err(Error::ColorOutOfRange { color: c, k });
            }
            if u == v {
                return Err(Error::SelfLoop {
                    vertex: u,
                    color: c,
                });
            }
            out_adj[c][u].insert(v);
        }
        Ok(Self::from_out_adjacency(n, k, out_adj))
    }

    fn from_out_adjacency(n: usize, k: usize, out_adj: Vec<Vec<VertexSet>>) -> Self {
        let mut in_adj = vec![vec![VertexSet::empty(n); n]; k];
        let mut out_all = vec![VertexSet::empty(n); n];
        let mut in_all = vec![VertexSet::empty(n); n];
        for (c, rows) in out_adj.iter().enumerate() {
            for (u, row) in rows.iter().enumerate() {
                out_all[u].union_with(row);
                for v in row {
                    in_adj[c][v].insert(u);
                    in_all[v].insert(u);
                }
            }
        }
        Self {
            n,
            k,
            out_adj,
            in_adj,
            out_all,
            in_all,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_arc(&self, u: usize, v: usize, color: usize) -> bool {
        color < self.k && u < self.n && self.out_adj[color][u].contains(v)
    }

    /// All arcs as `(u, v, color)`, sorted ascending.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (0..self.n).flat_map(move |v| {
                (0..self.k)
                    .filter(move |&c| self.out_adj[c][u].contains(v))
                    .map(move |c| (u, v, c))
            })
        })
    }

    pub fn arc_count(&self) -> usize {
        self.out_adj
            .iter()
            .flat_map(|rows| rows.iter().map(VertexSet::len))
            .sum()
    }

    /// Strict out-neighbors (no `u` itself).
    pub fn out_neighbors(&self, scope: ColorScope, u: usize) -> &VertexSet {
        match scope {
            ColorScope::All => &self.out_all[u],
            ColorScope::One(c) => &self.out_adj[c][u],
        }
    }

    /// Strict in-neighbors (no `v` itself).
    pub fn in_neighbors(&self, scope: ColorScope, v: usize) -> &VertexSet {
        match scope {
            ColorScope::All => &self.in_all[v],
            ColorScope::One(c) => &self.in_adj[c][v],
        }
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_scope(&self, scope: ColorScope) -> Result<()> {
        match scope {
            ColorScope::One(c) if c >= self.k => Err(Error::ColorOutOfRange {
                color: c,
                k: self.k,
            }),
            _ => Ok(()),
        }
    }

    pub(crate) fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.universe() != self.n {
            Err(Error::UniverseMismatch {
                expected: self.n,
                found: set.universe(),
            })
        } else {
            Ok(())
        }
    }

    /// `({x} ∪ {y : y -> x in scope}) ∩ within`.
    pub fn closed_in_neighborhood(
        &self,
        scope: ColorScope,
        x: usize,
        within: &VertexSet,
    ) -> Result<VertexSet> {
        self.check_vertex(x)?;
        self.check_scope(scope)?;
        self.check_set(within)?;
        if !within.contains(x) {
            return Err(Error::NotInSubset { vertex: x });
        }
        let mut out = self.in_neighbors(scope, x).intersection(within);
        out.insert(x);
        Ok(out)
    }

    /// Closed out-neighborhood of a single vertex, unrestricted.
    pub fn closed_out_neighborhood(&self, scope: ColorScope, u: usize) -> VertexSet {
        let mut out = self.out_neighbors(scope, u).clone();
        out.insert(u);
        out
    }

    /// `N^+(S)`: union of closed out-neighborhoods over `S`.
    pub fn closed_out_neighborhood_set(
        &self,
        scope: ColorScope,
        set: &VertexSet,
    ) -> Result<VertexSet> {
        self.check_scope(scope)?;
        self.check_set(set)?;
        let mut out = set.clone();
        for u in set {
            out.union_with(self.out_neighbors(scope, u));
        }
        Ok(out)
    }

    /// True iff every pair of distinct vertices carries an arc in some
    /// direction and some color.
    pub fn is_complete(&self) -> bool {
        self.find_non_adjacent_pair().is_none()
    }

    pub fn find_non_adjacent_pair(&self) -> Option<(usize, usize)> {
        for u in 0..self.n {
            let adjacent = self.out_all[u].union(&self.in_all[u]);
            if adjacent.len() + 1 < self.n {
                let missing = (u + 1..self.n).find(|&v| !adjacent.contains(v));
                if let Some(v) = missing {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// Per color: whether the class is transitive.
    pub fn is_quasi_order_family(&self) -> Vec<bool> {
        (0..self.k).map(|c| self.is_transitive(c)).collect()
    }

    pub fn is_transitive(&self, color: usize) -> bool {
        let rows = &self.out_adj[color];
        (0..self.n).all(|u| {
            rows[u].iter().all(|v| {
                // (u,v),(v,u) closes a 2-circuit; the implied loop is implicit.
                let mut reach = rows[v].clone();
                reach.remove(u);
                reach.is_subset(&rows[u])
            })
        })
    }

    pub fn is_complete_quasi_order_family(&self) -> bool {
        self.is_complete() && self.is_quasi_order_family().into_iter().all(|t| t)
    }

    /// Replaces each color class by its transitive closure.
    pub fn transitive_closure_per_color(&self) -> ColoredMultidigraph {
        let out_adj = self
            .out_adj
            .iter()
            .map(|rows| {
                let mut rows = rows.clone();
                // Warshall over bit rows.
                for mid in 0..self.n {
                    let via = rows[mid].clone();
                    for row in rows.iter_mut() {
                        if row.contains(mid) {
                            row.union_with(&via);
                        }
                    }
                }
                for (u, row) in rows.iter_mut().enumerate() {
                    row.remove(u);
                }
                rows
            })
            .collect();
        Self::from_out_adjacency(self.n, self.k, out_adj)
    }

    /// Restriction of every color class to `keep`, relabelled to
    /// `0..keep.len()` in increasing order.
    pub fn induced(&self, keep: &VertexSet) -> Result<ColoredMultidigraph> {
        self.check_set(keep)?;
        let order = keep.to_vec();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in order.iter().enumerate() {
            local[v] = i;
        }
        let arcs = self
            .arcs()
            .filter(|&(u, v, _)| keep.contains(u) && keep.contains(v))
            .map(|(u, v, c)| (local[u], local[v], c));
        Self::new(order.len(), self.k, arcs)
    }

    /// Reports whether `set` dominates and, for every dominated vertex, one
    /// witness. Vertices of `set` witness themselves; otherwise the
    /// smallest dominator, then the smallest color, is chosen.
    pub fn dominating_witnesses(&self, set: &VertexSet) -> Result<(bool, Vec<Witness>)> {
        self.check_set(set)?;
        let mut witnesses = Vec::with_capacity(self.n);
        for v in 0..self.n {
            if set.contains(v) {
                witnesses.push(Witness {
                    vertex: v,
                    dominator: v,
                    color: None,
                });
                continue;
            }
            let found = self.in_all[v]
                .iter()
                .filter(|&s| set.contains(s))
                .find_map(|s| {
                    (0..self.k)
                        .find(|&c| self.out_adj[c][s].contains(v))
                        .map(|c| (s, c))
                });
            if let Some((s, c)) = found {
                witnesses.push(Witness {
                    vertex: v,
                    dominator: s,
                    color: Some(c),
                });
            }
        }
        Ok((witnesses.len() == self.n, witnesses))
    }

    pub fn is_dominating(&self, set: &VertexSet) -> Result<bool> {
        Ok(self
            .closed_out_neighborhood_set(ColorScope::All, set)?
            .is_full())
    }

    /// Vertices reachable from `set` by a monochromatic directed path,
    /// together with `set` itself. Works on any colored digraph.
    pub fn mono_reachable_set(&self, set: &VertexSet) -> Result<VertexSet> {
        self.check_set(set)?;
        let mut reached = set.clone();
        for c in 0..self.k {
            let mut seen = set.clone();
            let mut queue: VecDeque<usize> = set.iter().collect();
            while let Some(u) = queue.pop_front() {
                for v in &self.out_adj[c][u] {
                    if seen.insert(v) {
                        queue.push_back(v);
                    }
                }
            }
            reached.union_with(&seen);
        }
        Ok(reached)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle3() -> ColoredMultidigraph {
        ColoredMultidigraph::new(3, 1, [(0, 1, 0), (1, 2, 0), (2, 0, 0)]).unwrap()
    }

    fn set(n: usize, xs: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, xs.iter().copied())
    }

    #[test]
    fn closed_in_neighborhood_examples() {
        let d = cycle3();
        let nb = d
            .closed_in_neighborhood(ColorScope::All, 1, &d.vertices())
            .unwrap();
        assert_eq!(nb.to_vec(), vec![0, 1]);

        let single = ColoredMultidigraph::new(1, 1, []).unwrap();
        let nb = single
            .closed_in_neighborhood(ColorScope::All, 0, &single.vertices())
            .unwrap();
        assert_eq!(nb.to_vec(), vec![0]);

        let two = ColoredMultidigraph::new(2, 2, [(0, 1, 0), (1, 0, 1)]).unwrap();
        let nb = two
            .closed_in_neighborhood(ColorScope::One(0), 0, &two.vertices())
            .unwrap();
        assert_eq!(nb.to_vec(), vec![0]);
    }

    #[test]
    fn closed_in_neighborhood_rejects_vertex_outside_within() {
        let d = cycle3();
        let err = d.closed_in_neighborhood(ColorScope::All, 2, &set(3, &[0, 1]));
        assert!(matches!(err, Err(Error::NotInSubset { vertex: 2 })));
    }

    #[test]
    fn closed_out_neighborhood_set_examples() {
        let d = cycle3();
        let all = ColorScope::All;
        assert_eq!(
            d.closed_out_neighborhood_set(all, &set(3, &[0]))
                .unwrap()
                .to_vec(),
            vec![0, 1]
        );
        assert_eq!(
            d.closed_out_neighborhood_set(all, &set(3, &[0, 2]))
                .unwrap()
                .to_vec(),
            vec![0, 1, 2]
        );
        assert!(d
            .closed_out_neighborhood_set(all, &set(3, &[]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn completeness_examples() {
        assert!(!ColoredMultidigraph::new(2, 1, []).unwrap().is_complete());
        assert!(cycle3().is_complete());
        assert!(ColoredMultidigraph::new(1, 1, []).unwrap().is_complete());
    }

    #[test]
    fn transitivity_examples() {
        let path = ColoredMultidigraph::new(4, 1, [(1, 2, 0), (2, 3, 0)]).unwrap();
        assert_eq!(path.is_quasi_order_family(), vec![false]);
        let closed = ColoredMultidigraph::new(4, 1, [(1, 2, 0), (2, 3, 0), (1, 3, 0)]).unwrap();
        assert_eq!(closed.is_quasi_order_family(), vec![true]);
        let one = ColoredMultidigraph::new(4, 1, [(1, 2, 0)]).unwrap();
        assert_eq!(one.is_quasi_order_family(), vec![true]);
        // a 2-circuit is a quasi-order (equivalent elements)
        let circ = ColoredMultidigraph::new(2, 1, [(0, 1, 0), (1, 0, 0)]).unwrap();
        assert_eq!(circ.is_quasi_order_family(), vec![true]);
    }

    #[test]
    fn closure_examples() {
        let path = ColoredMultidigraph::new(4, 1, [(1, 2, 0), (2, 3, 0)]).unwrap();
        let closed = path.transitive_closure_per_color();
        assert!(closed.has_arc(1, 3, 0));
        assert_eq!(closed.arc_count(), 3);

        let closed = cycle3().transitive_closure_per_color();
        assert_eq!(closed.arc_count(), 6);
        assert_eq!(closed.is_quasi_order_family(), vec![true]);
        assert_eq!(closed.transitive_closure_per_color(), closed);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            ColoredMultidigraph::new(2, 1, [(0, 0, 0)]),
            Err(Error::SelfLoop { .. })
        ));
        assert!(matches!(
            ColoredMultidigraph::new(2, 1, [(0, 2, 0)]),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            ColoredMultidigraph::new(2, 1, [(0, 1, 1)]),
            Err(Error::ColorOutOfRange { .. })
        ));
        assert!(ColoredMultidigraph::new(2, 0, []).is_err());
    }

    #[test]
    fn witnesses_examples() {
        let d = cycle3();
        let (ok, w) = d.dominating_witnesses(&set(3, &[0])).unwrap();
        assert!(!ok);
        assert!(w.iter().all(|w| w.vertex != 2));

        let (ok, w) = d.dominating_witnesses(&set(3, &[0, 2])).unwrap();
        assert!(ok);
        assert_eq!(w.len(), 3);
        assert_eq!(
            w[1],
            Witness {
                vertex: 1,
                dominator: 0,
                color: Some(0)
            }
        );

        let (ok, w) = d.dominating_witnesses(&d.vertices()).unwrap();
        assert!(ok);
        assert!(w
            .iter()
            .all(|w| w.dominator == w.vertex && w.color.is_none()));
    }

    #[test]
    fn mono_reachability_examples() {
        let two_color = ColoredMultidigraph::new(3, 2, [(0, 1, 0), (1, 2, 1)]).unwrap();
        assert_eq!(
            two_color
                .mono_reachable_set(&set(3, &[0]))
                .unwrap()
                .to_vec(),
            vec![0, 1]
        );
        let one_color = ColoredMultidigraph::new(3, 2, [(0, 1, 0), (1, 2, 0)]).unwrap();
        assert_eq!(
            one_color
                .mono_reachable_set(&set(3, &[0]))
                .unwrap()
                .to_vec(),
            vec![0, 1, 2]
        );
        assert!(one_color
            .mono_reachable_set(&one_color.vertices())
            .unwrap()
            .is_full());
    }

    fn arb_digraph(max_n: usize, max_k: usize) -> impl Strategy<Value = ColoredMultidigraph> {
        (1..=max_n, 1..=max_k).prop_flat_map(|(n, k)| {
            proptest::collection::vec((0..n, 0..n, 0..k), 0..(3 * n)).prop_map(move |arcs| {
                ColoredMultidigraph::new(n, k, arcs.into_iter().filter(|(u, v, _)| u != v)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn closure_is_idempotent_and_transitive(d in arb_digraph(20, 3)) {
            let once = d.transitive_closure_per_color();
            prop_assert!(once.is_quasi_order_family().into_iter().all(|t| t));
            prop_assert_eq!(once.transitive_closure_per_color(), once);
        }

        #[test]
        fn out_neighborhood_is_monotone(d in arb_digraph(20, 3), bits in any::<u64>()) {
            let n = d.n();
            let small = VertexSet::from_indices(n, (0..n).filter(|i| bits >> (i % 64) & 1 == 1 && i % 3 == 0));
            let big = VertexSet::from_indices(n, (0..n).filter(|i| bits >> (i % 64) & 1 == 1));
            prop_assert!(small.is_subset(&big));
            let a = d.closed_out_neighborhood_set(ColorScope::All, &small).unwrap();
            let b = d.closed_out_neighborhood_set(ColorScope::All, &big).unwrap();
            prop_assert!(a.is_subset(&b));
        }

        #[test]
        fn witnesses_agree_with_out_neighborhood(d in arb_digraph(15, 3), bits in any::<u64>()) {
            let n = d.n();
            let s = VertexSet::from_indices(n, (0..n).filter(|i| bits >> i & 1 == 1));
            let (ok, witnesses) = d.dominating_witnesses(&s).unwrap();
            let covered = d.closed_out_neighborhood_set(ColorScope::All, &s).unwrap();
            prop_assert_eq!(ok, covered.is_full());
            prop_assert_eq!(witnesses.len(), covered.len());
            for w in witnesses {
                prop_assert!(s.contains(w.dominator));
                match w.color {
                    None => prop_assert_eq!(w.dominator, w.vertex),
                    Some(c) => prop_assert!(d.has_arc(w.dominator, w.vertex, c)),
                }
            }
        }
    }
}
