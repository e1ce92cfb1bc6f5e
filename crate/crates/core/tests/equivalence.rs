use quasidom::{ColorScope, ColoredMultidigraph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_colored(rng: &mut ChaCha8Rng) -> ColoredMultidigraph {
    let n = rng.gen_range(1..=50);
    let k = rng.gen_range(1..=4);
    let p = rng.gen_range(0.0..0.15);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            for c in 0..k {
                if u != v && rng.gen_bool(p) {
                    arcs.push((u, v, c));
                }
            }
        }
    }
    ColoredMultidigraph::new(n, k, arcs).unwrap()
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> VertexSet {
    let p = rng.gen_range(0.0..0.3);
    VertexSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(p)))
}

#[test]
fn monochromatic_reach_is_closure_out_neighborhood() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let d = random_colored(&mut rng);
        let closed = d.transitive_closure_per_color();
        for _ in 0..20 {
            let s = random_subset(&mut rng, d.n());
            let reach = d.mono_reachable_set(&s).unwrap();
            let nbhd = closed
                .closed_out_neighborhood_set(ColorScope::All, &s)
                .unwrap();
            assert_eq!(reach, nbhd);
        }
    }
}

#[test]
fn closure_is_transitive_and_contains_the_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let d = random_colored(&mut rng);
        let closed = d.transitive_closure_per_color();
        assert!(closed.is_quasi_order_family().into_iter().all(|t| t));
        assert!(d.arcs().all(|(u, v, c)| closed.has_arc(u, v, c)));
        assert_eq!(
            closed
                .transitive_closure_per_color()
                .arcs()
                .collect::<Vec<_>>(),
            closed.arcs().collect::<Vec<_>>()
        );
    }
}

#[test]
fn induced_subgraphs_inherit_transitivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..50 {
        let d = random_colored(&mut rng).transitive_closure_per_color();
        let keep = random_subset(&mut rng, d.n());
        let sub = d.induced(&keep).unwrap();
        assert_eq!(sub.n(), keep.len());
        assert!(sub.is_quasi_order_family().into_iter().all(|t| t));
        let ids = keep.to_vec();
        for (u, v, c) in sub.arcs() {
            assert!(d.has_arc(ids[u], ids[v], c));
        }
    }
}
