#![allow(dead_code)]

use quasidom::{ColoredMultidigraph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Tournament on `n` vertices whose colors are the rounds of a round-robin
/// schedule. Every color class is a matching, so each is trivially
/// transitive, and the game values are far from 1.
pub fn matching_tournament(n: usize, seed: u64) -> ColoredMultidigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = n + n % 2;
    let rounds = m - 1;
    let mut arcs = Vec::new();
    for r in 0..rounds {
        let mut pairs = vec![(m - 1, r)];
        for i in 1..m / 2 {
            pairs.push(((r + i) % rounds, (r + rounds - i) % rounds));
        }
        for (a, b) in pairs {
            if a >= n || b >= n {
                continue;
            }
            arcs.push(if rng.gen() { (a, b, r) } else { (b, a, r) });
        }
    }
    ColoredMultidigraph::new(n, rounds, arcs).unwrap()
}

/// Smallest dominating set size by trying every subset in size order.
pub fn naive_gamma(d: &ColoredMultidigraph) -> usize {
    let n = d.n();
    assert!(n <= 16);
    (0u32..1 << n)
        .filter(|mask| {
            let set = VertexSet::from_indices(n, (0..n).filter(|&v| mask >> v & 1 == 1));
            d.is_dominating(&set).unwrap()
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}
