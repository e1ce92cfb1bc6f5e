//! Seeded instance generators. All use ChaCha8 seeded from a `u64`, so the
//! same parameters always give the same document.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::digraph::ColoredMultidigraph;
use crate::error::{Error, Result};
use crate::instance::{InstanceDocument, InstanceMeta};

fn meta(generator: &str, seed: u64, params: &[(&str, serde_json::Value)]) -> InstanceMeta {
    InstanceMeta {
        generator: generator.to_string(),
        params: params
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect::<BTreeMap<_, _>>(),
        seed: Some(seed),
    }
}

fn check_sizes(n: usize, k: usize) -> Result<()> {
    if n == 0 || k == 0 {
        return Err(Error::Domain(format!(
            "need n ≥ 1 and k ≥ 1, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

/// Arcs `perm[a] -> perm[b]` for all `a < b`.
fn order_arcs(perm: &[usize], color: usize) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
    (0..perm.len()).flat_map(move |a| (a + 1..perm.len()).map(move |b| (perm[a], perm[b], color)))
}

fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Uniform tournament with i.i.d. uniform arc colors, each color class then
/// transitively closed.
pub fn gen_colored_tournament(n: usize, k: usize, seed: u64) -> Result<InstanceDocument> {
    check_sizes(n, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            let forward: bool = rng.gen();
            let color = rng.gen_range(0..k);
            arcs.push(if forward {
                (u, v, color)
            } else {
                (v, u, color)
            });
        }
    }
    let d = ColoredMultidigraph::new(n, k, arcs)?.transitive_closure_per_color();
    Ok(InstanceDocument::from_digraph(
        &d,
        meta("tournament", seed, &[("n", json!(n)), ("k", json!(k))]),
    ))
}

/// `k` independent uniformly random total orders.
pub fn gen_linear_orders(n: usize, k: usize, seed: u64) -> Result<InstanceDocument> {
    check_sizes(n, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::with_capacity(k * n * n.saturating_sub(1) / 2);
    for color in 0..k {
        let perm = random_permutation(n, &mut rng);
        arcs.extend(order_arcs(&perm, color));
    }
    let d = ColoredMultidigraph::new(n, k, arcs)?;
    Ok(InstanceDocument::from_digraph(
        &d,
        meta("linear", seed, &[("n", json!(n)), ("k", json!(k))]),
    ))
}

/// Color 0 is a random total order (which makes the result complete); each
/// other color keeps every pair of a random total order independently with
/// probability `density`, then is transitively closed.
pub fn gen_random_posets(n: usize, k: usize, seed: u64, density: f64) -> Result<InstanceDocument> {
    check_sizes(n, k)?;
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Domain(format!("density {density} not in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    let perm = random_permutation(n, &mut rng);
    arcs.extend(order_arcs(&perm, 0));
    for color in 1..k {
        let perm = random_permutation(n, &mut rng);
        for arc in order_arcs(&perm, color) {
            if rng.gen_bool(density) {
                arcs.push(arc);
            }
        }
    }
    let d = ColoredMultidigraph::new(n, k, arcs)?.transitive_closure_per_color();
    Ok(InstanceDocument::from_digraph(
        &d,
        meta(
            "poset",
            seed,
            &[
                ("n", json!(n)),
                ("k", json!(k)),
                ("density", json!(density)),
            ],
        ),
    ))
}
