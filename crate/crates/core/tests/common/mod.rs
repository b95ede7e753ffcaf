#![allow(dead_code)]

use carcass::graph::{Edge, MultiGraph, SteinerContext};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random connected multigraph with `n` in 3..=8, at most 14 distinct edges,
/// multiplicities in 1..=3 and a Steiner set of size 2..=n.
///
/// One seed in three starts from a uniform cycle so that skeleton cycles and
/// projections through cycle edges show up often, one in three from one or
/// two non-Steiner hubs with Steiner leaves, and the rest from a random
/// spanning tree. Half of the tree-based instances use multiplicity 1
/// throughout.
pub fn random_instance(seed: u64) -> SteinerContext {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..=8usize);
    let mut edges: Vec<Edge> = Vec::new();
    let mut min_k = 2;
    let has = |u: usize, v: usize, edges: &Vec<Edge>| edges.iter().any(|e| (e.u, e.v) == (u.min(v), u.max(v)));
    if seed.is_multiple_of(3) && n >= 4 {
        let ring = rng.gen_range(4..=n);
        let w = rng.gen_range(1..=2);
        min_k = 4;
        for i in 0..ring {
            let (u, v) = (i, (i + 1) % ring);
            edges.push(Edge { u: u.min(v), v: u.max(v), mult: w });
        }
        for v in ring..n {
            let u = rng.gen_range(0..v);
            edges.push(Edge { u, v, mult: rng.gen_range(1..=3) });
            if rng.gen_bool(0.5) {
                let x = rng.gen_range(0..v);
                if !has(x, v, &edges) {
                    edges.push(Edge { u: x, v, mult: rng.gen_range(1..=3) });
                }
            }
        }
    } else if seed % 3 == 1 && n >= 5 {
        // Non-Steiner hubs with Steiner leaves around them.
        let hubs = rng.gen_range(1..=2usize);
        if hubs == 2 {
            edges.push(Edge { u: 0, v: 1, mult: rng.gen_range(1..=3) });
        }
        for v in hubs..n {
            edges.push(Edge { u: rng.gen_range(0..hubs), v, mult: 1 });
        }
        let mut leaves: Vec<usize> = (hubs..n).collect();
        leaves.shuffle(&mut rng);
        let k = rng.gen_range(2..=leaves.len());
        let steiner: Vec<usize> = leaves.into_iter().take(k).collect();
        return SteinerContext::new(MultiGraph::new(n, edges).unwrap(), steiner).unwrap();
    } else {
        let uniform = rng.gen_bool(0.5);
        let mult = |rng: &mut ChaCha8Rng| if uniform { 1 } else { rng.gen_range(1..=3) };
        for v in 1..n {
            let u = rng.gen_range(0..v);
            let m = mult(&mut rng);
            edges.push(Edge { u, v, mult: m });
        }
        let mut others: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !has(u, v, &edges)).collect();
        others.shuffle(&mut rng);
        let extra = rng.gen_range(0..=(14 - edges.len()).min(others.len()));
        for (u, v) in others.into_iter().take(extra) {
            let m = mult(&mut rng);
            edges.push(Edge { u, v, mult: m });
        }
    }
    let mut vs: Vec<usize> = (0..n).collect();
    vs.shuffle(&mut rng);
    let k = rng.gen_range(min_k.min(n)..=n);
    SteinerContext::new(MultiGraph::new(n, edges).unwrap(), vs.into_iter().take(k)).unwrap()
}

/// Number of random instances; `CARCASS_SEEDS` overrides the default of 300.
pub fn random_count() -> u64 {
    std::env::var("CARCASS_SEEDS").ok().and_then(|s| s.parse().ok()).unwrap_or(300)
}

/// 1-based vertex ids to 0-based.
pub fn v(ids: &[usize]) -> Vec<usize> {
    ids.iter().map(|&x| x - 1).collect()
}

/// Bitmask of 1-based vertex ids.
pub fn m(ids: &[usize]) -> u32 {
    ids.iter().fold(0, |acc, &x| acc | 1 << (x - 1))
}

pub fn load(text: &str) -> SteinerContext {
    carcass::graph::load_graph(text).unwrap()
}

pub fn build(text: &str) -> carcass::carcass::Carcass {
    carcass::carcass::Carcass::build(load(text), Default::default()).unwrap()
}
