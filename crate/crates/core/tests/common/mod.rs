#![allow(dead_code)]

use oneshot::channel::{gen_random, gen_random_cubic};
use oneshot::{Channel, CubicGraph, Prob};

pub fn p(n: i64, d: i64) -> Prob {
    Prob::new(n, d)
}

/// ε values every small-channel equivalence is checked on.
pub fn epsilon_grid() -> Vec<Prob> {
    vec![p(0, 1), p(1, 10), p(1, 4), p(1, 3), p(1, 2), p(9, 10)]
}

/// Deterministic corpus of random channels with both alphabets at most 4.
/// Small denominator bounds make deterministic and near-deterministic rows
/// common.
pub fn small_channels(count: u64) -> Vec<Channel> {
    (0..count)
        .map(|seed| {
            let nx = 1 + (seed % 4) as usize;
            let ny = 1 + ((seed / 4) % 4) as usize;
            let bound = 1 + seed % 12;
            gen_random(nx, ny, 1000 + seed, bound).expect("nonempty alphabets")
        })
        .collect()
}

pub fn named_cubic_graphs() -> Vec<(String, CubicGraph)> {
    vec![
        ("K4".to_string(), CubicGraph::complete4()),
        ("K33".to_string(), CubicGraph::k33()),
        ("prism".to_string(), CubicGraph::prism()),
        ("Q3".to_string(), CubicGraph::cube()),
        ("Petersen".to_string(), CubicGraph::petersen()),
    ]
}

/// Ten seeded random cubic graphs on 4 to 14 vertices.
pub fn random_cubic_graphs() -> Vec<(String, CubicGraph)> {
    (0..10u64)
        .map(|i| {
            let n = 4 + 2 * (i as usize % 6);
            let g = gen_random_cubic(n, 500 + i).expect("even vertex count");
            (format!("random-{n}-{i}"), g)
        })
        .collect()
}
