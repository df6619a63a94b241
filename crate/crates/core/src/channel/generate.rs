use std::collections::HashSet;

use num_rational::BigRational;
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Channel, CubicGraph, Example1Spec};
use crate::error::ChannelError;
use crate::prob::Prob;

/// The staircase channel: row 0 is deterministic onto output 0; row `i`
/// keeps `1 - e_i` on output `i` and leaks `e_i` onto output 0.
pub fn gen_example1(spec: &Example1Spec) -> Channel {
    let n = spec.n();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|y| match (i, y) {
                    (0, 0) => Prob::one(),
                    (0, _) => Prob::zero(),
                    (i, y) if y == i => spec.threshold(i).complement(),
                    (i, 0) => spec.threshold(i),
                    _ => Prob::zero(),
                })
                .collect()
        })
        .collect();
    Channel::new(rows).expect("Example 1 rows sum to one")
}

/// Inputs are vertices, outputs are edges (in edge-list order); each vertex
/// spreads its mass uniformly over its three incident edges.
pub fn gen_from_cubic_graph(g: &CubicGraph) -> Channel {
    let third = Prob::new(1, 3);
    let rows = (0..g.num_vertices())
        .map(|v| {
            g.edges()
                .iter()
                .map(|&(a, b)| {
                    if a == v || b == v {
                        third.clone()
                    } else {
                        Prob::zero()
                    }
                })
                .collect()
        })
        .collect();
    Channel::new(rows).expect("cubic graph rows sum to one")
}

/// A seeded random channel. Each row draws a denominator `d` in
/// `1..=denominator_bound` and a uniform weak composition of `d` into
/// `num_outputs` parts, so rows sum to one without renormalizing.
pub fn gen_random(
    num_inputs: usize,
    num_outputs: usize,
    seed: u64,
    denominator_bound: u64,
) -> Result<Channel, ChannelError> {
    if num_inputs == 0 || num_outputs == 0 {
        return Err(ChannelError::EmptyAlphabet);
    }
    let bound = denominator_bound.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..num_inputs)
        .map(|_| {
            let d = rng.gen_range(1..=bound);
            random_composition(&mut rng, d, num_outputs)
                .into_iter()
                .map(|k| {
                    Prob::try_from_ratio(BigRational::new(k.into(), d.into()))
                        .expect("part of a composition")
                })
                .collect()
        })
        .collect();
    Channel::new(rows)
}

/// Stars and bars: `parts - 1` bars placed among `total + parts - 1` slots.
fn random_composition(rng: &mut impl Rng, total: u64, parts: usize) -> Vec<u64> {
    let slots = total as usize + parts - 1;
    let mut bars = index::sample(rng, slots, parts - 1).into_vec();
    bars.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0usize;
    for b in bars {
        out.push((b - prev) as u64);
        prev = b + 1;
    }
    out.push((slots - prev) as u64);
    out
}

/// A seeded random simple cubic graph on `num_vertices` vertices, by the
/// pairing model with rejection of loops and multi-edges.
pub fn gen_random_cubic(num_vertices: usize, seed: u64) -> Result<CubicGraph, ChannelError> {
    if num_vertices < 4 || !num_vertices.is_multiple_of(2) {
        return Err(ChannelError::InvalidGraph(format!(
            "cubic graphs need an even vertex count >= 4, got {num_vertices}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..3 * num_vertices).collect();
    'draw: loop {
        points.shuffle(&mut rng);
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(points.len() / 2);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0] / 3, pair[1] / 3);
            let e = (u.min(v), u.max(v));
            if u == v || !seen.insert(e) {
                continue 'draw;
            }
            edges.push(e);
        }
        edges.sort_unstable();
        return CubicGraph::new(num_vertices, edges);
    }
}
