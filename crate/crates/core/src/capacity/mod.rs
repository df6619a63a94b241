//! Capacity engines.
//!
//! | metric  | primary engine                  | cross-check               |
//! |---------|---------------------------------|---------------------------|
//! | maximum | packing of minimal decoding sets | independence number       |
//! | average | codebook search, optimal decoder | ε-sparse number           |
//!
//! [`brute_force_capacity`] enumerates every (codebook, decoder) pair and
//! backs both on small channels.

mod brute;
mod curve;

pub use brute::{brute_force_capacity, BRUTE_FORCE_LIMIT};
pub use curve::{capacity_curve, CapacityCurve};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::channel::{Channel, Example1Spec};
use crate::decoding::{enumerate_min_decoding_sets, optimal_avg_decoder, Scheme};
use crate::error::CapacityError;
use crate::graphs::{
    build_avg_graph_with, build_max_graph, independence_number, sparse_number, AvgGraphConfig,
    NodeSetWitness, OneShotNode,
};
use crate::prob::Prob;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Metric {
    #[serde(rename = "max")]
    Maximum,
    #[serde(rename = "avg")]
    Average,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Maximum => "max",
            Metric::Average => "avg",
        })
    }
}

impl FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "max" | "maximum" => Ok(Metric::Maximum),
            "avg" | "average" => Ok(Metric::Average),
            _ => Err(format!("unknown metric `{s}` (expected max or avg)")),
        }
    }
}

/// Codebook size `k` for one (metric, ε), with a scheme achieving it.
///
/// Capacity in bits is `log2 k`; all comparisons are done on `k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CapacityResult {
    pub metric: Metric,
    pub epsilon: Prob,
    pub codebook_size: usize,
    #[serde(serialize_with = "serialize_bits")]
    pub capacity_bits: f64,
    pub witness: Scheme,
}

fn serialize_bits<S: serde::Serializer>(bits: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{bits:.12}"))
}

/// `log2 k` with 12 decimal digits.
pub fn format_bits(k: usize) -> String {
    format!("{:.12}", (k as f64).log2())
}

impl CapacityResult {
    fn new(metric: Metric, epsilon: &Prob, witness: Scheme) -> Self {
        CapacityResult {
            metric,
            epsilon: epsilon.clone(),
            codebook_size: witness.len(),
            capacity_bits: (witness.len() as f64).log2(),
            witness,
        }
    }

    pub fn bits_string(&self) -> String {
        format_bits(self.codebook_size)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }
}

/// Every input may be sent when any error is tolerated.
fn whole_alphabet(c: &Channel, metric: Metric, epsilon: &Prob) -> CapacityResult {
    let codebook: Vec<usize> = (0..c.num_inputs()).collect();
    let witness = optimal_avg_decoder(c, &codebook).expect("nonempty codebook");
    CapacityResult::new(metric, epsilon, witness)
}

/// ε-maximum one-shot capacity.
///
/// Finds the most inputs that can be given pairwise-disjoint output sets,
/// each holding at least `1 - ε` of its input's mass. Only inclusion-minimal
/// sets are tried: shrinking a set keeps it disjoint from the others.
pub fn max_capacity(c: &Channel, epsilon: &Prob) -> CapacityResult {
    if epsilon.is_one() {
        return whole_alphabet(c, Metric::Maximum, epsilon);
    }
    let options: Vec<Vec<BitSet>> = (0..c.num_inputs())
        .map(|x| enumerate_min_decoding_sets(c, x, epsilon))
        .collect();
    // Fewest alternatives first: forced choices prune earliest.
    let mut order: Vec<usize> = (0..c.num_inputs()).collect();
    order.sort_by_key(|&x| (options[x].len(), x));

    let mut packing = Packing {
        options: &options,
        order: &order,
        best: vec![(order[0], options[order[0]][0].clone())],
        chosen: Vec::new(),
        used: BitSet::new(),
        num_outputs: c.num_outputs(),
    };
    packing.run(0);
    let mut members: Vec<OneShotNode> = packing
        .best
        .into_iter()
        .map(|(input, dset)| OneShotNode { input, dset })
        .collect();
    members.sort();
    let witness = NodeSetWitness {
        nodes: Vec::new(),
        members,
    };
    let scheme = witness
        .to_scheme(c.num_outputs())
        .expect("packing is conflict-free");
    CapacityResult::new(Metric::Maximum, epsilon, scheme)
}

struct Packing<'a> {
    options: &'a [Vec<BitSet>],
    order: &'a [usize],
    best: Vec<(usize, BitSet)>,
    chosen: Vec<(usize, BitSet)>,
    used: BitSet,
    num_outputs: usize,
}

impl Packing<'_> {
    fn run(&mut self, depth: usize) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if depth == self.order.len() {
            return;
        }
        let open = self.order[depth..]
            .iter()
            .filter(|&&x| self.options[x].iter().any(|d| d.is_disjoint(&self.used)))
            .count();
        let free_outputs = self.num_outputs - self.used.len();
        if self.chosen.len() + open.min(free_outputs) <= self.best.len() {
            return;
        }
        let x = self.order[depth];
        for d in &self.options[x] {
            if d.intersects(&self.used) {
                continue;
            }
            self.chosen.push((x, d.clone()));
            self.used.union_with(d);
            self.run(depth + 1);
            self.used.difference_with(d);
            self.chosen.pop();
        }
        self.run(depth + 1);
    }
}

/// ε-maximum capacity read off the maximum-one-shot graph (minimal nodes).
pub fn max_capacity_via_graph(c: &Channel, epsilon: &Prob) -> Result<CapacityResult, CapacityError> {
    if epsilon.is_one() {
        return Ok(whole_alphabet(c, Metric::Maximum, epsilon));
    }
    let g = build_max_graph(c, epsilon, true)?;
    let (_, witness) = independence_number(&g);
    let scheme = witness.to_scheme(c.num_outputs()).expect("independent set");
    Ok(CapacityResult::new(Metric::Maximum, epsilon, scheme))
}

/// Channel probabilities as integers over one common denominator.
struct Scaled {
    denom: BigInt,
    /// `[input][output]`
    num: Vec<Vec<BigInt>>,
}

impl Scaled {
    fn new(c: &Channel) -> Self {
        let denom = c
            .rows()
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, p| acc.lcm(p.ratio().denom()));
        let num = c
            .rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| p.ratio().numer() * (&denom / p.ratio().denom()))
                    .collect()
            })
            .collect();
        Scaled { denom, num }
    }

    /// `Σ_y max_{x in set} P(y|x)`, scaled: the best achievable correct mass.
    fn best_correct(&self, set: impl Iterator<Item = usize> + Clone) -> BigInt {
        let ny = self.num[0].len();
        (0..ny)
            .map(|y| {
                set.clone()
                    .map(|x| &self.num[x][y])
                    .max()
                    .cloned()
                    .unwrap_or_else(BigInt::zero)
            })
            .sum()
    }
}

/// ε-average one-shot capacity.
///
/// Tries codebook sizes from `|X|` down and, within a size, codebooks in
/// lexicographic order; the first codebook whose optimal decoder meets the
/// budget wins. A codebook of size `k` is admissible iff its best correct
/// mass `Σ_y max_x P(y|x)` reaches `k (1 - ε)`, which also gives the pruning
/// bound for partial codebooks.
pub fn avg_capacity(c: &Channel, epsilon: &Prob) -> CapacityResult {
    let scaled = Scaled::new(c);
    let nx = c.num_inputs();
    // correct mass needed per codeword, scaled by the common denominator
    let keep = epsilon.complement();
    for k in (1..=nx).rev() {
        let need = scaled_threshold(&scaled.denom, &keep, k);
        if scaled.best_correct(0..nx) < need {
            continue;
        }
        let mut current = Vec::with_capacity(k);
        if let Some(cb) = search_codebook(&scaled, nx, k, &need, &mut current, 0) {
            let scheme = optimal_avg_decoder(c, &cb).expect("nonempty codebook");
            return CapacityResult::new(Metric::Average, epsilon, scheme);
        }
    }
    unreachable!("a singleton codebook always has zero error")
}

/// `k · (1 - ε) · denom`, rounded up to the integer the correct mass must reach.
fn scaled_threshold(denom: &BigInt, keep: &Prob, k: usize) -> BigInt {
    let exact = keep.ratio() * num_rational::BigRational::from_integer(denom * BigInt::from(k));
    exact.ceil().to_integer()
}

fn search_codebook(
    s: &Scaled,
    nx: usize,
    k: usize,
    need: &BigInt,
    current: &mut Vec<usize>,
    start: usize,
) -> Option<Vec<usize>> {
    if current.len() == k {
        return (s.best_correct(current.iter().copied()) >= *need).then(|| current.clone());
    }
    let remaining = k - current.len();
    for x in start..=nx - remaining {
        let optimistic = s.best_correct(current.iter().copied().chain(x..nx));
        if optimistic < *need {
            // later starts see a subset of these candidates
            return None;
        }
        current.push(x);
        if let Some(cb) = search_codebook(s, nx, k, need, current, x + 1) {
            return Some(cb);
        }
        current.pop();
    }
    None
}

/// ε-average capacity read off the average-one-shot graph.
///
/// Uses the graph with empty decoding regions included, so schemes where a
/// codeword owns no probable output are represented.
pub fn avg_capacity_via_graph(c: &Channel, epsilon: &Prob) -> Result<CapacityResult, CapacityError> {
    let g = build_avg_graph_with(
        c,
        AvgGraphConfig {
            include_empty_sets: true,
            ..AvgGraphConfig::default()
        },
    )?;
    let (_, witness) = sparse_number(&g, epsilon);
    let scheme = witness.to_scheme(c.num_outputs()).expect("sparse set is conflict-free");
    Ok(CapacityResult::new(Metric::Average, epsilon, scheme))
}

/// Capacity under `metric`.
pub fn capacity(c: &Channel, metric: Metric, epsilon: &Prob) -> CapacityResult {
    match metric {
        Metric::Maximum => max_capacity(c, epsilon),
        Metric::Average => avg_capacity(c, epsilon),
    }
}

/// Codebook size for the staircase channel family: `i + 1` for the `i`
/// with `e_i <= ε < e_{i+1}` (`e_0 = 0`, `e_n = 1`), and `n` at `ε = 1`.
pub fn example1_closed_form(spec: &Example1Spec, epsilon: &Prob) -> usize {
    let n = spec.n();
    if epsilon.is_one() {
        return n;
    }
    (0..n)
        .find(|&i| spec.threshold(i) <= *epsilon && *epsilon < spec.threshold(i + 1))
        .map_or(n, |i| i + 1)
}
