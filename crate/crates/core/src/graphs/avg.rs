use std::fmt;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::Zero;

use super::{NodeSetWitness, OneShotNode};
use crate::bitset::BitSet;
use crate::channel::Channel;
use crate::decoding::enumerate_positive_sets;
use crate::error::GraphError;
use crate::prob::{fmt_rational, Prob};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AvgGraphConfig {
    /// Also add a node `(x, ∅)` per input: a codeword that owns no output
    /// and therefore always errs. Without it the graph cannot represent
    /// schemes in which some codeword's decoding region has zero mass.
    pub include_empty_sets: bool,
    /// Output-alphabet limit; the node set is exponential in `|Y|`.
    pub max_outputs: usize,
}

impl Default for AvgGraphConfig {
    fn default() -> Self {
        AvgGraphConfig {
            include_empty_sets: false,
            max_outputs: 10,
        }
    }
}

/// Edge weight in the average-one-shot graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weight {
    Infinite,
    Finite(BigRational),
}

impl Weight {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Weight::Infinite)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Infinite => f.write_str("inf"),
            Weight::Finite(w) => f.write_str(&fmt_rational(w)),
        }
    }
}

/// Complete weighted graph on nodes `(x, D)`. Conflicting pairs (same input
/// or intersecting regions) carry infinite weight; every other pair carries
/// the sum of the two escape masses `P(Y not in D | X = x)`.
///
/// Weights are derived on demand from the per-node escape masses rather than
/// stored, since the graph is complete.
#[derive(Clone, Debug)]
pub struct AvgOneShotGraph {
    nodes: Vec<OneShotNode>,
    escape: Vec<BigRational>,
    num_inputs: usize,
}

impl AvgOneShotGraph {
    pub fn nodes(&self) -> &[OneShotNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    /// `P(Y not in D | X = x)` for node `i`.
    pub fn escape(&self, i: usize) -> &BigRational {
        &self.escape[i]
    }

    pub fn conflict(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.nodes[i], &self.nodes[j]);
        a.input == b.input || a.dset.intersects(&b.dset)
    }

    /// Weight of the edge `{i, j}`; `None` for `i == j`.
    pub fn weight(&self, i: usize, j: usize) -> Option<Weight> {
        if i == j {
            None
        } else if self.conflict(i, j) {
            Some(Weight::Infinite)
        } else {
            Some(Weight::Finite(&self.escape[i] + &self.escape[j]))
        }
    }

    /// All unordered pairs `i < j` with their weights.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Weight)> + '_ {
        let n = self.nodes.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j, self.weight(i, j).unwrap())))
    }

    /// Sum of induced pair weights over `set`; `None` if any pair is infinite.
    pub fn induced_weight(&self, set: &[usize]) -> Option<BigRational> {
        let mut total = BigRational::zero();
        for (a, &i) in set.iter().enumerate() {
            for &j in &set[a + 1..] {
                match self.weight(i, j)? {
                    Weight::Infinite => return None,
                    Weight::Finite(w) => total += w,
                }
            }
        }
        Some(total)
    }

    /// Induced weight at most `ε·k·(k-1)`, with no infinite edge.
    pub fn is_sparse(&self, set: &[usize], epsilon: &Prob) -> bool {
        let k = set.len();
        match self.induced_weight(set) {
            None => false,
            Some(w) => w <= budget(epsilon, k),
        }
    }

    /// Graph dump: `node` lines, then `edge <i> <j> <weight|inf>` per pair.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, n) in self.nodes.iter().enumerate() {
            writeln!(out, "node {i} {} {}", n.input, n.dset).unwrap();
        }
        for (i, j, w) in self.edges() {
            writeln!(out, "edge {i} {j} {w}").unwrap();
        }
        out
    }

    pub fn witness(&self, nodes: Vec<usize>) -> NodeSetWitness {
        let members = nodes.iter().map(|&i| self.nodes[i].clone()).collect();
        NodeSetWitness { nodes, members }
    }
}

fn budget(epsilon: &Prob, k: usize) -> BigRational {
    let pairs = BigRational::from_integer((k * k.saturating_sub(1)).into());
    epsilon.ratio() * pairs
}

/// The average-one-shot graph on every `(x, D)` with `P(Y in D | X = x) > 0`.
pub fn build_avg_graph(c: &Channel) -> Result<AvgOneShotGraph, GraphError> {
    build_avg_graph_with(c, AvgGraphConfig::default())
}

pub fn build_avg_graph_with(c: &Channel, config: AvgGraphConfig) -> Result<AvgOneShotGraph, GraphError> {
    if c.num_outputs() > config.max_outputs {
        return Err(GraphError::TooManyOutputs {
            what: "average-one-shot graph",
            limit: config.max_outputs,
            found: c.num_outputs(),
        });
    }
    let all = BitSet::full(c.num_outputs());
    let mut nodes = Vec::new();
    let mut escape = Vec::new();
    for x in 0..c.num_inputs() {
        let mut sets = enumerate_positive_sets(c, x);
        if config.include_empty_sets {
            sets.insert(0, BitSet::new());
        }
        for d in sets {
            let mut outside = all.clone();
            outside.difference_with(&d);
            escape.push(c.mass(x, &outside));
            nodes.push(OneShotNode { input: x, dset: d });
        }
    }
    Ok(AvgOneShotGraph {
        nodes,
        escape,
        num_inputs: c.num_inputs(),
    })
}

/// `α_ε(G)`: the largest ε-sparse node set, with a witness.
///
/// Branches input by input (a sparse set has at most one node per input,
/// since same-input pairs are infinite). Candidate sets are scored by their
/// induced edge-weight sum. For pruning, a conflict-free set of size `K`
/// has induced weight `(K-1)·Σ escape`, so it is sparse iff
/// `Σ escape <= ε·K`; the cheapest available node per remaining input gives
/// a lower bound on the final escape sum.
pub fn sparse_number(g: &AvgOneShotGraph, epsilon: &Prob) -> (usize, NodeSetWitness) {
    if g.is_empty() {
        return (0, g.witness(Vec::new()));
    }
    let mut by_input: Vec<Vec<usize>> = vec![Vec::new(); g.num_inputs()];
    for (i, n) in g.nodes.iter().enumerate() {
        by_input[n.input].push(i);
    }
    for group in &mut by_input {
        group.sort_by(|&a, &b| g.escape[a].cmp(&g.escape[b]).then(a.cmp(&b)));
    }
    by_input.retain(|grp| !grp.is_empty());

    let mut search = SparseSearch {
        g,
        epsilon,
        by_input,
        best: vec![0],
        chosen: Vec::new(),
        used: BitSet::new(),
    };
    search.run(0, BigRational::zero(), BigRational::zero());
    let mut best = search.best;
    best.sort_unstable();
    (best.len(), g.witness(best))
}

struct SparseSearch<'a> {
    g: &'a AvgOneShotGraph,
    epsilon: &'a Prob,
    by_input: Vec<Vec<usize>>,
    best: Vec<usize>,
    chosen: Vec<usize>,
    used: BitSet,
}

impl SparseSearch<'_> {
    fn run(&mut self, depth: usize, escape_sum: BigRational, weight_sum: BigRational) {
        let k = self.chosen.len();
        if k > self.best.len() && weight_sum <= budget(self.epsilon, k) {
            self.best = self.chosen.clone();
        }
        if depth == self.by_input.len() || !self.can_improve(depth, &escape_sum) {
            return;
        }
        let group = self.by_input[depth].clone();
        for v in group {
            if self.g.nodes[v].dset.intersects(&self.used) {
                continue;
            }
            let mut added = BigRational::zero();
            for &u in &self.chosen {
                match self.g.weight(u, v) {
                    Some(Weight::Finite(w)) => added += w,
                    _ => unreachable!("chosen nodes are conflict-free"),
                }
            }
            self.chosen.push(v);
            self.used.union_with(&self.g.nodes[v].dset);
            self.run(depth + 1, &escape_sum + &self.g.escape[v], &weight_sum + added);
            self.chosen.pop();
            self.used.difference_with(&self.g.nodes[v].dset);
        }
        self.run(depth + 1, escape_sum, weight_sum);
    }

    fn can_improve(&self, depth: usize, escape_sum: &BigRational) -> bool {
        let k = self.chosen.len();
        let mut cheapest: Vec<&BigRational> = self.by_input[depth..]
            .iter()
            .filter_map(|grp| {
                grp.iter()
                    .find(|&&v| !self.g.nodes[v].dset.intersects(&self.used))
                    .map(|&v| &self.g.escape[v])
            })
            .collect();
        if k + cheapest.len() <= self.best.len() {
            return false;
        }
        cheapest.sort();
        let mut total = escape_sum.clone();
        for (extra, e) in cheapest.iter().enumerate() {
            total += *e;
            let size = k + extra + 1;
            if size > self.best.len() {
                let cap = self.epsilon.ratio() * BigRational::from_integer(size.into());
                if size <= 1 || total <= cap {
                    return true;
                }
            }
        }
        false
    }
}

/// `α_ε(G)` by trying every node set with at most one node per input
/// (any other set contains an infinite edge). Test oracle.
pub fn sparse_number_exhaustive(
    g: &AvgOneShotGraph,
    epsilon: &Prob,
    max_candidates: u64,
) -> Result<(usize, NodeSetWitness), GraphError> {
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); g.num_inputs()];
    for (i, n) in g.nodes.iter().enumerate() {
        groups[n.input].push(i);
    }
    let count = groups
        .iter()
        .try_fold(1u64, |acc, grp| acc.checked_mul(grp.len() as u64 + 1))
        .unwrap_or(u64::MAX);
    if count > max_candidates {
        return Err(GraphError::TooManyCandidates {
            limit: max_candidates,
            found: count,
        });
    }
    let mut best: Vec<usize> = Vec::new();
    let mut pick = vec![0usize; groups.len()];
    loop {
        let set: Vec<usize> = pick
            .iter()
            .zip(&groups)
            .filter(|(&p, _)| p > 0)
            .map(|(&p, grp)| grp[p - 1])
            .collect();
        if set.len() > best.len() && g.is_sparse(&set, epsilon) {
            best = set;
        }
        // odometer
        let mut i = 0;
        loop {
            if i == pick.len() {
                return Ok((best.len(), g.witness(best)));
            }
            pick[i] += 1;
            if pick[i] <= groups[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}
