use std::fmt::Write as _;

use super::solver::{max_independent_set, SimpleGraph};
use super::{NodeSetWitness, OneShotNode};
use crate::bitset::BitSet;
use crate::channel::Channel;
use crate::decoding::DecodingSetFamily;
use crate::error::GraphError;
use crate::prob::Prob;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MaxGraphConfig {
    /// Keep only inclusion-minimal decoding sets.
    pub minimal_only: bool,
    /// Output-alphabet limit for exhaustive (non-minimal) construction.
    pub max_outputs: usize,
}

impl Default for MaxGraphConfig {
    fn default() -> Self {
        MaxGraphConfig {
            minimal_only: true,
            max_outputs: 12,
        }
    }
}

/// Nodes `(x, D)` with `P(Y in D | X = x) >= 1 - ε`; two nodes are adjacent
/// iff they share the input or their regions intersect.
#[derive(Clone, Debug)]
pub struct MaxOneShotGraph {
    epsilon: Prob,
    nodes: Vec<OneShotNode>,
    graph: SimpleGraph,
}

impl MaxOneShotGraph {
    /// Builds the graph on an explicit node list (sorted canonically first).
    pub fn from_nodes(epsilon: Prob, mut nodes: Vec<OneShotNode>) -> Self {
        nodes.sort_by(|a, b| a.input.cmp(&b.input).then_with(|| a.dset.cmp(&b.dset)));
        let mut graph = SimpleGraph::new(nodes.len());
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if nodes[i].input == nodes[j].input || nodes[i].dset.intersects(&nodes[j].dset) {
                    graph.add_edge(i, j);
                }
            }
        }
        MaxOneShotGraph {
            epsilon,
            nodes,
            graph,
        }
    }

    pub fn epsilon(&self) -> &Prob {
        &self.epsilon
    }

    pub fn nodes(&self) -> &[OneShotNode] {
        &self.nodes
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.graph.adjacent(i, j)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Graph dump: `node <id> <x> {y,...}` lines, then `edge <i> <j>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, n) in self.nodes.iter().enumerate() {
            writeln!(out, "node {i} {} {}", n.input, n.dset).unwrap();
        }
        for i in 0..self.nodes.len() {
            for j in self.graph.neighbors(i).iter().filter(|&j| j > i) {
                writeln!(out, "edge {i} {j}").unwrap();
            }
        }
        out
    }

    pub fn witness(&self, nodes: Vec<usize>) -> NodeSetWitness {
        let members = nodes.iter().map(|&i| self.nodes[i].clone()).collect();
        NodeSetWitness { nodes, members }
    }
}

/// The maximum-one-shot graph with default limits.
pub fn build_max_graph(
    c: &Channel,
    epsilon: &Prob,
    minimal_only: bool,
) -> Result<MaxOneShotGraph, GraphError> {
    build_max_graph_with(
        c,
        epsilon,
        MaxGraphConfig {
            minimal_only,
            ..MaxGraphConfig::default()
        },
    )
}

pub fn build_max_graph_with(
    c: &Channel,
    epsilon: &Prob,
    config: MaxGraphConfig,
) -> Result<MaxOneShotGraph, GraphError> {
    if epsilon.is_one() {
        return Err(GraphError::EpsilonOne(epsilon.to_string()));
    }
    let family = if config.minimal_only {
        DecodingSetFamily::minimal(c, epsilon)
    } else {
        if c.num_outputs() > config.max_outputs {
            return Err(GraphError::TooManyOutputs {
                what: "exhaustive maximum-one-shot graph",
                limit: config.max_outputs,
                found: c.num_outputs(),
            });
        }
        DecodingSetFamily::exhaustive(c, epsilon)
    };
    let nodes = (0..c.num_inputs())
        .flat_map(|x| {
            family.sets(x).iter().map(move |d: &BitSet| OneShotNode {
                input: x,
                dset: d.clone(),
            })
        })
        .collect();
    Ok(MaxOneShotGraph::from_nodes(epsilon.clone(), nodes))
}

/// `α(G)` with a maximum independent set.
pub fn independence_number(g: &MaxOneShotGraph) -> (usize, NodeSetWitness) {
    let set = max_independent_set(&g.graph);
    (set.len(), g.witness(set))
}
