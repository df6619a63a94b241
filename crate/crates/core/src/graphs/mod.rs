//! The maximum-one-shot and average-one-shot graphs of a channel, and exact
//! solvers for their independence and ε-sparse numbers.

mod avg;
mod max;
mod solver;

pub use avg::{
    build_avg_graph, build_avg_graph_with, sparse_number, sparse_number_exhaustive, AvgGraphConfig,
    AvgOneShotGraph, Weight,
};
pub use max::{build_max_graph, build_max_graph_with, independence_number, MaxGraphConfig, MaxOneShotGraph};
pub use solver::{max_independent_set, max_independent_set_exhaustive, SimpleGraph};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::bitset::BitSet;
use crate::decoding::Scheme;
use crate::error::SchemeError;

/// A node `(x, D)`: input `x` paired with a candidate decoding region `D`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OneShotNode {
    pub input: usize,
    pub dset: BitSet,
}

/// A node set returned by a solver, with the `(x, D)` of every member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeSetWitness {
    pub nodes: Vec<usize>,
    pub members: Vec<OneShotNode>,
}

impl NodeSetWitness {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// True when inputs are pairwise distinct and regions pairwise disjoint.
    pub fn is_conflict_free(&self) -> bool {
        let m = &self.members;
        (0..m.len()).all(|i| {
            (i + 1..m.len()).all(|j| m[i].input != m[j].input && m[i].dset.is_disjoint(&m[j].dset))
        })
    }

    /// Turns a conflict-free node set into a scheme: each member's region
    /// decodes to its input and every other output goes to the smallest
    /// codeword.
    pub fn to_scheme(&self, num_outputs: usize) -> Result<Scheme, SchemeError> {
        let codebook: Vec<usize> = self.members.iter().map(|n| n.input).collect();
        let fallback = *codebook.iter().min().ok_or(SchemeError::EmptyCodebook)?;
        let mut decoder = vec![fallback; num_outputs];
        for node in &self.members {
            for y in node.dset.iter().filter(|&y| y < num_outputs) {
                decoder[y] = node.input;
            }
        }
        Scheme::new(codebook, decoder)
    }
}

/// Serialized as a list of `[x, [outputs...]]` pairs.
impl Serialize for NodeSetWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.members.len()))?;
        for m in &self.members {
            seq.serialize_element(&(m.input, m.dset.to_vec()))?;
        }
        seq.end()
    }
}
