//! Exact one-shot capacity of discrete memoryless channels.
//!
//! A channel used once can carry `log2 k` bits when some codebook of `k`
//! inputs, together with a decoder, keeps its error within a budget `ε`.
//! This crate computes the largest such `k` exactly, under both the
//! maximum (worst codeword) and the average error criterion:
//!
//! * [`capacity::max_capacity`] packs inclusion-minimal decoding sets; the
//!   same number is the independence number of the maximum-one-shot graph
//!   ([`graphs::build_max_graph`]).
//! * [`capacity::avg_capacity`] searches codebooks under the pointwise
//!   optimal decoder; the same number is the ε-sparse number of the
//!   average-one-shot graph ([`graphs::build_avg_graph`]).
//! * [`capacity::brute_force_capacity`] enumerates every scheme and is the
//!   independent oracle for both.
//!
//! All probabilities are exact rationals ([`Prob`]), so thresholds such as
//! `ε = e_i` land on the correct side of every step.

pub mod bitset;
pub mod capacity;
pub mod channel;
pub mod cli;
pub mod decoding;
pub mod error;
pub mod graphs;
pub mod hardness;
pub mod prob;

pub use bitset::BitSet;
pub use capacity::{avg_capacity, brute_force_capacity, capacity_curve, max_capacity, CapacityCurve, CapacityResult, Metric};
pub use channel::{Channel, CubicGraph, Example1Spec};
pub use decoding::Scheme;
pub use error::Error;
pub use prob::Prob;
