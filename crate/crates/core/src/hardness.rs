//! Independent set in cubic graphs as a one-shot capacity instance.
//!
//! Vertices become inputs, edges become outputs, and each vertex sends its
//! mass uniformly over its three incident edges. Below `ε = 1/3` every
//! admissible decoding region of `v` must contain all three incident
//! edges, so codebooks with disjoint regions are exactly independent vertex
//! sets.

use serde::Serialize;

use crate::capacity::max_capacity;
use crate::channel::{gen_from_cubic_graph, CubicGraph};
use crate::decoding::Scheme;
use crate::error::HardnessError;
use crate::graphs::{build_max_graph, max_independent_set, MaxOneShotGraph, SimpleGraph};
use crate::prob::Prob;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub epsilon: Prob,
    pub graph_alpha: usize,
    pub channel_capacity_k: usize,
    pub agree: bool,
    pub graph_witness: Vec<usize>,
    pub channel_witness: Scheme,
    /// Channel codebook read back as vertices is independent in the graph.
    pub channel_witness_independent: bool,
    /// Graph witness lifted to nodes `(v, d(v))` is independent in `G_ε`.
    pub graph_witness_lifts: bool,
}

impl ReductionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn plain_graph(g: &CubicGraph) -> SimpleGraph {
    SimpleGraph::from_edges(g.num_vertices(), g.edges().iter().copied())
}

/// Exact `α(G)` with a maximum independent vertex set.
pub fn graph_independence_number(g: &CubicGraph) -> (usize, Vec<usize>) {
    let set = max_independent_set(&plain_graph(g));
    (set.len(), set)
}

/// Builds the reduction channel, solves both sides, and maps each witness
/// across.
pub fn verify_reduction(g: &CubicGraph, epsilon: &Prob) -> Result<ReductionReport, HardnessError> {
    if *epsilon >= Prob::new(1, 3) {
        return Err(HardnessError::EpsilonTooLarge(epsilon.to_string()));
    }
    let channel = gen_from_cubic_graph(g);
    let (graph_alpha, graph_witness) = graph_independence_number(g);
    let result = max_capacity(&channel, epsilon);
    let plain = plain_graph(g);

    let channel_witness_independent = plain.is_independent(result.witness.codebook());

    let one_shot = build_max_graph(&channel, epsilon, true).expect("epsilon < 1");
    let graph_witness_lifts = lift(&one_shot, g, &graph_witness)
        .is_some_and(|nodes| nodes.len() == graph_witness.len() && one_shot.graph().is_independent(&nodes));

    Ok(ReductionReport {
        epsilon: epsilon.clone(),
        graph_alpha,
        channel_capacity_k: result.codebook_size,
        agree: graph_alpha == result.codebook_size,
        graph_witness,
        channel_witness: result.witness,
        channel_witness_independent,
        graph_witness_lifts,
    })
}

/// Node indices of `(v, d(v))` in the one-shot graph, `d(v)` being the
/// incident edges of `v`.
fn lift(one_shot: &MaxOneShotGraph, g: &CubicGraph, vertices: &[usize]) -> Option<Vec<usize>> {
    vertices
        .iter()
        .map(|&v| {
            let d = g.incident_edges(v);
            one_shot
                .nodes()
                .iter()
                .position(|n| n.input == v && n.dset == d)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::gen_random_cubic;
    use crate::decoding::enumerate_min_decoding_sets;
    use crate::graphs::max_independent_set_exhaustive;

    fn corpus() -> Vec<(&'static str, CubicGraph)> {
        vec![
            ("K4", CubicGraph::complete4()),
            ("K33", CubicGraph::k33()),
            ("prism", CubicGraph::prism()),
            ("Q3", CubicGraph::cube()),
            ("Petersen", CubicGraph::petersen()),
        ]
    }

    #[test]
    fn graph_alphas_match_exhaustive() {
        let want = [1, 3, 2, 4, 4];
        for ((name, g), w) in corpus().into_iter().zip(want) {
            let (a, set) = graph_independence_number(&g);
            assert_eq!(a, w, "{name}");
            assert_eq!(max_independent_set_exhaustive(&plain_graph(&g)).len(), w, "{name}");
            assert!(plain_graph(&g).is_independent(&set));
        }
    }

    #[test]
    fn named_reductions_agree() {
        let cases = [
            (CubicGraph::complete4(), Prob::new(1, 4), 1),
            (CubicGraph::prism(), Prob::new(1, 100), 2),
            (CubicGraph::petersen(), Prob::new(33, 100), 4),
        ];
        for (g, eps, alpha) in cases {
            let r = verify_reduction(&g, &eps).unwrap();
            assert_eq!(r.graph_alpha, alpha);
            assert_eq!(r.channel_capacity_k, alpha);
            assert!(r.agree && r.channel_witness_independent && r.graph_witness_lifts);
        }
    }

    #[test]
    fn minimal_sets_are_incident_edges() {
        for (name, g) in corpus() {
            let c = gen_from_cubic_graph(&g);
            for eps in [Prob::zero(), Prob::new(1, 100), Prob::new(1, 4), Prob::new(33, 100)] {
                for v in 0..g.num_vertices() {
                    assert_eq!(
                        enumerate_min_decoding_sets(&c, v, &eps),
                        vec![g.incident_edges(v)],
                        "{name} v={v} eps={eps}"
                    );
                }
            }
        }
    }

    #[test]
    fn witness_regions_cover_incident_edges() {
        let g = gen_random_cubic(12, 4).unwrap();
        let r = verify_reduction(&g, &Prob::new(1, 4)).unwrap();
        for &v in r.channel_witness.codebook() {
            assert!(g.incident_edges(v).is_subset(&r.channel_witness.preimage(v)));
        }
    }

    #[test]
    fn rejects_large_epsilon() {
        let g = CubicGraph::complete4();
        assert!(matches!(
            verify_reduction(&g, &Prob::new(1, 3)),
            Err(HardnessError::EpsilonTooLarge(_))
        ));
        assert!(verify_reduction(&g, &Prob::new(1, 2)).is_err());
    }
}
