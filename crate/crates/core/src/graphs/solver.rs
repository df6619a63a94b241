//! Exact maximum independent set.
//!
//! Branch and bound in the style of a maximum-clique search on the
//! complement graph: candidates are greedily partitioned into cliques of the
//! original graph, and since an independent set takes at most one vertex per
//! clique, the partition size bounds what the branch can still add.

use crate::bitset::BitSet;

/// An undirected simple graph on `0..n` with bitset adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<BitSet>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            adj: vec![BitSet::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = SimpleGraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(BitSet::len).sum::<usize>() / 2
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.adjacent(u, v)))
    }
}

/// A maximum independent set, sorted ascending.
pub fn max_independent_set(g: &SimpleGraph) -> Vec<usize> {
    let n = g.len();
    if n == 0 {
        return Vec::new();
    }
    // Low-degree vertices first: they are the likeliest members.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (g.degree(v), v));

    let mut search = Search {
        g,
        order,
        best: Vec::new(),
        current: Vec::new(),
    };
    // Greedy start so the bound bites immediately.
    let mut blocked = BitSet::new();
    for &v in &search.order {
        if !blocked.contains(v) {
            search.best.push(v);
            blocked.insert(v);
            blocked.union_with(g.neighbors(v));
        }
    }
    search.expand(BitSet::full(n));
    let mut best = search.best;
    best.sort_unstable();
    best
}

struct Search<'a> {
    g: &'a SimpleGraph,
    order: Vec<usize>,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Search<'_> {
    /// Colors `candidates` into cliques of `g`; returns vertices with their
    /// cumulative clique count, in the order they were covered.
    fn clique_cover(&self, candidates: &BitSet) -> Vec<(usize, usize)> {
        let mut uncovered = candidates.clone();
        let mut out = Vec::with_capacity(candidates.len());
        let mut cliques = 0;
        while !uncovered.is_empty() {
            cliques += 1;
            let mut open = uncovered.clone();
            while let Some(v) = open.first() {
                out.push((v, cliques));
                uncovered.remove(v);
                open.remove(v);
                open.intersect_with(self.g.neighbors(v));
            }
        }
        out
    }

    fn expand(&mut self, mut candidates: BitSet) {
        let cover = self.clique_cover(&candidates);
        for &(v, bound) in cover.iter().rev() {
            if self.current.len() + bound <= self.best.len() {
                return;
            }
            self.current.push(v);
            let mut next = candidates.clone();
            next.remove(v);
            next.difference_with(self.g.neighbors(v));
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            candidates.remove(v);
        }
    }
}

/// Largest independent set by enumerating every vertex subset.
///
/// Test oracle; panics above 25 vertices.
pub fn max_independent_set_exhaustive(g: &SimpleGraph) -> Vec<usize> {
    let n = g.len();
    assert!(n <= 25, "exhaustive independent set limited to 25 vertices, got {n}");
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect();
    let mut best = 0u32;
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() <= best.count_ones() {
            continue;
        }
        let independent = (0..n).all(|v| mask >> v & 1 == 0 || adj[v] & mask == 0);
        if independent {
            best = mask;
        }
    }
    (0..n).filter(|&v| best >> v & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn petersen() -> SimpleGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        SimpleGraph::from_edges(10, edges)
    }

    #[test]
    fn small_graphs() {
        assert!(max_independent_set(&SimpleGraph::new(0)).is_empty());
        assert_eq!(max_independent_set(&SimpleGraph::new(5)).len(), 5);
        let k5 = SimpleGraph::from_edges(5, (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))));
        assert_eq!(max_independent_set(&k5).len(), 1);
        let c5 = SimpleGraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5)));
        assert_eq!(max_independent_set(&c5).len(), 2);
    }

    #[test]
    fn petersen_has_alpha_four() {
        let g = petersen();
        assert_eq!(g.num_edges(), 15);
        assert_eq!(max_independent_set_exhaustive(&g).len(), 4);
        let s = max_independent_set(&g);
        assert_eq!(s.len(), 4);
        assert!(g.is_independent(&s));
    }

    fn arb_graph() -> impl Strategy<Value = SimpleGraph> {
        (1usize..=16).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..(n * 3)).prop_map(move |e| SimpleGraph::from_edges(n, e))
        })
    }

    proptest! {
        #[test]
        fn branch_and_bound_matches_exhaustive(g in arb_graph()) {
            let fast = max_independent_set(&g);
            prop_assert!(g.is_independent(&fast));
            prop_assert_eq!(fast.len(), max_independent_set_exhaustive(&g).len());
        }
    }
}
