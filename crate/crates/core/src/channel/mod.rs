//! Discrete channels with exact transition matrices, plus the channel
//! families used throughout the crate.

mod format;
mod generate;

pub use format::{parse_channel, parse_cubic_graph, write_channel, write_cubic_graph};
pub use generate::{gen_example1, gen_from_cubic_graph, gen_random, gen_random_cubic};

use num_rational::BigRational;
use num_traits::One;

use crate::bitset::BitSet;
use crate::error::ChannelError;
use crate::prob::{fmt_rational, Prob};

/// A discrete memoryless channel used once.
///
/// Inputs and outputs are the index sets `0..num_inputs` and `0..num_outputs`.
/// Labels are carried for display only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Channel {
    rows: Vec<Vec<Prob>>,
    num_outputs: usize,
    input_labels: Option<Vec<String>>,
    output_labels: Option<Vec<String>>,
}

impl Channel {
    /// Validates a transition matrix indexed `[input][output]`.
    pub fn new(rows: Vec<Vec<Prob>>) -> Result<Self, ChannelError> {
        let num_outputs = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || num_outputs == 0 {
            return Err(ChannelError::EmptyAlphabet);
        }
        for (x, row) in rows.iter().enumerate() {
            if row.len() != num_outputs {
                return Err(ChannelError::RowLength {
                    row: x,
                    expected: num_outputs,
                    found: row.len(),
                });
            }
            let sum: BigRational = row.iter().map(Prob::ratio).sum();
            if !sum.is_one() {
                return Err(ChannelError::RowSum {
                    row: x,
                    sum: fmt_rational(&sum),
                });
            }
        }
        Ok(Channel {
            rows,
            num_outputs,
            input_labels: None,
            output_labels: None,
        })
    }

    /// The `n x n` noiseless channel.
    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| if x == y { Prob::one() } else { Prob::zero() })
                    .collect()
            })
            .collect();
        Channel::new(rows).expect("identity rows sum to one")
    }

    pub fn with_labels(
        mut self,
        inputs: Option<Vec<String>>,
        outputs: Option<Vec<String>>,
    ) -> Result<Self, ChannelError> {
        if let Some(l) = &inputs {
            if l.len() != self.num_inputs() {
                return Err(ChannelError::RowCount {
                    expected: self.num_inputs(),
                    found: l.len(),
                });
            }
        }
        if let Some(l) = &outputs {
            if l.len() != self.num_outputs {
                return Err(ChannelError::RowLength {
                    row: 0,
                    expected: self.num_outputs,
                    found: l.len(),
                });
            }
        }
        self.input_labels = inputs;
        self.output_labels = outputs;
        Ok(self)
    }

    pub fn num_inputs(&self) -> usize {
        self.rows.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.num_outputs
    }

    pub fn rows(&self) -> &[Vec<Prob>] {
        &self.rows
    }

    pub fn row(&self, x: usize) -> &[Prob] {
        &self.rows[x]
    }

    /// `P(Y = y | X = x)`.
    pub fn prob(&self, x: usize, y: usize) -> &Prob {
        &self.rows[x][y]
    }

    pub fn input_labels(&self) -> Option<&[String]> {
        self.input_labels.as_deref()
    }

    pub fn output_labels(&self) -> Option<&[String]> {
        self.output_labels.as_deref()
    }

    /// `P(Y in set | X = x)`.
    pub fn mass(&self, x: usize, set: &BitSet) -> BigRational {
        set.iter()
            .filter(|&y| y < self.num_outputs)
            .map(|y| self.rows[x][y].ratio())
            .sum()
    }

    /// `P(Y not in set | X = x)`.
    pub fn escape(&self, x: usize, set: &BitSet) -> BigRational {
        BigRational::one() - self.mass(x, set)
    }

    /// Outputs reachable from `x`.
    pub fn support(&self, x: usize) -> BitSet {
        self.rows[x]
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(y, _)| y)
            .collect()
    }

    /// Least common denominator of row `x`, with the row's numerators over it.
    pub fn row_over_common_denominator(&self, x: usize) -> (num_bigint::BigInt, Vec<num_bigint::BigInt>) {
        use num_integer::Integer;
        let lcd = self.rows[x]
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, p| acc.lcm(p.ratio().denom()));
        let nums = self.rows[x]
            .iter()
            .map(|p| p.ratio().numer() * (&lcd / p.ratio().denom()))
            .collect();
        (lcd, nums)
    }

    /// Sum of all row masses; always `num_inputs` for a valid channel.
    #[cfg(test)]
    fn total_mass(&self) -> BigRational {
        use num_traits::Zero;
        self.rows
            .iter()
            .flat_map(|r| r.iter().map(Prob::ratio))
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

/// Parameters of the staircase channel family: input `i >= 1` reaches its
/// own output with probability `1 - e_i` and collapses onto output 0
/// with probability `e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Example1Spec {
    n: usize,
    e: Vec<Prob>,
}

impl Example1Spec {
    /// Requires `n >= 2` and `0 < e_1 < ... < e_{n-1} <= 1`.
    pub fn new(n: usize, e: Vec<Prob>) -> Result<Self, ChannelError> {
        if n < 2 {
            return Err(ChannelError::InvalidExample1(format!("n must be >= 2, got {n}")));
        }
        if e.len() != n - 1 {
            return Err(ChannelError::InvalidExample1(format!(
                "expected {} thresholds, got {}",
                n - 1,
                e.len()
            )));
        }
        if e[0].is_zero() {
            return Err(ChannelError::InvalidExample1("e_1 must be > 0".into()));
        }
        if let Some(i) = e.windows(2).position(|w| w[0] >= w[1]) {
            return Err(ChannelError::InvalidExample1(format!(
                "thresholds must be strictly increasing: e_{} = {} >= e_{} = {}",
                i + 1,
                e[i],
                i + 2,
                e[i + 1]
            )));
        }
        Ok(Example1Spec { n, e })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `e_1, ..., e_{n-1}`.
    pub fn thresholds(&self) -> &[Prob] {
        &self.e
    }

    /// `e_i` with the sentinels `e_0 = 0` and `e_n = 1`.
    pub fn threshold(&self, i: usize) -> Prob {
        match i {
            0 => Prob::zero(),
            i if i == self.n => Prob::one(),
            i => self.e[i - 1].clone(),
        }
    }
}

/// A simple 3-regular graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicGraph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl CubicGraph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self, ChannelError> {
        if num_vertices == 0 {
            return Err(ChannelError::InvalidGraph("no vertices".into()));
        }
        let mut degree = vec![0usize; num_vertices];
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= num_vertices || v >= num_vertices {
                return Err(ChannelError::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {num_vertices} vertices"
                )));
            }
            if u == v {
                return Err(ChannelError::InvalidGraph(format!("loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(ChannelError::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        if let Some(v) = degree.iter().position(|&d| d != 3) {
            return Err(ChannelError::InvalidGraph(format!(
                "vertex {v} has degree {}, expected 3",
                degree[v]
            )));
        }
        Ok(CubicGraph {
            num_vertices,
            edges,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edge indices incident to `v`.
    pub fn incident_edges(&self, v: usize) -> BitSet {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == v || b == v)
            .map(|(e, _)| e)
            .collect()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges
            .iter()
            .any(|&(a, b)| (a == u && b == v) || (a == v && b == u))
    }

    pub fn complete4() -> Self {
        Self::from_static(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    pub fn k33() -> Self {
        let edges: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        Self::from_static(6, &edges)
    }

    pub fn prism() -> Self {
        Self::from_static(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
    }

    /// The 3-cube `Q3`.
    pub fn cube() -> Self {
        let mut edges = Vec::new();
        for v in 0..8usize {
            for bit in 0..3 {
                let w = v ^ (1 << bit);
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        Self::from_static(8, &edges)
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Self::from_static(10, &edges)
    }

    fn from_static(n: usize, edges: &[(usize, usize)]) -> Self {
        CubicGraph::new(n, edges.to_vec()).expect("built-in graph is cubic")
    }
}
