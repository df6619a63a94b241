//! Capacity as a step function of ε.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{avg_capacity, format_bits, max_capacity, Metric};
use crate::bitset::BitSet;
use crate::channel::Channel;
use crate::decoding::{avg_error, optimal_avg_decoder};
use crate::error::CapacityError;
use crate::prob::Prob;

/// Outputs per row the maximum-metric sweep will enumerate subsets of.
pub const MAX_CURVE_SUPPORT: usize = 20;
/// Inputs the average-metric sweep will enumerate codebooks of.
pub const AVG_CURVE_INPUTS: usize = 16;

/// Right-continuous, non-decreasing step function `ε -> k`.
///
/// `breakpoints[i] = (t_i, k_i)` means capacity is `k_i` on `[t_i, t_{i+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapacityCurve {
    pub metric: Metric,
    pub breakpoints: Vec<(Prob, usize)>,
}

impl CapacityCurve {
    /// Codebook size at `epsilon`.
    pub fn lookup(&self, epsilon: &Prob) -> usize {
        self.breakpoints
            .iter()
            .take_while(|(t, _)| t <= epsilon)
            .last()
            .map_or(1, |(_, k)| *k)
    }

    /// `epsilon,codebook_size,capacity_bits`, one row per breakpoint, with
    /// ε as an exact `p/q`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("epsilon,codebook_size,capacity_bits\n");
        for (t, k) in &self.breakpoints {
            let r = t.ratio();
            writeln!(out, "{}/{},{},{}", r.numer(), r.denom(), k, format_bits(*k)).unwrap();
        }
        out
    }
}

/// Exact capacity curve.
///
/// Maximum metric: the set of admissible decoding regions only changes when
/// ε crosses some escape mass `P(Y not in D | X = x)`, so capacity is
/// evaluated at every such value. Average metric: a size-`k` codebook
/// becomes admissible exactly at its optimal decoder's average error, so
/// those values are the candidates.
pub fn capacity_curve(c: &Channel, metric: Metric) -> Result<CapacityCurve, CapacityError> {
    let candidates = match metric {
        Metric::Maximum => escape_masses(c)?,
        Metric::Average => codebook_errors(c)?,
    };
    let mut breakpoints: Vec<(Prob, usize)> = Vec::new();
    for t in candidates {
        let k = match metric {
            Metric::Maximum => max_capacity(c, &t).codebook_size,
            Metric::Average => avg_capacity(c, &t).codebook_size,
        };
        if breakpoints.last().is_none_or(|(_, prev)| k > *prev) {
            breakpoints.push((t, k));
        }
    }
    Ok(CapacityCurve { metric, breakpoints })
}

fn escape_masses(c: &Channel) -> Result<BTreeSet<Prob>, CapacityError> {
    let mut out = BTreeSet::from([Prob::zero(), Prob::one()]);
    for x in 0..c.num_inputs() {
        let support = c.support(x).to_vec();
        if support.len() > MAX_CURVE_SUPPORT {
            return Err(CapacityError::TooLarge {
                what: "row support for the maximum-error curve",
                limit: MAX_CURVE_SUPPORT,
                found: support.len(),
            });
        }
        for mask in 0u32..(1 << support.len()) {
            let set: BitSet = support
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &y)| y)
                .collect();
            out.insert(Prob::try_from_ratio(c.escape(x, &set)).expect("escape mass"));
        }
    }
    Ok(out)
}

fn codebook_errors(c: &Channel) -> Result<BTreeSet<Prob>, CapacityError> {
    let nx = c.num_inputs();
    if nx > AVG_CURVE_INPUTS {
        return Err(CapacityError::TooLarge {
            what: "inputs for the average-error curve",
            limit: AVG_CURVE_INPUTS,
            found: nx,
        });
    }
    let mut out = BTreeSet::from([Prob::zero()]);
    for mask in 1u32..(1 << nx) {
        let codebook: Vec<usize> = (0..nx).filter(|&x| mask >> x & 1 == 1).collect();
        let s = optimal_avg_decoder(c, &codebook).expect("nonempty codebook");
        out.insert(avg_error(c, &s).expect("scheme fits channel"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{gen_example1, gen_random, Example1Spec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(n: i64, d: i64) -> Prob {
        Prob::new(n, d)
    }

    #[test]
    fn staircase_max_curve() {
        let c = gen_example1(&Example1Spec::new(3, vec![p(1, 100), p(1, 50)]).unwrap());
        let curve = capacity_curve(&c, Metric::Maximum).unwrap();
        assert_eq!(curve.breakpoints, vec![(p(0, 1), 1), (p(1, 100), 2), (p(1, 50), 3)]);
        assert_eq!(
            curve.to_csv(),
            "epsilon,codebook_size,capacity_bits\n0/1,1,0.000000000000\n1/100,2,1.000000000000\n1/50,3,1.584962500721\n"
        );
    }

    #[test]
    fn identity_curve() {
        for m in [Metric::Maximum, Metric::Average] {
            let curve = capacity_curve(&Channel::identity(4), m).unwrap();
            assert_eq!(curve.breakpoints, vec![(p(0, 1), 4)]);
        }
    }

    #[test]
    fn staircase_breakpoints() {
        let e = vec![p(1, 10), p(2, 10), p(3, 10), p(4, 10)];
        let c = gen_example1(&Example1Spec::new(5, e.clone()).unwrap());
        let curve = capacity_curve(&c, Metric::Maximum).unwrap();
        let mut want = vec![(p(0, 1), 1)];
        want.extend(e.iter().enumerate().map(|(i, t)| (t.clone(), i + 2)));
        assert_eq!(curve.breakpoints, want);
    }

    #[test]
    fn curves_match_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for seed in 0..12 {
            let c = gen_random(3, 4, seed, 10).unwrap();
            for m in [Metric::Maximum, Metric::Average] {
                let curve = capacity_curve(&c, m).unwrap();
                let mut probes: Vec<Prob> = curve.breakpoints.iter().map(|b| b.0.clone()).collect();
                probes.extend((0..20).map(|_| {
                    let d: i64 = rng.gen_range(1..=60);
                    p(rng.gen_range(0..=d), d)
                }));
                for eps in probes {
                    let direct = match m {
                        Metric::Maximum => max_capacity(&c, &eps).codebook_size,
                        Metric::Average => avg_capacity(&c, &eps).codebook_size,
                    };
                    assert_eq!(curve.lookup(&eps), direct, "seed {seed} {m} eps {eps}");
                }
            }
        }
    }
}
