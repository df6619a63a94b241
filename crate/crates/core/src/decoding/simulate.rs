//! Monte-Carlo transmission of codewords through a channel.

use num_bigint::{BigUint, RandBigInt};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{codeword_errors, Scheme};
use crate::channel::Channel;
use crate::error::SchemeError;
use crate::prob::Prob;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CodewordReport {
    pub codeword: usize,
    pub trials: u64,
    pub errors: u64,
    pub empirical_error: f64,
    pub exact_error: Prob,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationReport {
    pub seed: u64,
    pub trials: u64,
    pub codewords: Vec<CodewordReport>,
    pub empirical_max_error: f64,
    pub empirical_avg_error: f64,
    pub exact_max_error: Prob,
    pub exact_avg_error: Prob,
}

/// Sampler for one exact row: integer numerators over the row's least
/// common denominator, drawn by inverse CDF on a uniform integer.
enum RowSampler {
    Small { total: u64, cumulative: Vec<u64> },
    Big { total: BigUint, cumulative: Vec<BigUint> },
}

impl RowSampler {
    fn new(c: &Channel, x: usize) -> Self {
        let (lcd, nums) = c.row_over_common_denominator(x);
        let nums: Vec<BigUint> = nums
            .into_iter()
            .map(|n| n.to_biguint().expect("nonnegative numerator"))
            .collect();
        let total = lcd.to_biguint().expect("positive denominator");
        let cumulative: Vec<BigUint> = nums
            .iter()
            .scan(BigUint::default(), |acc, n| {
                *acc += n;
                Some(acc.clone())
            })
            .collect();
        match total.to_u64() {
            Some(t) => RowSampler::Small {
                total: t,
                cumulative: cumulative.iter().map(|v| v.to_u64().unwrap()).collect(),
            },
            None => RowSampler::Big { total, cumulative },
        }
    }

    fn sample(&self, rng: &mut impl Rng) -> usize {
        match self {
            RowSampler::Small { total, cumulative } => {
                let u = rng.gen_range(0..*total);
                cumulative.partition_point(|&c| c <= u)
            }
            RowSampler::Big { total, cumulative } => {
                let u = rng.gen_biguint_below(total);
                cumulative.partition_point(|c| *c <= u)
            }
        }
    }
}

/// Sends every codeword `trials` times and counts decoding failures.
///
/// Deterministic in `seed`: one ChaCha stream, codewords in codebook order.
pub fn simulate(
    c: &Channel,
    s: &Scheme,
    trials: u64,
    seed: u64,
) -> Result<SimulationReport, SchemeError> {
    let exact = codeword_errors(c, s)?;
    let trials = trials.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let codewords: Vec<CodewordReport> = s
        .codebook()
        .iter()
        .zip(exact)
        .map(|(&x, exact_error)| {
            let sampler = RowSampler::new(c, x);
            let errors = (0..trials)
                .filter(|_| s.decoder()[sampler.sample(&mut rng)] != x)
                .count() as u64;
            CodewordReport {
                codeword: x,
                trials,
                errors,
                empirical_error: errors as f64 / trials as f64,
                exact_error,
            }
        })
        .collect();
    let empirical_max_error = codewords
        .iter()
        .map(|r| r.empirical_error)
        .fold(0.0, f64::max);
    let empirical_avg_error =
        codewords.iter().map(|r| r.empirical_error).sum::<f64>() / codewords.len() as f64;
    Ok(SimulationReport {
        seed,
        trials,
        codewords,
        empirical_max_error,
        empirical_avg_error,
        exact_max_error: super::max_error(c, s)?,
        exact_avg_error: super::avg_error(c, s)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{gen_example1, Example1Spec};
    use num_rational::BigRational;

    #[test]
    fn identity_is_error_free() {
        let c = Channel::identity(3);
        let s = Scheme::new(vec![0, 1, 2], vec![0, 1, 2]).unwrap();
        let r = simulate(&c, &s, 1000, 1).unwrap();
        assert!(r.codewords.iter().all(|w| w.errors == 0));
        assert_eq!(r.empirical_max_error, 0.0);
    }

    #[test]
    fn staircase_concentrates() {
        let c = gen_example1(&Example1Spec::new(3, vec![Prob::new(1, 100), Prob::new(1, 50)]).unwrap());
        let s = Scheme::new(vec![1, 2], vec![2, 1, 2]).unwrap();
        let trials = 1_000_000;
        let r = simulate(&c, &s, trials, 42).unwrap();
        let p = 0.01f64;
        let tol = 3.0 * (p * (1.0 - p) / trials as f64).sqrt();
        assert!((r.codewords[0].empirical_error - p).abs() <= tol, "{:?}", r.codewords[0]);
        assert_eq!(r.codewords[1].errors, 0);
        assert_eq!(r, simulate(&c, &s, trials, 42).unwrap());
    }

    #[test]
    fn big_denominators_take_the_bignum_path() {
        let huge: num_bigint::BigInt = num_bigint::BigInt::from(3u8).pow(50);
        let p = Prob::try_from_ratio(BigRational::new(1.into(), huge)).unwrap();
        let c = Channel::new(vec![vec![p.clone(), p.complement()]]).unwrap();
        assert!(matches!(RowSampler::new(&c, 0), RowSampler::Big { .. }));
        let s = Scheme::new(vec![0], vec![0, 0]).unwrap();
        let r = simulate(&c, &s, 100, 3).unwrap();
        assert_eq!(r.codewords[0].errors, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let sampler = RowSampler::new(&c, 0);
        assert!((0..1000).all(|_| sampler.sample(&mut rng) == 1));
    }
}
