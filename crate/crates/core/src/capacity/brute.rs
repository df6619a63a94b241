use num_rational::BigRational;
use num_traits::Zero;

use super::{CapacityResult, Metric};
use crate::channel::Channel;
use crate::decoding::Scheme;
use crate::error::CapacityError;
use crate::prob::Prob;

/// Largest input/output alphabet the exhaustive oracle accepts.
pub const BRUTE_FORCE_LIMIT: usize = 5;

/// Capacity by enumerating every codebook and every total decoder.
///
/// Errors are summed directly over the outputs each decoder sends
/// elsewhere, independently of the engines it checks.
pub fn brute_force_capacity(
    c: &Channel,
    metric: Metric,
    epsilon: &Prob,
) -> Result<CapacityResult, CapacityError> {
    let (nx, ny) = (c.num_inputs(), c.num_outputs());
    if nx > BRUTE_FORCE_LIMIT || ny > BRUTE_FORCE_LIMIT {
        return Err(CapacityError::TooLargeForBruteForce {
            limit: BRUTE_FORCE_LIMIT,
            inputs: nx,
            outputs: ny,
        });
    }
    let eps = epsilon.ratio();
    for k in (1..=nx).rev() {
        for mask in 0u32..(1 << nx) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let codebook: Vec<usize> = (0..nx).filter(|&x| mask >> x & 1 == 1).collect();
            // decoder as base-k digits: output y goes to codebook[digit_y]
            let mut digits = vec![0usize; ny];
            loop {
                let errors: Vec<BigRational> = codebook
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| {
                        (0..ny)
                            .filter(|&y| digits[y] != i)
                            .map(|y| c.prob(x, y).ratio())
                            .fold(BigRational::zero(), |a, b| a + b)
                    })
                    .collect();
                let admissible = match metric {
                    Metric::Maximum => errors.iter().all(|e| e <= eps),
                    Metric::Average => {
                        let total = errors.iter().fold(BigRational::zero(), |a, b| a + b);
                        total <= eps * BigRational::from_integer(k.into())
                    }
                };
                if admissible {
                    let decoder = digits.iter().map(|&d| codebook[d]).collect();
                    let witness = Scheme::new(codebook, decoder).expect("decoder maps into codebook");
                    return Ok(CapacityResult::new(metric, epsilon, witness));
                }
                if !advance(&mut digits, k) {
                    break;
                }
            }
        }
    }
    unreachable!("a singleton codebook always has zero error")
}

fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{gen_example1, Example1Spec};

    #[test]
    fn staircase() {
        let c = gen_example1(&Example1Spec::new(3, vec![Prob::new(1, 100), Prob::new(1, 50)]).unwrap());
        let r = brute_force_capacity(&c, Metric::Maximum, &Prob::new(1, 100)).unwrap();
        assert_eq!(r.codebook_size, 2);
        let r = brute_force_capacity(&c, Metric::Average, &Prob::new(1, 200)).unwrap();
        assert_eq!(r.codebook_size, 2);
        let r = brute_force_capacity(&c, Metric::Maximum, &Prob::new(1, 200)).unwrap();
        assert_eq!(r.codebook_size, 1);
    }

    #[test]
    fn trivial_channel() {
        let c = Channel::identity(1);
        for eps in [Prob::zero(), Prob::new(1, 2), Prob::one()] {
            for m in [Metric::Maximum, Metric::Average] {
                assert_eq!(brute_force_capacity(&c, m, &eps).unwrap().codebook_size, 1);
            }
        }
    }

    #[test]
    fn size_limit() {
        let c = Channel::identity(6);
        assert!(matches!(
            brute_force_capacity(&c, Metric::Maximum, &Prob::zero()),
            Err(CapacityError::TooLargeForBruteForce { .. })
        ));
    }

    #[test]
    fn odometer_visits_every_decoder() {
        let mut d = vec![0; 3];
        let mut n = 1;
        while advance(&mut d, 3) {
            n += 1;
        }
        assert_eq!(n, 27);
        assert_eq!(d, vec![0, 0, 0]);
    }
}
