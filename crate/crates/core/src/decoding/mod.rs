//! One-shot schemes, their exact error probabilities, and the decoding-set
//! families the graph constructions are built from.

mod simulate;

pub use simulate::{simulate, CodewordReport, SimulationReport};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::channel::Channel;
use crate::error::SchemeError;
use crate::prob::Prob;

/// A codebook together with a total decoder `output -> codeword`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SchemeJson", into = "SchemeJson")]
pub struct Scheme {
    codebook: Vec<usize>,
    decoder: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SchemeJson {
    codebook: Vec<usize>,
    decoder: Vec<usize>,
}

impl TryFrom<SchemeJson> for Scheme {
    type Error = SchemeError;

    fn try_from(js: SchemeJson) -> Result<Self, Self::Error> {
        Scheme::new(js.codebook, js.decoder)
    }
}

impl From<Scheme> for SchemeJson {
    fn from(s: Scheme) -> Self {
        SchemeJson {
            codebook: s.codebook,
            decoder: s.decoder,
        }
    }
}

impl Scheme {
    /// The codebook is stored sorted; every decoder value must be a codeword.
    pub fn new(mut codebook: Vec<usize>, decoder: Vec<usize>) -> Result<Self, SchemeError> {
        if codebook.is_empty() {
            return Err(SchemeError::EmptyCodebook);
        }
        codebook.sort_unstable();
        if let Some(w) = codebook.windows(2).find(|w| w[0] == w[1]) {
            return Err(SchemeError::DuplicateCodeword(w[0]));
        }
        if let Some((output, &target)) = decoder
            .iter()
            .enumerate()
            .find(|(_, t)| codebook.binary_search(t).is_err())
        {
            return Err(SchemeError::DecoderOutsideCodebook { output, target });
        }
        Ok(Scheme { codebook, decoder })
    }

    /// Every output decodes to `x`.
    pub fn constant(x: usize, num_outputs: usize) -> Self {
        Scheme {
            codebook: vec![x],
            decoder: vec![x; num_outputs],
        }
    }

    pub fn codebook(&self) -> &[usize] {
        &self.codebook
    }

    pub fn decoder(&self) -> &[usize] {
        &self.decoder
    }

    pub fn len(&self) -> usize {
        self.codebook.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codebook.is_empty()
    }

    /// `γ⁻¹(x)`.
    pub fn preimage(&self, x: usize) -> BitSet {
        self.decoder
            .iter()
            .enumerate()
            .filter(|(_, &t)| t == x)
            .map(|(y, _)| y)
            .collect()
    }

    /// Checks the scheme's indices against a channel's alphabets.
    pub fn check(&self, c: &Channel) -> Result<(), SchemeError> {
        if self.decoder.len() != c.num_outputs() {
            return Err(SchemeError::DecoderLength {
                expected: c.num_outputs(),
                found: self.decoder.len(),
            });
        }
        if let Some(&index) = self.codebook.iter().find(|&&x| x >= c.num_inputs()) {
            return Err(SchemeError::CodewordOutOfRange {
                index,
                num_inputs: c.num_inputs(),
            });
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, SchemeError> {
        serde_json::from_str(text).map_err(|e| SchemeError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("scheme serializes")
    }
}

/// `P(γ(Y) != x | X = x)` for each codeword, in codebook order.
pub fn codeword_errors(c: &Channel, s: &Scheme) -> Result<Vec<Prob>, SchemeError> {
    s.check(c)?;
    let mut correct = vec![BigRational::zero(); c.num_inputs()];
    for (y, &x) in s.decoder().iter().enumerate() {
        correct[x] += c.prob(x, y).ratio();
    }
    Ok(s.codebook()
        .iter()
        .map(|&x| {
            Prob::try_from_ratio(BigRational::one() - &correct[x]).expect("row mass is at most one")
        })
        .collect())
}

/// Worst-codeword error probability.
pub fn max_error(c: &Channel, s: &Scheme) -> Result<Prob, SchemeError> {
    Ok(codeword_errors(c, s)?
        .into_iter()
        .max()
        .expect("codebook is nonempty"))
}

/// Mean error probability over codewords.
pub fn avg_error(c: &Channel, s: &Scheme) -> Result<Prob, SchemeError> {
    let errs = codeword_errors(c, s)?;
    let k = BigRational::from_integer(errs.len().into());
    let total: BigRational = errs.into_iter().map(Prob::into_ratio).sum();
    Ok(Prob::try_from_ratio(total / k).expect("mean of probabilities"))
}

pub fn is_max_admissible(c: &Channel, s: &Scheme, epsilon: &Prob) -> Result<bool, SchemeError> {
    Ok(max_error(c, s)? <= *epsilon)
}

pub fn is_avg_admissible(c: &Channel, s: &Scheme, epsilon: &Prob) -> Result<bool, SchemeError> {
    Ok(avg_error(c, s)? <= *epsilon)
}

/// Inclusion-minimal output sets `D` with `P(Y in D | X = x) >= 1 - epsilon`,
/// in canonical order (size, then lexicographic).
///
/// Only outputs with positive probability can appear in a minimal set. The
/// search adds outputs in descending probability and stops a branch as soon
/// as the target is reached, so the last output added is the lightest one in
/// the set and dropping any member falls below the target: every recorded
/// set is minimal, and every minimal set is reached exactly once.
pub fn enumerate_min_decoding_sets(c: &Channel, x: usize, epsilon: &Prob) -> Vec<BitSet> {
    let target = epsilon.complement().into_ratio();
    if target.is_zero() {
        return vec![BitSet::new()];
    }
    let mut outputs: Vec<(usize, &BigRational)> = c
        .row(x)
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(y, p)| (y, p.ratio()))
        .collect();
    // stable: equal probabilities keep index order
    outputs.sort_by(|a, b| b.1.cmp(a.1));
    let mut suffix = vec![BigRational::zero(); outputs.len() + 1];
    for i in (0..outputs.len()).rev() {
        suffix[i] = &suffix[i + 1] + outputs[i].1;
    }

    struct Search<'a> {
        outputs: &'a [(usize, &'a BigRational)],
        suffix: &'a [BigRational],
        target: &'a BigRational,
        current: BitSet,
        found: Vec<BitSet>,
    }

    impl Search<'_> {
        fn dfs(&mut self, start: usize, mass: &BigRational) {
            for i in start..self.outputs.len() {
                if mass + &self.suffix[i] < *self.target {
                    return;
                }
                let (y, p) = self.outputs[i];
                let next = mass + p;
                self.current.insert(y);
                if next >= *self.target {
                    self.found.push(self.current.clone());
                } else {
                    self.dfs(i + 1, &next);
                }
                self.current.remove(y);
            }
        }
    }

    let mut search = Search {
        outputs: &outputs,
        suffix: &suffix,
        target: &target,
        current: BitSet::new(),
        found: Vec::new(),
    };
    search.dfs(0, &BigRational::zero());
    let mut found = search.found;
    found.sort();
    found
}

/// Every output subset with `P(Y in D | X = x) >= 1 - epsilon`, by
/// enumeration of all `2^|Y|` subsets. Canonical order.
pub fn enumerate_all_decoding_sets(c: &Channel, x: usize, epsilon: &Prob) -> Vec<BitSet> {
    let target = epsilon.complement().into_ratio();
    subsets_where(c.num_outputs(), |s| c.mass(x, s) >= target)
}

/// Every output subset with positive mass under `x`. Canonical order.
pub fn enumerate_positive_sets(c: &Channel, x: usize) -> Vec<BitSet> {
    subsets_where(c.num_outputs(), |s| !c.mass(x, s).is_zero())
}

fn subsets_where(n: usize, mut keep: impl FnMut(&BitSet) -> bool) -> Vec<BitSet> {
    assert!(n < 32, "exhaustive subset enumeration over {n} outputs");
    let mut out: Vec<BitSet> = (0u32..1 << n)
        .map(|mask| (0..n).filter(|&y| mask >> y & 1 == 1).collect::<BitSet>())
        .filter(|s| keep(s))
        .collect();
    out.sort();
    out
}

/// Per-input decoding-set families for one threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodingSetFamily {
    epsilon: Prob,
    sets: Vec<Vec<BitSet>>,
}

impl DecodingSetFamily {
    /// Inclusion-minimal members of `D_ε(x)` for every input.
    pub fn minimal(c: &Channel, epsilon: &Prob) -> Self {
        DecodingSetFamily {
            epsilon: epsilon.clone(),
            sets: (0..c.num_inputs())
                .map(|x| enumerate_min_decoding_sets(c, x, epsilon))
                .collect(),
        }
    }

    /// All members of `D_ε(x)` for every input.
    pub fn exhaustive(c: &Channel, epsilon: &Prob) -> Self {
        DecodingSetFamily {
            epsilon: epsilon.clone(),
            sets: (0..c.num_inputs())
                .map(|x| enumerate_all_decoding_sets(c, x, epsilon))
                .collect(),
        }
    }

    pub fn epsilon(&self) -> &Prob {
        &self.epsilon
    }

    pub fn sets(&self, x: usize) -> &[BitSet] {
        &self.sets[x]
    }

    pub fn num_inputs(&self) -> usize {
        self.sets.len()
    }
}

/// The decoder minimizing average error for a fixed codebook: each output
/// goes to the codeword most likely to have produced it (smallest index on
/// ties, so outputs no codeword can reach go to the smallest codeword).
pub fn optimal_avg_decoder(c: &Channel, codebook: &[usize]) -> Result<Scheme, SchemeError> {
    let mut cb = codebook.to_vec();
    cb.sort_unstable();
    if let Some(&index) = cb.iter().find(|&&x| x >= c.num_inputs()) {
        return Err(SchemeError::CodewordOutOfRange {
            index,
            num_inputs: c.num_inputs(),
        });
    }
    let first = *cb.first().ok_or(SchemeError::EmptyCodebook)?;
    let decoder = (0..c.num_outputs())
        .map(|y| {
            cb.iter().fold(first, |best, &x| {
                if c.prob(x, y) > c.prob(best, y) {
                    x
                } else {
                    best
                }
            })
        })
        .collect();
    Scheme::new(cb, decoder)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{gen_example1, gen_random, Example1Spec};

    fn staircase() -> Channel {
        gen_example1(&Example1Spec::new(3, vec![Prob::new(1, 100), Prob::new(1, 50)]).unwrap())
    }

    fn set(v: &[usize]) -> BitSet {
        v.iter().copied().collect()
    }

    fn staircase_scheme() -> Scheme {
        Scheme::new(vec![1, 2], vec![2, 1, 2]).unwrap()
    }

    #[test]
    fn scheme_validation() {
        assert_eq!(Scheme::new(vec![], vec![]), Err(SchemeError::EmptyCodebook));
        assert_eq!(
            Scheme::new(vec![1, 1], vec![1]),
            Err(SchemeError::DuplicateCodeword(1))
        );
        assert_eq!(
            Scheme::new(vec![0, 1], vec![0, 2]),
            Err(SchemeError::DecoderOutsideCodebook { output: 1, target: 2 })
        );
        let c = staircase();
        let s = Scheme::new(vec![0, 5], vec![0, 0, 0]).unwrap();
        assert!(matches!(max_error(&c, &s), Err(SchemeError::CodewordOutOfRange { index: 5, .. })));
        let s = Scheme::new(vec![0], vec![0, 0]).unwrap();
        assert!(matches!(avg_error(&c, &s), Err(SchemeError::DecoderLength { .. })));
    }

    #[test]
    fn scheme_json() {
        let s = staircase_scheme();
        let js = s.to_json();
        assert_eq!(js, r#"{"codebook":[1,2],"decoder":[2,1,2]}"#);
        assert_eq!(Scheme::from_json(&js).unwrap(), s);
        assert!(Scheme::from_json(r#"{"codebook":[1],"decoder":[0]}"#).is_err());
    }

    #[test]
    fn staircase_errors() {
        let c = staircase();
        let s = staircase_scheme();
        assert_eq!(max_error(&c, &s).unwrap(), Prob::new(1, 100));
        assert_eq!(avg_error(&c, &s).unwrap(), Prob::new(1, 200));
        assert!(is_max_admissible(&c, &s, &Prob::new(1, 100)).unwrap());
        assert!(!is_max_admissible(&c, &s, &Prob::new(1, 200)).unwrap());
        assert!(is_avg_admissible(&c, &s, &Prob::new(1, 200)).unwrap());
        assert!(is_max_admissible(&c, &s, &Prob::one()).unwrap());
        assert!(is_avg_admissible(&c, &s, &Prob::one()).unwrap());
    }

    #[test]
    fn identity_and_constant_schemes() {
        let c = Channel::identity(4);
        let s = Scheme::new(vec![0, 1, 2, 3], vec![0, 1, 2, 3]).unwrap();
        assert!(max_error(&c, &s).unwrap().is_zero());
        let r = gen_random(3, 4, 5, 9).unwrap();
        assert!(avg_error(&r, &Scheme::constant(2, 4)).unwrap().is_zero());
    }

    #[test]
    fn random_scheme_matches_hand_sum() {
        let c = gen_random(3, 3, 11, 10).unwrap();
        let s = Scheme::new(vec![0, 2], vec![2, 0, 0]).unwrap();
        // x=0 decodes from {1,2}, x=2 decodes from {0}
        let e0 = BigRational::one() - c.prob(0, 1).ratio() - c.prob(0, 2).ratio();
        let e2 = BigRational::one() - c.prob(2, 0).ratio();
        let errs = codeword_errors(&c, &s).unwrap();
        assert_eq!(errs[0].ratio(), &e0);
        assert_eq!(errs[1].ratio(), &e2);
        let worst = if e0 > e2 { e0.clone() } else { e2.clone() };
        assert_eq!(max_error(&c, &s).unwrap().into_ratio(), worst);
        assert_eq!(avg_error(&c, &s).unwrap().into_ratio(), (e0 + e2) / BigRational::from_integer(2.into()));
    }

    #[test]
    fn staircase_minimal_sets() {
        let c = staircase();
        let eps = Prob::new(1, 100);
        assert_eq!(enumerate_min_decoding_sets(&c, 1, &eps), vec![set(&[1])]);
        assert_eq!(enumerate_min_decoding_sets(&c, 2, &eps), vec![set(&[0, 2])]);
        assert_eq!(enumerate_min_decoding_sets(&c, 0, &eps), vec![set(&[0])]);
        assert_eq!(enumerate_min_decoding_sets(&c, 0, &Prob::zero()), vec![set(&[0])]);
        assert_eq!(enumerate_min_decoding_sets(&c, 1, &Prob::one()), vec![BitSet::new()]);
    }

    #[test]
    fn ties_produce_every_minimal_set() {
        let q = Prob::new(1, 4);
        let c = Channel::new(vec![vec![q.clone(), q.clone(), q.clone(), q]]).unwrap();
        let sets = enumerate_min_decoding_sets(&c, 0, &Prob::new(1, 2));
        assert_eq!(sets.len(), 6);
        assert!(sets.iter().all(|s| s.len() == 2));
    }

    #[test]
    fn families() {
        let c = staircase();
        let eps = Prob::new(1, 100);
        let min = DecodingSetFamily::minimal(&c, &eps);
        let all = DecodingSetFamily::exhaustive(&c, &eps);
        assert_eq!(min.epsilon(), &eps);
        assert_eq!(all.sets(2), &[set(&[0, 2]), set(&[0, 1, 2])]);
        assert_eq!(all.sets(1).len(), 4);
        assert_eq!(min.num_inputs(), 3);
        assert_eq!(enumerate_positive_sets(&c, 2).len(), 6);
    }

    #[test]
    fn optimal_decoder_staircase() {
        let c = staircase();
        let s = optimal_avg_decoder(&c, &[2, 1]).unwrap();
        assert_eq!(s.decoder(), &[2, 1, 2]);
        assert_eq!(avg_error(&c, &s).unwrap(), Prob::new(1, 200));
        let id = Channel::identity(3);
        let s = optimal_avg_decoder(&id, &[0, 1, 2]).unwrap();
        assert_eq!(s.decoder(), &[0, 1, 2]);
        assert!(optimal_avg_decoder(&id, &[]).is_err());
        // output 2 is unreachable from {0,1}: smallest codeword
        let s = optimal_avg_decoder(&id, &[1, 0]).unwrap();
        assert_eq!(s.decoder(), &[0, 1, 0]);
    }
}
