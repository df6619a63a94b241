//! Exact probabilities.
//!
//! Every probability and every error threshold in the crate is an exact
//! rational. Decimal text such as `0.01` is read as `1/100`, never through
//! binary floating point.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseProbError;

/// Parses an exact rational from `p/q`, an integer, or a finite decimal.
///
/// Signs are accepted here; range checks belong to the caller.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseProbError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseProbError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_int(num.trim(), s)?;
        let den = parse_int(den.trim(), s)?;
        if den.is_zero() {
            return Err(ParseProbError::ZeroDenominator(s.to_string()));
        }
        return Ok(BigRational::new(num, den));
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(ParseProbError::Syntax(s.to_string()));
    }
    let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(ParseProbError::Syntax(s.to_string()));
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits
            .parse()
            .map_err(|_| ParseProbError::Syntax(s.to_string()))?
    };
    if negative {
        numer = -numer;
    }
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    Ok(BigRational::new(numer, denom))
}

fn parse_int(t: &str, whole: &str) -> Result<BigInt, ParseProbError> {
    if t.is_empty() || !t.trim_start_matches(['-', '+']).bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseProbError::Syntax(whole.to_string()));
    }
    t.parse().map_err(|_| ParseProbError::Syntax(whole.to_string()))
}

/// Renders a rational as `p/q` (or `p` when the denominator is 1).
pub fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An exact probability in `[0, 1]`, always in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Prob(BigRational);

impl Prob {
    pub fn zero() -> Self {
        Prob(BigRational::zero())
    }

    pub fn one() -> Self {
        Prob(BigRational::one())
    }

    /// `num/den`, panicking if the value is not a probability.
    ///
    /// Meant for literals; use [`Prob::try_from_ratio`] for untrusted input.
    pub fn new(num: i64, den: i64) -> Self {
        Self::try_from_ratio(BigRational::new(num.into(), den.into()))
            .unwrap_or_else(|v| panic!("{} is not a probability", fmt_rational(&v)))
    }

    /// Returns the value back if it lies outside `[0, 1]`.
    pub fn try_from_ratio(value: BigRational) -> Result<Self, BigRational> {
        if value.is_negative() || value > BigRational::one() {
            Err(value)
        } else {
            Ok(Prob(value))
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseProbError> {
        let value = parse_rational(text)?;
        Self::try_from_ratio(value).map_err(|_| ParseProbError::OutOfRange(text.trim().to_string()))
    }

    pub fn ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn into_ratio(self) -> BigRational {
        self.0
    }

    /// `1 - p`.
    pub fn complement(&self) -> Prob {
        Prob(BigRational::one() - &self.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Lossy conversion, for reporting only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl PartialOrd for Prob {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Prob {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for Prob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(&self.0))
    }
}

impl fmt::Debug for Prob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Prob({self})")
    }
}

impl FromStr for Prob {
    type Err = ParseProbError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Prob::parse(s)
    }
}

impl Serialize for Prob {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Prob {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Prob::parse(&s).map_err(serde::de::Error::custom)
    }
}
