use std::fmt;
use std::ops::{Deref, DerefMut};

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Subset;
use crate::error::{Error, Result};

/// Integer vector indexed by the ground set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVec(pub Vec<i64>);

impl IntVec {
    pub fn new(components: Vec<i64>) -> Self {
        IntVec(components)
    }

    pub fn constant(n: usize, value: i64) -> Self {
        IntVec(vec![value; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `x̃(X)`, the sum of the components in `X`.
    pub fn sum_over(&self, set: Subset) -> i128 {
        set.iter().map(|i| self.0[i] as i128).sum()
    }

    pub fn total(&self) -> i128 {
        self.0.iter().map(|&v| v as i128).sum()
    }

    /// Square-sum `W(x)`.
    pub fn square_sum(&self) -> i128 {
        self.0.iter().map(|&v| (v as i128) * (v as i128)).sum()
    }

    /// `self + χ_s − χ_t`.
    pub fn moved(&self, s: usize, t: usize) -> IntVec {
        let mut out = self.clone();
        out.0[s] += 1;
        out.0[t] -= 1;
        out
    }

    /// Components sorted in decreasing order (the dec-min profile).
    pub fn decreasing_profile(&self) -> Vec<i64> {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn increasing_profile(&self) -> Vec<i64> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }

    pub fn to_rational(&self) -> RatVec {
        RatVec(
            self.0
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    pub fn max_value(&self) -> Option<i64> {
        self.0.iter().copied().max()
    }

    /// `X` is x-top when every value inside is at least every value outside.
    pub fn is_top(&self, set: Subset) -> bool {
        let inside = set.iter().map(|i| self.0[i]).min();
        let outside = (0..self.dim())
            .filter(|&i| !set.contains(i))
            .map(|i| self.0[i])
            .max();
        match (inside, outside) {
            (Some(lo), Some(hi)) => lo >= hi,
            _ => true,
        }
    }

    /// Values on `set` lie in `{ℓ, ℓ+1}` for some `ℓ`.
    pub fn is_near_uniform_on(&self, set: Subset) -> bool {
        let values = set.iter().map(|i| self.0[i]);
        match (values.clone().min(), values.max()) {
            (Some(lo), Some(hi)) => hi - lo <= 1,
            _ => true,
        }
    }
}

impl Deref for IntVec {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl DerefMut for IntVec {
    fn deref_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }
}

impl From<Vec<i64>> for IntVec {
    fn from(v: Vec<i64>) -> Self {
        IntVec(v)
    }
}

impl fmt::Debug for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Exact rational vector indexed by the ground set.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatVec(pub Vec<BigRational>);

impl RatVec {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn from_fractions(pairs: &[(i64, i64)]) -> Self {
        RatVec(pairs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    pub fn floor(&self) -> Result<IntVec> {
        self.0
            .iter()
            .map(|q| to_i64(&q.floor().to_integer()))
            .collect::<Result<Vec<_>>>()
            .map(IntVec)
    }

    pub fn ceil(&self) -> Result<IntVec> {
        self.0
            .iter()
            .map(|q| to_i64(&q.ceil().to_integer()))
            .collect::<Result<Vec<_>>>()
            .map(IntVec)
    }

    pub fn sum_over(&self, set: Subset) -> BigRational {
        set.iter().map(|i| &self.0[i]).sum()
    }

    pub fn square_sum(&self) -> BigRational {
        self.0.iter().map(|q| q * q).sum()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|q| q.is_integer())
    }

    /// Least common denominator `D` and the integer vector `D·x`.
    pub fn scaled(&self) -> Result<(i128, Vec<i128>)> {
        let den = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints = self
            .0
            .iter()
            .map(|q| to_i128(&(q.numer() * (&den / q.denom()))))
            .collect::<Result<Vec<_>>>()?;
        Ok((to_i128(&den)?, ints))
    }

    /// Distinct component values in decreasing order.
    pub fn distinct_values_desc(&self) -> Vec<BigRational> {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.dedup();
        v
    }
}

impl Deref for RatVec {
    type Target = [BigRational];

    fn deref(&self) -> &[BigRational] {
        &self.0
    }
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for RatVec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for RatVec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(deserializer)?;
        raw.iter()
            .map(rational_from_json)
            .collect::<Result<Vec<_>>>()
            .map(RatVec)
            .map_err(serde::de::Error::custom)
    }
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn rat_int(v: i128) -> BigRational {
    BigRational::from_integer(v.into())
}

pub fn to_i128(v: &BigInt) -> Result<i128> {
    v.to_i128().ok_or(Error::Overflow)
}

pub fn to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64().ok_or(Error::Overflow)
}

/// Canonical `"num/den"` text form (denominator always present, lowest terms).
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"num/den"`, `"num"`, or a decimal-free integer.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Invalid(format!("not a rational number: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn rational_from_json(v: &serde_json::Value) -> Result<BigRational> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(|i| rat(i, 1))
            .ok_or_else(|| Error::Invalid(format!("non-integer JSON number {n}; use \"num/den\""))),
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(Error::Invalid(format!("expected a rational, got {other}"))),
    }
}

/// `⌈num/den⌉` for `den > 0`.
pub fn ceil_div(num: i128, den: i128) -> i128 {
    debug_assert!(den > 0);
    -(-num).div_euclid(den)
}

pub fn floor_div(num: i128, den: i128) -> i128 {
    debug_assert!(den > 0);
    num.div_euclid(den)
}

/// Piecewise-linear extension of `k ↦ k²` through the integer points:
/// `(2k+1)|ξ| − k(k+1)` with `k = ⌊|ξ|⌋`.
pub fn phi_bar(xi: &BigRational) -> BigRational {
    let a = xi.abs();
    let k = a.floor();
    let two = BigRational::from_integer(2.into());
    (&two * &k + BigRational::one()) * &a - &k * (&k + BigRational::one())
}

/// `W̄(x) = Σ φ̄(x(s))`.
pub fn w_bar(x: &RatVec) -> BigRational {
    x.0.iter().map(phi_bar).sum()
}
