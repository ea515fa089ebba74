use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::format::{entries_from_json, entries_to_json, IntEntry};
use crate::error::{Error, Result};
use crate::linalg::{smith, Matrix};

/// A finitely generated abelian group `ℤ/f_1 ⊕ … ⊕ ℤ/f_k ⊕ ℤ^r` by invariant
/// factors: the torsion factors in divisibility order, then one `0` per
/// copy of `ℤ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FGAbGroup {
    factors: Vec<BigInt>,
}

impl FGAbGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn integers() -> Self {
        Self { factors: vec![BigInt::zero()] }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_diagonal(&[BigInt::from(n)])
    }

    /// Checks the invariant-factor form; factors equal to 1 are dropped.
    pub fn from_factors(factors: Vec<BigInt>) -> Result<Self> {
        let factors: Vec<BigInt> = factors.into_iter().filter(|f| !f.is_one()).collect();
        if factors.iter().any(|f| f < &BigInt::zero()) {
            return Err(Error::Argument("invariant factors are natural numbers".into()));
        }
        for w in factors.windows(2) {
            let ok = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_zero() || w[1].is_multiple_of(&w[0]) };
            if !ok {
                return Err(Error::Argument(format!("invariant factor {} does not divide {}", w[0], w[1])));
            }
        }
        Ok(Self { factors })
    }

    /// `⊕ ℤ/d_i` for arbitrary `d_i`, brought into invariant-factor form.
    pub fn from_diagonal(d: &[BigInt]) -> Self {
        let mut m = Matrix::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        let s = smith(&m);
        let free = d.len() - s.rank();
        let mut factors: Vec<BigInt> = s.diagonal.into_iter().filter(|f| !f.is_one()).collect();
        factors.extend(std::iter::repeat_n(BigInt::zero(), free));
        Self { factors }
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|f| f.is_zero()).count()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|f| !f.is_zero()).cloned().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn direct_sum(&self, other: &FGAbGroup) -> FGAbGroup {
        let all: Vec<BigInt> = self.factors.iter().chain(&other.factors).cloned().collect();
        Self::from_diagonal(&all)
    }
}

impl fmt::Display for FGAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| if x.is_zero() { "ℤ".to_string() } else { format!("ℤ/{x}") }).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl Serialize for FGAbGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        entries_to_json(&self.factors).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FGAbGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<IntEntry>::deserialize(d)?;
        let factors = entries_from_json(&raw).map_err(serde::de::Error::custom)?;
        Self::from_factors(factors).map_err(serde::de::Error::custom)
    }
}
