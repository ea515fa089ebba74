use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::group::FGAbGroup;
use crate::error::{arg, Error, Result};
use crate::linalg::{image_mod, kernel_mod, quotient_factors, Matrix};

/// Coefficients: `ℤ`, `ℤ/m` (`m ≥ 2`) or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Ring {
    Integers,
    Modular(u64),
    Field(u64),
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl Ring {
    pub fn modular(m: u64) -> Result<Self> {
        if m < 2 {
            return arg("ℤ/m needs m ≥ 2");
        }
        Ok(Ring::Modular(m))
    }

    pub fn field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return arg(format!("{p} is not prime"));
        }
        Ok(Ring::Field(p))
    }

    /// `0` for `ℤ`.
    pub fn characteristic(self) -> u64 {
        match self {
            Ring::Integers => 0,
            Ring::Modular(m) | Ring::Field(m) => m,
        }
    }

    pub fn modulus(self) -> BigInt {
        BigInt::from(self.characteristic())
    }

    pub fn reduce(self, x: &BigInt) -> BigInt {
        match self.characteristic() {
            0 => x.clone(),
            m => num_integer::Integer::mod_floor(x, &BigInt::from(m)),
        }
    }

    pub fn reduce_vec(self, v: &[BigInt]) -> Vec<BigInt> {
        v.iter().map(|x| self.reduce(x)).collect()
    }

    pub fn is_zero_matrix(self, a: &Matrix) -> bool {
        a.reduce(&self.modulus()).is_zero()
    }

    pub fn matrices_equal(self, a: &Matrix, b: &Matrix) -> bool {
        a.rows() == b.rows() && a.cols() == b.cols() && self.is_zero_matrix(&a.sub(b))
    }

    pub fn vectors_equal(self, a: &[BigInt], b: &[BigInt]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| self.reduce(&(x - y)).is_zero())
    }

    /// Whether `other` is a quotient of this ring.
    pub fn maps_onto(self, other: Ring) -> bool {
        match (self.characteristic(), other.characteristic()) {
            (0, _) => true,
            (_, 0) => false,
            (m, n) => m % n == 0,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Modular(m) => write!(f, "Z/{m}"),
            Ring::Field(p) => write!(f, "F_{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Format(format!("unknown ring {s:?}; use Z, Z/m or F_p"));
        if s == "Z" || s == "ℤ" {
            return Ok(Ring::Integers);
        }
        if let Some(m) = s.strip_prefix("Z/").or_else(|| s.strip_prefix("ℤ/")) {
            return Ring::modular(m.parse().map_err(|_| bad())?);
        }
        if let Some(p) = s.strip_prefix("F_").or_else(|| s.strip_prefix("𝔽_")) {
            return Ring::field(p.parse().map_err(|_| bad())?);
        }
        Err(bad())
    }
}

impl TryFrom<String> for Ring {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Ring> for String {
    fn from(r: Ring) -> String {
        r.to_string()
    }
}

/// A bounded complex of finitely generated free modules, homologically
/// indexed: `d_n : C_n → C_{n-1}` is a `rank(n-1) × rank(n)` matrix.
///
/// The window `[lo, hi]` holds all nonzero terms unless an edge is flagged
/// open, in which case the complex is a truncation of a longer one and
/// homology at that edge is not determined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "super::format::ChainComplexDoc", into = "super::format::ChainComplexDoc")]
pub struct ChainComplex {
    ring: Ring,
    lo: i64,
    ranks: Vec<usize>,
    differentials: Vec<Matrix>,
    open_below: bool,
    open_above: bool,
}

impl ChainComplex {
    /// `differentials[i]` is `d_{lo+i+1}`.
    pub fn new(ring: Ring, lo: i64, ranks: Vec<usize>, differentials: Vec<Matrix>) -> Result<Self> {
        if ranks.is_empty() {
            return arg("a complex needs a nonempty window");
        }
        if differentials.len() + 1 != ranks.len() {
            return arg(format!("{} degrees need {} differentials, got {}", ranks.len(), ranks.len() - 1, differentials.len()));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.rows() != ranks[i] || d.cols() != ranks[i + 1] {
                return arg(format!(
                    "d_{} must be {}×{}, got {}×{}",
                    lo + i as i64 + 1,
                    ranks[i],
                    ranks[i + 1],
                    d.rows(),
                    d.cols()
                ));
            }
        }
        for i in 1..differentials.len() {
            if !ring.is_zero_matrix(&differentials[i - 1].mul(&differentials[i])) {
                return arg(format!("d∘d ≠ 0 from degree {}", lo + i as i64 + 1));
            }
        }
        Ok(Self { ring, lo, ranks, differentials, open_below: false, open_above: false })
    }

    pub fn zero(ring: Ring, lo: i64, hi: i64) -> Self {
        let len = (hi - lo + 1).max(1) as usize;
        Self::new(ring, lo, vec![0; len], vec![Matrix::zeros(0, 0); len - 1]).expect("zero complex")
    }

    /// `R^rank` in one degree.
    pub fn concentrated(ring: Ring, degree: i64, rank: usize) -> Self {
        Self::new(ring, degree, vec![rank], Vec::new()).expect("single term")
    }

    pub fn with_open_edges(mut self, below: bool, above: bool) -> Self {
        self.open_below = below;
        self.open_above = above;
        self
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn open_below(&self) -> bool {
        self.open_below
    }

    pub fn open_above(&self) -> bool {
        self.open_above
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: i64) -> usize {
        if self.degrees().contains(&n) {
            self.ranks[(n - self.lo) as usize]
        } else {
            0
        }
    }

    /// `d_n : C_n → C_{n-1}`, zero outside the window.
    pub fn differential(&self, n: i64) -> Matrix {
        if n > self.lo && n <= self.hi() {
            self.differentials[(n - self.lo - 1) as usize].clone()
        } else {
            Matrix::zeros(self.rank(n - 1), self.rank(n))
        }
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    /// The same complex on the window `[lo, hi]` (which must contain the
    /// current one), padded with zero terms. Open edges cannot move.
    pub fn widen(&self, lo: i64, hi: i64) -> Result<Self> {
        if lo > self.lo || hi < self.hi() {
            return arg(format!("window [{lo}, {hi}] does not contain [{}, {}]", self.lo, self.hi()));
        }
        if (lo < self.lo && self.open_below) || (hi > self.hi() && self.open_above) {
            return arg("cannot pad a truncated complex past its open edge");
        }
        let ranks: Vec<usize> = (lo..=hi).map(|n| self.rank(n)).collect();
        let diffs = (lo + 1..=hi).map(|n| self.differential(n)).collect();
        Ok(Self::new(self.ring, lo, ranks, diffs)?.with_open_edges(self.open_below, self.open_above))
    }

    /// Base change along `ℤ → ℤ/m` or `ℤ/m → ℤ/n` for `n | m`.
    pub fn change_ring(&self, ring: Ring) -> Result<Self> {
        if !self.ring.maps_onto(ring) {
            return arg(format!("{} is not a quotient of {}", ring, self.ring));
        }
        let m = ring.modulus();
        let diffs = self.differentials.iter().map(|d| d.reduce(&m)).collect();
        Ok(Self::new(ring, self.lo, self.ranks.clone(), diffs)?.with_open_edges(self.open_below, self.open_above))
    }

    /// Whether homology at `n` is determined by the window.
    pub fn is_conclusive(&self, n: i64) -> bool {
        !((n == self.lo && self.open_below) || (n == self.hi() && self.open_above))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub degree: i64,
    pub group: FGAbGroup,
    /// False at an open window edge, where `group` is only the homology of
    /// the truncation.
    pub conclusive: bool,
}

/// `H_n(C)` for every degree of the window, as an abelian group. Over
/// `ℤ/m` the cycles and boundaries are lifted to lattices containing `mℤ^r`
/// and the quotient is read off a Smith normal form.
pub fn homology(c: &ChainComplex) -> Vec<DegreeHomology> {
    let m = c.ring.modulus();
    c.degrees()
        .map(|n| {
            let cycles = kernel_mod(&c.differential(n), &m);
            let boundaries = image_mod(&c.differential(n + 1), &m);
            let factors = quotient_factors(&cycles, &boundaries).expect("boundaries are cycles");
            DegreeHomology {
                degree: n,
                group: FGAbGroup::from_factors(factors).expect("Smith factors divide"),
                conclusive: c.is_conclusive(n),
            }
        })
        .collect()
}

impl ChainComplex {
    /// True when every conclusive degree has zero homology.
    pub fn is_acyclic_where_determined(&self) -> bool {
        homology(self).iter().all(|h| !h.conclusive || h.group.is_trivial())
    }

    /// The zero vector of `C_n`.
    pub fn zero_vector(&self, n: i64) -> Vec<BigInt> {
        vec![BigInt::zero(); self.rank(n)]
    }
}
