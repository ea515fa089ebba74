use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::complex::{ChainComplex, Ring};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// An integer in JSON: a number when it fits in `i64`, a decimal string
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntEntry {
    Small(i64),
    Big(String),
}

pub fn entries_to_json(v: &[BigInt]) -> Vec<IntEntry> {
    v.iter().map(|x| x.to_i64().map_or_else(|| IntEntry::Big(x.to_string()), IntEntry::Small)).collect()
}

pub fn entries_from_json(v: &[IntEntry]) -> Result<Vec<BigInt>> {
    v.iter()
        .map(|e| match e {
            IntEntry::Small(x) => Ok(BigInt::from(*x)),
            IntEntry::Big(s) => s.parse().map_err(|_| Error::Format(format!("{s:?} is not an integer"))),
        })
        .collect()
}

pub(crate) fn matrix_to_json(m: &Matrix) -> Vec<Vec<IntEntry>> {
    (0..m.rows()).map(|r| entries_to_json(m.row(r))).collect()
}

pub(crate) fn matrix_from_json(rows: &[Vec<IntEntry>], shape: (usize, usize)) -> Result<Matrix> {
    let (r, c) = shape;
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(Error::Format(format!("expected a {r}×{c} matrix")));
    }
    let data = rows.iter().map(|row| entries_from_json(row)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_vec(r, c, data.into_iter().flatten().collect()))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Indexing {
    /// `d : C_n → C_{n-1}`.
    #[default]
    Homological,
    /// `d : X^n → X^{n+1}`, read as `C_{-n} = X^n`.
    Cohomological,
}

fn is_default<T: Default + PartialEq>(x: &T) -> bool {
    *x == T::default()
}

/// Text form of a complex. `differentials[i]` leaves degree `lo + i + 1`
/// (homological) or degree `lo + i` (cohomological), as a list of rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplexDoc {
    pub ring: Ring,
    #[serde(default, skip_serializing_if = "is_default")]
    pub indexing: Indexing,
    pub lo: i64,
    pub ranks: Vec<usize>,
    pub differentials: Vec<Vec<Vec<IntEntry>>>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub open_below: bool,
    #[serde(default, skip_serializing_if = "is_default")]
    pub open_above: bool,
}

impl ChainComplexDoc {
    pub fn from_complex(c: &ChainComplex, indexing: Indexing) -> Self {
        match indexing {
            Indexing::Homological => Self {
                ring: c.ring(),
                indexing,
                lo: c.lo(),
                ranks: c.ranks().to_vec(),
                differentials: c.differentials().iter().map(matrix_to_json).collect(),
                open_below: c.open_below(),
                open_above: c.open_above(),
            },
            Indexing::Cohomological => Self {
                ring: c.ring(),
                indexing,
                lo: -c.hi(),
                ranks: c.ranks().iter().rev().copied().collect(),
                differentials: c.differentials().iter().rev().map(matrix_to_json).collect(),
                open_below: c.open_above(),
                open_above: c.open_below(),
            },
        }
    }

    pub fn to_complex(&self) -> Result<ChainComplex> {
        if self.ranks.is_empty() || self.differentials.len() + 1 != self.ranks.len() {
            return Err(Error::Format("need one rank per degree and one differential between consecutive degrees".into()));
        }
        let (lo, ranks, rows, below, above): (i64, Vec<usize>, Vec<&Vec<Vec<IntEntry>>>, bool, bool) = match self.indexing {
            Indexing::Homological => (self.lo, self.ranks.clone(), self.differentials.iter().collect(), self.open_below, self.open_above),
            Indexing::Cohomological => (
                -(self.lo + self.ranks.len() as i64 - 1),
                self.ranks.iter().rev().copied().collect(),
                self.differentials.iter().rev().collect(),
                self.open_above,
                self.open_below,
            ),
        };
        let diffs = rows
            .iter()
            .enumerate()
            .map(|(i, m)| matrix_from_json(m, (ranks[i], ranks[i + 1])))
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainComplex::new(self.ring, lo, ranks, diffs).map_err(|e| Error::Format(e.to_string()))?.with_open_edges(below, above))
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl ChainComplex {
    pub fn from_json(text: &str) -> Result<Self> {
        ChainComplexDoc::parse(text)?.to_complex()
    }

    pub fn to_json(&self) -> String {
        ChainComplexDoc::from_complex(self, Indexing::Homological).to_json()
    }
}

/// `#[serde(with = "…")]` for integer vectors in the `IntEntry` form.
pub(crate) mod int_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        entries_to_json(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
        entries_from_json(&Vec::<IntEntry>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Same for lists of integer vectors.
pub(crate) mod int_vecs {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(|x| entries_to_json(x)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<IntEntry>>::deserialize(d)?.iter().map(|x| entries_from_json(x).map_err(serde::de::Error::custom)).collect()
    }
}

impl From<ChainComplex> for ChainComplexDoc {
    fn from(c: ChainComplex) -> Self {
        Self::from_complex(&c, Indexing::Homological)
    }
}

impl TryFrom<ChainComplexDoc> for ChainComplex {
    type Error = Error;

    fn try_from(doc: ChainComplexDoc) -> Result<Self> {
        doc.to_complex()
    }
}
