//! The simplex category: monotone maps `[m] -> [n]` stored as value tables.
//!
//! `[n]` is the ordinal `{0, ..., n}`. A map is kept as the dense list of its
//! values, so composition is a table lookup and equality of maps is equality of
//! tables. Generator words (faces and degeneracies) are computed on demand.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{arg, Result};

/// A weakly increasing map `[source] -> [target]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrdinalMap {
    source: usize,
    target: usize,
    values: Vec<usize>,
}

/// Which family of generators a [`generator`] call should produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    Face,
    Degeneracy,
}

impl OrdinalMap {
    /// Builds a map from its value table, checking monotonicity and range.
    pub fn new(target: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return arg("an ordinal map needs at least one value");
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return arg(format!("values {values:?} are not weakly increasing"));
        }
        if values.iter().any(|&v| v > target) {
            return arg(format!("values {values:?} exceed target [{target}]"));
        }
        Ok(Self { source: values.len() - 1, target, values })
    }

    pub(crate) fn from_values_unchecked(target: usize, values: Vec<usize>) -> Self {
        debug_assert!(Self::new(target, values.clone()).is_ok());
        Self { source: values.len() - 1, target, values }
    }

    pub fn identity(n: usize) -> Self {
        Self { source: n, target: n, values: (0..=n).collect() }
    }

    /// The face `δ^i : [n-1] -> [n]`, the injection missing `i`.
    pub fn face(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i > n {
            return arg(format!("face δ^{i} into [{n}] does not exist"));
        }
        let values = (0..n).map(|k| if k < i { k } else { k + 1 }).collect();
        Ok(Self { source: n - 1, target: n, values })
    }

    /// The degeneracy `σ^i : [n] -> [n-1]`, the surjection hitting `i` twice.
    pub fn degeneracy(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i >= n {
            return arg(format!("degeneracy σ^{i} out of [{n}] does not exist"));
        }
        let values = (0..=n).map(|k| if k <= i { k } else { k - 1 }).collect();
        Ok(Self { source: n, target: n - 1, values })
    }

    /// The constant map `[m] -> [n]` with value `v`.
    pub fn constant(m: usize, n: usize, v: usize) -> Result<Self> {
        Self::new(n, vec![v; m + 1])
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, k: usize) -> usize {
        self.values[k]
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.values.iter().enumerate().all(|(k, &v)| k == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && self.values[self.source] == self.target
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `g ∘ f`, i.e. first `f` then `self`.
    pub fn after(&self, f: &OrdinalMap) -> Result<OrdinalMap> {
        compose(self, f)
    }

    /// Positions `i` with `f(i) = f(i+1)`, in increasing order.
    pub fn collapsed_positions(&self) -> Vec<usize> {
        (0..self.source).filter(|&i| self.values[i] == self.values[i + 1]).collect()
    }

    /// Values of `[target]` not hit by the map, in increasing order.
    pub fn missed_values(&self) -> Vec<usize> {
        let mut hit = vec![false; self.target + 1];
        for &v in &self.values {
            hit[v] = true;
        }
        (0..=self.target).filter(|&v| !hit[v]).collect()
    }

    /// Face indices of an injection, outermost first: `f = δ^{j_s} ∘ … ∘ δ^{j_1}`
    /// with `j_s > … > j_1`.
    pub fn face_word(&self) -> Option<Vec<usize>> {
        if !self.is_injective() {
            return None;
        }
        let mut word = self.missed_values();
        word.reverse();
        Some(word)
    }

    /// Degeneracy indices of a surjection, outermost first:
    /// `s = σ^{i_1} ∘ … ∘ σ^{i_t}` with `i_1 < … < i_t`.
    pub fn degeneracy_word(&self) -> Option<Vec<usize>> {
        if !self.is_surjective() {
            return None;
        }
        Some(self.collapsed_positions())
    }

    /// The surjective part of the epi-mono factorization.
    pub fn image_surjection(&self) -> OrdinalMap {
        let mut values = Vec::with_capacity(self.source + 1);
        let mut level = 0;
        for k in 0..=self.source {
            if k > 0 && self.values[k] != self.values[k - 1] {
                level += 1;
            }
            values.push(level);
        }
        OrdinalMap { source: self.source, target: level, values }
    }

    /// The injective part of the epi-mono factorization.
    pub fn image_injection(&self) -> OrdinalMap {
        let mut values = self.values.clone();
        values.dedup();
        OrdinalMap { source: values.len() - 1, target: self.target, values }
    }

    /// Reverses the orientation of both ordinals: `k ↦ n − f(m − k)`.
    pub fn opposite(&self) -> OrdinalMap {
        let m = self.source;
        let n = self.target;
        let values = (0..=m).map(|k| n - self.values[m - k]).collect();
        OrdinalMap { source: m, target: n, values }
    }
}

impl fmt::Debug for OrdinalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]→[{}]{:?}", self.source, self.target, self.values)
    }
}

impl fmt::Display for OrdinalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn generator(kind: GeneratorKind, n: usize, i: usize) -> Result<OrdinalMap> {
    match kind {
        GeneratorKind::Face => OrdinalMap::face(n, i),
        GeneratorKind::Degeneracy => OrdinalMap::degeneracy(n, i),
    }
}

/// `g ∘ f`: apply `f` first.
pub fn compose(g: &OrdinalMap, f: &OrdinalMap) -> Result<OrdinalMap> {
    if f.target != g.source {
        return arg(format!("cannot compose {g:?} after {f:?}"));
    }
    Ok(OrdinalMap {
        source: f.source,
        target: g.target,
        values: f.values.iter().map(|&v| g.values[v]).collect(),
    })
}

/// Unique factorization `f = mono ∘ epi` with `epi` surjective and `mono` injective.
pub fn epi_mono_factorize(f: &OrdinalMap) -> (OrdinalMap, OrdinalMap) {
    (f.image_surjection(), f.image_injection())
}

/// Rebuilds a map from a face word (outermost first) starting at `[source]`.
pub fn from_face_word(source: usize, word: &[usize]) -> Result<OrdinalMap> {
    let mut map = OrdinalMap::identity(source);
    for &i in word.iter().rev() {
        map = compose(&OrdinalMap::face(map.target + 1, i)?, &map)?;
    }
    Ok(map)
}

/// Rebuilds a map from a degeneracy word (outermost first) starting at `[source]`.
pub fn from_degeneracy_word(source: usize, word: &[usize]) -> Result<OrdinalMap> {
    let mut map = OrdinalMap::identity(source);
    for &i in word.iter().rev() {
        if map.target == 0 {
            return arg("degeneracy word too long");
        }
        map = compose(&OrdinalMap::degeneracy(map.target, i)?, &map)?;
    }
    Ok(map)
}

/// All monotone maps `[m] -> [n]`, in lexicographic order of value tables.
pub fn all_maps(m: usize, n: usize) -> Vec<OrdinalMap> {
    let mut out = Vec::new();
    let mut values = vec![0usize; m + 1];
    fn rec(pos: usize, lo: usize, n: usize, values: &mut Vec<usize>, out: &mut Vec<OrdinalMap>) {
        if pos == values.len() {
            out.push(OrdinalMap { source: values.len() - 1, target: n, values: values.clone() });
            return;
        }
        for v in lo..=n {
            values[pos] = v;
            rec(pos + 1, v, n, values, out);
        }
    }
    rec(0, 0, n, &mut values, &mut out);
    out
}

/// All surjections `[m] -> [n]`.
pub fn surjections(m: usize, n: usize) -> Vec<OrdinalMap> {
    if n > m {
        return Vec::new();
    }
    // A surjection is determined by which n of the m gaps step up.
    let mut out = Vec::new();
    for steps in subsets(m, n) {
        let mut values = Vec::with_capacity(m + 1);
        let mut level = 0;
        values.push(0);
        for gap in 0..m {
            if steps.contains(&gap) {
                level += 1;
            }
            values.push(level);
        }
        out.push(OrdinalMap { source: m, target: n, values });
    }
    out.sort();
    out
}

/// All injections `[m] -> [n]`.
pub fn injections(m: usize, n: usize) -> Vec<OrdinalMap> {
    subsets(n + 1, m + 1)
        .into_iter()
        .map(|values| OrdinalMap { source: m, target: n, values })
        .collect()
}

/// Increasing `k`-element subsets of `{0, …, size-1}` in lexicographic order.
pub fn subsets(size: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, size: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let remaining = k - cur.len();
        for v in start..size {
            if size - v < remaining {
                break;
            }
            cur.push(v);
            rec(v + 1, size, k, cur, out);
            cur.pop();
        }
    }
    rec(0, size, k, &mut cur, &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
