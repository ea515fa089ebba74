//! Chain maps between bounded complexes: mapping cones, quasi-isomorphism
//! tests, joining variables and the two factorizations of the projective
//! model structure.

mod factor;

pub use factor::{
    factor_cofib_trivfib, factor_cofib_trivfib_partial, factor_trivcofib_fib, CofibrationKind, FactorizationCertificate,
    JoinedVariable, StageRecord, SurjectivityWitness,
};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::doldkan::{homology, matrix_from_json, matrix_to_json, ChainComplex, DegreeHomology, IntEntry};
use crate::error::{arg, Error, Result};
use crate::linalg::{image_mod, kernel_mod, Matrix};

/// `f : X → Y` with `f_n` a `rank_Y(n) × rank_X(n)` matrix for every degree
/// of the common window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ChainMapDoc", into = "ChainMapDoc")]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    matrices: Vec<Matrix>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainMapDoc {
    pub source: ChainComplex,
    pub target: ChainComplex,
    /// One matrix per degree of the window, lowest first, as rows.
    pub matrices: Vec<Vec<Vec<IntEntry>>>,
}

impl From<ChainMap> for ChainMapDoc {
    fn from(f: ChainMap) -> Self {
        let matrices = f.matrices.iter().map(matrix_to_json).collect();
        Self { source: f.source, target: f.target, matrices }
    }
}

impl TryFrom<ChainMapDoc> for ChainMap {
    type Error = Error;

    fn try_from(doc: ChainMapDoc) -> Result<Self> {
        if doc.matrices.len() != doc.source.ranks().len() {
            return Err(Error::Format("need one matrix per degree".into()));
        }
        let matrices = doc
            .source
            .degrees()
            .zip(&doc.matrices)
            .map(|(n, m)| matrix_from_json(m, (doc.target.rank(n), doc.source.rank(n))))
            .collect::<Result<Vec<_>>>()?;
        ChainMap::new(doc.source, doc.target, matrices)
    }
}

impl ChainMap {
    pub fn new(source: ChainComplex, target: ChainComplex, matrices: Vec<Matrix>) -> Result<Self> {
        if source.ring() != target.ring() {
            return arg(format!("source is over {} but target is over {}", source.ring(), target.ring()));
        }
        if source.degrees() != target.degrees() {
            return arg(format!(
                "windows differ: [{}, {}] and [{}, {}]",
                source.lo(),
                source.hi(),
                target.lo(),
                target.hi()
            ));
        }
        if matrices.len() != source.ranks().len() {
            return arg("need one matrix per degree");
        }
        for (n, m) in source.degrees().zip(&matrices) {
            if m.rows() != target.rank(n) || m.cols() != source.rank(n) {
                return arg(format!("f_{n} must be {}×{}", target.rank(n), source.rank(n)));
            }
        }
        let f = Self { source, target, matrices };
        let ring = f.ring_of();
        for n in f.source.lo() + 1..=f.source.hi() {
            let lhs = f.at(n - 1).mul(&f.source.differential(n));
            let rhs = f.target.differential(n).mul(f.at(n));
            if !ring.matrices_equal(&lhs, &rhs) {
                return arg(format!("not a chain map: f d ≠ d f on degree {n}"));
            }
        }
        Ok(f)
    }

    fn ring_of(&self) -> crate::doldkan::Ring {
        self.source.ring()
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let matrices = c.degrees().map(|n| Matrix::identity(c.rank(n))).collect();
        Self { source: c.clone(), target: c.clone(), matrices }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Result<Self> {
        let matrices = source.degrees().map(|n| Matrix::zeros(target.rank(n), source.rank(n))).collect();
        Self::new(source.clone(), target.clone(), matrices)
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    /// `f_n`; panics outside the window.
    pub fn at(&self, n: i64) -> &Matrix {
        &self.matrices[(n - self.source.lo()) as usize]
    }

    /// `f_n`, zero outside the window.
    pub fn degree(&self, n: i64) -> Matrix {
        if self.source.degrees().contains(&n) {
            self.at(n).clone()
        } else {
            Matrix::zeros(self.target.rank(n), self.source.rank(n))
        }
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &ChainMap) -> Result<ChainMap> {
        if f.target != self.source {
            return arg("maps do not compose");
        }
        let matrices = self.matrices.iter().zip(&f.matrices).map(|(g, h)| g.mul(h)).collect();
        ChainMap::new(f.source.clone(), self.target.clone(), matrices)
    }

    /// Equality of matrices over the ring.
    pub fn agrees_with(&self, other: &ChainMap) -> bool {
        let ring = self.ring_of();
        self.source == other.source
            && self.target == other.target
            && self.matrices.iter().zip(&other.matrices).all(|(a, b)| ring.matrices_equal(a, b))
    }

    /// The same map on a wider window of both complexes.
    pub fn widen(&self, lo: i64, hi: i64) -> Result<ChainMap> {
        let (s, t) = (self.source.widen(lo, hi)?, self.target.widen(lo, hi)?);
        let matrices = (lo..=hi).map(|n| self.degree(n)).collect();
        ChainMap::new(s, t, matrices)
    }

    /// `Cone(f)_n = X_{n-1} ⊕ Y_n` with `d(x, y) = (−dx, f x + dy)`, on the
    /// window `[lo, hi + 1]`.
    pub fn cone(&self) -> ChainComplex {
        let (x, y) = (&self.source, &self.target);
        let (lo, hi) = (x.lo(), x.hi() + 1);
        let ranks = (lo..=hi).map(|n| x.rank(n - 1) + y.rank(n)).collect();
        let diffs = (lo + 1..=hi)
            .map(|n| {
                Matrix::blocks(
                    &x.differential(n - 1).neg(),
                    &Matrix::zeros(x.rank(n - 2), y.rank(n)),
                    &self.degree(n - 1),
                    &y.differential(n),
                )
            })
            .collect();
        ChainComplex::new(x.ring(), lo, ranks, diffs)
            .expect("the cone of a chain map is a complex")
            .with_open_edges(x.open_below() || y.open_below(), x.open_above() || y.open_above())
    }
}

/// Outcome of a quasi-isomorphism test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiIsoReport {
    /// No conclusive degree of the cone carries homology.
    pub quasi_iso: bool,
    /// Homology of the mapping cone, degree by degree.
    pub cone_homology: Vec<DegreeHomology>,
    /// Degrees next to an open window edge, where the truncation cannot
    /// decide.
    pub inconclusive: Vec<i64>,
    pub source_homology: Vec<DegreeHomology>,
    pub target_homology: Vec<DegreeHomology>,
}

/// `f` is a quasi-isomorphism iff its cone is acyclic. An open lower edge
/// at `lo` makes cone degrees `lo` and `lo + 1` undecidable, an open upper
/// edge at `hi` makes `hi` and `hi + 1` undecidable.
pub fn is_quasi_iso(f: &ChainMap) -> Result<QuasiIsoReport> {
    let (x, y) = (f.source(), f.target());
    if x.ring() != y.ring() {
        return arg("ring mismatch");
    }
    let below = x.open_below() || y.open_below();
    let above = x.open_above() || y.open_above();
    let (lo, hi) = (x.lo(), x.hi());
    let mut cone_homology = homology(&f.cone());
    let mut inconclusive = Vec::new();
    for h in cone_homology.iter_mut() {
        let n = h.degree;
        h.conclusive = !((below && (n == lo || n == lo + 1)) || (above && (n == hi || n == hi + 1)));
        if !h.conclusive {
            inconclusive.push(n);
        }
    }
    let quasi_iso = cone_homology.iter().all(|h| !h.conclusive || h.group.is_trivial());
    Ok(QuasiIsoReport { quasi_iso, cone_homology, inconclusive, source_homology: homology(x), target_homology: homology(y) })
}

/// `X⟨u; du = z⟩` for a cycle `z ∈ X_n`: one more generator in degree
/// `n + 1`, placed last. Returns the new complex and the inclusion of `X`
/// (both on the window widened to contain `n + 1`).
pub fn join_variable(x: &ChainComplex, z: &[BigInt], n: i64) -> Result<(ChainComplex, ChainMap)> {
    if z.len() != x.rank(n) {
        return arg(format!("z must have {} coordinates", x.rank(n)));
    }
    if !x.ring().is_zero_matrix(&Matrix::from_columns(x.rank(n - 1), &[x.differential(n).apply(z)])) {
        return arg(format!("z is not a cycle in degree {n}"));
    }
    let base = x.widen(x.lo().min(n + 1), x.hi().max(n + 1))?;
    let r = base.rank(n + 1);
    let ranks: Vec<usize> = base.degrees().map(|k| base.rank(k) + usize::from(k == n + 1)).collect();
    let diffs = (base.lo() + 1..=base.hi())
        .map(|k| {
            let d = base.differential(k);
            if k == n + 1 {
                d.hstack(&Matrix::from_columns(d.rows(), &[z.to_vec()]))
            } else if k == n + 2 {
                d.transpose().hstack(&Matrix::zeros(d.cols(), 1)).transpose()
            } else {
                d
            }
        })
        .collect();
    let joined = ChainComplex::new(base.ring(), base.lo(), ranks, diffs)?.with_open_edges(base.open_below(), base.open_above());
    let matrices = base
        .degrees()
        .map(|k| {
            let id = Matrix::identity(base.rank(k));
            if k == n + 1 {
                id.transpose().hstack(&Matrix::zeros(r, 1)).transpose()
            } else {
                id
            }
        })
        .collect();
    let inclusion = ChainMap::new(base, joined.clone(), matrices)?;
    Ok((joined, inclusion))
}

/// Per degree of the window, whether `Z_n(X) → Z_n(Y)` is onto, decided by
/// Hermite-form membership of a basis of `Z_n(Y)`.
pub fn surjective_on_cycles(f: &ChainMap) -> Vec<(i64, bool)> {
    let m = f.source().ring().modulus();
    f.source()
        .degrees()
        .map(|n| {
            let zx = kernel_mod(&f.source().differential(n), &m).basis();
            let image = image_mod(&f.at(n).mul(&zx), &m);
            let zy = kernel_mod(&f.target().differential(n), &m).basis();
            (n, zy.columns().iter().all(|v| image.contains(v)))
        })
        .collect()
}

/// Per degree, whether `f_n` is onto.
pub fn degreewise_surjective(f: &ChainMap) -> Vec<(i64, bool)> {
    let m = f.source().ring().modulus();
    f.source()
        .degrees()
        .map(|n| {
            let image = image_mod(f.at(n), &m);
            (n, (0..f.target().rank(n)).all(|j| image.contains(&unit(f.target().rank(n), j))))
        })
        .collect()
}

pub(crate) fn unit(r: usize, j: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::from(0); r];
    e[j] = BigInt::from(1);
    e
}
