use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{degreewise_surjective, is_quasi_iso, join_variable, surjective_on_cycles, unit, ChainMap};
use crate::doldkan::{int_vec, int_vecs, ChainComplex, DegreeHomology};
use crate::error::{arg, Error, Result};
use crate::linalg::{image_mod, kernel, kernel_mod, solve_mod, Lattice, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CofibrationKind {
    /// Split injection with acyclic cokernel.
    TrivialCofibration,
    /// Obtained by joining variables.
    StandardCofibration,
}

/// A generator `u` added in `degree` with `du = boundary` and `p(u) = image`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinedVariable {
    pub degree: i64,
    #[serde(with = "int_vec")]
    pub boundary: Vec<BigInt>,
    #[serde(with = "int_vec")]
    pub image: Vec<BigInt>,
}

/// Preimages of the standard generators of `Y_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurjectivityWitness {
    pub degree: i64,
    #[serde(with = "int_vecs")]
    pub preimages: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage: usize,
    /// Cycles added so that `p` is onto on cycles.
    pub cycle_variables: Vec<JoinedVariable>,
    /// Variables bounding cycles whose image is a boundary.
    pub killing_variables: Vec<JoinedVariable>,
    pub surjective: bool,
    pub surjective_on_cycles: bool,
    pub quasi_iso: bool,
    pub cone_homology: Vec<DegreeHomology>,
}

/// `f = second ∘ first` through `middle`, with everything needed to replay
/// and check it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationCertificate {
    pub kind: CofibrationKind,
    pub middle: ChainComplex,
    pub first: ChainMap,
    pub second: ChainMap,
    pub witnesses: Vec<SurjectivityWitness>,
    /// Every variable joined to the source, in order.
    pub variables: Vec<JoinedVariable>,
    pub stages: usize,
    pub trace: Vec<StageRecord>,
    /// False for a partial certificate cut off by the stage budget.
    pub complete: bool,
}

/// `X → M → Y` grown one variable at a time.
struct Growth {
    source: ChainComplex,
    middle: ChainComplex,
    target: ChainComplex,
    p: Vec<Matrix>,
    variables: Vec<JoinedVariable>,
}

impl Growth {
    fn new(f: &ChainMap) -> Self {
        Self {
            source: f.source().clone(),
            middle: f.source().clone(),
            target: f.target().clone(),
            p: f.matrices().to_vec(),
            variables: Vec::new(),
        }
    }

    fn p_at(&self, n: i64) -> Matrix {
        if self.middle.degrees().contains(&n) {
            self.p[(n - self.middle.lo()) as usize].clone()
        } else {
            Matrix::zeros(self.target.rank(n), self.middle.rank(n))
        }
    }

    /// Joins `u` in `degree` with `du = boundary ∈ M_{degree-1}` and
    /// `p(u) = image ∈ Y_degree`.
    fn join(&mut self, degree: i64, boundary: Vec<BigInt>, image: Vec<BigInt>) -> Result<JoinedVariable> {
        let (middle, _) = join_variable(&self.middle, &boundary, degree - 1)?;
        let (lo, hi) = (middle.lo(), middle.hi());
        let target = self.target.widen(lo, hi)?;
        let ring = middle.ring();
        let p = (lo..=hi)
            .map(|n| {
                let old = self.p_at(n);
                if n == degree {
                    old.hstack(&Matrix::from_columns(target.rank(n), &[ring.reduce_vec(&image)]))
                } else {
                    old
                }
            })
            .collect();
        self.middle = middle;
        self.target = target;
        self.p = p;
        let v = JoinedVariable { degree, boundary, image };
        self.variables.push(v.clone());
        Ok(v)
    }

    fn second(&self) -> Result<ChainMap> {
        ChainMap::new(self.middle.clone(), self.target.clone(), self.p.clone())
    }

    fn first(&self) -> Result<ChainMap> {
        let x = self.source.widen(self.middle.lo(), self.middle.hi())?;
        let matrices = x
            .degrees()
            .map(|n| {
                let id = Matrix::identity(x.rank(n));
                let extra = Matrix::zeros(self.middle.rank(n) - x.rank(n), x.rank(n));
                id.transpose().hstack(&extra.transpose()).transpose()
            })
            .collect();
        ChainMap::new(x, self.middle.clone(), matrices)
    }

    fn certificate(&self, kind: CofibrationKind, stages: usize, trace: Vec<StageRecord>, complete: bool) -> Result<FactorizationCertificate> {
        let second = self.second()?;
        Ok(FactorizationCertificate {
            kind,
            middle: self.middle.clone(),
            first: self.first()?,
            witnesses: witnesses(&second),
            second,
            variables: self.variables.clone(),
            stages,
            trace,
            complete,
        })
    }
}

/// Preimages of every generator of the target that has one.
fn witnesses(p: &ChainMap) -> Vec<SurjectivityWitness> {
    let m = p.source().ring().modulus();
    p.source()
        .degrees()
        .filter_map(|n| {
            let r = p.target().rank(n);
            let preimages: Option<Vec<Vec<BigInt>>> = (0..r).map(|j| solve_mod(p.at(n), &unit(r, j), &m)).collect();
            preimages.map(|preimages| SurjectivityWitness { degree: n, preimages })
        })
        .collect()
}

/// `X → X ⊕ ⨁ T_y → Y`: one contractible `T_y = (u ↦ du)` per generator
/// `y ∈ Y_n`, with `u` in degree `n` mapping to `y` and `du` in degree
/// `n − 1` mapping to `dy`.
pub fn factor_trivcofib_fib(f: &ChainMap) -> Result<FactorizationCertificate> {
    let mut g = Growth::new(f);
    let y = f.target().clone();
    for n in y.degrees() {
        for j in 0..y.rank(n) {
            let e = unit(y.rank(n), j);
            let dy = y.differential(n).apply(&e);
            let below = g.middle.rank(n - 2);
            g.join(n - 1, vec![BigInt::from(0); below], dy)?;
            let v = g.middle.rank(n - 1) - 1;
            g.join(n, unit(g.middle.rank(n - 1), v), e)?;
        }
    }
    g.certificate(CofibrationKind::TrivialCofibration, 1, Vec::new(), true)
}

struct Status {
    surjective: bool,
    surjective_on_cycles: bool,
    quasi_iso: bool,
    cone_homology: Vec<DegreeHomology>,
}

fn status(p: &ChainMap) -> Result<Status> {
    let report = is_quasi_iso(p)?;
    Ok(Status {
        surjective: degreewise_surjective(p).iter().all(|&(_, ok)| ok),
        surjective_on_cycles: surjective_on_cycles(p).iter().all(|&(_, ok)| ok),
        quasi_iso: report.quasi_iso,
        cone_homology: report.cone_homology,
    })
}

/// The lattice spanned by `l` and `v`.
fn extend(l: &Lattice, v: &[BigInt]) -> Lattice {
    Lattice::spanned_by(&l.basis().hstack(&Matrix::from_columns(v.len(), &[v.to_vec()])))
}

/// Runs the staged construction for at most `fuel` stages and returns the
/// certificate reached, complete or not.
pub fn factor_cofib_trivfib_partial(f: &ChainMap, fuel: usize) -> Result<FactorizationCertificate> {
    if fuel == 0 {
        return arg("fuel must be positive");
    }
    let mut g = Growth::new(f);
    let ring = f.source().ring();
    let m = ring.modulus();
    let top_fixed = f.source().open_above() || f.target().open_above();
    let mut trace = Vec::new();
    let mut stage = 0;
    loop {
        let st = status(&g.second()?)?;
        if st.quasi_iso && st.surjective {
            return g.certificate(CofibrationKind::StandardCofibration, stage, trace, true);
        }
        if stage == fuel {
            return g.certificate(CofibrationKind::StandardCofibration, stage, trace, false);
        }
        stage += 1;

        // Step 1: make p onto on cycles
        let mut cycle_variables = Vec::new();
        for n in g.middle.degrees() {
            let zm = kernel_mod(&g.middle.differential(n), &m).basis();
            let mut hit = image_mod(&g.p_at(n).mul(&zm), &m);
            let zy = kernel_mod(&g.target.differential(n), &m).basis();
            for z in zy.columns() {
                if !hit.contains(&z) {
                    let below = g.middle.rank(n - 1);
                    cycle_variables.push(g.join(n, vec![BigInt::from(0); below], z.clone())?);
                    hit = extend(&hit, &z);
                }
            }
        }

        // Step 2: bound every cycle whose image is a boundary
        let mut killing_variables = Vec::new();
        let mut n = g.middle.lo();
        while n <= g.middle.hi() {
            if top_fixed && n + 1 > f.target().hi() {
                break;
            }
            let zm = kernel_mod(&g.middle.differential(n), &m).basis();
            let dy = g.target.differential(n + 1);
            let image = g.p_at(n).mul(&zm);
            let s = image.rows();
            // (c, y, t) with p(Z c) = d y + m t
            let wide = image.hstack(&dy.neg()).hstack(&Matrix::scalar(s, -m.clone()));
            let sols = kernel(&wide);
            let coeffs = sols.select_rows(0..zm.cols());
            let candidates = Lattice::spanned_by(&zm.mul(&coeffs)).basis();
            let mut bounded = image_mod(&g.middle.differential(n + 1), &m);
            for w in candidates.columns() {
                if bounded.contains(&w) {
                    continue;
                }
                let target = g.p_at(n).apply(&w);
                let y = solve_mod(&dy, &target, &m).ok_or_else(|| Error::Inconsistent("image is not a boundary".into()))?;
                killing_variables.push(g.join(n + 1, ring.reduce_vec(&w), y)?);
                bounded = extend(&bounded, &w);
            }
            n += 1;
        }

        let st = status(&g.second()?)?;
        trace.push(StageRecord {
            stage,
            cycle_variables,
            killing_variables,
            surjective: st.surjective,
            surjective_on_cycles: st.surjective_on_cycles,
            quasi_iso: st.quasi_iso,
            cone_homology: st.cone_homology,
        });
    }
}

/// `f = p ∘ i` with `i` a standard cofibration and `p` a trivial
/// fibration, or `FuelExhausted` when `fuel` stages do not suffice.
pub fn factor_cofib_trivfib(f: &ChainMap, fuel: usize) -> Result<FactorizationCertificate> {
    let cert = factor_cofib_trivfib_partial(f, fuel)?;
    if cert.complete {
        return Ok(cert);
    }
    let last = cert.trace.last().map(|s| s.cone_homology.iter().filter(|h| h.conclusive && !h.group.is_trivial()).count()).unwrap_or(0);
    Err(Error::FuelExhausted {
        rounds: cert.stages,
        detail: format!("{} variables joined, {last} cone degrees still carry homology", cert.variables.len()),
    })
}

impl FactorizationCertificate {
    /// Re-checks every claim against `f`.
    pub fn verify(&self, f: &ChainMap) -> Result<()> {
        let fail = |what: &str| Err(Error::Inconsistent(format!("certificate: {what}")));
        let ring = f.source().ring();
        let composite = self.second.after(&self.first)?;
        let wide = f.widen(self.middle.lo(), self.middle.hi())?;
        if !composite.agrees_with(&wide) {
            return fail("the composite is not the input map");
        }
        for w in &self.witnesses {
            let r = self.second.target().rank(w.degree);
            if w.preimages.len() != r {
                return fail("witness has the wrong number of preimages");
            }
            for (j, x) in w.preimages.iter().enumerate() {
                if !ring.vectors_equal(&self.second.at(w.degree).apply(x), &unit(r, j)) {
                    return fail("witness is not a preimage");
                }
            }
        }
        let surjective = degreewise_surjective(&self.second).iter().all(|&(_, ok)| ok);
        let witnessed = self.second.target().degrees().all(|n| self.witnesses.iter().any(|w| w.degree == n));
        match self.kind {
            CofibrationKind::TrivialCofibration => {
                let m = ring.modulus();
                for n in self.first.source().degrees() {
                    let i = self.first.at(n);
                    for j in 0..i.cols() {
                        // a left inverse exists iff each unit row vector is in the row space
                        if solve_mod(&i.transpose(), &unit(i.cols(), j), &m).is_none() {
                            return fail("first map is not split injective");
                        }
                    }
                }
                if !is_quasi_iso(&self.first)?.quasi_iso {
                    return fail("first map is not a quasi-isomorphism");
                }
                if !surjective || !witnessed {
                    return fail("second map is not surjective");
                }
            }
            CofibrationKind::StandardCofibration => {
                let mut replay = f.source().clone();
                for v in &self.variables {
                    replay = join_variable(&replay, &v.boundary, v.degree - 1)?.0;
                }
                let replay = replay.widen(self.middle.lo(), self.middle.hi())?;
                if replay != self.middle {
                    return fail("joined variables do not rebuild the middle complex");
                }
                if self.complete && (!is_quasi_iso(&self.second)?.quasi_iso || !surjective || !witnessed) {
                    return fail("second map is not a trivial fibration");
                }
            }
        }
        Ok(())
    }
}
