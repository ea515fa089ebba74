use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{fiber, CocartAnalysis};
use crate::error::{arg, Error, Result};
use crate::nerve_cat::{object_and_arrow_maps, Arrow, CategoryDoc, FinCategory, Functor, FunctorDoc};

/// A strict functor `D → Cat`: one fiber per object of the base, one
/// transport functor per arrow, with identities sent to identities and
/// composites to composites on the nose.
#[derive(Clone, Debug)]
pub struct SplitFunctorToCat {
    base: Arc<FinCategory>,
    fibers: Vec<Arc<FinCategory>>,
    transports: Vec<Functor>,
}

impl SplitFunctorToCat {
    pub fn new(base: Arc<FinCategory>, fibers: Vec<Arc<FinCategory>>, transports: Vec<Functor>) -> Result<Self> {
        if fibers.len() != base.num_objects() || transports.len() != base.num_arrows() {
            return arg("need one fiber per object and one transport per arrow");
        }
        for (a, t) in transports.iter().enumerate() {
            let (s, d) = (base.source(a), base.target(a));
            if t.source().as_ref() != fibers[s].as_ref() || t.target().as_ref() != fibers[d].as_ref() {
                return arg(format!("transport along {} has the wrong fibers", base.arrow_name(a)));
            }
        }
        for x in 0..base.num_objects() {
            if transports[base.identity(x)] != Functor::identity(fibers[x].clone()) {
                return arg(format!("transport along the identity of {} is not the identity", base.object_name(x)));
            }
        }
        for f in 0..base.num_arrows() {
            for g in base.arrows_from(base.target(f)) {
                let h = base.compose(g, f).expect("composable");
                if transports[g].after(&transports[f])? != transports[h] {
                    return arg(format!(
                        "transport along {} differs from the composite of the transports along {} and {}",
                        base.arrow_name(h),
                        base.arrow_name(g),
                        base.arrow_name(f)
                    ));
                }
            }
        }
        Ok(Self { base, fibers, transports })
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn fiber(&self, d: usize) -> &Arc<FinCategory> {
        &self.fibers[d]
    }

    pub fn transport(&self, a: usize) -> &Functor {
        &self.transports[a]
    }
}

/// Text form: fibers keyed by base object, transports keyed by base arrow
/// (identities may be omitted) as name maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitFunctorDoc {
    pub base: CategoryDoc,
    pub fibers: BTreeMap<String, CategoryDoc>,
    pub transports: BTreeMap<String, TransportDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransportDoc {
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub arrows: BTreeMap<String, String>,
}

impl SplitFunctorDoc {
    pub fn to_split(&self) -> Result<SplitFunctorToCat> {
        let base = Arc::new(self.base.to_category()?);
        let fibers = base
            .objects()
            .iter()
            .map(|o| {
                let doc = self.fibers.get(o).ok_or_else(|| Error::Format(format!("no fiber over {o:?}")))?;
                Ok(Arc::new(doc.to_category()?))
            })
            .collect::<Result<Vec<_>>>()?;
        for name in self.transports.keys() {
            if base.arrow_by_name(name).is_none() {
                return Err(Error::Format(format!("transport along unknown arrow {name:?}")));
            }
        }
        let transports = (0..base.num_arrows())
            .map(|a| {
                let (s, t) = (&fibers[base.source(a)], &fibers[base.target(a)]);
                match self.transports.get(base.arrow_name(a)) {
                    Some(doc) => object_and_arrow_maps(s, t, &doc.objects, &doc.arrows),
                    None if base.is_identity(a) => Ok(Functor::identity(s.clone())),
                    None => Err(Error::Format(format!("no transport along {:?}", base.arrow_name(a)))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        SplitFunctorToCat::new(base, fibers, transports)
    }

    pub fn from_split(f: &SplitFunctorToCat) -> Self {
        let base = &f.base;
        let fibers = (0..base.num_objects())
            .map(|d| (base.object_name(d).to_string(), CategoryDoc::from_category(&f.fibers[d])))
            .collect();
        let transports = base
            .non_identity_arrows()
            .map(|a| {
                let doc = FunctorDoc::from_functor(&f.transports[a]);
                (base.arrow_name(a).to_string(), TransportDoc { objects: doc.objects, arrows: doc.arrows })
            })
            .collect();
        Self { base: CategoryDoc::from_category(base), fibers, transports }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

/// The total category `∫F` over the base. Objects `(d,x)` for `x ∈ F(d)`;
/// arrows `(φ,α) : (d,x) → (d',y)` with `φ : d → d'` and `α : φ_*(x) → y`,
/// composed as `(ψ,β)(φ,α) = (ψφ, β ψ_*(α))`.
pub fn grothendieck_build(split: &SplitFunctorToCat) -> Result<Functor> {
    let base = &split.base;
    let mut objects = Vec::new();
    let mut object_index = BTreeMap::new();
    for d in 0..base.num_objects() {
        for x in 0..split.fibers[d].num_objects() {
            object_index.insert((d, x), objects.len());
            objects.push((d, x));
        }
    }
    // arrows (φ, x, α), identity of φ_*(x) first among the α
    let mut arrows: Vec<(usize, usize, usize)> = Vec::new();
    for phi in 0..base.num_arrows() {
        let (d, e) = (base.source(phi), base.target(phi));
        let (src, dst) = (&split.fibers[d], &split.fibers[e]);
        for x in 0..src.num_objects() {
            let px = split.transports[phi].on_object(x);
            let mut alphas: Vec<usize> = dst.arrows_from(px).collect();
            alphas.sort_by_key(|&a| (a != dst.identity(px), a));
            arrows.extend(alphas.into_iter().map(|alpha| (phi, x, alpha)));
        }
    }
    let arrow_index: BTreeMap<(usize, usize, usize), usize> = arrows.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let name_of_object = |d: usize, x: usize| format!("({},{})", base.object_name(d), split.fibers[d].object_name(x));
    let arrow_list = arrows
        .iter()
        .map(|&(phi, x, alpha)| {
            let (d, e) = (base.source(phi), base.target(phi));
            let y = split.fibers[e].target(alpha);
            Arrow {
                name: format!("({},{})@{}", base.arrow_name(phi), split.fibers[e].arrow_name(alpha), split.fibers[d].object_name(x)),
                source: object_index[&(d, x)],
                target: object_index[&(e, y)],
            }
        })
        .collect();
    let identities = objects
        .iter()
        .map(|&(d, x)| arrow_index[&(base.identity(d), x, split.fibers[d].identity(x))])
        .collect();
    let total = FinCategory::from_parts(
        objects.iter().map(|&(d, x)| name_of_object(d, x)).collect(),
        arrow_list,
        identities,
        |g, f| {
            let (psi, y, beta) = arrows[g];
            let (phi, x, alpha) = arrows[f];
            let e = base.target(phi);
            if split.fibers[e].target(alpha) != y {
                return None;
            }
            let h = base.compose(psi, phi)?;
            let moved = split.transports[psi].on_arrow(alpha);
            let gamma = split.fibers[base.target(psi)].compose(beta, moved)?;
            arrow_index.get(&(h, x, gamma)).copied()
        },
    )?;
    let total = Arc::new(total);
    let object_map = objects.iter().map(|&(d, _)| d).collect();
    let arrow_map = arrows.iter().map(|&(phi, _, _)| phi).collect();
    Functor::new(total, base.clone(), object_map, arrow_map)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberData {
    pub base_object: String,
    pub objects: Vec<String>,
    pub arrows: Vec<String>,
}

/// `a_!` on objects and arrows of the fibers, by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transport {
    pub base_arrow: String,
    pub objects: BTreeMap<String, String>,
    pub arrows: BTreeMap<String, String>,
    /// The chosen locally cocartesian lift for each object of the fiber.
    pub lifts: BTreeMap<String, String>,
}

/// `θ_{a,b} : (b∘a)_! → b_! a_!`, one fiber arrow per object over the
/// source of `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theta {
    pub first: String,
    pub second: String,
    pub components: BTreeMap<String, String>,
    pub is_isomorphism: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrothendieckData {
    pub fibers: Vec<FiberData>,
    pub transports: Vec<Transport>,
    pub thetas: Vec<Theta>,
    pub all_thetas_invertible: bool,
    /// Whether every other choice of lifts gives the same verdict.
    pub choice_independent: bool,
    pub choices_checked: usize,
}

const EXHAUSTIVE_CHOICES: usize = 1000;
const SAMPLED_CHOICES: usize = 200;

struct Reader<'a> {
    f: &'a Functor,
    c: &'a FinCategory,
    d: &'a FinCategory,
    /// The locally cocartesian arrows out of `x` over `a`, keyed by `(x, a)`.
    candidates: BTreeMap<(usize, usize), Vec<usize>>,
}

impl Reader<'_> {
    /// The unique `w` over an identity with `w ∘ lead = through`, for a
    /// locally cocartesian `lead`.
    fn factor(&self, lead: usize, through: usize) -> usize {
        let (y, z) = (self.c.target(lead), self.c.target(through));
        let id = self.d.identity(self.f.on_object(y));
        self.c
            .hom(y, z)
            .into_iter()
            .find(|&w| self.f.on_arrow(w) == id && self.c.compose(w, lead) == Some(through))
            .expect("locally cocartesian lifts factor uniquely")
    }

    fn theta(&self, choice: &BTreeMap<(usize, usize), usize>, x: usize, a: usize, b: usize) -> usize {
        let ba = self.d.compose(b, a).expect("composable");
        let alpha = choice[&(x, a)];
        let beta = choice[&(self.c.target(alpha), b)];
        let two_step = self.c.compose(beta, alpha).expect("composable");
        self.factor(choice[&(x, ba)], two_step)
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.d.non_identity_arrows() {
            for b in self.d.arrows_from(self.d.target(a)).filter(|&b| !self.d.is_identity(b)) {
                out.push((a, b));
            }
        }
        out
    }

    fn all_invertible(&self, choice: &BTreeMap<(usize, usize), usize>) -> bool {
        self.pairs().into_iter().all(|(a, b)| {
            (0..self.c.num_objects())
                .filter(|&x| self.f.on_object(x) == self.d.source(a))
                .all(|x| self.c.is_invertible(self.theta(choice, x, a, b)))
        })
    }
}

/// Fibers, transports along lexicographically first locally cocartesian
/// lifts, and every comparison `θ`. Requires a locally cocartesian
/// fibration.
pub fn grothendieck_read(f: &Functor, analysis: &CocartAnalysis) -> Result<GrothendieckData> {
    let (c, d) = (f.source().as_ref(), f.target().as_ref());
    if analysis.arrows.len() != c.num_arrows() {
        return arg("the analysis belongs to a different functor");
    }
    if let Some(m) = analysis.missing_locally_cocartesian_lifts.first() {
        return arg(format!("not a locally cocartesian fibration: no locally cocartesian lift of {} from {}", m.base_arrow, m.object));
    }
    let mut candidates = BTreeMap::new();
    for x in 0..c.num_objects() {
        for a in d.arrows_from(f.on_object(x)) {
            let lifts: Vec<usize> = c.arrows_from(x).filter(|&k| f.on_arrow(k) == a && analysis.arrows[k].locally_cocartesian).collect();
            candidates.insert((x, a), lifts);
        }
    }
    let reader = Reader { f, c, d, candidates };
    let first: BTreeMap<(usize, usize), usize> = reader.candidates.iter().map(|(&k, v)| (k, v[0])).collect();

    let fibers = (0..d.num_objects())
        .map(|e| {
            let (cat, _, _) = fiber(f, e);
            FiberData {
                base_object: d.object_name(e).into(),
                objects: cat.objects().to_vec(),
                arrows: cat.arrows().iter().map(|a| a.name.clone()).collect(),
            }
        })
        .collect();

    let transports = (0..d.num_arrows())
        .map(|a| {
            let (src, fiber_arrows) = super::fiber_data(f, d.source(a));
            let objects = src.iter().map(|&x| (c.object_name(x).to_string(), c.object_name(c.target(first[&(x, a)])).to_string())).collect();
            let lifts = src.iter().map(|&x| (c.object_name(x).to_string(), c.arrow_name(first[&(x, a)]).to_string())).collect();
            let arrows = fiber_arrows
                .iter()
                .map(|&u| {
                    let (x, x1) = (c.source(u), c.target(u));
                    let through = c.compose(first[&(x1, a)], u).expect("composable");
                    (c.arrow_name(u).to_string(), c.arrow_name(reader.factor(first[&(x, a)], through)).to_string())
                })
                .collect();
            Transport { base_arrow: d.arrow_name(a).into(), objects, arrows, lifts }
        })
        .collect();

    let thetas: Vec<Theta> = reader
        .pairs()
        .into_iter()
        .map(|(a, b)| {
            let mut components = BTreeMap::new();
            let mut iso = true;
            for x in (0..c.num_objects()).filter(|&x| f.on_object(x) == d.source(a)) {
                let t = reader.theta(&first, x, a, b);
                iso &= c.is_invertible(t);
                components.insert(c.object_name(x).to_string(), c.arrow_name(t).to_string());
            }
            Theta { first: d.arrow_name(a).into(), second: d.arrow_name(b).into(), components, is_isomorphism: iso }
        })
        .collect();
    let all_thetas_invertible = thetas.iter().all(|t| t.is_isomorphism);

    // the verdict must not depend on which lifts were picked
    let keys: Vec<(usize, usize)> = reader.candidates.keys().copied().collect();
    let sizes: Vec<usize> = keys.iter().map(|k| reader.candidates[k].len()).collect();
    let total = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s).filter(|&t| t <= EXHAUSTIVE_CHOICES));
    let mut choices_checked = 0;
    let mut choice_independent = true;
    let mut check = |indices: &[usize]| {
        let choice = keys.iter().zip(indices).map(|(k, &i)| (*k, reader.candidates[k][i])).collect();
        choices_checked += 1;
        choice_independent &= reader.all_invertible(&choice) == all_thetas_invertible;
    };
    match total {
        Some(total) => {
            for mut n in 0..total {
                let indices: Vec<usize> = sizes
                    .iter()
                    .map(|&s| {
                        let i = n % s;
                        n /= s;
                        i
                    })
                    .collect();
                check(&indices);
            }
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..SAMPLED_CHOICES {
                let indices: Vec<usize> = sizes.iter().map(|&s| rng.gen_range(0..s)).collect();
                check(&indices);
            }
        }
    }
    if choice_independent && all_thetas_invertible != analysis.is_cocartesian_fibration {
        return Err(Error::Inconsistent("θ verdict disagrees with the cocartesian verdict".into()));
    }
    Ok(GrothendieckData { fibers, transports, thetas, all_thetas_invertible, choice_independent, choices_checked })
}
