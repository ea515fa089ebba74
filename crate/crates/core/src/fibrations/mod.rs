//! Left fibrations and (locally) cocartesian functors between finite
//! categories, the Grothendieck construction in both directions, joins and
//! twisted arrow categories.

mod construct;
mod grothendieck;

pub use construct::{join, twisted_arrows, TwistedArrows};
pub use grothendieck::{grothendieck_build, grothendieck_read, GrothendieckData, SplitFunctorDoc, SplitFunctorToCat, Theta, Transport};

use serde::{Deserialize, Serialize};

use crate::nerve_cat::{FinCategory, Functor};

/// Why a functor fails to be a left fibration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LeftFibrationWitness {
    /// No arrow out of `object` lies over `base_arrow`.
    MissingLift { object: String, base_arrow: String },
    /// For `a : x → y`, `b : x → z` and `c̄` with `c̄ F(a) = F(b)`, the number
    /// of `c : y → z` with `ca = b` and `F(c) = c̄` is not one.
    LiftCount { a: String, b: String, base_arrow: String, lifts: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeftFibrationReport {
    pub holds: bool,
    pub witnesses: Vec<LeftFibrationWitness>,
}

/// Lifting against `{0} → Δ¹` and `Λ²₀ → Δ²`, with every failure listed.
pub fn is_left_fibration(f: &Functor) -> LeftFibrationReport {
    let (c, d) = (f.source(), f.target());
    let mut witnesses = Vec::new();
    for x in 0..c.num_objects() {
        for g in d.arrows_from(f.on_object(x)) {
            if !c.arrows_from(x).any(|a| f.on_arrow(a) == g) {
                witnesses.push(LeftFibrationWitness::MissingLift {
                    object: c.object_name(x).into(),
                    base_arrow: d.arrow_name(g).into(),
                });
            }
        }
    }
    for a in 0..c.num_arrows() {
        let (x, y) = (c.source(a), c.target(a));
        for b in c.arrows_from(x) {
            let z = c.target(b);
            for cbar in d.hom(f.on_object(y), f.on_object(z)) {
                if d.compose(cbar, f.on_arrow(a)) != Some(f.on_arrow(b)) {
                    continue;
                }
                let lifts = c.hom(y, z).into_iter().filter(|&k| f.on_arrow(k) == cbar && c.compose(k, a) == Some(b)).count();
                if lifts != 1 {
                    witnesses.push(LeftFibrationWitness::LiftCount {
                        a: c.arrow_name(a).into(),
                        b: c.arrow_name(b).into(),
                        base_arrow: d.arrow_name(cbar).into(),
                        lifts,
                    });
                }
            }
        }
    }
    LeftFibrationReport { holds: witnesses.is_empty(), witnesses }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowFlags {
    pub arrow: String,
    pub cocartesian: bool,
    pub locally_cocartesian: bool,
}

/// Whether `second ∘ first` is locally cocartesian, for locally cocartesian
/// `first` and `second`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFlags {
    pub first: String,
    pub second: String,
    pub composite: String,
    pub locally_cocartesian: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingLift {
    pub object: String,
    pub base_arrow: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocartAnalysis {
    /// One entry per arrow of the source, in index order.
    pub arrows: Vec<ArrowFlags>,
    pub pairs: Vec<PairFlags>,
    pub missing_cocartesian_lifts: Vec<MissingLift>,
    pub missing_locally_cocartesian_lifts: Vec<MissingLift>,
    pub is_cocartesian_fibration: bool,
    pub is_locally_cocartesian_fibration: bool,
    pub is_left_fibration: bool,
}

/// `α : x → y` is cocartesian when `Hom(y, z) → Hom(x, z) ×_{Hom(x̄, z̄)}
/// Hom(ȳ, z̄)` is a bijection for every `z`.
pub fn is_cocartesian_arrow(f: &Functor, alpha: usize) -> bool {
    let (c, d) = (f.source(), f.target());
    let (x, y) = (c.source(alpha), c.target(alpha));
    let abar = f.on_arrow(alpha);
    (0..c.num_objects()).all(|z| {
        c.hom(x, z).into_iter().all(|v| {
            d.hom(f.on_object(y), f.on_object(z)).into_iter().all(|gbar| {
                if d.compose(gbar, abar) != Some(f.on_arrow(v)) {
                    return true;
                }
                c.hom(y, z).into_iter().filter(|&u| f.on_arrow(u) == gbar && c.compose(u, alpha) == Some(v)).count() == 1
            })
        })
    })
}

/// Cocartesian after base change along `F(α) : [1] → D`: for `z` over `ȳ`,
/// precomposition with `α` is a bijection from arrows `y → z` over `id_ȳ`
/// to arrows `x → z` over `F(α)`.
pub fn is_locally_cocartesian_arrow(f: &Functor, alpha: usize) -> bool {
    let (c, d) = (f.source(), f.target());
    let (x, y) = (c.source(alpha), c.target(alpha));
    let (abar, ybar) = (f.on_arrow(alpha), f.on_object(y));
    let id = d.identity(ybar);
    (0..c.num_objects()).filter(|&z| f.on_object(z) == ybar).all(|z| {
        c.hom(x, z).into_iter().filter(|&v| f.on_arrow(v) == abar).all(|v| {
            c.hom(y, z).into_iter().filter(|&u| f.on_arrow(u) == id && c.compose(u, alpha) == Some(v)).count() == 1
        })
    })
}

/// Flags every arrow, every composable pair of locally cocartesian arrows,
/// and the three fibration verdicts.
pub fn cocart_analyze(f: &Functor) -> CocartAnalysis {
    let (c, d) = (f.source(), f.target());
    let cocart: Vec<bool> = (0..c.num_arrows()).map(|a| is_cocartesian_arrow(f, a)).collect();
    let local: Vec<bool> = (0..c.num_arrows()).map(|a| is_locally_cocartesian_arrow(f, a)).collect();
    let arrows = (0..c.num_arrows())
        .map(|a| ArrowFlags { arrow: c.arrow_name(a).into(), cocartesian: cocart[a], locally_cocartesian: local[a] })
        .collect();
    let mut pairs = Vec::new();
    for first in (0..c.num_arrows()).filter(|&a| local[a] && !c.is_identity(a)) {
        for second in c.arrows_from(c.target(first)).filter(|&b| local[b] && !c.is_identity(b)) {
            let composite = c.compose(second, first).expect("composable");
            pairs.push(PairFlags {
                first: c.arrow_name(first).into(),
                second: c.arrow_name(second).into(),
                composite: c.arrow_name(composite).into(),
                locally_cocartesian: local[composite],
            });
        }
    }
    let missing = |flags: &[bool]| {
        let mut out = Vec::new();
        for x in 0..c.num_objects() {
            for g in d.arrows_from(f.on_object(x)) {
                if !c.arrows_from(x).any(|a| f.on_arrow(a) == g && flags[a]) {
                    out.push(MissingLift { object: c.object_name(x).into(), base_arrow: d.arrow_name(g).into() });
                }
            }
        }
        out
    };
    let missing_cocartesian_lifts = missing(&cocart);
    let missing_locally_cocartesian_lifts = missing(&local);
    let is_cocartesian_fibration = missing_cocartesian_lifts.is_empty();
    let is_left_fibration = is_left_fibration(f).holds;
    debug_assert_eq!(is_left_fibration, is_cocartesian_fibration && cocart.iter().all(|&b| b));
    CocartAnalysis {
        arrows,
        pairs,
        is_cocartesian_fibration,
        is_locally_cocartesian_fibration: missing_locally_cocartesian_lifts.is_empty(),
        missing_cocartesian_lifts,
        missing_locally_cocartesian_lifts,
        is_left_fibration,
    }
}

impl CocartAnalysis {
    /// Plain-text report, one line per arrow.
    pub fn report(&self) -> String {
        let mut out = String::new();
        for a in &self.arrows {
            out.push_str(&format!(
                "{}: {}{}\n",
                a.arrow,
                if a.cocartesian { "cocartesian" } else { "not cocartesian" },
                if a.locally_cocartesian { ", locally cocartesian" } else { "" }
            ));
        }
        for p in self.pairs.iter().filter(|p| !p.locally_cocartesian) {
            out.push_str(&format!("{} ∘ {} = {} is not locally cocartesian\n", p.second, p.first, p.composite));
        }
        for m in &self.missing_locally_cocartesian_lifts {
            out.push_str(&format!("no locally cocartesian lift of {} from {}\n", m.base_arrow, m.object));
        }
        out.push_str(&format!("cocartesian fibration: {}\n", self.is_cocartesian_fibration));
        out.push_str(&format!("locally cocartesian fibration: {}\n", self.is_locally_cocartesian_fibration));
        out.push_str(&format!("left fibration: {}\n", self.is_left_fibration));
        out
    }
}

/// Objects of `f.source()` over `d`, and the arrows between them over `id_d`.
pub(crate) fn fiber_data(f: &Functor, d: usize) -> (Vec<usize>, Vec<usize>) {
    let c = f.source();
    let id = f.target().identity(d);
    let objects = (0..c.num_objects()).filter(|&x| f.on_object(x) == d).collect();
    let arrows = (0..c.num_arrows()).filter(|&a| f.on_arrow(a) == id).collect();
    (objects, arrows)
}

/// The fiber over `d` as a category, with object and arrow indices of the
/// source for each of its own.
pub fn fiber(f: &Functor, d: usize) -> (FinCategory, Vec<usize>, Vec<usize>) {
    let c = f.source();
    let (objects, arrows) = fiber_data(f, d);
    let obj_pos = |x: usize| objects.iter().position(|&o| o == x).expect("fiber object");
    let arr_pos = |a: usize| arrows.iter().position(|&b| b == a).expect("fiber arrow");
    let cat = FinCategory::from_parts(
        objects.iter().map(|&x| c.object_name(x).to_string()).collect(),
        arrows
            .iter()
            .map(|&a| crate::nerve_cat::Arrow { name: c.arrow_name(a).into(), source: obj_pos(c.source(a)), target: obj_pos(c.target(a)) })
            .collect(),
        objects.iter().map(|&x| arr_pos(c.identity(x))).collect(),
        |g, h| c.compose(arrows[g], arrows[h]).map(arr_pos),
    )
    .expect("a fiber is a subcategory");
    (cat, objects, arrows)
}

#[cfg(test)]
mod tests;
