//! `𝔑(C)_n = Hom(𝔠^n, C)`, enumerated pair by pair: on `Map(a, b)` of
//! `𝔠^n` a functor is forced on the union of the faces `x_m = 1` (the
//! composites through `m`) and free on the rest, so each pair is an
//! extension problem along that union.

use std::sync::Arc;

use super::category::SimplicialCategory;
use super::frak::Cosimplex;
use crate::delta::OrdinalMap;
use crate::error::{Error, Result};
use crate::sset::{lift_extensions, LevelwiseSet, Simplex, SimplicialMap, SimplicialSet, Truncation, UNLIMITED};

/// Where a cell of the decomposable part of `Map(a, b)` comes from.
#[derive(Clone, Debug)]
struct Split {
    middle: usize,
    left: Simplex,
    right: Simplex,
}

#[derive(Clone, Debug)]
struct PairPlan {
    a: usize,
    b: usize,
    inclusion: SimplicialMap,
    splits: Vec<Vec<Split>>,
}

/// A simplicial functor `𝔠^n → C`: object images and, for `a < b` in
/// lexicographic order, the images of the cells of `Map(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct FunctorData {
    objects: Vec<usize>,
    maps: Vec<Vec<Vec<Simplex>>>,
}

struct Levels<'a> {
    c: &'a SimplicialCategory,
    cosimplices: Vec<Cosimplex>,
    plans: Vec<Vec<PairPlan>>,
    functors: Vec<Vec<FunctorData>>,
}

fn pair_slot(n: usize, a: usize, b: usize) -> usize {
    // pairs a < b in lexicographic order
    a * (2 * n + 1 - a) / 2 + (b - a - 1)
}

fn plan(cos: &Cosimplex) -> Result<Vec<PairPlan>> {
    let n = cos.n;
    let mut plans = Vec::new();
    for gap in 1..=n {
        for a in 0..=n - gap {
            let b = a + gap;
            let space = cos.space(a, b);
            let bottom = cos.simplex(a, b, &[(1u64 << a) | (1u64 << b)]).cell();
            let keep = space
                .all_cells()
                .filter(|&c| !space.vertices_of(&Simplex::nondegenerate(c)).contains(&bottom))
                .collect();
            let (sub, inclusion) = space.sub(&keep, Truncation::Complete)?;
            let splits = (0..sub.top_dim().map_or(0, |d| d + 1))
                .map(|d| {
                    sub.cells(d)
                        .map(|c| {
                            let s = inclusion.on_cell(c);
                            let masks = cos.vertex_masks(a, b, s);
                            let m = (a + 1..b).find(|&m| masks[0] & (1 << m) != 0).expect("decomposable");
                            let low = |x: u64| x & ((1u64 << (m + 1)) - 1) & !((1u64 << a) - 1);
                            let high = |x: u64| x & !((1u64 << m) - 1) & ((1u64 << (b + 1)) - 1);
                            Split {
                                middle: m,
                                left: cos.simplex(a, m, &masks.iter().map(|&x| low(x)).collect::<Vec<_>>()),
                                right: cos.simplex(m, b, &masks.iter().map(|&x| high(x)).collect::<Vec<_>>()),
                            }
                        })
                        .collect()
                })
                .collect();
            plans.push(PairPlan { a, b, inclusion, splits });
        }
    }
    plans.sort_by_key(|p| pair_slot(n, p.a, p.b));
    Ok(plans)
}

impl Levels<'_> {
    fn image(&self, n: usize, f: &FunctorData, a: usize, b: usize, s: &Simplex) -> Simplex {
        if a == b {
            return self.c.identity_simplex(f.objects[a], s.dim());
        }
        let target = self.c.map_space(f.objects[a], f.objects[b]);
        let cell = s.cell();
        target.apply(s.degeneracy(), &f.maps[pair_slot(n, a, b)][cell.dim][cell.index])
    }

    fn enumerate(&self, n: usize) -> Result<Vec<FunctorData>> {
        let k = self.c.num_objects();
        let mut out = Vec::new();
        if k == 0 {
            return Ok(out);
        }
        let mut order: Vec<usize> = (0..self.plans[n].len()).collect();
        order.sort_by_key(|&i| (self.plans[n][i].b - self.plans[n][i].a, self.plans[n][i].a));
        let mut objects = vec![0; n + 1];
        loop {
            let possible = (0..=n).all(|a| (a + 1..=n).all(|b| self.c.map_space(objects[a], objects[b]).top_dim().is_some()));
            if possible {
                let mut f = FunctorData { objects: objects.clone(), maps: vec![Vec::new(); self.plans[n].len()] };
                self.extend(n, &order, 0, &mut f, &mut out)?;
            }
            // next object tuple
            let mut i = 0;
            while i <= n && objects[i] + 1 == k {
                objects[i] = 0;
                i += 1;
            }
            if i > n {
                break;
            }
            objects[i] += 1;
        }
        out.sort();
        Ok(out)
    }

    fn extend(&self, n: usize, order: &[usize], depth: usize, f: &mut FunctorData, out: &mut Vec<FunctorData>) -> Result<()> {
        let Some(&p) = order.get(depth) else {
            out.push(f.clone());
            return Ok(());
        };
        let plan = &self.plans[n][p];
        let (x, z) = (f.objects[plan.a], f.objects[plan.b]);
        let target = self.c.map_space(x, z).clone();
        let assignment = plan
            .splits
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|s| {
                        let y = f.objects[s.middle];
                        let g = self.image(n, f, s.middle, plan.b, &s.right);
                        let h = self.image(n, f, plan.a, s.middle, &s.left);
                        self.c.compose(x, y, z, &g, &h)
                    })
                    .collect()
            })
            .collect();
        let forced = SimplicialMap::new(plan.inclusion.source().clone(), target, assignment)
            .map_err(|e| Error::Inconsistent(format!("composites do not glue on Map({}, {}): {e}", plan.a, plan.b)))?;
        for ext in lift_extensions(&plan.inclusion, &forced, UNLIMITED)? {
            f.maps[p] = ext.assignment().to_vec();
            self.extend(n, order, depth + 1, f, out)?;
        }
        f.maps[p] = Vec::new();
        Ok(())
    }

    /// `F ∘ 𝔠(θ)` for `θ : [m] → [n]`.
    fn restrict(&self, theta: &OrdinalMap, f: &FunctorData) -> FunctorData {
        let (m, n) = (theta.source(), theta.target());
        let (small, big) = (&self.cosimplices[m], &self.cosimplices[n]);
        let objects: Vec<usize> = (0..=m).map(|a| f.objects[theta.apply(a)]).collect();
        let mut maps = vec![Vec::new(); self.plans[m].len()];
        for a in 0..=m {
            for b in a + 1..=m {
                let space = small.space(a, b);
                maps[pair_slot(m, a, b)] = (0..space.top_dim().map_or(0, |d| d + 1))
                    .map(|d| {
                        space
                            .cells(d)
                            .map(|c| {
                                let s = small.push_forward(theta, big, a, b, &Simplex::nondegenerate(c));
                                self.image(n, f, theta.apply(a), theta.apply(b), &s)
                            })
                            .collect()
                    })
                    .collect();
            }
        }
        FunctorData { objects, maps }
    }
}

impl LevelwiseSet for Levels<'_> {
    type Elem = FunctorData;

    fn level(&self, n: usize) -> Vec<FunctorData> {
        self.functors[n].clone()
    }

    fn face(&self, n: usize, i: usize, x: &FunctorData) -> FunctorData {
        self.restrict(&OrdinalMap::face(n, i).expect("face"), x)
    }

    fn degeneracy(&self, n: usize, i: usize, x: &FunctorData) -> FunctorData {
        self.restrict(&OrdinalMap::degeneracy(n + 1, i).expect("degeneracy"), x)
    }

    fn name(&self, x: &FunctorData) -> String {
        let objects: Vec<&str> = x.objects.iter().map(|&o| self.c.objects()[o].as_str()).collect();
        if objects.len() == 1 {
            return objects[0].to_string();
        }
        let n = objects.len() - 1;
        let edges: Vec<&str> = (0..n)
            .map(|a| {
                let v = x.maps[pair_slot(n, a, a + 1)][0][0].cell();
                self.c.map_space(x.objects[a], x.objects[a + 1]).name(v)
            })
            .collect();
        format!("[{}|{}]", objects.join(","), edges.join(","))
    }
}

/// The homotopy-coherent nerve through dimension `d`.
pub fn coherent_nerve(c: &SimplicialCategory, d: usize) -> Result<Arc<SimplicialSet>> {
    let need = d.saturating_sub(1);
    for x in 0..c.num_objects() {
        for y in 0..c.num_objects() {
            if !c.map_space(x, y).truncation().covers(need) {
                return Err(Error::Argument(format!(
                    "Map({}, {}) is truncated below dimension {need}",
                    c.objects()[x],
                    c.objects()[y]
                )));
            }
        }
    }
    let cosimplices = (0..=d).map(Cosimplex::new).collect::<Result<Vec<_>>>()?;
    let plans = cosimplices.iter().map(plan).collect::<Result<Vec<_>>>()?;
    let mut levels = Levels { c, cosimplices, plans, functors: Vec::new() };
    for n in 0..=d {
        let level = levels.enumerate(n)?;
        levels.functors.push(level);
    }
    Ok(Arc::new(SimplicialSet::from_levels(&levels, d, Truncation::At(d))?.set))
}

