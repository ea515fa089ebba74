use std::fmt;
use std::sync::Arc;

use super::category::FinCategory;
use crate::error::{arg, Result};

/// A functor between finite categories, given on objects and arrows.
#[derive(Clone)]
pub struct Functor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    objects: Vec<usize>,
    arrows: Vec<usize>,
}

impl fmt::Debug for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Functor").field("objects", &self.objects).field("arrows", &self.arrows).finish()
    }
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects && self.arrows == other.arrows
    }
}

impl Eq for Functor {}

impl Functor {
    pub fn new(source: Arc<FinCategory>, target: Arc<FinCategory>, objects: Vec<usize>, arrows: Vec<usize>) -> Result<Self> {
        let f = Self { source, target, objects, arrows };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let (c, d) = (&self.source, &self.target);
        if self.objects.len() != c.num_objects() || self.arrows.len() != c.num_arrows() {
            return arg("functor data has the wrong size");
        }
        if self.objects.iter().any(|&y| y >= d.num_objects()) || self.arrows.iter().any(|&b| b >= d.num_arrows()) {
            return arg("functor lands outside its target");
        }
        for a in 0..c.num_arrows() {
            let b = self.arrows[a];
            if d.source(b) != self.objects[c.source(a)] || d.target(b) != self.objects[c.target(a)] {
                return arg(format!("image of {} has the wrong endpoints", c.arrow_name(a)));
            }
        }
        for x in 0..c.num_objects() {
            if self.arrows[c.identity(x)] != d.identity(self.objects[x]) {
                return arg(format!("identity of {} is not preserved", c.object_name(x)));
            }
        }
        for g in 0..c.num_arrows() {
            for f in c.arrows_to(c.source(g)) {
                let h = c.compose(g, f).expect("composable");
                if d.compose(self.arrows[g], self.arrows[f]) != Some(self.arrows[h]) {
                    return arg(format!("composite {} ∘ {} is not preserved", c.arrow_name(g), c.arrow_name(f)));
                }
            }
        }
        Ok(())
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        Self { objects: (0..c.num_objects()).collect(), arrows: (0..c.num_arrows()).collect(), source: c.clone(), target: c }
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn on_object(&self, x: usize) -> usize {
        self.objects[x]
    }

    pub fn on_arrow(&self, a: usize) -> usize {
        self.arrows[a]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.objects
    }

    pub fn arrow_map(&self) -> &[usize] {
        &self.arrows
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Functor) -> Result<Functor> {
        if first.target.as_ref() != self.source.as_ref() {
            return arg("functors are not composable");
        }
        Ok(Functor {
            source: first.source.clone(),
            target: self.target.clone(),
            objects: first.objects.iter().map(|&x| self.objects[x]).collect(),
            arrows: first.arrows.iter().map(|&a| self.arrows[a]).collect(),
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        let bij = |v: &[usize], n: usize| {
            let mut seen = vec![false; n];
            v.len() == n && v.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        };
        bij(&self.objects, self.target.num_objects()) && bij(&self.arrows, self.target.num_arrows())
    }

    /// All functors `C → D`, in a deterministic order, at most `limit`.
    pub fn enumerate(c: &Arc<FinCategory>, d: &Arc<FinCategory>, limit: usize) -> Vec<Functor> {
        let mut out = Vec::new();
        search_functors(c, d, false, &mut |obj, arr| {
            out.push(Functor { source: c.clone(), target: d.clone(), objects: obj.to_vec(), arrows: arr.to_vec() });
            out.len() < limit
        });
        out
    }

    /// An isomorphism `C → D`, if one exists.
    pub fn find_isomorphism(c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> Option<Functor> {
        if c.num_objects() != d.num_objects() || c.num_arrows() != d.num_arrows() {
            return None;
        }
        let mut found = None;
        search_functors(c, d, true, &mut |obj, arr| {
            found = Some(Functor { source: c.clone(), target: d.clone(), objects: obj.to_vec(), arrows: arr.to_vec() });
            false
        });
        found
    }
}

/// Backtracking over object images, then non-identity arrow images, with
/// composition checked as soon as all three arrows of a triangle are placed.
fn search_functors(c: &FinCategory, d: &FinCategory, injective: bool, visit: &mut dyn FnMut(&[usize], &[usize]) -> bool) {
    let order: Vec<usize> = c.non_identity_arrows().collect();
    let mut position = vec![usize::MAX; c.num_arrows()];
    for (i, &a) in order.iter().enumerate() {
        position[a] = i;
    }
    // triangles (g, f, g∘f) to check once the last member is placed
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); order.len()];
    for g in 0..c.num_arrows() {
        for f in c.arrows_to(c.source(g)) {
            if c.is_identity(g) || c.is_identity(f) {
                continue;
            }
            let h = c.compose(g, f).expect("composable");
            let last = [g, f, h].iter().filter(|&&a| !c.is_identity(a)).map(|&a| position[a]).max().expect("g is placed");
            checks[last].push((g, f, h));
        }
    }
    let mut objects = vec![usize::MAX; c.num_objects()];
    let mut arrows = vec![usize::MAX; c.num_arrows()];
    let mut used_obj = vec![false; d.num_objects()];
    let mut used_arr = vec![false; d.num_arrows()];
    let ctx = Ctx { c, d, injective, order: &order, checks: &checks };
    ctx.objects(0, &mut objects, &mut arrows, &mut used_obj, &mut used_arr, visit);
}

struct Ctx<'a> {
    c: &'a FinCategory,
    d: &'a FinCategory,
    injective: bool,
    order: &'a [usize],
    checks: &'a [Vec<(usize, usize, usize)>],
}

impl Ctx<'_> {
    fn objects(
        &self,
        x: usize,
        objects: &mut Vec<usize>,
        arrows: &mut Vec<usize>,
        used_obj: &mut Vec<bool>,
        used_arr: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize], &[usize]) -> bool,
    ) -> bool {
        if x == self.c.num_objects() {
            return self.arrows(0, objects, arrows, used_arr, visit);
        }
        for y in 0..self.d.num_objects() {
            if self.injective && used_obj[y] {
                continue;
            }
            objects[x] = y;
            arrows[self.c.identity(x)] = self.d.identity(y);
            used_obj[y] = true;
            used_arr[self.d.identity(y)] = true;
            let go_on = self.objects(x + 1, objects, arrows, used_obj, used_arr, visit);
            used_obj[y] = false;
            used_arr[self.d.identity(y)] = false;
            if !go_on {
                return false;
            }
        }
        true
    }

    fn arrows(
        &self,
        pos: usize,
        objects: &[usize],
        arrows: &mut Vec<usize>,
        used_arr: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize], &[usize]) -> bool,
    ) -> bool {
        let Some(&a) = self.order.get(pos) else {
            return visit(objects, arrows);
        };
        let (x, y) = (objects[self.c.source(a)], objects[self.c.target(a)]);
        for b in self.d.hom(x, y) {
            if self.injective && used_arr[b] {
                continue;
            }
            arrows[a] = b;
            let ok = self.checks[pos]
                .iter()
                .all(|&(g, f, h)| self.d.compose(arrows[g], arrows[f]) == Some(arrows[h]));
            if !ok {
                continue;
            }
            used_arr[b] = true;
            let go_on = self.arrows(pos + 1, objects, arrows, used_arr, visit);
            used_arr[b] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}
