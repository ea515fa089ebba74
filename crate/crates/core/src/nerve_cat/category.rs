use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{arg, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category stored as a dense composition table.
#[derive(Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    // table[g * n + f] = g ∘ f, defined when target(f) = source(g)
    table: Vec<Option<usize>>,
    object_lookup: HashMap<String, usize>,
    arrow_lookup: HashMap<String, usize>,
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinCategory({} objects, {} arrows)", self.objects.len(), self.arrows.len())
    }
}

impl FinCategory {
    /// Builds a category from explicit data and checks the category laws.
    /// `compose(g, f)` must be given for every composable pair.
    pub fn from_parts(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let n = arrows.len();
        let mut table = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                if arrows[f].target == arrows[g].source {
                    let h = compose(g, f).ok_or_else(|| {
                        Error::Argument(format!("missing composite {} ∘ {}", arrows[g].name, arrows[f].name))
                    })?;
                    table[g * n + f] = Some(h);
                }
            }
        }
        Self::from_table(objects, arrows, identities, table)
    }

    pub(crate) fn from_table(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        table: Vec<Option<usize>>,
    ) -> Result<Self> {
        let mut object_lookup = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if object_lookup.insert(o.clone(), i).is_some() {
                return arg(format!("duplicate object {o:?}"));
            }
        }
        let mut arrow_lookup = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= objects.len() || a.target >= objects.len() {
                return arg(format!("arrow {:?} has an unknown endpoint", a.name));
            }
            if arrow_lookup.insert(a.name.clone(), i).is_some() {
                return arg(format!("duplicate arrow {:?}", a.name));
            }
        }
        if identities.len() != objects.len() {
            return arg("one identity per object is required");
        }
        let c = Self { objects, arrows, identities, table, object_lookup, arrow_lookup };
        c.validate()?;
        Ok(c)
    }

    /// Checks typing, unit laws and associativity exhaustively.
    pub fn validate(&self) -> Result<()> {
        let n = self.arrows.len();
        for (x, &id) in self.identities.iter().enumerate() {
            if id >= n || self.arrows[id].source != x || self.arrows[id].target != x {
                return arg(format!("identity of {:?} is not an endo-arrow of it", self.objects[x]));
            }
        }
        for g in 0..n {
            for f in 0..n {
                let composable = self.arrows[f].target == self.arrows[g].source;
                match self.table[g * n + f] {
                    Some(h) if composable => {
                        if h >= n || self.arrows[h].source != self.arrows[f].source || self.arrows[h].target != self.arrows[g].target {
                            return arg(format!("composite {} ∘ {} has the wrong type", self.arrows[g].name, self.arrows[f].name));
                        }
                    }
                    None if !composable => {}
                    _ => return arg(format!("composition table is wrong at ({}, {})", self.arrows[g].name, self.arrows[f].name)),
                }
            }
        }
        for f in 0..n {
            let a = &self.arrows[f];
            if self.compose(self.identities[a.target], f) != Some(f) || self.compose(f, self.identities[a.source]) != Some(f) {
                return arg(format!("unit law fails at {}", a.name));
            }
        }
        for f in 0..n {
            for g in self.arrows_from(self.arrows[f].target) {
                let gf = self.table[g * n + f].expect("composable");
                for h in self.arrows_from(self.arrows[g].target) {
                    let hg = self.table[h * n + g].expect("composable");
                    if self.table[h * n + gf] != self.table[hg * n + f] {
                        return arg(format!(
                            "associativity fails at ({}, {}, {})",
                            self.arrows[h].name, self.arrows[g].name, self.arrows[f].name
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn arrow_name(&self, a: usize) -> &str {
        &self.arrows[a].name
    }

    pub fn object_by_name(&self, name: &str) -> Option<usize> {
        self.object_lookup.get(name).copied()
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.arrow_lookup.get(name).copied()
    }

    pub fn source(&self, a: usize) -> usize {
        self.arrows[a].source
    }

    pub fn target(&self, a: usize) -> usize {
        self.arrows[a].target
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn is_identity(&self, a: usize) -> bool {
        self.identities[self.arrows[a].source] == a
    }

    /// `g ∘ f` (first `f`, then `g`), if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.table[g * self.arrows.len() + f]
    }

    /// Composite of a path given in traversal order.
    pub fn compose_path(&self, start: usize, path: &[usize]) -> Option<usize> {
        path.iter().try_fold(self.identities[start], |acc, &a| self.compose(a, acc))
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].source == x && self.arrows[a].target == y).collect()
    }

    pub fn arrows_from(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == x)
    }

    pub fn arrows_to(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == y)
    }

    pub fn non_identity_arrows(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| !self.is_identity(a))
    }

    /// A two-sided inverse, if any.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        let (x, y) = (self.source(a), self.target(a));
        self.hom(y, x)
            .into_iter()
            .find(|&b| self.compose(b, a) == Some(self.identities[x]) && self.compose(a, b) == Some(self.identities[y]))
    }

    pub fn is_invertible(&self, a: usize) -> bool {
        self.inverse(a).is_some()
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.arrows.len()).all(|a| self.is_invertible(a))
    }

    /// `[n]`: objects `0..=n`, one arrow `i->j` for each `i < j`.
    pub fn ordinal(n: usize) -> FinCategory {
        let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        Self::poset(&names, |a, b| a <= b).expect("total order is a poset")
    }

    /// The poset on `names` with the order `leq`; arrows are named `a->b`,
    /// identities `id_a`.
    pub fn poset(names: &[String], leq: impl Fn(usize, usize) -> bool) -> Result<FinCategory> {
        let n = names.len();
        for a in 0..n {
            if !leq(a, a) {
                return arg("order relation is not reflexive");
            }
            for b in 0..n {
                if a != b && leq(a, b) && leq(b, a) {
                    return arg("order relation is not antisymmetric");
                }
                for c in 0..n {
                    if leq(a, b) && leq(b, c) && !leq(a, c) {
                        return arg("order relation is not transitive");
                    }
                }
            }
        }
        let mut arrows = Vec::new();
        let mut index = BTreeMap::new();
        let mut identities = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    index.insert((a, b), arrows.len());
                    let name = if a == b { format!("id_{}", names[a]) } else { format!("{}->{}", names[a], names[b]) };
                    if a == b {
                        identities[a] = arrows.len();
                    }
                    arrows.push(Arrow { name, source: a, target: b });
                }
            }
        }
        let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.source, a.target)).collect();
        Self::from_parts(names.to_vec(), arrows, identities, |g, f| index.get(&(ends[f].0, ends[g].1)).copied())
    }

    /// The discrete category on `names`.
    pub fn discrete(names: &[String]) -> FinCategory {
        Self::poset(names, |a, b| a == b).expect("equality is an order")
    }

    pub fn terminal() -> FinCategory {
        Self::ordinal(0)
    }

    pub fn empty() -> FinCategory {
        Self::discrete(&[])
    }

    /// The opposite category; arrow names are kept.
    pub fn opposite(&self) -> FinCategory {
        let n = self.arrows.len();
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
            .collect();
        let mut table = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                table[g * n + f] = self.table[f * n + g];
            }
        }
        Self {
            objects: self.objects.clone(),
            arrows,
            identities: self.identities.clone(),
            table,
            object_lookup: self.object_lookup.clone(),
            arrow_lookup: self.arrow_lookup.clone(),
        }
    }

    /// `C × D`; objects and arrows are named `(a,b)`.
    pub fn product(c: &FinCategory, d: &FinCategory) -> FinCategory {
        let m = d.num_objects();
        let k = d.num_arrows();
        let objects = c
            .objects
            .iter()
            .flat_map(|a| d.objects.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let mut arrows = Vec::new();
        for f in &c.arrows {
            for g in &d.arrows {
                arrows.push(Arrow {
                    name: format!("({},{})", f.name, g.name),
                    source: f.source * m + g.source,
                    target: f.target * m + g.target,
                });
            }
        }
        let identities = (0..c.num_objects())
            .flat_map(|x| (0..m).map(move |y| (x, y)))
            .map(|(x, y)| c.identities[x] * k + d.identities[y])
            .collect();
        Self::from_parts(objects, arrows, identities, |g, f| {
            let a = c.compose(g / k, f / k)?;
            let b = d.compose(g % k, f % k)?;
            Some(a * k + b)
        })
        .expect("product of categories")
    }

    /// The subcategory on the given arrows (identities are added), with its
    /// inclusion. Fails if the arrows are not closed under composition.
    pub fn subcategory(self: &Arc<Self>, keep: &BTreeSet<usize>) -> Result<(Arc<FinCategory>, super::Functor)> {
        let mut keep = keep.clone();
        keep.extend(self.identities.iter().copied());
        let list: Vec<usize> = keep.iter().copied().collect();
        let position: HashMap<usize, usize> = list.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        for &g in &list {
            for &f in &list {
                if let Some(h) = self.compose(g, f) {
                    if !keep.contains(&h) {
                        return arg(format!("{} ∘ {} leaves the subcategory", self.arrows[g].name, self.arrows[f].name));
                    }
                }
            }
        }
        let arrows = list.iter().map(|&a| self.arrows[a].clone()).collect();
        let identities = self.identities.iter().map(|a| position[a]).collect();
        let sub = Arc::new(Self::from_parts(self.objects.clone(), arrows, identities, |g, f| {
            self.compose(list[g], list[f]).map(|h| position[&h])
        })?);
        let functor = super::Functor::new(sub.clone(), self.clone(), (0..self.num_objects()).collect(), list)?;
        Ok((sub, functor))
    }

    /// Same category with every name replaced by `rename`; used to build
    /// disjoint unions and isomorphic copies.
    pub fn renamed(&self, objects: impl Fn(&str) -> String, arrows: impl Fn(&str) -> String) -> Result<FinCategory> {
        let obj = self.objects.iter().map(|o| objects(o)).collect();
        let arr = self
            .arrows
            .iter()
            .map(|a| Arrow { name: arrows(&a.name), source: a.source, target: a.target })
            .collect();
        Self::from_table(obj, arr, self.identities.clone(), self.table.clone())
    }
}
