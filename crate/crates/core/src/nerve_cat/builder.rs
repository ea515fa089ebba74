use std::collections::{BTreeMap, HashMap, VecDeque};

use super::category::{Arrow, FinCategory};
use crate::error::{arg, Error, Result};

/// Builds a category from its non-identity arrows and their composites.
/// Identities are added automatically and named `id_<object>` unless
/// renamed with [`CategoryBuilder::identity_name`].
#[derive(Debug, Default, Clone)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    identity_names: Vec<String>,
    arrows: Vec<Arrow>,
    composites: HashMap<(usize, usize), String>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        self.identity_names.push(format!("id_{name}"));
        self.objects.push(name);
        self.objects.len() - 1
    }

    pub fn identity_name(&mut self, object: usize, name: impl Into<String>) -> &mut Self {
        self.identity_names[object] = name.into();
        self
    }

    /// Adds a non-identity arrow; returns its index among the added arrows.
    pub fn arrow(&mut self, name: impl Into<String>, source: usize, target: usize) -> usize {
        self.arrows.push(Arrow { name: name.into(), source, target });
        self.arrows.len() - 1
    }

    fn find(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::Argument(format!("unknown arrow {name:?}")))
    }

    /// Declares `g ∘ f = h` by names; `h` may be an identity name.
    pub fn composite(&mut self, g: &str, f: &str, h: &str) -> Result<&mut Self> {
        let (gi, fi) = (self.find(g)?, self.find(f)?);
        if self.arrows[fi].target != self.arrows[gi].source {
            return arg(format!("{g} ∘ {f} is not composable"));
        }
        if self.composites.insert((gi, fi), h.to_string()).is_some() {
            return arg(format!("composite {g} ∘ {f} given twice"));
        }
        Ok(self)
    }

    pub fn build(&self) -> Result<FinCategory> {
        let n_obj = self.objects.len();
        let mut arrows: Vec<Arrow> = self
            .identity_names
            .iter()
            .enumerate()
            .map(|(x, name)| Arrow { name: name.clone(), source: x, target: x })
            .collect();
        for a in &self.arrows {
            if a.source >= n_obj || a.target >= n_obj {
                return arg(format!("arrow {:?} has an unknown endpoint", a.name));
            }
        }
        arrows.extend(self.arrows.iter().cloned());
        let lookup: HashMap<&str, usize> = arrows.iter().enumerate().map(|(i, a)| (a.name.as_str(), i)).collect();
        let mut composites: HashMap<(usize, usize), usize> = HashMap::new();
        for (&(g, f), h) in &self.composites {
            let hi = *lookup.get(h.as_str()).ok_or_else(|| Error::Argument(format!("unknown composite {h:?}")))?;
            composites.insert((g + n_obj, f + n_obj), hi);
        }
        let identities: Vec<usize> = (0..n_obj).collect();
        let src: Vec<usize> = arrows.iter().map(|a| a.source).collect();
        let tgt: Vec<usize> = arrows.iter().map(|a| a.target).collect();
        FinCategory::from_parts(self.objects.clone(), arrows, identities, |g, f| {
            if g < n_obj && tgt[f] == g {
                Some(f)
            } else if f < n_obj && src[g] == f {
                Some(g)
            } else {
                composites.get(&(g, f)).copied()
            }
        })
    }
}

/// A map of finite sets `{0..m} → {0..n}` given by its value list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetMap {
    pub source: usize,
    pub target: usize,
    pub values: Vec<usize>,
}

impl FinCategory {
    /// The subcategory of finite sets generated by the given maps. Objects are
    /// the sets of the given `sizes` (named `S0`, `S1`, …), generators are
    /// `(source object, target object, values)`; arrows are named by the
    /// first word found for them. Fails if more than `max_arrows` arise.
    pub fn from_functions(sizes: &[usize], generators: &[(usize, usize, Vec<usize>)], max_arrows: usize) -> Result<FinCategory> {
        for (i, (s, t, v)) in generators.iter().enumerate() {
            if *s >= sizes.len() || *t >= sizes.len() || v.len() != sizes[*s] || v.iter().any(|&x| x >= sizes[*t]) {
                return arg(format!("generator {i} is not a map between the given sets"));
            }
        }
        let mut found: BTreeMap<SetMap, String> = BTreeMap::new();
        let mut order: Vec<SetMap> = Vec::new();
        let mut queue = VecDeque::new();
        for (x, &n) in sizes.iter().enumerate() {
            let m = SetMap { source: x, target: x, values: (0..n).collect() };
            found.insert(m.clone(), format!("id_S{x}"));
            order.push(m.clone());
        }
        for (i, (s, t, v)) in generators.iter().enumerate() {
            let m = SetMap { source: *s, target: *t, values: v.clone() };
            if !found.contains_key(&m) {
                found.insert(m.clone(), format!("g{i}"));
                order.push(m.clone());
                queue.push_back(m);
            }
        }
        while let Some(m) = queue.pop_front() {
            let name = found[&m].clone();
            for (i, (s, t, v)) in generators.iter().enumerate() {
                if *s != m.target {
                    continue;
                }
                let c = SetMap { source: m.source, target: *t, values: m.values.iter().map(|&x| v[x]).collect() };
                if !found.contains_key(&c) {
                    if found.len() >= max_arrows {
                        return Err(Error::Unsupported(format!("generated category exceeds {max_arrows} arrows")));
                    }
                    found.insert(c.clone(), format!("g{i}∘{name}"));
                    order.push(c.clone());
                    queue.push_back(c);
                }
            }
        }
        let index: HashMap<&SetMap, usize> = order.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let arrows = order
            .iter()
            .map(|m| Arrow { name: found[m].clone(), source: m.source, target: m.target })
            .collect();
        let objects = (0..sizes.len()).map(|x| format!("S{x}")).collect();
        let identities = (0..sizes.len()).collect();
        FinCategory::from_parts(objects, arrows, identities, |g, f| {
            let (mg, mf) = (&order[g], &order[f]);
            let c = SetMap { source: mf.source, target: mg.target, values: mf.values.iter().map(|&x| mg.values[x]).collect() };
            index.get(&c).copied()
        })
    }
}

/// A pseudo-random finite category: the category of finite sets generated
/// by a few random maps between at most `max_objects` sets of size ≤ 3.
/// Retries until the closure has at most `max_arrows` arrows.
pub fn random_category(seed: u64, max_objects: usize, max_arrows: usize) -> FinCategory {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(1..=max_objects.max(1));
        if n > max_arrows {
            continue;
        }
        let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let count = rng.gen_range(0..=4);
        let generators: Vec<(usize, usize, Vec<usize>)> = (0..count)
            .map(|_| {
                let s = rng.gen_range(0..n);
                let t = rng.gen_range(0..n);
                let values = (0..sizes[s]).map(|_| rng.gen_range(0..sizes[t])).collect();
                (s, t, values)
            })
            .collect();
        if let Ok(c) = FinCategory::from_functions(&sizes, &generators, max_arrows) {
            return c;
        }
    }
}
