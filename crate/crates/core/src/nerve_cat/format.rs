use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::builder::CategoryBuilder;
use super::category::FinCategory;
use super::functor::Functor;
use super::localize::RelativeCategory;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub name: String,
    pub src: String,
    pub dst: String,
}

/// Serialized category. `arrows` lists the non-identity arrows, `compose`
/// holds `[g, f, g∘f]` for every composable pair of them. Identities are
/// implicit and named `id_<object>` unless `identities` overrides the name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    pub compose: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub identities: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weak: Option<Vec<String>>,
}

impl CategoryDoc {
    pub fn from_category(c: &FinCategory) -> Self {
        let objects = c.objects().to_vec();
        let arrows = c
            .non_identity_arrows()
            .map(|a| ArrowDoc {
                name: c.arrow_name(a).to_string(),
                src: c.object_name(c.source(a)).to_string(),
                dst: c.object_name(c.target(a)).to_string(),
            })
            .collect();
        let mut compose = Vec::new();
        for f in c.non_identity_arrows() {
            for g in c.arrows_from(c.target(f)) {
                if c.is_identity(g) {
                    continue;
                }
                let h = c.compose(g, f).expect("composable");
                compose.push([c.arrow_name(g).to_string(), c.arrow_name(f).to_string(), c.arrow_name(h).to_string()]);
            }
        }
        let identities = (0..c.num_objects())
            .filter(|&x| c.arrow_name(c.identity(x)) != format!("id_{}", c.object_name(x)))
            .map(|x| (c.object_name(x).to_string(), c.arrow_name(c.identity(x)).to_string()))
            .collect();
        Self { objects, arrows, compose, identities, weak: None }
    }

    pub fn from_relative(r: &RelativeCategory) -> Self {
        let c = &r.category;
        let mut doc = Self::from_category(c);
        doc.weak = Some(r.weak().iter().filter(|&&a| !c.is_identity(a)).map(|&a| c.arrow_name(a).to_string()).collect());
        doc
    }

    pub fn to_category(&self) -> Result<FinCategory> {
        let mut b = CategoryBuilder::new();
        let mut objects = BTreeMap::new();
        for o in &self.objects {
            if objects.insert(o.clone(), b.object(o.clone())).is_some() {
                return Err(Error::Format(format!("duplicate object {o:?}")));
            }
        }
        for (o, name) in &self.identities {
            let x = *objects.get(o).ok_or_else(|| Error::Format(format!("identity for unknown object {o:?}")))?;
            b.identity_name(x, name.clone());
        }
        for a in &self.arrows {
            let s = *objects.get(&a.src).ok_or_else(|| Error::Format(format!("arrow {:?}: unknown source {:?}", a.name, a.src)))?;
            let t = *objects.get(&a.dst).ok_or_else(|| Error::Format(format!("arrow {:?}: unknown target {:?}", a.name, a.dst)))?;
            b.arrow(a.name.clone(), s, t);
        }
        for [g, f, h] in &self.compose {
            b.composite(g, f, h).map_err(|e| Error::Format(e.to_string()))?;
        }
        b.build().map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_relative(&self) -> Result<RelativeCategory> {
        let c = Arc::new(self.to_category()?);
        let mut weak = BTreeSet::new();
        for name in self.weak.iter().flatten() {
            weak.insert(c.arrow_by_name(name).ok_or_else(|| Error::Format(format!("unknown weak arrow {name:?}")))?);
        }
        RelativeCategory::new(c, weak)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

impl FinCategory {
    pub fn to_json(&self) -> String {
        CategoryDoc::from_category(self).to_json()
    }

    pub fn from_json(text: &str) -> Result<FinCategory> {
        CategoryDoc::from_json(text)?.to_category()
    }
}

/// Serialized functor. Images are given by name; identities may be left
/// out of `arrows`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorDoc {
    pub source: CategoryDoc,
    pub target: CategoryDoc,
    pub objects: BTreeMap<String, String>,
    pub arrows: BTreeMap<String, String>,
}

impl FunctorDoc {
    pub fn from_functor(f: &Functor) -> Self {
        let (c, d) = (f.source(), f.target());
        let objects = (0..c.num_objects())
            .map(|x| (c.object_name(x).to_string(), d.object_name(f.on_object(x)).to_string()))
            .collect();
        let arrows = c
            .non_identity_arrows()
            .map(|a| (c.arrow_name(a).to_string(), d.arrow_name(f.on_arrow(a)).to_string()))
            .collect();
        Self { source: CategoryDoc::from_category(c), target: CategoryDoc::from_category(d), objects, arrows }
    }

    pub fn to_functor(&self) -> Result<Functor> {
        let c = Arc::new(self.source.to_category()?);
        let d = Arc::new(self.target.to_category()?);
        object_and_arrow_maps(&c, &d, &self.objects, &self.arrows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

/// Resolves name maps into a functor `c → d`.
pub(crate) fn object_and_arrow_maps(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    objects: &BTreeMap<String, String>,
    arrows: &BTreeMap<String, String>,
) -> Result<Functor> {
    let find_object = |name: &str| d.object_by_name(name).ok_or_else(|| Error::Format(format!("unknown target object {name:?}")));
    let object_map = (0..c.num_objects())
        .map(|x| {
            let image = objects.get(c.object_name(x)).ok_or_else(|| Error::Format(format!("object {:?} has no image", c.object_name(x))))?;
            find_object(image)
        })
        .collect::<Result<Vec<_>>>()?;
    for name in arrows.keys() {
        if c.arrow_by_name(name).is_none() {
            return Err(Error::Format(format!("unknown source arrow {name:?}")));
        }
    }
    let arrow_map = (0..c.num_arrows())
        .map(|a| match arrows.get(c.arrow_name(a)) {
            Some(image) => d.arrow_by_name(image).ok_or_else(|| Error::Format(format!("unknown target arrow {image:?}"))),
            None if c.is_identity(a) => Ok(d.identity(object_map[c.source(a)])),
            None => Err(Error::Format(format!("arrow {:?} has no image", c.arrow_name(a)))),
        })
        .collect::<Result<Vec<_>>>()?;
    Functor::new(c.clone(), d.clone(), object_map, arrow_map).map_err(|e| Error::Format(e.to_string()))
}

impl Functor {
    pub fn to_json(&self) -> String {
        FunctorDoc::from_functor(self).to_json()
    }

    pub fn from_json(text: &str) -> Result<Functor> {
        FunctorDoc::from_json(text)?.to_functor()
    }
}
