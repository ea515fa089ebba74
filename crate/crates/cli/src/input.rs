use std::path::Path;
use std::sync::Arc;

use infcat::chain_model::ChainMap;
use infcat::doldkan::ChainComplex;
use infcat::fibrations::{SplitFunctorDoc, SplitFunctorToCat};
use infcat::hcnerve::{coherent_nerve, SimplicialCategory, SimplicialCategoryDoc};
use infcat::nerve_cat::{nerve, CategoryDoc, FinCategory, Functor, FunctorDoc, RelativeCategory};
use infcat::segal::{rezk_nerve, BisimplicialSet, EmbedKind};
use infcat::sset::SimplicialSet;
use infcat::{Error, Result};
use serde_json::Value;

/// Any object file the tool reads, recognized by its top-level fields.
pub enum Input {
    Set(Arc<SimplicialSet>),
    Category(CategoryDoc),
    SimplicialCategory(SimplicialCategory),
    Functor(Functor),
    Split(SplitFunctorToCat),
    Complex(ChainComplex),
    ChainMap(ChainMap),
    Bisimplicial(BisimplicialSet),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Set(_) => "simplicial set",
            Input::Category(_) => "category",
            Input::SimplicialCategory(_) => "simplicial category",
            Input::Functor(_) => "functor",
            Input::Split(_) => "split functor to Cat",
            Input::Complex(_) => "chain complex",
            Input::ChainMap(_) => "chain map",
            Input::Bisimplicial(_) => "bisimplicial set",
        }
    }

    fn wrong(&self, wanted: &str) -> Error {
        Error::Unsupported(format!("expected a {wanted}, got a {}", self.kind()))
    }

    /// Simplicial sets are taken as they are, categories through their
    /// nerve and simplicial categories through their coherent nerve, both
    /// truncated at `dim`.
    pub fn simplicial_set(&self, dim: usize) -> Result<Arc<SimplicialSet>> {
        match self {
            Input::Set(x) => Ok(x.clone()),
            Input::Category(doc) => Ok(nerve(&Arc::new(doc.to_category()?), dim).set),
            Input::SimplicialCategory(c) => coherent_nerve(c, dim),
            other => Err(other.wrong("simplicial set, category or simplicial category")),
        }
    }

    pub fn category(&self) -> Result<Arc<FinCategory>> {
        match self {
            Input::Category(doc) => Ok(Arc::new(doc.to_category()?)),
            other => Err(other.wrong("category")),
        }
    }

    /// A category without a `weak` list is taken with identities only.
    pub fn relative(&self) -> Result<RelativeCategory> {
        match self {
            Input::Category(doc) => doc.to_relative(),
            other => Err(other.wrong("category")),
        }
    }

    pub fn simplicial_category(&self) -> Result<&SimplicialCategory> {
        match self {
            Input::SimplicialCategory(c) => Ok(c),
            other => Err(other.wrong("simplicial category")),
        }
    }

    pub fn functor(&self) -> Result<&Functor> {
        match self {
            Input::Functor(f) => Ok(f),
            other => Err(other.wrong("functor")),
        }
    }

    pub fn split(&self) -> Result<&SplitFunctorToCat> {
        match self {
            Input::Split(s) => Ok(s),
            other => Err(other.wrong("split functor to Cat")),
        }
    }

    pub fn complex(&self) -> Result<&ChainComplex> {
        match self {
            Input::Complex(c) => Ok(c),
            other => Err(other.wrong("chain complex")),
        }
    }

    pub fn chain_map(&self) -> Result<&ChainMap> {
        match self {
            Input::ChainMap(f) => Ok(f),
            other => Err(other.wrong("chain map")),
        }
    }

    /// Bisimplicial sets as they are; categories with a `weak` list through
    /// their Rezk nerve; other simplicial inputs embedded with `embed`.
    pub fn bisimplicial(&self, bound: (usize, usize), embed: EmbedKind) -> Result<BisimplicialSet> {
        match self {
            Input::Bisimplicial(x) => Ok(x.clone()),
            Input::Category(doc) if doc.weak.is_some() => rezk_nerve(&doc.to_relative()?, bound.0, bound.1),
            other => {
                let dim = match embed {
                    EmbedKind::Discrete => bound.0,
                    EmbedKind::Constant => bound.1,
                };
                BisimplicialSet::embed(embed, &other.simplicial_set(dim)?, bound)
            }
        }
    }
}

fn has(v: &Value, keys: &[&str]) -> bool {
    keys.iter().all(|k| v.get(k).is_some())
}

pub fn parse(text: &str) -> Result<Input> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if !v.is_object() {
        return Err(Error::Format("expected a JSON object at the top level".into()));
    }
    Ok(if has(&v, &["bound"]) {
        Input::Bisimplicial(BisimplicialSet::from_json(text)?)
    } else if has(&v, &["maps", "identities"]) {
        Input::SimplicialCategory(SimplicialCategoryDoc::from_json(text)?.to_category()?)
    } else if has(&v, &["base", "fibers"]) {
        Input::Split(SplitFunctorDoc::from_json(text)?.to_split()?)
    } else if has(&v, &["matrices"]) {
        Input::ChainMap(serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?)
    } else if has(&v, &["ring"]) {
        Input::Complex(ChainComplex::from_json(text)?)
    } else if has(&v, &["source", "target"]) {
        Input::Functor(FunctorDoc::from_json(text)?.to_functor()?)
    } else if has(&v, &["arrows"]) {
        let doc = CategoryDoc::from_json(text)?;
        doc.to_relative()?;
        Input::Category(doc)
    } else if has(&v, &["cells"]) {
        Input::Set(Arc::new(SimplicialSet::from_json(text)?))
    } else {
        return Err(Error::Format("unrecognized document: no field identifies the object kind".into()));
    })
}

pub fn load(path: &Path) -> Result<Input> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Argument(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        Error::Format(msg) => Error::Format(format!("{}: {msg}", path.display())),
        other => other,
    })
}
