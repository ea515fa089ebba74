use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::SimplicialCategory;
use crate::error::{Error, Result};
use crate::sset::{Simplex, SimplicialSet, SimplicialSetDoc};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSpaceDoc {
    pub source: String,
    pub target: String,
    pub space: SimplicialSetDoc,
}

/// `second ∘ first = composite` on vertices of `Map(source, middle)`,
/// `Map(middle, target)` and `Map(source, target)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexComposite {
    pub source: String,
    pub middle: String,
    pub target: String,
    pub second: String,
    pub first: String,
    pub composite: String,
}

/// Serialized simplicial category whose map spaces are determined by their
/// vertices; composition is given on vertices only. Missing map spaces are
/// empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialCategoryDoc {
    pub objects: Vec<String>,
    pub maps: Vec<MapSpaceDoc>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<VertexComposite>,
}

impl SimplicialCategoryDoc {
    pub fn from_category(c: &SimplicialCategory) -> Self {
        let n = c.num_objects();
        let obj = |x: usize| c.objects()[x].clone();
        let mut maps = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if c.map_space(x, y).num_cells(0) > 0 {
                    maps.push(MapSpaceDoc { source: obj(x), target: obj(y), space: SimplicialSetDoc::from_set(c.map_space(x, y)) });
                }
            }
        }
        let identities = (0..n).map(|x| (obj(x), c.map_space(x, x).name(c.identity(x)).to_string())).collect();
        let mut compose = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (f_space, g_space) = (c.map_space(x, y), c.map_space(y, z));
                    for g in g_space.cells(0) {
                        for f in f_space.cells(0) {
                            let h = c.compose(x, y, z, &Simplex::nondegenerate(g), &Simplex::nondegenerate(f));
                            compose.push(VertexComposite {
                                source: obj(x),
                                middle: obj(y),
                                target: obj(z),
                                second: g_space.name(g).to_string(),
                                first: f_space.name(f).to_string(),
                                composite: c.map_space(x, z).name(h.cell()).to_string(),
                            });
                        }
                    }
                }
            }
        }
        Self { objects: c.objects().to_vec(), maps, identities, compose }
    }

    pub fn to_category(&self) -> Result<SimplicialCategory> {
        let n = self.objects.len();
        let index: HashMap<&str, usize> = self.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let object = |name: &str| index.get(name).copied().ok_or_else(|| Error::Format(format!("unknown object {name:?}")));
        let mut maps: Vec<Vec<Arc<SimplicialSet>>> = vec![vec![Arc::new(SimplicialSet::empty()); n]; n];
        for m in &self.maps {
            maps[object(&m.source)?][object(&m.target)?] = Arc::new(m.space.to_set()?);
        }
        let identities = (0..n)
            .map(|x| {
                let name = self.identities.get(&self.objects[x]).ok_or_else(|| Error::Format(format!("no identity for {:?}", self.objects[x])))?;
                maps[x][x].cell_by_name(name).filter(|c| c.dim == 0).ok_or_else(|| Error::Format(format!("identity {name:?} is not a vertex")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut rule = HashMap::new();
        for e in &self.compose {
            let (x, y, z) = (object(&e.source)?, object(&e.middle)?, object(&e.target)?);
            let vertex = |space: &SimplicialSet, name: &str| {
                space.cell_by_name(name).filter(|c| c.dim == 0).ok_or_else(|| Error::Format(format!("{name:?} is not a vertex of its map space")))
            };
            let key = (x, y, z, vertex(&maps[y][z], &e.second)?.index, vertex(&maps[x][y], &e.first)?.index);
            rule.insert(key, vertex(&maps[x][z], &e.composite)?);
        }
        SimplicialCategory::from_vertex_rule(self.objects.clone(), maps, identities, |x, y, z, g, f| {
            rule.get(&(x, y, z, g.index, f.index)).copied().ok_or_else(|| {
                Error::Format(format!("no composite given for {} → {} → {}", self.objects[x], self.objects[y], self.objects[z]))
            })
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}
