//! JSON document format for simplicial sets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Simplex, SimplicialSet, Truncation};
use crate::delta::OrdinalMap;
use crate::error::{Error, Result};

/// Serialized form: `truncation` is `null` for a complete set, `cells` lists
/// names per dimension and `faces` gives, for each positive-dimensional cell,
/// its faces as `[surjection values, cell name]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialSetDoc {
    pub truncation: Option<usize>,
    pub cells: BTreeMap<usize, Vec<String>>,
    pub faces: BTreeMap<String, Vec<(Vec<usize>, String)>>,
}

impl SimplicialSetDoc {
    pub fn from_set(x: &SimplicialSet) -> Self {
        let truncation = match x.truncation() {
            Truncation::Complete => None,
            Truncation::At(d) => Some(d),
        };
        let mut cells = BTreeMap::new();
        let mut faces = BTreeMap::new();
        for d in 0..x.top_dim().map_or(0, |t| t + 1) {
            cells.insert(d, x.names(d).to_vec());
            if d == 0 {
                continue;
            }
            for c in x.cells(d) {
                let fs = x
                    .cell_faces(c)
                    .iter()
                    .map(|f| (f.degeneracy().values().to_vec(), x.name(f.cell()).to_string()))
                    .collect();
                faces.insert(x.name(c).to_string(), fs);
            }
        }
        Self { truncation, cells, faces }
    }

    pub fn to_set(&self) -> Result<SimplicialSet> {
        let truncation = self.truncation.map_or(Truncation::Complete, Truncation::At);
        let dims = self.cells.keys().next_back().map_or(0, |d| d + 1);
        let mut names: Vec<Vec<String>> = vec![Vec::new(); dims];
        for (&d, level) in &self.cells {
            names[d] = level.clone();
        }
        let mut lookup = BTreeMap::new();
        for (d, level) in names.iter().enumerate() {
            for (i, n) in level.iter().enumerate() {
                if lookup.insert(n.as_str(), super::Cell { dim: d, index: i }).is_some() {
                    return Err(Error::Format(format!("duplicate cell name {n:?}")));
                }
            }
        }
        for name in self.faces.keys() {
            match lookup.get(name.as_str()) {
                Some(c) if c.dim > 0 => {}
                _ => return Err(Error::Format(format!("faces given for unknown or 0-dimensional cell {name:?}"))),
            }
        }
        let mut faces: Vec<Vec<Vec<Simplex>>> = vec![Vec::new(); dims];
        for (d, level) in names.iter().enumerate() {
            for name in level {
                if d == 0 {
                    faces[d].push(Vec::new());
                    continue;
                }
                let given = self
                    .faces
                    .get(name)
                    .ok_or_else(|| Error::Format(format!("missing faces of {name:?}")))?;
                let fs = given
                    .iter()
                    .map(|(values, target)| {
                        let cell = *lookup
                            .get(target.as_str())
                            .ok_or_else(|| Error::Format(format!("unknown face cell {target:?}")))?;
                        let s = OrdinalMap::new(cell.dim, values.clone())
                            .map_err(|e| Error::Format(format!("face of {name:?}: {e}")))?;
                        Simplex::new(s, cell).map_err(|e| Error::Format(format!("face of {name:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                faces[d].push(fs);
            }
        }
        SimplicialSet::from_parts(truncation, names, faces)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

impl SimplicialSet {
    pub fn to_json(&self) -> String {
        SimplicialSetDoc::from_set(self).to_json()
    }

    pub fn from_json(text: &str) -> Result<SimplicialSet> {
        SimplicialSetDoc::from_json(text)?.to_set()
    }
}
