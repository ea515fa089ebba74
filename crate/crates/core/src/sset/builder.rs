use std::collections::HashMap;
use std::hash::Hash;

use super::{Cell, Simplex, SimplicialSet, Truncation};
use crate::delta::{self, OrdinalMap};
use crate::error::{arg, Error, Result};

/// Incremental construction of a simplicial set by naming cells and faces.
#[derive(Debug, Default)]
pub struct SimplicialSetBuilder {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<Simplex>>>,
    lookup: HashMap<String, Cell>,
}

impl SimplicialSetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<Cell> {
        self.add_cell(name, 0, Vec::new())
    }

    /// Adds a `dim`-cell whose faces are given in E-Z form.
    pub fn add_cell(&mut self, name: impl Into<String>, dim: usize, faces: Vec<Simplex>) -> Result<Cell> {
        let name = name.into();
        if self.lookup.contains_key(&name) {
            return arg(format!("duplicate cell name {name:?}"));
        }
        let expected = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expected {
            return arg(format!("cell {name:?} of dimension {dim} needs {expected} faces"));
        }
        for f in &faces {
            if f.dim() + 1 != dim || f.cell.index >= self.names.get(f.cell.dim).map_or(0, Vec::len) {
                return arg(format!("face {f:?} of {name:?} is not an existing {}-simplex", dim - 1));
            }
        }
        if self.names.len() <= dim {
            self.names.resize(dim + 1, Vec::new());
            self.faces.resize(dim + 1, Vec::new());
        }
        let cell = Cell { dim, index: self.names[dim].len() };
        self.names[dim].push(name.clone());
        self.faces[dim].push(faces);
        self.lookup.insert(name, cell);
        Ok(cell)
    }

    /// Adds a cell whose faces are all nondegenerate, given by name.
    pub fn add_cell_named_faces(&mut self, name: impl Into<String>, faces: &[&str]) -> Result<Cell> {
        let dim = faces.len().saturating_sub(1);
        let fs = faces
            .iter()
            .map(|f| {
                self.lookup
                    .get(*f)
                    .map(|&c| Simplex::nondegenerate(c))
                    .ok_or_else(|| Error::Argument(format!("unknown face {f:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.add_cell(name, dim, fs)
    }

    pub fn cell(&self, name: &str) -> Option<Cell> {
        self.lookup.get(name).copied()
    }

    pub fn build(self, truncation: Truncation) -> Result<SimplicialSet> {
        SimplicialSet::from_parts(truncation, self.names, self.faces)
    }
}

/// A simplicial set presented level by level with explicit structure maps.
pub trait LevelwiseSet {
    type Elem: Clone + Eq + Hash;

    /// All `n`-simplices.
    fn level(&self, n: usize) -> Vec<Self::Elem>;
    /// `d_i` on an `n`-simplex.
    fn face(&self, n: usize, i: usize, x: &Self::Elem) -> Self::Elem;
    /// `s_i` on an `n`-simplex.
    fn degeneracy(&self, n: usize, i: usize, x: &Self::Elem) -> Self::Elem;
    fn name(&self, x: &Self::Elem) -> String;
}

/// Result of normalizing a levelwise presentation: the simplicial set and
/// the E-Z form of every presented simplex.
pub struct LevelwiseBuild<E> {
    pub set: SimplicialSet,
    pub index: Vec<HashMap<E, Simplex>>,
}

impl SimplicialSet {
    /// Normalizes a levelwise presentation up to dimension `dim`.
    pub fn from_levels<L: LevelwiseSet>(levels: &L, dim: usize, truncation: Truncation) -> Result<LevelwiseBuild<L::Elem>> {
        let mut names: Vec<Vec<String>> = Vec::new();
        let mut faces: Vec<Vec<Vec<Simplex>>> = Vec::new();
        let mut index: Vec<HashMap<L::Elem, Simplex>> = Vec::new();
        let mut used: HashMap<String, usize> = HashMap::new();
        for n in 0..=dim {
            let mut level_names = Vec::new();
            let mut level_faces = Vec::new();
            let mut level_index = HashMap::new();
            for z in levels.level(n) {
                if level_index.contains_key(&z) {
                    continue;
                }
                let mut decomposed = None;
                for i in 0..n {
                    let below = levels.face(n, i, &z);
                    if levels.degeneracy(n - 1, i, &below) == z {
                        let inner: &Simplex = index[n - 1]
                            .get(&below)
                            .ok_or_else(|| Error::Inconsistent("face leaves the presented level".into()))?;
                        let s = OrdinalMap::degeneracy(n, i)?;
                        let degeneracy = delta::compose(&inner.degeneracy, &s)?;
                        decomposed = Some(Simplex { degeneracy, cell: inner.cell });
                        break;
                    }
                }
                let simplex = match decomposed {
                    Some(s) => s,
                    None => {
                        let cell = Cell { dim: n, index: level_names.len() };
                        let mut name = levels.name(&z);
                        let count = used.entry(name.clone()).or_insert(0);
                        *count += 1;
                        if *count > 1 {
                            name = format!("{name}#{}", *count - 1);
                        }
                        level_names.push(name);
                        let fs = if n == 0 {
                            Vec::new()
                        } else {
                            (0..=n)
                                .map(|i| {
                                    let f = levels.face(n, i, &z);
                                    index[n - 1]
                                        .get(&f)
                                        .cloned()
                                        .ok_or_else(|| Error::Inconsistent("face leaves the presented level".into()))
                                })
                                .collect::<Result<Vec<_>>>()?
                        };
                        level_faces.push(fs);
                        Simplex::nondegenerate(cell)
                    }
                };
                level_index.insert(z, simplex);
            }
            names.push(level_names);
            faces.push(level_faces);
            index.push(level_index);
        }
        let set = SimplicialSet::from_parts(truncation, names, faces)?;
        Ok(LevelwiseBuild { set, index })
    }
}
