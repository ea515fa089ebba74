use std::collections::HashMap;

use super::{Cell, Simplex, SimplicialSet};
use crate::delta::OrdinalMap;

/// Lookup of simplices by vertex sequence, for simplicial sets in which a
/// nondegenerate simplex is determined by its vertices and has no two
/// consecutive vertices equal (nerves of posets, ordered complexes, nerves
/// of chaotic groupoids).
#[derive(Debug, Clone)]
pub struct VertexIndex {
    cells: HashMap<Vec<Cell>, Cell>,
}

impl VertexIndex {
    /// `None` if two cells share a vertex sequence or a cell repeats a
    /// vertex consecutively.
    pub fn new(x: &SimplicialSet) -> Option<Self> {
        let mut cells = HashMap::new();
        for c in x.all_cells() {
            let vs = x.vertices_of(&Simplex::nondegenerate(c));
            if vs.windows(2).any(|w| w[0] == w[1]) || cells.insert(vs, c).is_some() {
                return None;
            }
        }
        Some(Self { cells })
    }

    /// The simplex with the given vertex sequence, if any.
    pub fn simplex(&self, vertices: &[Cell]) -> Option<Simplex> {
        let mut distinct: Vec<Cell> = Vec::with_capacity(vertices.len());
        let mut runs = Vec::with_capacity(vertices.len());
        for &v in vertices {
            if distinct.last() != Some(&v) {
                distinct.push(v);
            }
            runs.push(distinct.len() - 1);
        }
        let cell = *self.cells.get(&distinct)?;
        let rho = OrdinalMap::new(distinct.len() - 1, runs).ok()?;
        Some(Simplex::from_parts(rho, cell))
    }
}
