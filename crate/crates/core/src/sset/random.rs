use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{pushout, standard_object, Cell, SimplicialMap, SimplicialSet, StandardKind, Truncation};
use crate::error::Result;

impl SimplicialSet {
    /// The unique map to `Δ^0`.
    pub fn to_point(self: &Arc<Self>) -> SimplicialMap {
        let p = Arc::new(standard_object(StandardKind::Simplex, 0, None).expect("Δ^0"));
        let v = Cell::new(0, 0);
        let assignment = (0..self.top_dim().map_or(0, |d| d + 1))
            .map(|d| self.cells(d).map(|_| p.degenerate_vertex(v, d)).collect())
            .collect();
        SimplicialMap::new_unchecked(self.clone(), p, assignment)
    }

    /// `X / A`: the sub-simplicial set generated by `cells` crushed to a
    /// vertex. Returns `X` unchanged when `cells` is empty.
    pub fn collapse(self: &Arc<Self>, cells: &BTreeSet<Cell>) -> Result<Arc<SimplicialSet>> {
        if cells.is_empty() {
            return Ok(self.clone());
        }
        let (sub, inc) = self.sub(cells, Truncation::Complete)?;
        Ok(pushout(&inc, &sub.to_point())?.set)
    }
}

/// A pseudo-random finite simplicial set: a random ordered simplicial
/// complex on `vertices` vertices with simplices of dimension at most
/// `max_dim`, with possibly one random simplex crushed to a point.
pub fn random_simplicial_set(seed: u64, vertices: usize, max_dim: usize) -> SimplicialSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices = vertices.max(1);
    let names: Vec<String> = (0..vertices).map(|v| format!("v{v}")).collect();
    let count = rng.gen_range(1..=vertices + 1);
    let simplices: Vec<Vec<usize>> = (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=(max_dim + 1).min(vertices));
            let mut s: BTreeSet<usize> = BTreeSet::new();
            while s.len() < size {
                s.insert(rng.gen_range(0..vertices));
            }
            s.into_iter().collect()
        })
        .collect();
    let x = Arc::new(SimplicialSet::from_ordered_complex(&names, &simplices).expect("increasing lists"));
    if rng.gen_bool(0.5) {
        let s = &simplices[rng.gen_range(0..simplices.len())];
        let name = if s.len() == 1 {
            names[s[0]].clone()
        } else {
            format!("{{{}}}", s.iter().map(|&v| names[v].clone()).collect::<Vec<_>>().join(","))
        };
        if let Some(c) = x.cell_by_name(&name) {
            let collapsed = x.collapse(&[c].into_iter().collect()).expect("collapse a subcomplex");
            return Arc::try_unwrap(collapsed).unwrap_or_else(|a| (*a).clone());
        }
    }
    Arc::try_unwrap(x).unwrap_or_else(|a| (*a).clone())
}
