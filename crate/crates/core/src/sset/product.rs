use std::collections::HashMap;
use std::sync::Arc;

use super::{Cell, Simplex, SimplicialMap, SimplicialSet, Truncation};
use crate::delta::{self, OrdinalMap};
use crate::error::Result;

/// `X × Y` with the bookkeeping needed to pair simplices.
#[derive(Clone, Debug)]
pub struct ProductSet {
    pub set: Arc<SimplicialSet>,
    left: Arc<SimplicialSet>,
    right: Arc<SimplicialSet>,
    components: Vec<Vec<(Simplex, Simplex)>>,
    index: HashMap<(Simplex, Simplex), Cell>,
}

/// Splits `s` and `t` along their common collapsed positions:
/// returns `(ρ, s', t')` with `s = s'∘ρ`, `t = t'∘ρ`.
fn common_degeneracy(s: &OrdinalMap, t: &OrdinalMap) -> (OrdinalMap, OrdinalMap, OrdinalMap) {
    let n = s.source();
    let mut rho = Vec::with_capacity(n + 1);
    let mut level = 0;
    rho.push(0);
    for k in 0..n {
        let both = s.apply(k) == s.apply(k + 1) && t.apply(k) == t.apply(k + 1);
        if !both {
            level += 1;
        }
        rho.push(level);
    }
    let mut sv = vec![0; level + 1];
    let mut tv = vec![0; level + 1];
    for k in 0..=n {
        sv[rho[k]] = s.apply(k);
        tv[rho[k]] = t.apply(k);
    }
    (
        OrdinalMap::from_values_unchecked(level, rho),
        OrdinalMap::from_values_unchecked(s.target(), sv),
        OrdinalMap::from_values_unchecked(t.target(), tv),
    )
}

pub fn product(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Result<ProductSet> {
    let truncation = x.truncation().min(y.truncation());
    let top = match truncation {
        Truncation::At(d) => d,
        Truncation::Complete => match (x.top_dim(), y.top_dim()) {
            (Some(a), Some(b)) => a + b,
            _ => 0,
        },
    };
    let empty = x.top_dim().is_none() || y.top_dim().is_none();
    let mut names: Vec<Vec<String>> = Vec::new();
    let mut faces: Vec<Vec<Vec<Simplex>>> = Vec::new();
    let mut components: Vec<Vec<(Simplex, Simplex)>> = Vec::new();
    let mut index: HashMap<(Simplex, Simplex), Cell> = HashMap::new();
    for n in 0..=top {
        let mut level_names = Vec::new();
        let mut level_faces = Vec::new();
        let mut level_components = Vec::new();
        if !empty {
            for p in 0..=n.min(x.top_dim().unwrap_or(0)) {
                for q in 0..=n.min(y.top_dim().unwrap_or(0)) {
                    if p + q < n || x.num_cells(p) == 0 || y.num_cells(q) == 0 {
                        continue;
                    }
                    let ss = delta::surjections(n, p);
                    let ts = delta::surjections(n, q);
                    for xc in x.cells(p) {
                        for yc in y.cells(q) {
                            for s in &ss {
                                for t in &ts {
                                    let shared = s
                                        .collapsed_positions()
                                        .iter()
                                        .any(|k| t.apply(*k) == t.apply(k + 1));
                                    if shared {
                                        continue;
                                    }
                                    let a = Simplex::from_parts(s.clone(), xc);
                                    let b = Simplex::from_parts(t.clone(), yc);
                                    let cell = Cell { dim: n, index: level_names.len() };
                                    level_names.push(format!("({}|{})", x.describe(&a), y.describe(&b)));
                                    index.insert((a.clone(), b.clone()), cell);
                                    level_components.push((a, b));
                                }
                            }
                        }
                    }
                }
            }
        }
        for (a, b) in &level_components {
            if n == 0 {
                level_faces.push(Vec::new());
                continue;
            }
            let fs = (0..=n)
                .map(|i| {
                    let fa = x.face(a, i);
                    let fb = y.face(b, i);
                    pair_in(&index, &fa, &fb)
                })
                .collect();
            level_faces.push(fs);
        }
        names.push(level_names);
        faces.push(level_faces);
        components.push(level_components);
    }
    let set = Arc::new(SimplicialSet::from_parts_unchecked(truncation, names, faces)?);
    Ok(ProductSet { set, left: x.clone(), right: y.clone(), components, index })
}

fn pair_in(index: &HashMap<(Simplex, Simplex), Cell>, a: &Simplex, b: &Simplex) -> Simplex {
    let (rho, s, t) = common_degeneracy(a.degeneracy(), b.degeneracy());
    let key = (Simplex::from_parts(s, a.cell()), Simplex::from_parts(t, b.cell()));
    let cell = *index.get(&key).expect("nondegenerate pair is a product cell");
    Simplex::from_parts(rho, cell)
}

impl ProductSet {
    /// The simplex `(a, b)` of the product; both must have the same dimension.
    pub fn pair(&self, a: &Simplex, b: &Simplex) -> Simplex {
        assert_eq!(a.dim(), b.dim(), "paired simplices must share a dimension");
        pair_in(&self.index, a, b)
    }

    pub fn components(&self, cell: Cell) -> &(Simplex, Simplex) {
        &self.components[cell.dim][cell.index]
    }

    /// Both coordinates of an arbitrary product simplex.
    pub fn split(&self, x: &Simplex) -> (Simplex, Simplex) {
        let (a, b) = self.components(x.cell());
        (self.left.apply(x.degeneracy(), a), self.right.apply(x.degeneracy(), b))
    }

    pub fn left_projection(&self) -> SimplicialMap {
        let assignment = self.components.iter().map(|l| l.iter().map(|(a, _)| a.clone()).collect()).collect();
        SimplicialMap::new_unchecked(self.set.clone(), self.left.clone(), assignment)
    }

    pub fn right_projection(&self) -> SimplicialMap {
        let assignment = self.components.iter().map(|l| l.iter().map(|(_, b)| b.clone()).collect()).collect();
        SimplicialMap::new_unchecked(self.set.clone(), self.right.clone(), assignment)
    }
}
