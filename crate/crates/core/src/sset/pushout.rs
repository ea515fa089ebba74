use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::{Cell, Simplex, SimplicialMap, SimplicialSet};
use crate::error::{Error, Result};

/// A pushout square `X → P ← Y` under a common source `A`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub set: Arc<SimplicialSet>,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
}

/// Pushout of `X ← A → Y` where at least one leg is injective.
pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pushout> {
    if f.source().as_ref() != g.source().as_ref() {
        return Err(Error::Argument("pushout legs must share their source".into()));
    }
    if f.is_injective() {
        attach(f, g)
    } else if g.is_injective() {
        let p = attach(g, f)?;
        Ok(Pushout { set: p.set, left: p.right, right: p.left })
    } else {
        Err(Error::Unsupported("pushout needs at least one injective leg".into()))
    }
}

/// Glues `X` onto `Y` along the mono `mono : A ↪ X` and `along : A → Y`.
/// `left` of the result is the leg out of `X`.
fn attach(mono: &SimplicialMap, along: &SimplicialMap) -> Result<Pushout> {
    let x = mono.target();
    let y = along.target();
    let truncation = x.truncation().min(y.truncation());
    let mut preimage: HashMap<Cell, Cell> = HashMap::new();
    for a in mono.source().all_cells() {
        preimage.insert(mono.on_cell(a).cell(), a);
    }
    let x_names: BTreeSet<&str> = x.all_cells().filter(|c| !preimage.contains_key(c)).map(|c| x.name(c)).collect();
    let clash = y.all_cells().any(|c| x_names.contains(y.name(c)));
    let (xp, yp) = if clash { ("0:", "1:") } else { ("", "") };

    let mut dims = x.top_dim().map_or(0, |d| d + 1).max(y.top_dim().map_or(0, |d| d + 1));
    if let crate::sset::Truncation::At(d) = truncation {
        dims = dims.min(d + 1);
    }
    let mut names: Vec<Vec<String>> = vec![Vec::new(); dims];
    let mut faces: Vec<Vec<Vec<Simplex>>> = vec![Vec::new(); dims];
    // Y cells keep their indices
    for d in 0..dims {
        for c in y.cells(d) {
            names[d].push(format!("{yp}{}", y.name(c)));
            faces[d].push(y.cell_faces(c).to_vec());
        }
    }
    let mut new_index: HashMap<Cell, Cell> = HashMap::new();
    for d in 0..dims {
        for c in x.cells(d) {
            if preimage.contains_key(&c) {
                continue;
            }
            new_index.insert(c, Cell { dim: d, index: names[d].len() });
            names[d].push(format!("{xp}{}", x.name(c)));
        }
    }
    let to_p = |s: &Simplex| -> Simplex {
        match preimage.get(&s.cell()) {
            Some(&a) => y.apply(s.degeneracy(), along.on_cell(a)),
            None => Simplex::from_parts(s.degeneracy().clone(), new_index[&s.cell()]),
        }
    };
    for d in 0..dims {
        for c in x.cells(d) {
            if preimage.contains_key(&c) {
                continue;
            }
            faces[d].push(x.cell_faces(c).iter().map(to_p).collect());
        }
    }
    let set = Arc::new(SimplicialSet::from_parts(truncation, names, faces)?);
    let left_assignment = (0..x.top_dim().map_or(0, |d| d + 1).min(dims))
        .map(|d| x.cells(d).map(|c| to_p(&Simplex::nondegenerate(c))).collect())
        .collect();
    let right_assignment = (0..y.top_dim().map_or(0, |d| d + 1).min(dims))
        .map(|d| y.cells(d).map(Simplex::nondegenerate).collect())
        .collect();
    let left = SimplicialMap::new_unchecked(x.clone(), set.clone(), left_assignment);
    let right = SimplicialMap::new_unchecked(y.clone(), set.clone(), right_assignment);
    Ok(Pushout { set, left, right })
}
