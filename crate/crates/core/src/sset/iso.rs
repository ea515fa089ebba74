//! Isomorphism of finite simplicial sets by backtracking over cells.

use std::collections::HashSet;
use std::sync::Arc;

use super::{Cell, Simplex, SimplicialMap, SimplicialSet};

/// An isomorphism `X → Y` if one exists. Cells of `X` are matched faces
/// first, so a wrong vertex choice is rejected as soon as an edge needs it.
pub fn find_isomorphism(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Option<SimplicialMap> {
    if x.truncation() != y.truncation() || x.cell_counts() != y.cell_counts() {
        return None;
    }
    let mut order = Vec::new();
    let mut done = HashSet::new();
    let mut roots: Vec<Cell> = x.all_cells().collect();
    roots.sort_by(|a, b| b.dim.cmp(&a.dim).then(a.index.cmp(&b.index)));
    for c in roots {
        post_order(x, c, &mut done, &mut order);
    }
    let mut image: Vec<Vec<Option<Cell>>> = x.cell_counts().iter().map(|&n| vec![None; n]).collect();
    let mut used: Vec<Vec<bool>> = y.cell_counts().iter().map(|&n| vec![false; n]).collect();
    if !search(x, y, &order, 0, &mut image, &mut used) {
        return None;
    }
    let assignment = image
        .iter()
        .map(|level| level.iter().map(|c| Simplex::nondegenerate(c.expect("all cells matched"))).collect())
        .collect();
    Some(SimplicialMap::new_unchecked(x.clone(), y.clone(), assignment))
}

fn post_order(x: &SimplicialSet, c: Cell, done: &mut HashSet<Cell>, order: &mut Vec<Cell>) {
    if !done.insert(c) {
        return;
    }
    for f in x.cell_faces(c) {
        post_order(x, f.cell(), done, order);
    }
    order.push(c);
}

fn search(
    x: &SimplicialSet,
    y: &SimplicialSet,
    order: &[Cell],
    pos: usize,
    image: &mut Vec<Vec<Option<Cell>>>,
    used: &mut Vec<Vec<bool>>,
) -> bool {
    let Some(&c) = order.get(pos) else {
        return true;
    };
    let wanted: Vec<Simplex> = x
        .cell_faces(c)
        .iter()
        .map(|f| Simplex::from_parts(f.degeneracy().clone(), image[f.cell().dim][f.cell().index].expect("faces first")))
        .collect();
    for candidate in y.cells(c.dim) {
        if used[c.dim][candidate.index] || y.cell_faces(candidate) != wanted.as_slice() {
            continue;
        }
        used[c.dim][candidate.index] = true;
        image[c.dim][c.index] = Some(candidate);
        if search(x, y, order, pos + 1, image, used) {
            return true;
        }
        used[c.dim][candidate.index] = false;
        image[c.dim][c.index] = None;
    }
    false
}

/// Whether `f` is a valid map that is bijective on simplices in every dimension.
pub fn is_isomorphism(f: &SimplicialMap) -> bool {
    if f.validate().is_err() || f.source().cell_counts() != f.target().cell_counts() {
        return false;
    }
    if f.source().truncation() != f.target().truncation() {
        return false;
    }
    f.is_injective()
}
