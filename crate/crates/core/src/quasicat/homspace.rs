use std::sync::Arc;

use crate::delta::OrdinalMap;
use crate::error::Result;
use crate::sset::{
    pushout, simplex_cell, standard_object, Cell, LevelwiseSet, Simplex, SimplexTable, SimplicialMap, SimplicialSet, StandardKind,
    Truncation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomSide {
    Left,
    Right,
}

/// `Hom^R(a, b)` presented inside the simplices of `X`: its `n`-simplices
/// are the `(n+1)`-simplices `h` with `d_{n+1} h` degenerate on `a` and last
/// vertex `b`.
struct RightHom<'a> {
    table: &'a SimplexTable,
    a: u32,
    b: u32,
}

impl RightHom<'_> {
    fn vertex(&self, id: u32, k: usize) -> u32 {
        let x = self.table.set();
        let s = self.table.simplex(id);
        self.table.id(&Simplex::nondegenerate(x.vertex_of(s, k)))
    }
}

impl LevelwiseSet for RightHom<'_> {
    type Elem = u32;

    fn level(&self, n: usize) -> Vec<u32> {
        let constant = OrdinalMap::constant(n, 0, 0).expect("constant map");
        let base = self.table.degenerate(self.a, &constant);
        self.table
            .level(n + 1)
            .filter(|&h| self.table.face(h, n + 1) == base && self.vertex(h, n + 1) == self.b)
            .collect()
    }

    fn face(&self, _n: usize, i: usize, x: &u32) -> u32 {
        self.table.face(*x, i)
    }

    fn degeneracy(&self, n: usize, i: usize, x: &u32) -> u32 {
        self.table.degenerate(*x, &OrdinalMap::degeneracy(n + 2, i).expect("degeneracy"))
    }

    fn name(&self, x: &u32) -> String {
        self.table.set().describe(self.table.simplex(*x))
    }
}

/// The mapping space `Hom^R_X(a, b)` or `Hom^L_X(a, b)` up to dimension `d`.
pub fn hom_space(x: &Arc<SimplicialSet>, a: &str, b: &str, side: HomSide, d: usize) -> Result<SimplicialSet> {
    match side {
        HomSide::Right => right_hom(x, a, b, d),
        HomSide::Left => {
            let op = Arc::new(x.opposite());
            Ok(right_hom(&op, b, a, d)?.opposite())
        }
    }
}

fn right_hom(x: &Arc<SimplicialSet>, a: &str, b: &str, d: usize) -> Result<SimplicialSet> {
    let table = SimplexTable::new(x.clone(), d + 1)?;
    let (va, vb) = (x.vertex(a)?, x.vertex(b)?);
    let levels = RightHom {
        a: table.id(&Simplex::nondegenerate(va)),
        b: table.id(&Simplex::nondegenerate(vb)),
        table: &table,
    };
    Ok(SimplicialSet::from_levels(&levels, d, Truncation::At(d))?.set)
}

/// `H_R^n = Δ^{n+1} ∐_{Δ^n} Δ^0`, collapsing the face opposite the last
/// vertex, with the images of the vertices `0` and `n+1`.
pub fn right_cone(n: usize) -> Result<(Arc<SimplicialSet>, [Cell; 2])> {
    let big = Arc::new(standard_object(StandardKind::Simplex, n + 1, None)?);
    let face = simplex_cell(n + 1, &(0..=n).collect::<Vec<_>>());
    let (small, include) = big.sub(&[face].into_iter().collect(), Truncation::Complete)?;
    let point = Arc::new(standard_object(StandardKind::Simplex, 0, None)?);
    let collapse = SimplicialMap::new(
        small.clone(),
        point.clone(),
        (0..=n).map(|k| small.cells(k).map(|_| point.degenerate_vertex(Cell::new(0, 0), k)).collect()).collect(),
    )?;
    let p = pushout(&include, &collapse)?;
    let start = p.left.on_cell(big.vertex("0")?).cell();
    let end = p.left.on_cell(big.vertex(&(n + 1).to_string())?).cell();
    Ok((p.set, [start, end]))
}
