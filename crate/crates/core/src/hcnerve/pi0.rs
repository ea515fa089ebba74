use std::collections::HashMap;

use super::category::SimplicialCategory;
use crate::error::{Error, Result};
use crate::nerve_cat::{Arrow, FinCategory};
use crate::quasicat::UnionFind;
use crate::sset::{Cell, Simplex};

/// `π_0 C`: arrows `x → y` are the path components of `Map(x, y)`.
pub fn pi0_category(c: &SimplicialCategory) -> Result<FinCategory> {
    let n = c.num_objects();
    let mut arrows: Vec<Arrow> = Vec::new();
    // (x, y, vertex index) → arrow
    let mut arrow_of: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut members: Vec<Vec<Cell>> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let m = c.map_space(x, y);
            let mut uf = UnionFind::new(m.num_cells(0));
            for e in m.cells(1) {
                let f = m.cell_faces(e);
                uf.union(f[0].cell().index, f[1].cell().index);
            }
            let (labels, count) = uf.labels();
            let first = arrows.len();
            for _ in 0..count {
                members.push(Vec::new());
            }
            for (v, &l) in labels.iter().enumerate() {
                if members[first + l].is_empty() {
                    arrows.push(Arrow { name: m.names(0)[v].clone(), source: x, target: y });
                }
                members[first + l].push(Cell::new(0, v));
                arrow_of.insert((x, y, v), first + l);
            }
        }
    }
    let identities: Vec<usize> = (0..n).map(|x| arrow_of[&(x, x, c.identity(x).index)]).collect();
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for fv in 0..c.map_space(x, y).num_cells(0) {
                    for gv in 0..c.map_space(y, z).num_cells(0) {
                        let h = c.compose(x, y, z, &Simplex::nondegenerate(Cell::new(0, gv)), &Simplex::nondegenerate(Cell::new(0, fv)));
                        let key = (arrow_of[&(y, z, gv)], arrow_of[&(x, y, fv)]);
                        let value = arrow_of[&(x, z, h.cell().index)];
                        if let Some(&old) = table.get(&key) {
                            if old != value {
                                return Err(Error::Inconsistent(format!(
                                    "composite of {} and {} is not defined on components: {} and {}",
                                    c.map_space(y, z).names(0)[gv],
                                    c.map_space(x, y).names(0)[fv],
                                    arrows[old].name,
                                    arrows[value].name
                                )));
                            }
                        }
                        table.insert(key, value);
                    }
                }
            }
        }
    }
    FinCategory::from_parts(c.objects().to_vec(), arrows, identities, |g, f| table.get(&(g, f)).copied())
}
