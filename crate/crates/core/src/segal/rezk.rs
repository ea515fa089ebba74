use std::collections::HashMap;

use super::BisimplicialSet;
use crate::delta::OrdinalMap;
use crate::error::{arg, Result};
use crate::nerve_cat::{FinCategory, RelativeCategory};

/// A commuting `[p] × [q]` diagram. Object `(i, j)` sits at `i·(q+1) + j`,
/// the horizontal arrow `(i, j) → (i+1, j)` at `i·(q+1) + j` and the
/// vertical arrow `(i, j) → (i, j+1)` at `i·q + j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Grid {
    objects: Vec<usize>,
    h: Vec<usize>,
    v: Vec<usize>,
}

fn path(c: &FinCategory, start: usize, arrows: impl Iterator<Item = usize>) -> usize {
    arrows.fold(c.identity(start), |acc, a| c.compose(a, acc).expect("composable path"))
}

impl Grid {
    fn restrict(&self, c: &FinCategory, p: usize, q: usize, h: &OrdinalMap, v: &OrdinalMap) -> Grid {
        let (p2, q2) = (h.source(), v.source());
        let obj = |i: usize, j: usize| self.objects[i * (q + 1) + j];
        let mut out = Grid { objects: Vec::new(), h: Vec::new(), v: Vec::new() };
        for i in 0..=p2 {
            for j in 0..=q2 {
                out.objects.push(obj(h.apply(i), v.apply(j)));
            }
        }
        for i in 0..p2 {
            for j in 0..=q2 {
                let (a, b, jj) = (h.apply(i), h.apply(i + 1), v.apply(j));
                out.h.push(path(c, obj(a, jj), (a..b).map(|k| self.h[k * (q + 1) + jj])));
            }
        }
        for i in 0..=p2 {
            for j in 0..q2 {
                let (a, b, ii) = (v.apply(j), v.apply(j + 1), h.apply(i));
                out.v.push(path(c, obj(ii, a), (a..b).map(|k| self.v[ii * q + k])));
            }
        }
        debug_assert!(p >= h.target() && q >= v.target());
        out
    }

    fn name(&self, c: &FinCategory, p: usize, q: usize) -> String {
        let row = |j: usize| {
            if p == 0 {
                c.object_name(self.objects[j]).to_string()
            } else {
                (0..p).map(|i| c.arrow_name(self.h[i * (q + 1) + j])).collect::<Vec<_>>().join(";")
            }
        };
        let mut out = row(0);
        for j in 0..q {
            let down: Vec<&str> = (0..=p).map(|i| c.arrow_name(self.v[i * q + j])).collect();
            out.push_str(&format!(" ⇓({}) {}", down.join(","), row(j + 1)));
        }
        out
    }
}

/// All horizontal `p`-chains, as object and arrow lists.
fn chains(c: &FinCategory, p: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out: Vec<(Vec<usize>, Vec<usize>)> = (0..c.num_objects()).map(|x| (vec![x], Vec::new())).collect();
    for _ in 0..p {
        out = out
            .into_iter()
            .flat_map(|(objs, arrs)| {
                let end = *objs.last().expect("nonempty");
                c.arrows_from(end)
                    .map(|a| {
                        let mut o = objs.clone();
                        o.push(c.target(a));
                        let mut r = arrs.clone();
                        r.push(a);
                        (o, r)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

/// Columns `(objects, arrows)` reachable from `col` by one step of weak
/// vertical arrows with commuting squares, together with those arrows.
fn next_columns(r: &RelativeCategory, col: &(Vec<usize>, Vec<usize>)) -> Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let p = col.1.len();
    let mut out = Vec::new();
    let mut objs = Vec::with_capacity(p + 1);
    let mut arrs = Vec::with_capacity(p);
    let mut verts = Vec::with_capacity(p + 1);
    fn go(
        r: &RelativeCategory,
        col: &(Vec<usize>, Vec<usize>),
        i: usize,
        objs: &mut Vec<usize>,
        arrs: &mut Vec<usize>,
        verts: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<usize>, Vec<usize>)>,
    ) {
        let c = &r.category;
        if i == col.0.len() {
            out.push((objs.clone(), arrs.clone(), verts.clone()));
            return;
        }
        for w in c.arrows_from(col.0[i]).filter(|&w| r.is_weak(w)) {
            let y = c.target(w);
            if i == 0 {
                objs.push(y);
                verts.push(w);
                go(r, col, 1, objs, arrs, verts, out);
                objs.pop();
                verts.pop();
                continue;
            }
            let around = c.compose(w, col.1[i - 1]).expect("composable");
            for a in c.hom(objs[i - 1], y) {
                if c.compose(a, verts[i - 1]) == Some(around) {
                    objs.push(y);
                    arrs.push(a);
                    verts.push(w);
                    go(r, col, i + 1, objs, arrs, verts, out);
                    objs.pop();
                    arrs.pop();
                    verts.pop();
                }
            }
        }
    }
    go(r, col, 0, &mut objs, &mut arrs, &mut verts, &mut out);
    out
}

fn grids(r: &RelativeCategory, p: usize, q: usize) -> Vec<Grid> {
    let c = &r.category;
    // columns[j] = (objects, horizontal arrows) at height j, plus verticals below
    let mut partial: Vec<(Vec<(Vec<usize>, Vec<usize>)>, Vec<Vec<usize>>)> =
        chains(c, p).into_iter().map(|col| (vec![col], Vec::new())).collect();
    for _ in 0..q {
        partial = partial
            .into_iter()
            .flat_map(|(cols, verts)| {
                next_columns(r, cols.last().expect("a column"))
                    .into_iter()
                    .map(|(o, a, w)| {
                        let mut cols = cols.clone();
                        cols.push((o, a));
                        let mut verts = verts.clone();
                        verts.push(w);
                        (cols, verts)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    partial
        .into_iter()
        .map(|(cols, verts)| {
            let mut g = Grid { objects: Vec::new(), h: Vec::new(), v: Vec::new() };
            for i in 0..=p {
                for col in &cols {
                    g.objects.push(col.0[i]);
                }
            }
            for i in 0..p {
                for col in &cols {
                    g.h.push(col.1[i]);
                }
            }
            for i in 0..=p {
                for w in &verts {
                    g.v.push(w[i]);
                }
            }
            g
        })
        .collect()
}

/// `B(C, W)` truncated at `(m, n)`: cells of bidegree `(p, q)` are commuting
/// `[p] × [q]` diagrams in `C` whose vertical arrows lie in `W`. `W` must be
/// closed under composition, otherwise vertical faces leave the diagrams.
pub fn rezk_nerve(r: &RelativeCategory, m: usize, n: usize) -> Result<BisimplicialSet> {
    let c = &r.category;
    if !r.is_subcategory() {
        return arg("the weak arrows are not closed under composition");
    }
    let cells: Vec<Vec<Vec<Grid>>> = (0..=m).map(|p| (0..=n).map(|q| grids(r, p, q)).collect()).collect();
    let index: Vec<Vec<HashMap<&Grid, usize>>> =
        cells.iter().map(|row| row.iter().map(|level| level.iter().enumerate().map(|(i, g)| (g, i)).collect()).collect()).collect();
    let names = cells
        .iter()
        .enumerate()
        .map(|(p, row)| row.iter().enumerate().map(|(q, level)| level.iter().map(|g| g.name(c, p, q)).collect()).collect())
        .collect();
    BisimplicialSet::from_action((m, n), names, |p, q, h, v, x| {
        let g = cells[p][q][x].restrict(c, p, q, h, v);
        index[h.source()][v.source()][&g]
    })
}
