use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::category::SimplicialCategory;
use crate::delta::OrdinalMap;
use crate::error::{arg, Error, Result};
use crate::sset::{Cell, Simplex, SimplicialMap, SimplicialSet, Truncation, VertexIndex};

fn mask_name(mask: u64) -> String {
    let parts: Vec<String> = (0..64).filter(|&b| mask & (1 << b) != 0).map(|b| b.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// `𝔠^n` with subset bookkeeping: vertices of `Map(i, j)` are bitmasks of
/// subsets of `{i, …, j}` containing both ends.
#[derive(Clone, Debug)]
pub(crate) struct Cosimplex {
    pub n: usize,
    pub category: SimplicialCategory,
    masks: Vec<Vec<u64>>,
    by_mask: Vec<HashMap<u64, Cell>>,
    index: Vec<VertexIndex>,
}

impl Cosimplex {
    pub fn new(n: usize) -> Result<Self> {
        if n >= 63 {
            return arg("𝔠^n is only built for n < 63");
        }
        let size = n + 1;
        let mut spaces = vec![vec![Arc::new(SimplicialSet::empty()); size]; size];
        let mut masks = vec![Vec::new(); size * size];
        let mut by_mask = vec![HashMap::new(); size * size];
        let mut index = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                if i <= j {
                    let ends = (1u64 << i) | (1u64 << j);
                    let interior: Vec<usize> = (i + 1..j).collect();
                    let elements: Vec<u64> = (0..1u64 << interior.len())
                        .map(|bits| {
                            interior.iter().enumerate().filter(|(k, _)| bits & (1 << k) != 0).fold(ends, |m, (_, &b)| m | (1 << b))
                        })
                        .collect();
                    let names: Vec<String> = elements.iter().map(|&m| mask_name(m)).collect();
                    let space = SimplicialSet::poset_nerve(&names, |a, b| elements[a] & !elements[b] == 0)?;
                    let p = i * size + j;
                    masks[p] = space.names(0).iter().map(|name| elements[names.iter().position(|x| x == name).expect("named")]).collect();
                    by_mask[p] = masks[p].iter().enumerate().map(|(v, &m)| (m, Cell::new(0, v))).collect();
                    spaces[i][j] = Arc::new(space);
                }
                index.push(VertexIndex::new(&spaces[i][j]).expect("poset nerves are determined by vertices"));
            }
        }
        let identities: Vec<Cell> = (0..size).map(|_| Cell::new(0, 0)).collect();
        let objects = (0..size).map(|i| i.to_string()).collect();
        let (m, bm) = (masks.clone(), by_mask.clone());
        let category = SimplicialCategory::from_vertex_rule(objects, spaces, identities, move |x, y, z, g, f| {
            let union = m[y * size + z][g.index] | m[x * size + y][f.index];
            Ok(bm[x * size + z][&union])
        })?;
        Ok(Self { n, category, masks, by_mask, index })
    }

    pub fn space(&self, i: usize, j: usize) -> &Arc<SimplicialSet> {
        self.category.map_space(i, j)
    }

    /// Subset masks of the vertices of a simplex of `Map(i, j)`.
    pub fn vertex_masks(&self, i: usize, j: usize, s: &Simplex) -> Vec<u64> {
        let p = i * (self.n + 1) + j;
        self.space(i, j).vertices_of(s).iter().map(|v| self.masks[p][v.index]).collect()
    }

    /// The simplex of `Map(i, j)` through the given subsets.
    pub fn simplex(&self, i: usize, j: usize, masks: &[u64]) -> Simplex {
        let p = i * (self.n + 1) + j;
        let vs: Vec<Cell> = masks.iter().map(|m| self.by_mask[p][m]).collect();
        self.index[p].simplex(&vs).expect("chains of subsets are simplices")
    }

    /// `𝔠(θ)` on a simplex of `Map(i, j)` for `θ : [n] → [m]`, landing in
    /// `Map(θi, θj)` of `𝔠^m`.
    pub fn push_forward(&self, theta: &OrdinalMap, target: &Cosimplex, i: usize, j: usize, s: &Simplex) -> Simplex {
        let image: Vec<u64> = self
            .vertex_masks(i, j, s)
            .into_iter()
            .map(|m| (0..=self.n).filter(|&b| m & (1 << b) != 0).fold(0u64, |acc, b| acc | (1 << theta.apply(b))))
            .collect();
        target.simplex(theta.apply(i), theta.apply(j), &image)
    }
}

/// `𝔠^n`: objects `0..n`, `Map(i, j)` the nerve of the poset of subsets of
/// `{i, …, j}` containing `i` and `j`, composition by union.
pub fn frak_c(n: usize) -> Result<SimplicialCategory> {
    Ok(Cosimplex::new(n)?.category)
}

/// `Π^{n-1}_{i,1} ⊂ (Δ^1)^{n-1} = Map(0, n)`: the boundary of the cube
/// without the open face `x_i = 1`.
pub fn horn_mapspace(n: usize, i: usize) -> Result<(Arc<SimplicialSet>, Arc<SimplicialSet>, SimplicialMap)> {
    if n < 2 || i == 0 || i >= n {
        return Err(Error::Argument(format!("Π^{}_{{{i},1}} needs 0 < i < n", n.saturating_sub(1))));
    }
    let c = Cosimplex::new(n)?;
    let cube = c.space(0, n).clone();
    let keep: BTreeSet<Cell> = cube
        .all_cells()
        .filter(|&cell| {
            let ms = c.vertex_masks(0, n, &Simplex::nondegenerate(cell));
            (1..n).any(|m| {
                let bit = 1u64 << m;
                ms.iter().all(|x| x & bit == 0) || (m != i && ms.iter().all(|x| x & bit != 0))
            })
        })
        .collect();
    let (sub, inclusion) = cube.sub(&keep, Truncation::Complete)?;
    Ok((sub, cube, inclusion))
}
