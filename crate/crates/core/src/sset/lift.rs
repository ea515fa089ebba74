//! Backtracking search for extensions of maps along inclusions.
//!
//! Target simplices up to the needed dimension are numbered once in a
//! [`SimplexTable`]; candidates for a cell are looked up by the ids of its
//! (already assigned) faces, so every branch of the search is consistent.

use std::collections::{HashMap, HashSet};
use std::ops::Range;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Cell, Simplex, SimplicialMap, SimplicialSet};
use crate::delta::OrdinalMap;
use crate::error::{arg, Error, Result};

/// Sentinel for "no limit" in [`lift_extensions`].
pub const UNLIMITED: usize = usize::MAX;

/// Every simplex of a simplicial set up to a dimension, numbered, with faces
/// and a boundary index.
#[derive(Debug, Clone)]
pub struct SimplexTable {
    set: Arc<SimplicialSet>,
    max_dim: usize,
    simplices: Vec<Simplex>,
    starts: Vec<usize>,
    index: HashMap<Simplex, u32>,
    faces: Vec<Vec<u32>>,
    by_boundary: HashMap<Vec<u32>, Vec<u32>>,
}

impl SimplexTable {
    pub fn new(set: Arc<SimplicialSet>, max_dim: usize) -> Result<Self> {
        set.truncation().check(max_dim)?;
        let mut simplices = Vec::new();
        let mut starts = Vec::with_capacity(max_dim + 2);
        let mut index = HashMap::new();
        let mut faces = Vec::new();
        let mut by_boundary: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
        for n in 0..=max_dim {
            starts.push(simplices.len());
            for s in set.simplices(n)? {
                let id = simplices.len() as u32;
                let boundary: Vec<u32> = if n == 0 {
                    Vec::new()
                } else {
                    (0..=n).map(|i| index[&set.face(&s, i)]).collect()
                };
                if n > 0 {
                    by_boundary.entry(boundary.clone()).or_default().push(id);
                }
                faces.push(boundary);
                index.insert(s.clone(), id);
                simplices.push(s);
            }
        }
        starts.push(simplices.len());
        Ok(Self { set, max_dim, simplices, starts, index, faces, by_boundary })
    }

    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.set
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn level(&self, n: usize) -> Range<u32> {
        self.starts[n] as u32..self.starts[n + 1] as u32
    }

    pub fn simplex(&self, id: u32) -> &Simplex {
        &self.simplices[id as usize]
    }

    pub fn id(&self, s: &Simplex) -> u32 {
        self.index[s]
    }

    pub fn try_id(&self, s: &Simplex) -> Option<u32> {
        self.index.get(s).copied()
    }

    pub fn face(&self, id: u32, i: usize) -> u32 {
        self.faces[id as usize][i]
    }

    pub fn boundary(&self, id: u32) -> &[u32] {
        &self.faces[id as usize]
    }

    /// Simplices whose faces are exactly `boundary`.
    pub fn with_boundary(&self, boundary: &[u32]) -> &[u32] {
        self.by_boundary.get(boundary).map_or(&[], Vec::as_slice)
    }

    /// `s*(x)` for a surjection `s`.
    pub fn degenerate(&self, id: u32, s: &OrdinalMap) -> u32 {
        if s.is_identity() {
            return id;
        }
        let x = self.simplex(id);
        let y = self.set.apply(s, x);
        self.index[&y]
    }

    pub fn dim_of(&self, id: u32) -> usize {
        self.simplices[id as usize].dim()
    }
}

/// One step of a compiled search: the cell and how to read its boundary.
struct Step {
    slot: usize,
    dim: usize,
    faces: Vec<(OrdinalMap, usize)>,
}

/// Assignment of target simplex ids to the cells of the domain, by global slot.
pub(crate) type Solution = [Option<u32>];

/// Extension search for maps from a fixed domain into a tabulated target.
pub(crate) struct Extender<'a> {
    table: &'a SimplexTable,
    domain: &'a SimplicialSet,
    offsets: Vec<usize>,
}

impl<'a> Extender<'a> {
    pub fn new(table: &'a SimplexTable, domain: &'a SimplicialSet) -> Self {
        let mut offsets = Vec::new();
        let mut acc = 0;
        for d in 0..domain.top_dim().map_or(0, |t| t + 1) {
            offsets.push(acc);
            acc += domain.num_cells(d);
        }
        offsets.push(acc);
        Self { table, domain, offsets }
    }

    pub fn slots(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn slot(&self, cell: Cell) -> usize {
        self.offsets[cell.dim] + cell.index
    }


    /// Faces-first order of `free`, checking that it closes up over `fixed`.
    fn compile(&self, fixed: &Solution, free: &[Cell]) -> Result<Vec<Step>> {
        let free_set: HashSet<Cell> = free.iter().copied().collect();
        let mut sorted: Vec<Cell> = free.to_vec();
        sorted.sort_by(|a, b| b.dim.cmp(&a.dim).then(a.index.cmp(&b.index)));
        let mut done: HashSet<Cell> = HashSet::new();
        let mut order: Vec<Cell> = Vec::new();
        for &c in &sorted {
            self.visit(c, fixed, &free_set, &mut done, &mut order)?;
        }
        for &c in &order {
            if c.dim > self.table.max_dim {
                return Err(Error::TruncationTooLow { needed: c.dim, have: self.table.max_dim });
            }
        }
        Ok(order
            .into_iter()
            .map(|c| Step {
                slot: self.slot(c),
                dim: c.dim,
                faces: self
                    .domain
                    .cell_faces(c)
                    .iter()
                    .map(|f| (f.degeneracy().clone(), self.slot(f.cell())))
                    .collect(),
            })
            .collect())
    }

    fn visit(&self, c: Cell, fixed: &Solution, free: &HashSet<Cell>, done: &mut HashSet<Cell>, order: &mut Vec<Cell>) -> Result<()> {
        if done.contains(&c) {
            return Ok(());
        }
        for f in self.domain.cell_faces(c) {
            let fc = f.cell();
            if fixed[self.slot(fc)].is_some() {
                continue;
            }
            if !free.contains(&fc) {
                return arg(format!("face {} of {} is neither fixed nor free", self.domain.name(fc), self.domain.name(c)));
            }
            self.visit(fc, fixed, free, done, order)?;
        }
        done.insert(c);
        order.push(c);
        Ok(())
    }

    /// Enumerates assignments of the `free` cells extending `fixed`. The
    /// visitor returns `false` to stop. Returns the number of solutions seen.
    pub fn solve(
        &self,
        fixed: &Solution,
        free: &[Cell],
        shuffle: Option<u64>,
        visit: &mut dyn FnMut(&Solution) -> bool,
    ) -> Result<usize> {
        let steps = self.compile(fixed, free)?;
        let mut assignment = fixed.to_vec();
        let mut rng = shuffle.map(ChaCha8Rng::seed_from_u64);
        let mut count = 0;
        self.search(&steps, 0, &mut assignment, &mut rng, &mut count, visit);
        Ok(count)
    }

    fn search(
        &self,
        steps: &[Step],
        pos: usize,
        assignment: &mut Vec<Option<u32>>,
        rng: &mut Option<ChaCha8Rng>,
        count: &mut usize,
        visit: &mut dyn FnMut(&Solution) -> bool,
    ) -> bool {
        if pos == steps.len() {
            *count += 1;
            return visit(assignment);
        }
        let step = &steps[pos];
        let mut candidates: Vec<u32> = if step.dim == 0 {
            self.table.level(0).collect()
        } else {
            let boundary: Vec<u32> = step
                .faces
                .iter()
                .map(|(s, slot)| self.table.degenerate(assignment[*slot].expect("faces assigned first"), s))
                .collect();
            self.table.with_boundary(&boundary).to_vec()
        };
        if let Some(r) = rng.as_mut() {
            candidates.shuffle(r);
        }
        for c in candidates {
            assignment[step.slot] = Some(c);
            if !self.search(steps, pos + 1, assignment, rng, count, visit) {
                assignment[step.slot] = None;
                return false;
            }
        }
        assignment[step.slot] = None;
        true
    }

    /// Turns a complete solution into a simplicial map.
    pub fn to_map(&self, domain: Arc<SimplicialSet>, solution: &Solution) -> SimplicialMap {
        let assignment = (0..self.offsets.len() - 1)
            .map(|d| {
                domain
                    .cells(d)
                    .map(|c| self.table.simplex(solution[self.slot(c)].expect("complete solution")).clone())
                    .collect()
            })
            .collect();
        SimplicialMap::new_unchecked(domain, self.table.set.clone(), assignment)
    }
}

/// All extensions `g : B → X` of `f : A → X` along the injection `i : A ↪ B`,
/// at most `limit` of them, in a deterministic order.
pub fn lift_extensions(i: &SimplicialMap, f: &SimplicialMap, limit: usize) -> Result<Vec<SimplicialMap>> {
    lift_impl(i, f, limit, None)
}

/// Same as [`lift_extensions`] but explores candidates in a seeded random order.
pub fn lift_extensions_shuffled(i: &SimplicialMap, f: &SimplicialMap, limit: usize, seed: u64) -> Result<Vec<SimplicialMap>> {
    lift_impl(i, f, limit, Some(seed))
}

fn lift_impl(i: &SimplicialMap, f: &SimplicialMap, limit: usize, seed: Option<u64>) -> Result<Vec<SimplicialMap>> {
    if limit == 0 {
        return arg("extension limit must be positive");
    }
    if !i.is_injective() {
        return arg("lift_extensions needs an injective map A ↪ B");
    }
    if i.source().as_ref() != f.source().as_ref() {
        return arg("i and f must share their source");
    }
    let b = i.target().clone();
    let x = f.target().clone();
    let top = b.top_dim().unwrap_or(0);
    let table = SimplexTable::new(x, top)?;
    let ext = Extender::new(&table, &b);
    let mut fixed = vec![None; ext.slots()];
    for a in i.source().all_cells() {
        let image = f.on_cell(a);
        let id = table
            .try_id(image)
            .ok_or_else(|| Error::Inconsistent("f lands outside its target".into()))?;
        fixed[ext.slot(i.on_cell(a).cell())] = Some(id);
    }
    let free: Vec<Cell> = b.all_cells().filter(|&c| fixed[ext.slot(c)].is_none()).collect();
    let mut out = Vec::new();
    ext.solve(&fixed, &free, seed, &mut |sol| {
        out.push(ext.to_map(b.clone(), sol));
        out.len() < limit
    })?;
    Ok(out)
}
