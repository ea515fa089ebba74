//! Finite simplicial sets in Eilenberg–Zilber normal form.
//!
//! Only nondegenerate simplices ("cells") are stored. Every simplex is a pair
//! `(s, y)` of a surjection `s : [n] ->> [k]` and a nondegenerate `k`-cell `y`,
//! standing for `s*(y)`. Faces of a cell are stored as such pairs.

mod builder;
mod format;
mod iso;
mod lift;
mod product;
mod pushout;
mod random;
mod standard;
mod vertex;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::delta::{self, OrdinalMap};
use crate::error::{arg, Error, Result};

pub use builder::{LevelwiseSet, SimplicialSetBuilder};
pub use format::SimplicialSetDoc;
pub use iso::{find_isomorphism, is_isomorphism};
pub use lift::{lift_extensions, lift_extensions_shuffled, SimplexTable, UNLIMITED};
pub(crate) use lift::Extender;
pub(crate) use standard::simplex_cell;
pub use product::{product, ProductSet};
pub use pushout::{pushout, Pushout};
pub use random::random_simplicial_set;
pub use standard::{standard_object, StandardKind};
pub use vertex::VertexIndex;

/// Identity of a nondegenerate simplex: its dimension and stable index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub dim: usize,
    pub index: usize,
}

impl Cell {
    pub fn new(dim: usize, index: usize) -> Self {
        Self { dim, index }
    }
}

/// A possibly degenerate simplex `degeneracy*(cell)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    degeneracy: OrdinalMap,
    cell: Cell,
}

impl Simplex {
    pub fn new(degeneracy: OrdinalMap, cell: Cell) -> Result<Self> {
        if !degeneracy.is_surjective() || degeneracy.target() != cell.dim {
            return arg(format!("{degeneracy:?} is not a surjection onto [{}]", cell.dim));
        }
        Ok(Self { degeneracy, cell })
    }

    /// The cell itself, viewed as a simplex.
    pub fn nondegenerate(cell: Cell) -> Self {
        Self { degeneracy: OrdinalMap::identity(cell.dim), cell }
    }

    pub(crate) fn from_parts(degeneracy: OrdinalMap, cell: Cell) -> Self {
        debug_assert!(degeneracy.is_surjective() && degeneracy.target() == cell.dim);
        Self { degeneracy, cell }
    }

    pub fn dim(&self) -> usize {
        self.degeneracy.source()
    }

    pub fn cell(&self) -> Cell {
        self.cell
    }

    pub fn degeneracy(&self) -> &OrdinalMap {
        &self.degeneracy
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degeneracy.is_identity()
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_degenerate() {
            write!(f, "s{:?}({}#{})", self.degeneracy.values(), self.cell.dim, self.cell.index)
        } else {
            write!(f, "({}#{})", self.cell.dim, self.cell.index)
        }
    }
}

/// How much of a simplicial set is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truncation {
    /// There are no nondegenerate simplices beyond the stored ones.
    Complete,
    /// Nondegenerate simplices are known up to this dimension only.
    At(usize),
}

impl Truncation {
    pub fn covers(self, dim: usize) -> bool {
        match self {
            Truncation::Complete => true,
            Truncation::At(d) => dim <= d,
        }
    }

    pub fn min(self, other: Truncation) -> Truncation {
        match (self, other) {
            (Truncation::Complete, t) | (t, Truncation::Complete) => t,
            (Truncation::At(a), Truncation::At(b)) => Truncation::At(a.min(b)),
        }
    }

    pub fn check(self, dim: usize) -> Result<()> {
        match self {
            Truncation::At(d) if dim > d => Err(Error::TruncationTooLow { needed: dim, have: d }),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialSet {
    truncation: Truncation,
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<Simplex>>>,
    lookup: HashMap<String, Cell>,
}

impl fmt::Debug for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialSet({:?}, cells {:?})", self.truncation, self.cell_counts())
    }
}

impl SimplicialSet {
    /// Assembles a simplicial set from per-dimension names and face lists,
    /// validating normal form and the simplicial identities.
    pub fn from_parts(
        truncation: Truncation,
        names: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<Simplex>>>,
    ) -> Result<Self> {
        let x = Self::from_parts_unchecked(truncation, names, faces)?;
        x.validate()?;
        Ok(x)
    }

    pub(crate) fn from_parts_unchecked(
        truncation: Truncation,
        mut names: Vec<Vec<String>>,
        mut faces: Vec<Vec<Vec<Simplex>>>,
    ) -> Result<Self> {
        if let Truncation::At(d) = truncation {
            if names.len() > d + 1 {
                return arg(format!("cells above truncation {d}"));
            }
            names.resize(d + 1, Vec::new());
            faces.resize(d + 1, Vec::new());
        } else {
            while names.last().is_some_and(Vec::is_empty) {
                names.pop();
            }
            faces.truncate(names.len());
        }
        if faces.len() != names.len() {
            return arg("face table and name table disagree on dimensions");
        }
        let mut lookup = HashMap::new();
        for (dim, level) in names.iter().enumerate() {
            if faces[dim].len() != level.len() {
                return arg(format!("dimension {dim}: {} names, {} face lists", level.len(), faces[dim].len()));
            }
            for (index, name) in level.iter().enumerate() {
                if lookup.insert(name.clone(), Cell { dim, index }).is_some() {
                    return arg(format!("duplicate cell name {name:?}"));
                }
            }
        }
        Ok(Self { truncation, names, faces, lookup })
    }

    pub fn empty() -> Self {
        Self { truncation: Truncation::Complete, names: Vec::new(), faces: Vec::new(), lookup: HashMap::new() }
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    /// Largest dimension holding any cell (or the truncation bound if larger).
    pub fn top_dim(&self) -> Option<usize> {
        if self.names.is_empty() {
            None
        } else {
            Some(self.names.len() - 1)
        }
    }

    pub fn num_cells(&self, dim: usize) -> usize {
        self.names.get(dim).map_or(0, Vec::len)
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.names.iter().map(Vec::len).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.names.iter().map(Vec::len).sum()
    }

    pub fn cells(&self, dim: usize) -> impl Iterator<Item = Cell> + '_ {
        (0..self.num_cells(dim)).map(move |index| Cell { dim, index })
    }

    pub fn all_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.names.len()).flat_map(move |d| self.cells(d))
    }

    pub fn name(&self, cell: Cell) -> &str {
        &self.names[cell.dim][cell.index]
    }

    pub fn names(&self, dim: usize) -> &[String] {
        self.names.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn cell_by_name(&self, name: &str) -> Option<Cell> {
        self.lookup.get(name).copied()
    }

    pub fn vertex(&self, name: &str) -> Result<Cell> {
        match self.cell_by_name(name) {
            Some(c) if c.dim == 0 => Ok(c),
            _ => arg(format!("no vertex named {name:?}")),
        }
    }

    /// Stored faces `d_0 … d_k` of a nondegenerate cell.
    pub fn cell_faces(&self, cell: Cell) -> &[Simplex] {
        &self.faces[cell.dim][cell.index]
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.index < self.num_cells(cell.dim)
    }

    /// `θ*(x)` for an arbitrary monotone `θ` whose target is the dimension of `x`.
    pub fn apply(&self, theta: &OrdinalMap, x: &Simplex) -> Simplex {
        assert_eq!(theta.target(), x.dim(), "operator does not match simplex dimension");
        let total = delta::compose(&x.degeneracy, theta).expect("checked dimensions");
        self.apply_to_cell(&total, x.cell)
    }

    /// `θ*(y)` for a nondegenerate cell `y`.
    pub fn apply_to_cell(&self, theta: &OrdinalMap, cell: Cell) -> Simplex {
        let (epi, mono) = delta::epi_mono_factorize(theta);
        let restricted = self.restrict(&mono, cell);
        let degeneracy = delta::compose(&restricted.degeneracy, &epi).expect("factorization composes");
        Simplex { degeneracy, cell: restricted.cell }
    }

    fn restrict(&self, mono: &OrdinalMap, cell: Cell) -> Simplex {
        if mono.is_identity() {
            return Simplex::nondegenerate(cell);
        }
        // mono = δ^i ∘ rest, with i the largest value missed
        let i = *mono.missed_values().last().expect("non-identity injection misses a value");
        let rest_values = mono.values().iter().map(|&v| if v < i { v } else { v - 1 }).collect();
        let rest = OrdinalMap::from_values_unchecked(cell.dim - 1, rest_values);
        let face = &self.faces[cell.dim][cell.index][i];
        self.apply(&rest, face)
    }

    pub fn face(&self, x: &Simplex, i: usize) -> Simplex {
        self.apply(&OrdinalMap::face(x.dim(), i).expect("face index in range"), x)
    }

    pub fn degeneracy(&self, x: &Simplex, i: usize) -> Simplex {
        let s = OrdinalMap::degeneracy(x.dim() + 1, i).expect("degeneracy index in range");
        Simplex { degeneracy: delta::compose(&x.degeneracy, &s).expect("composable"), cell: x.cell }
    }

    /// The totally degenerate `n`-simplex on a vertex.
    pub fn degenerate_vertex(&self, v: Cell, n: usize) -> Simplex {
        debug_assert_eq!(v.dim, 0);
        Simplex { degeneracy: OrdinalMap::constant(n, 0, 0).expect("constant map"), cell: v }
    }

    /// The `k`-th vertex of a simplex.
    pub fn vertex_of(&self, x: &Simplex, k: usize) -> Cell {
        let v = OrdinalMap::constant(0, x.dim(), k).expect("vertex in range");
        self.apply(&v, x).cell
    }

    pub fn vertices_of(&self, x: &Simplex) -> Vec<Cell> {
        (0..=x.dim()).map(|k| self.vertex_of(x, k)).collect()
    }

    /// The edge of `x` spanned by its vertices `a < b`.
    pub fn edge_of(&self, x: &Simplex, a: usize, b: usize) -> Simplex {
        self.apply(&OrdinalMap::new(x.dim(), vec![a, b]).expect("edge in range"), x)
    }

    /// All `n`-simplices, degenerate ones included, in a stable order.
    pub fn simplices(&self, n: usize) -> Result<Vec<Simplex>> {
        self.truncation.check(n)?;
        let mut out = Vec::new();
        for k in 0..=n.min(self.names.len().saturating_sub(1)) {
            if self.num_cells(k) == 0 {
                continue;
            }
            let surj = delta::surjections(n, k);
            for cell in self.cells(k) {
                for s in &surj {
                    out.push(Simplex { degeneracy: s.clone(), cell });
                }
            }
        }
        Ok(out)
    }

    pub fn count_simplices(&self, n: usize) -> Result<usize> {
        self.truncation.check(n)?;
        Ok((0..self.names.len().min(n + 1))
            .map(|k| self.num_cells(k) * delta::binomial(n, k))
            .sum())
    }

    /// Checks E-Z normal form of stored faces and the simplicial identities.
    pub fn validate(&self) -> Result<()> {
        for (dim, level) in self.faces.iter().enumerate() {
            for (index, faces) in level.iter().enumerate() {
                let expected = if dim == 0 { 0 } else { dim + 1 };
                if faces.len() != expected {
                    return Err(Error::Inconsistent(format!(
                        "cell {:?} has {} faces, expected {expected}",
                        self.names[dim][index],
                        faces.len()
                    )));
                }
                for f in faces {
                    if f.dim() + 1 != dim || !f.degeneracy.is_surjective() || !self.contains(f.cell) {
                        return Err(Error::Inconsistent(format!(
                            "bad face {f:?} on {:?}",
                            self.names[dim][index]
                        )));
                    }
                }
            }
        }
        for dim in 2..self.faces.len() {
            for cell in self.cells(dim) {
                let x = Simplex::nondegenerate(cell);
                for j in 1..=dim {
                    let dj = self.face(&x, j);
                    for i in 0..j {
                        let lhs = self.face(&dj, i);
                        let rhs = self.face(&self.face(&x, i), j - 1);
                        if lhs != rhs {
                            return Err(Error::Inconsistent(format!(
                                "d{i} d{j} ≠ d{} d{i} on {:?}",
                                j - 1,
                                self.name(cell)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The simplicial subset spanned by `cells` (closed under faces).
    /// Returns the subset and its inclusion.
    pub fn sub(self: &Arc<Self>, cells: &BTreeSet<Cell>, truncation: Truncation) -> Result<(Arc<SimplicialSet>, SimplicialMap)> {
        let mut keep: BTreeSet<Cell> = BTreeSet::new();
        let mut stack: Vec<Cell> = cells.iter().copied().collect();
        while let Some(c) = stack.pop() {
            if !self.contains(c) {
                return arg(format!("cell {c:?} not in simplicial set"));
            }
            if keep.insert(c) {
                stack.extend(self.cell_faces(c).iter().map(|f| f.cell));
            }
        }
        let max_dim = keep.iter().map(|c| c.dim).max();
        let dims = match truncation {
            Truncation::At(d) => d + 1,
            Truncation::Complete => max_dim.map_or(0, |d| d + 1),
        };
        if let Some(m) = max_dim {
            truncation.check(m)?;
        }
        let mut renumber: HashMap<Cell, Cell> = HashMap::new();
        let mut names = vec![Vec::new(); dims];
        let mut assignment = vec![Vec::new(); dims];
        for &c in &keep {
            let new = Cell { dim: c.dim, index: names[c.dim].len() };
            renumber.insert(c, new);
            names[c.dim].push(self.name(c).to_string());
            assignment[c.dim].push(Simplex::nondegenerate(c));
        }
        let mut faces = vec![Vec::new(); dims];
        for &c in &keep {
            faces[c.dim].push(
                self.cell_faces(c)
                    .iter()
                    .map(|f| Simplex { degeneracy: f.degeneracy.clone(), cell: renumber[&f.cell] })
                    .collect(),
            );
        }
        let sub = Arc::new(SimplicialSet::from_parts_unchecked(truncation, names, faces)?);
        let map = SimplicialMap::new_unchecked(sub.clone(), self.clone(), assignment);
        Ok((sub, map))
    }

    /// Keeps the cells of dimension at most `n`.
    pub fn skeleton(self: &Arc<Self>, n: usize) -> Result<Arc<SimplicialSet>> {
        self.truncation.check(n)?;
        let cells: BTreeSet<Cell> = (0..=n).flat_map(|d| self.cells(d)).collect();
        // the n-skeleton of an n-truncated set is the set itself
        let truncation = if self.truncation == Truncation::At(n) { self.truncation } else { Truncation::Complete };
        Ok(self.sub(&cells, truncation)?.0)
    }

    /// The opposite simplicial set (precomposition with the reversal of `[n]`).
    pub fn opposite(&self) -> SimplicialSet {
        let faces = self
            .faces
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|fs| {
                        let k = fs.len();
                        (0..k)
                            .map(|i| {
                                let f = &fs[k - 1 - i];
                                Simplex { degeneracy: f.degeneracy.opposite(), cell: f.cell }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        SimplicialSet { truncation: self.truncation, names: self.names.clone(), faces, lookup: self.lookup.clone() }
    }

    /// A simplex of `X`, reinterpreted in `X^op`.
    pub fn opposite_simplex(x: &Simplex) -> Simplex {
        Simplex { degeneracy: x.degeneracy.opposite(), cell: x.cell }
    }

    /// Disjoint union; cell names get `0:` / `1:` prefixes.
    pub fn coproduct(x: &SimplicialSet, y: &SimplicialSet) -> SimplicialSet {
        let truncation = x.truncation.min(y.truncation);
        let dims = x.names.len().max(y.names.len());
        let limit = match truncation {
            Truncation::At(d) => d + 1,
            Truncation::Complete => dims,
        };
        let mut names = vec![Vec::new(); limit];
        let mut faces = vec![Vec::new(); limit];
        for (tag, part, offset) in [("0", x, None), ("1", y, Some(x))] {
            for d in 0..limit.min(part.names.len()) {
                for c in part.cells(d) {
                    names[d].push(format!("{tag}:{}", part.name(c)));
                    let fs = part
                        .cell_faces(c)
                        .iter()
                        .map(|f| Simplex {
                            degeneracy: f.degeneracy.clone(),
                            cell: Cell { dim: f.cell.dim, index: f.cell.index + offset.map_or(0, |o| o.num_cells(f.cell.dim)) },
                        })
                        .collect();
                    faces[d].push(fs);
                }
            }
        }
        SimplicialSet::from_parts_unchecked(truncation, names, faces).expect("coproduct is well formed")
    }

    /// A copy with a different truncation marker; cells above `At(d)` are dropped.
    pub fn with_truncation(&self, truncation: Truncation) -> SimplicialSet {
        let mut names = self.names.clone();
        let mut faces = self.faces.clone();
        if let Truncation::At(d) = truncation {
            names.truncate(d + 1);
            faces.truncate(d + 1);
        }
        SimplicialSet::from_parts_unchecked(truncation, names, faces).expect("same cells")
    }

    /// Renders a simplex as `name` or `name` with its surjection.
    pub fn describe(&self, x: &Simplex) -> String {
        if x.is_degenerate() {
            format!("s{:?}({})", x.degeneracy.values(), self.name(x.cell))
        } else {
            self.name(x.cell).to_string()
        }
    }

    /// Re-normalizes an arbitrary face-compatible pair `(θ, y)` (θ any
    /// surjection) into a simplex; convenience for callers holding raw data.
    pub fn simplex(&self, degeneracy: &[usize], cell_name: &str) -> Result<Simplex> {
        let cell = self.cell_by_name(cell_name).ok_or_else(|| Error::Argument(format!("unknown cell {cell_name:?}")))?;
        Simplex::new(OrdinalMap::new(cell.dim, degeneracy.to_vec())?, cell)
    }
}

/// A map of simplicial sets, given on nondegenerate source cells.
#[derive(Clone)]
pub struct SimplicialMap {
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
    assignment: Vec<Vec<Simplex>>,
}

impl fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialMap").field("assignment", &self.assignment).finish()
    }
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.assignment == other.assignment
    }
}

impl Eq for SimplicialMap {}

impl SimplicialMap {
    /// Builds a map and checks that it commutes with faces.
    pub fn new(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, assignment: Vec<Vec<Simplex>>) -> Result<Self> {
        let map = Self::new_unchecked(source, target, assignment);
        map.validate()?;
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, mut assignment: Vec<Vec<Simplex>>) -> Self {
        assignment.resize(source.names.len(), Vec::new());
        Self { source, target, assignment }
    }

    pub fn identity(x: Arc<SimplicialSet>) -> Self {
        let assignment = (0..x.names.len())
            .map(|d| x.cells(d).map(Simplex::nondegenerate).collect())
            .collect();
        Self { source: x.clone(), target: x, assignment }
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.target
    }

    pub fn on_cell(&self, cell: Cell) -> &Simplex {
        &self.assignment[cell.dim][cell.index]
    }

    pub fn assignment(&self) -> &[Vec<Simplex>] {
        &self.assignment
    }

    pub fn on_simplex(&self, x: &Simplex) -> Simplex {
        let image = self.on_cell(x.cell);
        self.target.apply(&x.degeneracy, image)
    }

    pub fn validate(&self) -> Result<()> {
        for d in 0..self.source.names.len() {
            if self.assignment[d].len() != self.source.num_cells(d) {
                return Err(Error::Inconsistent(format!("map misses cells in dimension {d}")));
            }
            for cell in self.source.cells(d) {
                let image = self.on_cell(cell);
                if image.dim() != d || !self.target.contains(image.cell) {
                    return Err(Error::Inconsistent(format!("bad image of {}", self.source.name(cell))));
                }
                if !self.target.truncation.covers(d) {
                    return Err(Error::TruncationTooLow { needed: d, have: d.saturating_sub(1) });
                }
                for (i, face) in self.source.cell_faces(cell).iter().enumerate() {
                    if self.on_simplex(face) != self.target.face(image, i) {
                        return Err(Error::Inconsistent(format!(
                            "map does not commute with d{i} on {}",
                            self.source.name(cell)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Injective on all simplices iff it sends cells to distinct cells.
    pub fn is_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.assignment.iter().flatten().all(|s| !s.is_degenerate() && seen.insert(s.cell))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SimplicialMap) -> Result<SimplicialMap> {
        if first.target.as_ref() != self.source.as_ref() {
            return arg("maps are not composable");
        }
        let assignment = first
            .assignment
            .iter()
            .map(|level| level.iter().map(|s| self.on_simplex(s)).collect())
            .collect();
        Ok(SimplicialMap::new_unchecked(first.source.clone(), self.target.clone(), assignment))
    }

    /// The image as a set of target cells.
    pub fn image_cells(&self) -> BTreeSet<Cell> {
        self.assignment.iter().flatten().map(|s| s.cell).collect()
    }
}

#[cfg(test)]
mod tests;
