//! Bisimplicial sets truncated in both directions: the embeddings `d` and
//! `c`, strict Segal checks, Rezk classification diagrams and completeness
//! of Segal objects whose rows are nerves of groupoids.
//!
//! `X_{p,q}` has `p` in the categorical (horizontal) direction and `q` in the
//! space (vertical) direction; row `p` is the simplicial set `X_{p,•}`.

mod check;
mod format;
mod rezk;

pub use check::{completeness_check, strict_segal_check, CompletenessReport, SegalFailure, SegalReport};
pub use format::BisimplicialDoc;
pub use rezk::rezk_nerve;

use std::collections::HashSet;
use std::sync::Arc;

use crate::delta::{epi_mono_factorize, OrdinalMap};
use crate::error::{arg, Error, Result};
use crate::sset::{SimplexTable, SimplicialSet};

/// Which way a simplicial set is spread over two directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbedKind {
    /// `d(X)_{p,q} = X_p`.
    Discrete,
    /// `c(X)_{p,q} = X_q`.
    Constant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Horizontal,
    Vertical,
}

/// One bidegree: cell names and the generator tables leaving it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Level {
    names: Vec<String>,
    // [i][x]
    h_faces: Vec<Vec<usize>>,
    h_degens: Vec<Vec<usize>>,
    v_faces: Vec<Vec<usize>>,
    v_degens: Vec<Vec<usize>>,
}

/// `X_{p,q}` for `p ≤ M`, `q ≤ N`, with faces and degeneracies in both
/// directions. Degeneracies out of the top bidegree are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisimplicialSet {
    bound: (usize, usize),
    // [p][q]
    levels: Vec<Vec<Level>>,
}

/// `θ` as its faces followed by its degeneracies, each `(is_face, index)`.
fn word(theta: &OrdinalMap) -> Vec<(bool, usize)> {
    let (epi, mono) = epi_mono_factorize(theta);
    let faces = mono.face_word().expect("injective").into_iter().map(|i| (true, i));
    faces.chain(epi.degeneracy_word().expect("surjective").into_iter().map(|i| (false, i))).collect()
}

impl BisimplicialSet {
    /// Builds the tables from an action of pairs of generators. `act(p, q, h,
    /// v, x)` must return the cell of `X_{p',q'}` obtained by restricting `x`
    /// along `h : [p'] → [p]` and `v : [q'] → [q]`; it is only called with one
    /// of them an identity and the other a face or degeneracy.
    pub fn from_action(
        bound: (usize, usize),
        names: Vec<Vec<Vec<String>>>,
        act: impl Fn(usize, usize, &OrdinalMap, &OrdinalMap, usize) -> usize,
    ) -> Result<Self> {
        let (m, n) = bound;
        if names.len() != m + 1 || names.iter().any(|row| row.len() != n + 1) {
            return arg(format!("cell lists do not match the bound ({m}, {n})"));
        }
        let mut levels = Vec::with_capacity(m + 1);
        for (p, row) in names.into_iter().enumerate() {
            let mut out = Vec::with_capacity(n + 1);
            for (q, cells) in row.into_iter().enumerate() {
                let count = cells.len();
                let table = |h: &OrdinalMap, v: &OrdinalMap| (0..count).map(|x| act(p, q, h, v, x)).collect::<Vec<_>>();
                let (hid, vid) = (OrdinalMap::identity(p), OrdinalMap::identity(q));
                let h_faces = if p == 0 { Vec::new() } else { (0..=p).map(|i| table(&OrdinalMap::face(p, i).expect("face"), &vid)).collect() };
                let h_degens = if p == m { Vec::new() } else { (0..=p).map(|i| table(&OrdinalMap::degeneracy(p + 1, i).expect("degeneracy"), &vid)).collect() };
                let v_faces = if q == 0 { Vec::new() } else { (0..=q).map(|i| table(&hid, &OrdinalMap::face(q, i).expect("face"))).collect() };
                let v_degens = if q == n { Vec::new() } else { (0..=q).map(|i| table(&hid, &OrdinalMap::degeneracy(q + 1, i).expect("degeneracy"))).collect() };
                out.push(Level { names: cells, h_faces, h_degens, v_faces, v_degens });
            }
            levels.push(out);
        }
        let x = Self { bound, levels };
        x.validate()?;
        Ok(x)
    }

    /// `d(X)` or `c(X)` truncated at `bound`.
    pub fn embed(kind: EmbedKind, x: &Arc<SimplicialSet>, bound: (usize, usize)) -> Result<Self> {
        let top = match kind {
            EmbedKind::Discrete => bound.0,
            EmbedKind::Constant => bound.1,
        };
        let table = SimplexTable::new(x.clone(), top)?;
        let local = |k: usize, id: u32| (id - table.level(k).start) as usize;
        let global = |k: usize, x: usize| table.level(k).start + x as u32;
        let restrict = |k: usize, theta: &OrdinalMap, cell: usize| -> usize {
            if theta.is_identity() {
                return cell;
            }
            let id = global(k, cell);
            let out = if theta.is_injective() {
                let i = theta.missed_values()[0];
                table.face(id, i)
            } else {
                table.degenerate(id, theta)
            };
            local(theta.source(), out)
        };
        let level_names = |k: usize| -> Vec<String> { table.level(k).map(|id| x.describe(table.simplex(id))).collect() };
        let names = (0..=bound.0)
            .map(|p| {
                (0..=bound.1)
                    .map(|q| match kind {
                        EmbedKind::Discrete => level_names(p),
                        EmbedKind::Constant => level_names(q),
                    })
                    .collect()
            })
            .collect();
        Self::from_action(bound, names, |p, q, h, v, cell| match kind {
            EmbedKind::Discrete => restrict(p, h, cell),
            EmbedKind::Constant => restrict(q, v, cell),
        })
    }

    /// Bidegreewise product; the pair `(a, b)` has index `a·|Y_{p,q}| + b`.
    pub fn product(x: &Self, y: &Self) -> Result<Self> {
        if x.bound != y.bound {
            return arg(format!("bounds {:?} and {:?} differ", x.bound, y.bound));
        }
        let (m, n) = x.bound;
        let names = (0..=m)
            .map(|p| {
                (0..=n)
                    .map(|q| {
                        let mut out = Vec::new();
                        for a in x.names(p, q) {
                            for b in y.names(p, q) {
                                out.push(format!("({a},{b})"));
                            }
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        Self::from_action(x.bound, names, |p, q, h, v, cell| {
            let k = y.count(p, q);
            let (a, b) = (cell / k, cell % k);
            x.act(p, q, h, v, a) * y.count(h.source(), v.source()) + y.act(p, q, h, v, b)
        })
    }

    /// `Δ^{m,n} = d(Δ^m) × c(Δ^n)` truncated at `bound`.
    pub fn representable(m: usize, n: usize, bound: (usize, usize)) -> Result<Self> {
        use crate::sset::{standard_object, StandardKind};
        let dm = Arc::new(standard_object(StandardKind::Simplex, m, None)?);
        let dn = Arc::new(standard_object(StandardKind::Simplex, n, None)?);
        Self::product(&Self::embed(EmbedKind::Discrete, &dm, bound)?, &Self::embed(EmbedKind::Constant, &dn, bound)?)
    }

    pub fn bound(&self) -> (usize, usize) {
        self.bound
    }

    pub fn count(&self, p: usize, q: usize) -> usize {
        self.levels[p][q].names.len()
    }

    /// `counts()[p][q] = |X_{p,q}|`.
    pub fn counts(&self) -> Vec<Vec<usize>> {
        self.levels.iter().map(|row| row.iter().map(|l| l.names.len()).collect()).collect()
    }

    pub fn names(&self, p: usize, q: usize) -> &[String] {
        &self.levels[p][q].names
    }

    pub fn name(&self, p: usize, q: usize, x: usize) -> &str {
        &self.levels[p][q].names[x]
    }

    pub fn cell_by_name(&self, p: usize, q: usize, name: &str) -> Option<usize> {
        self.levels[p][q].names.iter().position(|n| n == name)
    }

    /// `d_i` in the given direction, out of `X_{p,q}`.
    pub fn face(&self, dir: Direction, p: usize, q: usize, i: usize, x: usize) -> usize {
        let l = &self.levels[p][q];
        match dir {
            Direction::Horizontal => l.h_faces[i][x],
            Direction::Vertical => l.v_faces[i][x],
        }
    }

    /// `s_i` in the given direction, out of `X_{p,q}`.
    pub fn degeneracy(&self, dir: Direction, p: usize, q: usize, i: usize, x: usize) -> usize {
        let l = &self.levels[p][q];
        match dir {
            Direction::Horizontal => l.h_degens[i][x],
            Direction::Vertical => l.v_degens[i][x],
        }
    }

    /// Restriction of a cell of `X_{k,·}` (in `dir`) along `theta : [j] → [k]`.
    fn act_one(&self, dir: Direction, p: usize, q: usize, theta: &OrdinalMap, x: usize) -> usize {
        self.run_word(dir, p, q, &word(theta), x)
    }

    /// Applies faces and degeneracies `(is_face, i)` in order.
    fn run_word(&self, dir: Direction, p: usize, q: usize, word: &[(bool, usize)], x: usize) -> usize {
        let (mut p, mut q, mut x) = (p, q, x);
        for &(is_face, i) in word {
            x = if is_face { self.face(dir, p, q, i, x) } else { self.degeneracy(dir, p, q, i, x) };
            let k = match dir {
                Direction::Horizontal => &mut p,
                Direction::Vertical => &mut q,
            };
            if is_face {
                *k -= 1;
            } else {
                *k += 1;
            }
        }
        x
    }

    /// `x ∈ X_{p,q}` restricted along `h : [p'] → [p]` and `v : [q'] → [q]`.
    pub fn act(&self, p: usize, q: usize, h: &OrdinalMap, v: &OrdinalMap, x: usize) -> usize {
        debug_assert!(h.target() == p && v.target() == q);
        let x = self.act_one(Direction::Horizontal, p, q, h, x);
        self.act_one(Direction::Vertical, h.source(), q, v, x)
    }

    /// Row `p` as a truncated simplicial set, if the data is small enough to
    /// rebuild it from nondegenerate cells.
    pub fn row(&self, p: usize) -> Result<SimplicialSet> {
        self.line(Direction::Vertical, p)
    }

    /// Column `q`, the simplicial set `X_{•,q}`.
    pub fn column(&self, q: usize) -> Result<SimplicialSet> {
        self.line(Direction::Horizontal, q)
    }

    fn line(&self, dir: Direction, fixed: usize) -> Result<SimplicialSet> {
        use crate::sset::{Cell, Simplex, Truncation};
        let top = match dir {
            Direction::Vertical => self.bound.1,
            Direction::Horizontal => self.bound.0,
        };
        let at = |k: usize| match dir {
            Direction::Vertical => (fixed, k),
            Direction::Horizontal => (k, fixed),
        };
        // every cell as (surjection, nondegenerate cell)
        let mut nondeg: Vec<Vec<usize>> = Vec::new();
        let mut position: Vec<Vec<Option<usize>>> = Vec::new();
        let mut as_simplex: Vec<Vec<Option<Simplex>>> = Vec::new();
        for k in 0..=top {
            let (p, q) = at(k);
            let count = self.count(p, q);
            let mut degenerate = vec![false; count];
            if k > 0 {
                let (p0, q0) = at(k - 1);
                for i in 0..k {
                    for x in 0..self.count(p0, q0) {
                        degenerate[self.degeneracy(dir, p0, q0, i, x)] = true;
                    }
                }
            }
            let cells: Vec<usize> = (0..count).filter(|&x| !degenerate[x]).collect();
            let mut pos = vec![None; count];
            for (j, &x) in cells.iter().enumerate() {
                pos[x] = Some(j);
            }
            nondeg.push(cells);
            position.push(pos);
            as_simplex.push(vec![None; count]);
        }
        for k in 0..=top {
            let (p, q) = at(k);
            for x in 0..self.count(p, q) {
                // find the surjection s and nondegenerate y with x = s*(y)
                let found = (0..=k).find_map(|j| {
                    crate::delta::surjections(k, j).into_iter().find_map(|s| {
                        nondeg[j].iter().find_map(|&y| {
                            let (pj, qj) = at(j);
                            let image = self.act_one(dir, pj, qj, &s, y);
                            (image == x).then(|| Simplex::new(s.clone(), Cell::new(j, position[j][y].expect("nondegenerate"))).expect("surjection"))
                        })
                    })
                });
                as_simplex[k][x] = Some(found.ok_or_else(|| Error::Inconsistent(format!("cell {x} of {:?} is not generated", at(k))))?);
            }
        }
        let names = (0..=top)
            .map(|k| {
                let (p, q) = at(k);
                nondeg[k].iter().map(|&x| self.name(p, q, x).to_string()).collect()
            })
            .collect();
        let faces = (0..=top)
            .map(|k| {
                let (p, q) = at(k);
                nondeg[k]
                    .iter()
                    .map(|&x| {
                        if k == 0 {
                            return Vec::new();
                        }
                        (0..=k).map(|i| as_simplex[k - 1][self.face(dir, p, q, i, x)].clone().expect("filled")).collect()
                    })
                    .collect()
            })
            .collect();
        SimplicialSet::from_parts(Truncation::At(top), names, faces)
    }

    /// Checks table shapes, both families of simplicial identities and that
    /// the directions commute.
    pub fn validate(&self) -> Result<()> {
        let (m, n) = self.bound;
        if self.levels.len() != m + 1 || self.levels.iter().any(|r| r.len() != n + 1) {
            return Err(Error::Inconsistent("bidegree table does not match the bound".into()));
        }
        for p in 0..=m {
            for q in 0..=n {
                let l = &self.levels[p][q];
                let unique: HashSet<&String> = l.names.iter().collect();
                if unique.len() != l.names.len() {
                    return Err(Error::Inconsistent(format!("duplicate cell names in bidegree ({p},{q})")));
                }
                let shapes = [
                    (&l.h_faces, if p == 0 { 0 } else { p + 1 }, p.wrapping_sub(1), q),
                    (&l.h_degens, if p == m { 0 } else { p + 1 }, p + 1, q),
                    (&l.v_faces, if q == 0 { 0 } else { q + 1 }, p, q.wrapping_sub(1)),
                    (&l.v_degens, if q == n { 0 } else { q + 1 }, p, q + 1),
                ];
                for (tables, len, tp, tq) in shapes {
                    if tables.len() != len {
                        return Err(Error::Inconsistent(format!("wrong number of structure maps at ({p},{q})")));
                    }
                    for t in tables {
                        if t.len() != l.names.len() || t.iter().any(|&y| y >= self.levels[tp][tq].names.len()) {
                            return Err(Error::Inconsistent(format!("structure map out of range at ({p},{q})")));
                        }
                    }
                }
            }
        }
        for p in 0..=m {
            for q in 0..=n {
                self.check_identities(Direction::Horizontal, p, q)?;
                self.check_identities(Direction::Vertical, p, q)?;
                self.check_commutation(p, q)?;
            }
        }
        Ok(())
    }

    /// Generators `[k'] → [k]` in one direction that exist within the bound.
    fn generators(&self, dir: Direction, k: usize) -> Vec<(OrdinalMap, bool)> {
        let top = match dir {
            Direction::Horizontal => self.bound.0,
            Direction::Vertical => self.bound.1,
        };
        let mut out = Vec::new();
        if k > 0 {
            out.extend((0..=k).map(|i| (OrdinalMap::face(k, i).expect("face"), true)));
        }
        if k < top {
            out.extend((0..=k).map(|i| (OrdinalMap::degeneracy(k + 1, i).expect("degeneracy"), false)));
        }
        out
    }

    fn letter(g: &(OrdinalMap, bool)) -> (bool, usize) {
        (g.1, if g.1 { g.0.missed_values()[0] } else { g.0.collapsed_positions()[0] })
    }

    /// Every length-two word of generators acts like its normal form, which
    /// is exactly the set of simplicial identities.
    fn check_identities(&self, dir: Direction, p: usize, q: usize) -> Result<()> {
        let k = if dir == Direction::Horizontal { p } else { q };
        let at = |j: usize| if dir == Direction::Horizontal { (j, q) } else { (p, j) };
        for g1 in self.generators(dir, k) {
            let j = g1.0.source();
            for g2 in self.generators(dir, j) {
                let composite = word(&crate::delta::compose(&g1.0, &g2.0).expect("composable"));
                let (l1, l2) = (Self::letter(&g1), Self::letter(&g2));
                let (pj, qj) = at(j);
                for x in 0..self.count(p, q) {
                    let stepwise = self.run_word(dir, pj, qj, &[l2], self.run_word(dir, p, q, &[l1], x));
                    if self.run_word(dir, p, q, &composite, x) != stepwise {
                        return Err(Error::Inconsistent(format!(
                            "{dir:?} simplicial identity fails on {:?} in ({p},{q}) for {:?} then {:?}",
                            self.name(p, q, x),
                            g1.0,
                            g2.0
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_commutation(&self, p: usize, q: usize) -> Result<()> {
        for h in self.generators(Direction::Horizontal, p) {
            for v in self.generators(Direction::Vertical, q) {
                let (p1, q1) = (h.0.source(), v.0.source());
                let (lh, lv) = ([Self::letter(&h)], [Self::letter(&v)]);
                for x in 0..self.count(p, q) {
                    let hv = self.run_word(Direction::Vertical, p1, q, &lv, self.run_word(Direction::Horizontal, p, q, &lh, x));
                    let vh = self.run_word(Direction::Horizontal, p, q1, &lh, self.run_word(Direction::Vertical, p, q, &lv, x));
                    if hv != vh {
                        return Err(Error::Inconsistent(format!(
                            "horizontal and vertical maps do not commute on {:?} in ({p},{q})",
                            self.name(p, q, x)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The same bisimplicial set with cells of each bidegree reordered:
    /// old cell `x` of `X_{p,q}` becomes `perm[p][q][x]`.
    pub fn permuted(&self, perm: &[Vec<Vec<usize>>]) -> Result<Self> {
        let (m, n) = self.bound;
        let mut inverse = vec![vec![Vec::new(); n + 1]; m + 1];
        let mut names = vec![vec![Vec::new(); n + 1]; m + 1];
        for p in 0..=m {
            for q in 0..=n {
                let k = self.count(p, q);
                let pi = &perm[p][q];
                let mut inv = vec![usize::MAX; k];
                for (x, &y) in pi.iter().enumerate() {
                    if y >= k || inv[y] != usize::MAX {
                        return arg(format!("not a permutation of bidegree ({p},{q})"));
                    }
                    inv[y] = x;
                }
                if pi.len() != k {
                    return arg(format!("not a permutation of bidegree ({p},{q})"));
                }
                names[p][q] = inv.iter().map(|&x| self.name(p, q, x).to_string()).collect();
                inverse[p][q] = inv;
            }
        }
        Self::from_action(self.bound, names, |p, q, h, v, y| {
            let x = inverse[p][q][y];
            perm[h.source()][v.source()][self.act(p, q, h, v, x)]
        })
    }

    /// Renames every cell with `f(p, q, old name)`.
    pub fn renamed(&self, f: impl Fn(usize, usize, &str) -> String) -> Result<Self> {
        let mut x = self.clone();
        for (p, row) in x.levels.iter_mut().enumerate() {
            for (q, l) in row.iter_mut().enumerate() {
                for name in l.names.iter_mut() {
                    *name = f(p, q, name);
                }
            }
        }
        x.validate()?;
        Ok(x)
    }
}

#[cfg(test)]
mod tests;
