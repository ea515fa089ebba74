use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{BisimplicialSet, Direction};
use crate::delta::OrdinalMap;
use crate::error::{arg, Error, Result};
use crate::nerve_cat::{Arrow, FinCategory, Functor};

/// First bidegree where the spine map `X_{p,q} → X_{1,q} ×_{X_{0,q}} … ×_{X_{0,q}} X_{1,q}`
/// is not a bijection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegalFailure {
    pub p: usize,
    pub q: usize,
    pub cells: usize,
    pub chains: u128,
    pub injective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegalReport {
    pub holds: bool,
    pub failure: Option<SegalFailure>,
}

fn spine(x: &BisimplicialSet, p: usize, q: usize, cell: usize) -> Vec<usize> {
    let v = OrdinalMap::identity(q);
    (0..p).map(|i| x.act(p, q, &OrdinalMap::new(p, vec![i, i + 1]).expect("edge"), &v, cell)).collect()
}

/// Number of composable `p`-chains of horizontal edges in column `q`.
fn chain_count(x: &BisimplicialSet, p: usize, q: usize) -> u128 {
    let mut ways = vec![1u128; x.count(0, q)];
    for _ in 0..p {
        let mut next = vec![0u128; ways.len()];
        for e in 0..x.count(1, q) {
            let (s, t) = (x.face(Direction::Horizontal, 1, q, 1, e), x.face(Direction::Horizontal, 1, q, 0, e));
            next[t] = next[t].saturating_add(ways[s]);
        }
        ways = next;
    }
    ways.iter().fold(0u128, |a, &b| a.saturating_add(b))
}

/// The spine map is a bijection for every `2 ≤ p ≤ M` and every `q ≤ N`.
pub fn strict_segal_check(x: &BisimplicialSet) -> Result<SegalReport> {
    let (m, n) = x.bound();
    if m < 2 {
        return arg(format!("the Segal condition needs horizontal bound at least 2, got {m}"));
    }
    for p in 2..=m {
        for q in 0..=n {
            let cells = x.count(p, q);
            let spines: HashSet<Vec<usize>> = (0..cells).map(|c| spine(x, p, q, c)).collect();
            let chains = chain_count(x, p, q);
            let injective = spines.len() == cells;
            if !injective || cells as u128 != chains {
                return Ok(SegalReport { holds: false, failure: Some(SegalFailure { p, q, cells, chains, injective }) });
            }
        }
    }
    Ok(SegalReport { holds: true, failure: None })
}

/// A simplicial subset of row `p`, given by the chosen cells of each level.
struct SubRow<'a> {
    x: &'a BisimplicialSet,
    p: usize,
    cells: Vec<Vec<usize>>,
    position: Vec<HashMap<usize, usize>>,
}

impl<'a> SubRow<'a> {
    fn new(x: &'a BisimplicialSet, p: usize, cells: Vec<Vec<usize>>) -> Self {
        let position = cells.iter().map(|level| level.iter().enumerate().map(|(i, &c)| (c, i)).collect()).collect();
        Self { x, p, cells, position }
    }

    fn act(&self, q: usize, theta: &OrdinalMap, cell: usize) -> usize {
        self.x.act(self.p, q, &OrdinalMap::identity(self.p), theta, cell)
    }

    fn pos(&self, q: usize, cell: usize) -> std::result::Result<usize, String> {
        self.position[q].get(&cell).copied().ok_or_else(|| format!("row {} is not closed under its structure maps", self.p))
    }

    fn vertex(&self, q: usize, j: usize, cell: usize) -> usize {
        self.act(q, &OrdinalMap::constant(0, q, j).expect("vertex"), cell)
    }

    fn spine(&self, q: usize, cell: usize) -> Vec<usize> {
        (0..q).map(|i| self.act(q, &OrdinalMap::new(q, vec![i, i + 1]).expect("edge"), cell)).collect()
    }

    /// The row as the nerve of a groupoid: arrows are the level-1 cells and
    /// every level up to the bound is in bijection with chains compatibly
    /// with faces and degeneracies.
    fn groupoid(&self) -> std::result::Result<FinCategory, String> {
        let top = self.x.bound().1;
        let name = |q: usize, c: usize| self.x.name(self.p, q, c).to_string();
        let identity = |o: usize| self.act(0, &OrdinalMap::constant(1, 0, 0).expect("degeneracy"), o);
        let arrows: Vec<Arrow> = self.cells[1]
            .iter()
            .map(|&a| Ok(Arrow { name: name(1, a), source: self.pos(0, self.vertex(1, 0, a))?, target: self.pos(0, self.vertex(1, 1, a))? }))
            .collect::<std::result::Result<_, String>>()?;
        let identities: Vec<usize> = self.cells[0].iter().map(|&o| self.pos(1, identity(o))).collect::<std::result::Result<_, _>>()?;
        let mut by_spine: Vec<HashMap<Vec<usize>, usize>> = vec![HashMap::new(); top + 1];
        for q in 2..=top {
            for &c in &self.cells[q] {
                let s = self.spine(q, c).into_iter().map(|e| self.pos(1, e)).collect::<std::result::Result<Vec<_>, _>>()?;
                if by_spine[q].insert(s, c).is_some() {
                    return Err(format!("row {}: two {q}-cells share a spine", self.p));
                }
            }
            let mut chains = vec![1u128; self.cells[0].len()];
            for _ in 0..q {
                let mut next = vec![0u128; chains.len()];
                for a in &arrows {
                    next[a.target] = next[a.target].saturating_add(chains[a.source]);
                }
                chains = next;
            }
            if chains.iter().sum::<u128>() != self.cells[q].len() as u128 {
                return Err(format!("row {}: some composable {q}-chain has no filler", self.p));
            }
        }
        let composite = |g: usize, f: usize| -> Option<usize> {
            let c = *by_spine[2].get(&vec![f, g])?;
            self.pos(1, self.act(2, &OrdinalMap::face(2, 1).expect("face"), c)).ok()
        };
        // faces and degeneracies must act on spines as in a nerve
        for q in 2..=top {
            for (s, &c) in &by_spine[q] {
                for i in 0..=q {
                    let mut expected = s.clone();
                    if i == 0 {
                        expected.remove(0);
                    } else if i == q {
                        expected.pop();
                    } else {
                        let h = composite(s[i], s[i - 1]).ok_or_else(|| format!("row {}: missing composite", self.p))?;
                        expected.splice(i - 1..=i, [h]);
                    }
                    let face = self.act(q, &OrdinalMap::face(q, i).expect("face"), c);
                    let got = if q - 1 == 1 { vec![self.pos(1, face)?] } else { self.spine(q - 1, face).into_iter().map(|e| self.pos(1, e)).collect::<std::result::Result<_, _>>()? };
                    if got != expected {
                        return Err(format!("row {}: face d{i} of {:?} is not the composite chain", self.p, name(q, c)));
                    }
                }
                if q < top {
                    for i in 0..=q {
                        let d = self.act(q, &OrdinalMap::degeneracy(q + 1, i).expect("degeneracy"), c);
                        let got = self.spine(q + 1, d).into_iter().map(|e| self.pos(1, e)).collect::<std::result::Result<Vec<_>, _>>()?;
                        let object = if i == 0 { arrows[s[0]].source } else { arrows[s[i - 1]].target };
                        let mut expected = s.clone();
                        expected.insert(i, identities[object]);
                        if got != expected {
                            return Err(format!("row {}: degeneracy s{i} of {:?} does not insert an identity", self.p, name(q, c)));
                        }
                    }
                }
            }
        }
        let cat = FinCategory::from_parts(self.cells[0].iter().map(|&o| name(0, o)).collect(), arrows, identities, composite)
            .map_err(|e| format!("row {}: {e}", self.p))?;
        if !cat.is_groupoid() {
            return Err(format!("row {} is the nerve of a category that is not a groupoid", self.p));
        }
        Ok(cat)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletenessReport {
    pub complete: bool,
    /// Arrows of the homotopy category `Ho(X)`.
    pub homotopy_classes: usize,
    pub invertible_classes: usize,
    /// `|X^eq_q|` for every `q`.
    pub equivalence_cells: Vec<usize>,
    /// Objects of `X^eq` not isomorphic to a degenerate one.
    pub not_reached: Vec<String>,
    /// Pairs of points where `s` is not bijective on arrows.
    pub not_fully_faithful: Vec<(String, String)>,
}

fn undecidable<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::NotDecidable(msg.into()))
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Whether `s : X_0 → X^eq` is an equivalence, for a strict Segal object
/// whose row 0 and equivalence row are nerves of finite groupoids.
pub fn completeness_check(x: &BisimplicialSet) -> Result<CompletenessReport> {
    use Direction::{Horizontal as H, Vertical as V};
    let (_, n) = x.bound();
    let segal = strict_segal_check(x)?;
    if let Some(f) = segal.failure {
        return undecidable(format!("not strictly Segal at ({}, {})", f.p, f.q));
    }
    if n < 2 {
        return undecidable("recognizing groupoid rows needs vertical bound at least 2");
    }
    // π0 of mapping spaces: vertical 1-cells of X_1 with degenerate ends
    let mut classes = UnionFind((0..x.count(1, 0)).collect());
    for e in 0..x.count(1, 1) {
        let degenerate = |side: usize| {
            let end = x.face(H, 1, 1, side, e);
            end == x.degeneracy(V, 0, 0, 0, x.face(V, 0, 1, 0, end))
        };
        if degenerate(0) && degenerate(1) {
            classes.union(x.face(V, 1, 1, 0, e), x.face(V, 1, 1, 1, e));
        }
    }
    let class_of: Vec<usize> = (0..x.count(1, 0)).map(|f| classes.find(f)).collect();
    let reps: Vec<usize> = (0..x.count(1, 0)).filter(|&f| class_of[f] == f).collect();
    let rep_pos: HashMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut comp: HashMap<(usize, usize), usize> = HashMap::new();
    for s in 0..x.count(2, 0) {
        let (f, g, h) = (x.face(H, 2, 0, 2, s), x.face(H, 2, 0, 0, s), x.face(H, 2, 0, 1, s));
        let key = (rep_pos[&class_of[g]], rep_pos[&class_of[f]]);
        let value = rep_pos[&class_of[h]];
        if *comp.entry(key).or_insert(value) != value {
            return undecidable("composition is not well defined on homotopy classes");
        }
    }
    let ho = FinCategory::from_parts(
        x.names(0, 0).to_vec(),
        reps.iter()
            .map(|&r| Arrow { name: x.name(1, 0, r).to_string(), source: x.face(H, 1, 0, 1, r), target: x.face(H, 1, 0, 0, r) })
            .collect(),
        (0..x.count(0, 0)).map(|o| rep_pos[&class_of[x.degeneracy(H, 0, 0, 0, o)]]).collect(),
        |g, f| comp.get(&(g, f)).copied(),
    );
    let ho = match ho {
        Ok(c) => c,
        Err(e) => return undecidable(format!("homotopy category: {e}")),
    };
    let invertible: Vec<bool> = (0..ho.num_arrows()).map(|a| ho.is_invertible(a)).collect();
    let eq_cells: Vec<Vec<usize>> = (0..=n)
        .map(|q| {
            (0..x.count(1, q))
                .filter(|&e| {
                    (0..=q).all(|j| {
                        let vertex = x.act(1, q, &OrdinalMap::identity(1), &OrdinalMap::constant(0, q, j).expect("vertex"), e);
                        invertible[rep_pos[&class_of[vertex]]]
                    })
                })
                .collect()
        })
        .collect();
    let equivalence_cells = eq_cells.iter().map(Vec::len).collect();
    let row0 = SubRow::new(x, 0, (0..=n).map(|q| (0..x.count(0, q)).collect()).collect());
    let eq = SubRow::new(x, 1, eq_cells);
    let g0 = Arc::new(row0.groupoid().or_else(undecidable)?);
    let geq = Arc::new(eq.groupoid().or_else(undecidable)?);
    let objects = (0..x.count(0, 0)).map(|o| eq.position[0][&x.degeneracy(H, 0, 0, 0, o)]).collect();
    let arrows = (0..x.count(0, 1)).map(|a| eq.position[1][&x.degeneracy(H, 0, 1, 0, a)]).collect();
    let s = Functor::new(g0.clone(), geq.clone(), objects, arrows).map_err(|e| Error::Inconsistent(format!("degeneracy is not a functor: {e}")))?;
    let not_reached: Vec<String> = (0..geq.num_objects())
        .filter(|&y| !(0..g0.num_objects()).any(|o| !geq.hom(s.on_object(o), y).is_empty()))
        .map(|y| geq.object_name(y).to_string())
        .collect();
    let mut not_fully_faithful = Vec::new();
    for a in 0..g0.num_objects() {
        for b in 0..g0.num_objects() {
            let images: HashSet<usize> = g0.hom(a, b).into_iter().map(|f| s.on_arrow(f)).collect();
            if images.len() != g0.hom(a, b).len() || images.len() != geq.hom(s.on_object(a), s.on_object(b)).len() {
                not_fully_faithful.push((g0.object_name(a).to_string(), g0.object_name(b).to_string()));
            }
        }
    }
    Ok(CompletenessReport {
        complete: not_reached.is_empty() && not_fully_faithful.is_empty(),
        homotopy_classes: ho.num_arrows(),
        invertible_classes: invertible.iter().filter(|&&b| b).count(),
        equivalence_cells,
        not_reached,
        not_fully_faithful,
    })
}
