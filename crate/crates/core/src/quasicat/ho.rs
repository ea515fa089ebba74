use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::horns::{require_fillers, HornMode};
use crate::error::{Error, Result};
use crate::nerve_cat::{Arrow, FinCategory};
use crate::sset::{Cell, Simplex, SimplexTable, SimplicialSet, Truncation};

/// Disjoint-set forest over `0..n`.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Class labels `0..k` in order of first appearance.
    pub(crate) fn labels(&mut self) -> (Vec<usize>, usize) {
        let mut label = HashMap::new();
        let out = (0..self.parent.len())
            .map(|x| {
                let r = self.find(x);
                let next = label.len();
                *label.entry(r).or_insert(next)
            })
            .collect();
        (out, label.len())
    }
}

/// Which 2-simplices witness `f ~ g` for parallel edges `f, g : a → b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomotopyConvention {
    /// `d0 u = f`, `d1 u = g`, `d2 u` degenerate on `a`.
    Left,
    /// `d2 u = f`, `d1 u = g`, `d0 u` degenerate on `b`.
    Right,
}

/// `Ho(X)` of a quasicategory, with the class of every edge.
#[derive(Debug, Clone)]
pub struct HomotopyCategory {
    pub category: Arc<FinCategory>,
    table: SimplexTable,
    class: Vec<usize>,
}

impl HomotopyCategory {
    /// The arrow of `Ho(X)` represented by an edge of `X`.
    pub fn class_of(&self, edge: &Simplex) -> Option<usize> {
        let id = self.table.try_id(edge)?;
        let first = self.table.level(1).start;
        (self.table.dim_of(id) == 1).then(|| self.class[(id - first) as usize])
    }

    /// All edges representing `arrow`.
    pub fn representatives(&self, arrow: usize) -> Vec<Simplex> {
        self.table
            .level(1)
            .filter(|&id| self.class[(id - self.table.level(1).start) as usize] == arrow)
            .map(|id| self.table.simplex(id).clone())
            .collect()
    }

    pub fn set(&self) -> &Arc<SimplicialSet> {
        self.table.set()
    }
}

/// Classes of edges under the homotopy relation of `convention`, read off
/// the 2-simplices of `X` and closed under equivalence.
pub fn homotopy_classes(table: &SimplexTable, convention: HomotopyConvention) -> (Vec<usize>, usize) {
    let edges = table.level(1);
    let first = edges.start;
    let x = table.set();
    let mut uf = UnionFind::new(edges.len());
    for u in table.level(2) {
        let (d0, d1, d2) = (table.face(u, 0), table.face(u, 1), table.face(u, 2));
        let (witness, f) = match convention {
            HomotopyConvention::Left => (d2, d0),
            HomotopyConvention::Right => (d0, d2),
        };
        let w = table.simplex(witness);
        if w.is_degenerate() && x.vertex_of(w, 0) == x.vertex_of(w, 1) {
            uf.union((f - first) as usize, (d1 - first) as usize);
        }
    }
    uf.labels()
}

/// `Ho(X)`; `X` must satisfy the inner horn condition through dimension 3
/// (or its truncation, if lower).
pub fn homotopy_category(x: &Arc<SimplicialSet>) -> Result<HomotopyCategory> {
    let d = match x.truncation() {
        Truncation::Complete => 3,
        Truncation::At(t) => t.min(3),
    };
    if d < 2 {
        return Err(Error::TruncationTooLow { needed: 2, have: d });
    }
    require_fillers(x, d, HornMode::Inner)?;
    let table = SimplexTable::new(x.clone(), 2)?;
    let (class, count) = homotopy_classes(&table, HomotopyConvention::Left);
    let first = table.level(1).start;
    let vfirst = table.level(0).start;
    let cls = |id: u32| class[(id - first) as usize];

    // endpoints, identities and names of classes
    let mut arrows: Vec<Option<Arrow>> = vec![None; count];
    let mut identities = vec![0; x.num_cells(0)];
    for id in table.level(1) {
        let e = table.simplex(id);
        let c = cls(id);
        let (s, t) = ((table.face(id, 1) - vfirst) as usize, (table.face(id, 0) - vfirst) as usize);
        if e.is_degenerate() {
            identities[s] = c;
            arrows[c] = Some(Arrow { name: format!("id_{}", x.name(e.cell())), source: s, target: t });
        } else if arrows[c].is_none() {
            arrows[c] = Some(Arrow { name: x.name(e.cell()).to_string(), source: s, target: t });
        }
    }
    let arrows: Vec<Arrow> = arrows.into_iter().map(|a| a.expect("every class has an edge")).collect();

    // composites from all 2-simplices, which must agree across representatives
    let mut composite: HashMap<(usize, usize), BTreeSet<usize>> = HashMap::new();
    for u in table.level(2) {
        let key = (cls(table.face(u, 0)), cls(table.face(u, 2)));
        composite.entry(key).or_default().insert(cls(table.face(u, 1)));
    }
    for (&(g, f), hs) in &composite {
        if hs.len() > 1 {
            return Err(Error::Inconsistent(format!(
                "composite {} ∘ {} is not well defined on homotopy classes",
                arrows[g].name, arrows[f].name
            )));
        }
    }
    let objects = x.names(0).to_vec();
    let category = FinCategory::from_parts(objects, arrows, identities, |g, f| {
        composite.get(&(g, f)).and_then(|hs| hs.iter().next().copied())
    })
    .map_err(|e| Error::Inconsistent(format!("homotopy category: {e}")))?;
    Ok(HomotopyCategory { category: Arc::new(category), table, class })
}

/// Edges of `X` whose class in `Ho(X)` is invertible.
pub fn equivalences(x: &Arc<SimplicialSet>) -> Result<Vec<Simplex>> {
    let ho = homotopy_category(x)?;
    Ok(ho
        .table
        .level(1)
        .filter(|&id| ho.category.is_invertible(ho.class[(id - ho.table.level(1).start) as usize]))
        .map(|id| ho.table.simplex(id).clone())
        .collect())
}

/// The largest sub-simplicial set all of whose edges are equivalences.
pub fn max_kan_subset(x: &Arc<SimplicialSet>) -> Result<Arc<SimplicialSet>> {
    let eq: BTreeSet<Simplex> = equivalences(x)?.into_iter().collect();
    let mut keep = BTreeSet::new();
    for c in x.all_cells() {
        let s = Simplex::nondegenerate(c);
        let ok = (0..=c.dim).all(|a| (a + 1..=c.dim).all(|b| eq.contains(&x.edge_of(&s, a, b))));
        if ok {
            keep.insert(Cell::new(c.dim, c.index));
        }
    }
    Ok(x.sub(&keep, x.truncation())?.0)
}
