//! Combinatorial homotopy groups of finite Kan complexes.
//!
//! For `n ≥ 1` the elements of `π_n(X, *)` are classes of `n`-simplices with
//! every face at the base point. Two are homotopic when some
//! `(n+1)`-simplex has them as its last two faces and the base point
//! elsewhere; the product of `a` and `b` is `d_n w` for any `w` with
//! `d_{n-1} w = a`, `d_{n+1} w = b` and the base point in the other faces.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ho::UnionFind;
use super::horns::{require_fillers, HornMode};
use crate::delta::OrdinalMap;
use crate::error::{Error, Result};
use crate::nerve_cat::Monoid;
use crate::sset::{Simplex, SimplexTable, SimplicialSet};

/// Default bound on the number of `(n+1)`-simplices inspected.
pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Recognized {
    Trivial,
    Cyclic(usize),
    Symmetric3,
    Unrecognized,
}

/// A finite group by multiplication table, with a presentation by
/// generators and Cayley-table relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    /// Representative simplex of each element.
    pub elements: Vec<String>,
    pub identity: usize,
    /// `table[a][b] = a·b`.
    pub table: Vec<Vec<usize>>,
    pub generators: Vec<usize>,
    /// Words in the generators equal to the identity; a letter is
    /// `(generator position, inverted)`.
    pub relations: Vec<Vec<(usize, bool)>>,
    pub abelian: bool,
    pub recognized: Recognized,
}

impl GroupPresentation {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn to_monoid(&self) -> Result<Monoid> {
        Monoid::new(self.elements.clone(), self.table.clone())
    }

    fn from_table(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let m = Monoid::new(elements.clone(), table.clone())
            .map_err(|e| Error::Inconsistent(format!("homotopy classes do not form a group: {e}")))?;
        if !m.is_group() {
            return Err(Error::Inconsistent("homotopy classes have no inverses".into()));
        }
        let identity = m.unit().expect("groups have units");
        let order = elements.len();
        let abelian = m.is_commutative();

        // greedy generating set and a shortest word for every element
        let mut generators: Vec<usize> = Vec::new();
        let mut word: Vec<Option<Vec<(usize, bool)>>>;
        loop {
            word = vec![None; order];
            word[identity] = Some(Vec::new());
            let mut queue = VecDeque::from([identity]);
            while let Some(a) = queue.pop_front() {
                for (p, &g) in generators.iter().enumerate() {
                    let b = table[a][g];
                    if word[b].is_none() {
                        let mut w = word[a].clone().expect("reached");
                        w.push((p, false));
                        word[b] = Some(w);
                        queue.push_back(b);
                    }
                }
            }
            match (0..order).find(|&a| word[a].is_none()) {
                Some(a) => generators.push(a),
                None => break,
            }
        }
        let word: Vec<Vec<(usize, bool)>> = word.into_iter().map(|w| w.expect("generated")).collect();
        let mut relations = Vec::new();
        for a in 0..order {
            for (p, &g) in generators.iter().enumerate() {
                let mut r = word[a].clone();
                r.push((p, false));
                r.extend(word[table[a][g]].iter().rev().map(|&(q, inv)| (q, !inv)));
                if !r.is_empty() {
                    relations.push(r);
                }
            }
        }
        let recognized = recognize(&m, identity);
        Ok(Self { elements, identity, table, generators, relations, abelian, recognized })
    }
}

fn element_order(m: &Monoid, identity: usize, a: usize) -> usize {
    let mut x = a;
    let mut k = 1;
    while x != identity {
        x = m.mul(x, a);
        k += 1;
    }
    k
}

fn recognize(m: &Monoid, identity: usize) -> Recognized {
    let n = m.order();
    if n == 1 {
        return Recognized::Trivial;
    }
    if (0..n).any(|a| element_order(m, identity, a) == n) {
        return Recognized::Cyclic(n);
    }
    if n == 6 && !m.is_commutative() {
        return Recognized::Symmetric3;
    }
    Recognized::Unrecognized
}

/// `π_0`, `π_n` for `n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HomotopyInvariant {
    Components(Vec<Vec<String>>),
    Group(GroupPresentation),
}

/// Path components of `X` as vertex names.
pub fn components(x: &SimplicialSet) -> Vec<Vec<String>> {
    let mut uf = UnionFind::new(x.num_cells(0));
    for e in x.cells(1) {
        let f = x.cell_faces(e);
        uf.union(f[0].cell().index, f[1].cell().index);
    }
    let (labels, count) = uf.labels();
    let mut out = vec![Vec::new(); count];
    for (v, &l) in labels.iter().enumerate() {
        out[l].push(x.names(0)[v].clone());
    }
    out
}

/// `π_n(X, base)` with the default budget.
pub fn homotopy_group(x: &Arc<SimplicialSet>, base: &str, n: usize) -> Result<HomotopyInvariant> {
    homotopy_group_with_budget(x, base, n, DEFAULT_BUDGET)
}

/// `π_n(X, base)`. `X` must be Kan through dimension `n + 2`; fails with
/// `FuelExhausted` when `X_{n+1}` exceeds `budget` simplices.
pub fn homotopy_group_with_budget(x: &Arc<SimplicialSet>, base: &str, n: usize, budget: usize) -> Result<HomotopyInvariant> {
    let v = x.vertex(base)?;
    if n == 0 {
        return Ok(HomotopyInvariant::Components(components(x)));
    }
    let size = x.count_simplices(n + 1)?;
    if size > budget {
        return Err(Error::FuelExhausted { rounds: 0, detail: format!("{size} simplices in dimension {} exceed the budget {budget}", n + 1) });
    }
    require_fillers(x, n + 2, HornMode::Kan)?;
    let table = SimplexTable::new(x.clone(), n + 1)?;
    let point = table.id(&Simplex::nondegenerate(v));
    let star = |k: usize| table.degenerate(point, &OrdinalMap::constant(k, 0, 0).expect("constant"));
    let (low, mid) = (star(n - 1), star(n));

    let spheres: Vec<u32> = table.level(n).filter(|&s| (0..=n).all(|i| table.face(s, i) == low)).collect();
    let slot: HashMap<u32, usize> = spheres.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut uf = UnionFind::new(spheres.len());
    let mut products: Vec<(usize, usize, usize)> = Vec::new();
    for w in table.level(n + 1) {
        let f: Vec<u32> = (0..=n + 1).map(|i| table.face(w, i)).collect();
        if f[..n].iter().all(|&g| g == mid) {
            if let (Some(&a), Some(&b)) = (slot.get(&f[n]), slot.get(&f[n + 1])) {
                uf.union(a, b);
            }
        }
        if f[..n - 1].iter().all(|&g| g == mid) {
            if let (Some(&a), Some(&b), Some(&c)) = (slot.get(&f[n - 1]), slot.get(&f[n + 1]), slot.get(&f[n])) {
                products.push((a, b, c));
            }
        }
    }
    let (labels, order) = uf.labels();
    let mut table_entries: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (a, b, c) in products {
        let key = (labels[a], labels[b]);
        match table_entries.insert(key, labels[c]) {
            Some(old) if old != labels[c] => {
                return Err(Error::Inconsistent("product of homotopy classes is not well defined".into()));
            }
            _ => {}
        }
    }
    let mut mult = vec![vec![0; order]; order];
    for (a, row) in mult.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            *entry = *table_entries
                .get(&(a, b))
                .ok_or_else(|| Error::Inconsistent("missing product of homotopy classes".into()))?;
        }
    }
    let mut names = vec![String::new(); order];
    for (i, &s) in spheres.iter().enumerate().rev() {
        names[labels[i]] = x.describe(table.simplex(s));
    }
    Ok(HomotopyInvariant::Group(GroupPresentation::from_table(names, mult)?))
}
