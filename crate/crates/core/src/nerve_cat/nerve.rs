use std::collections::HashMap;
use std::sync::Arc;

use super::category::FinCategory;
use super::functor::Functor;
use crate::delta::OrdinalMap;
use crate::error::{arg, Result};
use crate::sset::{Cell, Simplex, SimplicialMap, SimplicialSet, Truncation};

/// The nerve of a finite category truncated at a dimension, together with
/// the translation between simplices and chains of arrows.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub set: Arc<SimplicialSet>,
    category: Arc<FinCategory>,
    // per cell of positive dimension: its chain of non-identity arrows
    chains: Vec<Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, Cell>,
}

/// `N(C)` up to dimension `d`: cells are chains of non-identity arrows.
pub fn nerve(c: &Arc<FinCategory>, d: usize) -> Nerve {
    let mut chains: Vec<Vec<Vec<usize>>> = vec![Vec::new(); d + 1];
    let mut index: HashMap<Vec<usize>, Cell> = HashMap::new();
    chains[0] = (0..c.num_objects()).map(|_| Vec::new()).collect();
    let non_identity: Vec<usize> = c.non_identity_arrows().collect();
    if d >= 1 {
        for &a in &non_identity {
            chains[1].push(vec![a]);
        }
    }
    for k in 2..=d {
        let mut level = Vec::new();
        for chain in &chains[k - 1] {
            let end = c.target(*chain.last().expect("nonempty chain"));
            for &a in &non_identity {
                if c.source(a) == end {
                    let mut longer = chain.clone();
                    longer.push(a);
                    level.push(longer);
                }
            }
        }
        chains[k] = level;
    }
    for (k, level) in chains.iter().enumerate().skip(1) {
        for (i, chain) in level.iter().enumerate() {
            index.insert(chain.clone(), Cell::new(k, i));
        }
    }
    let clash = c.arrows().iter().any(|a| c.object_by_name(&a.name).is_some() || a.name.contains(';'));
    let mut names = vec![c.objects().to_vec()];
    for level in chains.iter().skip(1) {
        names.push(
            level
                .iter()
                .map(|chain| {
                    let parts: Vec<&str> = chain.iter().map(|&a| c.arrow_name(a)).collect();
                    if clash {
                        format!("[{}]", parts.join(";"))
                    } else {
                        parts.join(";")
                    }
                })
                .collect(),
        );
    }
    let mut nerve = Nerve { set: Arc::new(SimplicialSet::empty()), category: c.clone(), chains, index };
    let mut faces: Vec<Vec<Vec<Simplex>>> = vec![vec![Vec::new(); c.num_objects()]];
    for k in 1..=d {
        let level = nerve.chains[k]
            .iter()
            .map(|chain| {
                let start = c.source(chain[0]);
                (0..=k).map(|i| nerve.face_of_chain(start, chain, i)).collect()
            })
            .collect();
        faces.push(level);
    }
    nerve.set = Arc::new(SimplicialSet::from_parts_unchecked(Truncation::At(d), names, faces).expect("nerve data is well formed"));
    nerve
}

impl Nerve {
    pub fn category(&self) -> &Arc<FinCategory> {
        &self.category
    }

    fn face_of_chain(&self, start: usize, chain: &[usize], i: usize) -> Simplex {
        let c = &self.category;
        let k = chain.len();
        if i == 0 {
            self.simplex(c.target(chain[0]), &chain[1..])
        } else if i == k {
            self.simplex(start, &chain[..k - 1])
        } else {
            let mut shorter = chain[..i - 1].to_vec();
            shorter.push(c.compose(chain[i], chain[i - 1]).expect("chain is composable"));
            shorter.extend_from_slice(&chain[i + 1..]);
            self.simplex(start, &shorter)
        }
    }

    /// The simplex of a composable chain (identities allowed) starting at
    /// the object `start`.
    pub fn simplex(&self, start: usize, chain: &[usize]) -> Simplex {
        let c = &self.category;
        let mut values = Vec::with_capacity(chain.len() + 1);
        let mut level = 0;
        values.push(0);
        let mut kept = Vec::new();
        for &a in chain {
            if !c.is_identity(a) {
                level += 1;
                kept.push(a);
            }
            values.push(level);
        }
        let cell = if kept.is_empty() { Cell::new(0, start) } else { self.index[&kept] };
        Simplex::new(OrdinalMap::new(level, values).expect("monotone"), cell).expect("surjection onto the cell")
    }

    /// Start object and full chain (with identities) of a simplex.
    pub fn chain(&self, x: &Simplex) -> (usize, Vec<usize>) {
        let c = &self.category;
        let cell = x.cell();
        let s = x.degeneracy();
        if cell.dim == 0 {
            return (cell.index, vec![c.identity(cell.index); s.source()]);
        }
        let arrows = &self.chains[cell.dim][cell.index];
        let start = c.source(arrows[0]);
        let mut out = Vec::with_capacity(s.source());
        let mut vertex_object = start;
        for j in 0..s.source() {
            if s.apply(j) == s.apply(j + 1) {
                out.push(c.identity(vertex_object));
            } else {
                let a = arrows[s.apply(j)];
                out.push(a);
                vertex_object = c.target(a);
            }
        }
        (start, out)
    }

    /// The simplex of an arrow.
    pub fn edge(&self, a: usize) -> Simplex {
        self.simplex(self.category.source(a), &[a])
    }

    /// The arrow of a 1-simplex.
    pub fn arrow(&self, x: &Simplex) -> usize {
        assert_eq!(x.dim(), 1, "not an edge");
        self.chain(x).1[0]
    }
}

/// `N(F) : N(C) → N(D)` on the given truncated nerves.
pub fn nerve_map(f: &Functor, source: &Nerve, target: &Nerve) -> Result<SimplicialMap> {
    if source.category.as_ref() != f.source().as_ref() || target.category.as_ref() != f.target().as_ref() {
        return arg("nerves do not match the functor");
    }
    if source.set.truncation() != target.set.truncation() {
        return arg("nerves are truncated at different dimensions");
    }
    let assignment = (0..source.chains.len())
        .map(|k| {
            source
                .set
                .cells(k)
                .map(|cell| {
                    if k == 0 {
                        return Simplex::nondegenerate(Cell::new(0, f.on_object(cell.index)));
                    }
                    let chain = &source.chains[k][cell.index];
                    let image: Vec<usize> = chain.iter().map(|&a| f.on_arrow(a)).collect();
                    target.simplex(f.on_object(f.source().source(chain[0])), &image)
                })
                .collect()
        })
        .collect();
    SimplicialMap::new(source.set.clone(), target.set.clone(), assignment)
}
