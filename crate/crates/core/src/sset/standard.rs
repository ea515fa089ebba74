use std::collections::{BTreeMap, BTreeSet};

use super::{Cell, Simplex, SimplicialSet, Truncation};
use crate::delta;
use crate::error::{arg, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardKind {
    Simplex,
    Boundary,
    Horn,
    Spine,
}

/// `Δ^n`, `∂Δ^n`, `Λ^n_k` or `Spine(n)`; cells are subsets of `[n]`.
pub fn standard_object(kind: StandardKind, n: usize, k: Option<usize>) -> Result<SimplicialSet> {
    let all: Vec<Vec<usize>> = (1..=n + 1).flat_map(|size| delta::subsets(n + 1, size)).collect();
    let keep: Vec<Vec<usize>> = match kind {
        StandardKind::Simplex => all,
        StandardKind::Boundary => all.into_iter().filter(|s| s.len() <= n).collect(),
        StandardKind::Horn => {
            let k = match k {
                Some(k) if n >= 1 && k <= n => k,
                _ => return arg(format!("horn Λ^{n}_{k:?} does not exist")),
            };
            let missing: Vec<usize> = (0..=n).filter(|&v| v != k).collect();
            all.into_iter().filter(|s| s.len() <= n && *s != missing).collect()
        }
        StandardKind::Spine => all
            .into_iter()
            .filter(|s| s.len() == 1 || (s.len() == 2 && s[1] == s[0] + 1))
            .collect(),
    };
    let names: Vec<String> = (0..=n).map(|v| v.to_string()).collect();
    SimplicialSet::from_ordered_complex(&names, &keep)
}

impl SimplicialSet {
    /// The simplicial set of an ordered simplicial complex: cells are strictly
    /// increasing vertex lists, faces delete one vertex. `simplices` is closed
    /// under faces automatically.
    pub fn from_ordered_complex(vertex_names: &[String], simplices: &[Vec<usize>]) -> Result<SimplicialSet> {
        let mut closed: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in simplices {
            if s.is_empty() || s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&v| v >= vertex_names.len()) {
                return arg(format!("{s:?} is not an increasing vertex list"));
            }
            let size = s.len();
            for k in 1..=size {
                for sub in delta::subsets(size, k) {
                    closed.insert(sub.iter().map(|&i| s[i]).collect());
                }
            }
        }
        let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
        for s in closed {
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(s);
        }
        // vertices keep their given order
        if let Some(level) = by_dim.first_mut() {
            level.sort();
        }
        let mut index: BTreeMap<Vec<usize>, Cell> = BTreeMap::new();
        let mut names = Vec::new();
        let mut faces = Vec::new();
        for (d, level) in by_dim.iter().enumerate() {
            let mut level_names = Vec::new();
            let mut level_faces = Vec::new();
            for (i, s) in level.iter().enumerate() {
                index.insert(s.clone(), Cell { dim: d, index: i });
                if d == 0 {
                    level_names.push(vertex_names[s[0]].clone());
                    level_faces.push(Vec::new());
                } else {
                    let parts: Vec<&str> = s.iter().map(|&v| vertex_names[v].as_str()).collect();
                    level_names.push(format!("{{{}}}", parts.join(",")));
                    let fs = (0..=d)
                        .map(|j| {
                            let mut f = s.clone();
                            f.remove(j);
                            Simplex::nondegenerate(index[&f])
                        })
                        .collect();
                    level_faces.push(fs);
                }
            }
            names.push(level_names);
            faces.push(level_faces);
        }
        SimplicialSet::from_parts_unchecked(Truncation::Complete, names, faces)
    }

    /// Nerve of a finite poset given by `leq(a, b)`: cells are strict chains.
    pub fn poset_nerve(element_names: &[String], leq: impl Fn(usize, usize) -> bool) -> Result<SimplicialSet> {
        let n = element_names.len();
        for a in 0..n {
            for b in 0..n {
                if a != b && leq(a, b) && leq(b, a) {
                    return arg("relation is not antisymmetric");
                }
            }
        }
        // order elements along a linear extension so chains are increasing lists
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| (0..n).filter(|&b| b != a && leq(b, a)).count());
        let pos: Vec<usize> = {
            let mut p = vec![0; n];
            for (i, &a) in order.iter().enumerate() {
                p[a] = i;
            }
            p
        };
        let mut chains: Vec<Vec<usize>> = Vec::new();
        fn extend(cur: &mut Vec<usize>, order: &[usize], pos: &[usize], leq: &dyn Fn(usize, usize) -> bool, out: &mut Vec<Vec<usize>>) {
            out.push(cur.iter().map(|&a| pos[a]).collect());
            let last = *cur.last().unwrap();
            for &b in order {
                if b != last && leq(last, b) {
                    cur.push(b);
                    extend(cur, order, pos, leq, out);
                    cur.pop();
                }
            }
        }
        for &a in &order {
            let mut cur = vec![a];
            extend(&mut cur, &order, &pos, &leq, &mut chains);
        }
        let names: Vec<String> = order.iter().map(|&a| element_names[a].clone()).collect();
        SimplicialSet::from_ordered_complex(&names, &chains)
    }

    /// The inclusion of `∂Δ^n`, `Λ^n_k` etc. into `Δ^n` as a cell subset.
    pub fn standard_subset_cells(kind: StandardKind, n: usize, k: Option<usize>) -> Result<BTreeSet<Cell>> {
        let full = standard_object(StandardKind::Simplex, n, None)?;
        let part = standard_object(kind, n, k)?;
        Ok(part
            .all_cells()
            .map(|c| full.cell_by_name(part.name(c)).expect("subset of the simplex"))
            .collect())
    }
}

/// The cell of `Δ^n` spanned by the increasing vertex list `vertices`.
pub(crate) fn simplex_cell(n: usize, vertices: &[usize]) -> Cell {
    let d = vertices.len() - 1;
    let index = delta::subsets(n + 1, d + 1)
        .iter()
        .position(|s| s == vertices)
        .expect("increasing vertex list");
    Cell { dim: d, index }
}
