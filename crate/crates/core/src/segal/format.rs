use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{BisimplicialSet, Direction, Level};
use crate::error::{Error, Result};

/// Serialized bisimplicial set. Every table is indexed `[p][q][i]` and lists,
/// for each cell of `X_{p,q}` in order, the name of its image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisimplicialDoc {
    pub bound: [usize; 2],
    pub cells: Vec<Vec<Vec<String>>>,
    pub horizontal_faces: Vec<Vec<Vec<Vec<String>>>>,
    pub horizontal_degeneracies: Vec<Vec<Vec<Vec<String>>>>,
    pub vertical_faces: Vec<Vec<Vec<Vec<String>>>>,
    pub vertical_degeneracies: Vec<Vec<Vec<Vec<String>>>>,
}

type Tables = Vec<Vec<Vec<Vec<String>>>>;

impl BisimplicialDoc {
    pub fn from_set(x: &BisimplicialSet) -> Self {
        let (m, n) = x.bound;
        let table = |pick: fn(&Level) -> &Vec<Vec<usize>>, shift: fn(usize, usize) -> (usize, usize)| -> Tables {
            (0..=m)
                .map(|p| {
                    (0..=n)
                        .map(|q| {
                            let (tp, tq) = shift(p, q);
                            pick(&x.levels[p][q]).iter().map(|t| t.iter().map(|&y| x.name(tp, tq, y).to_string()).collect()).collect()
                        })
                        .collect()
                })
                .collect()
        };
        Self {
            bound: [m, n],
            cells: x.levels.iter().map(|row| row.iter().map(|l| l.names.clone()).collect()).collect(),
            horizontal_faces: table(|l| &l.h_faces, |p, q| (p.saturating_sub(1), q)),
            horizontal_degeneracies: table(|l| &l.h_degens, |p, q| (p + 1, q)),
            vertical_faces: table(|l| &l.v_faces, |p, q| (p, q.saturating_sub(1))),
            vertical_degeneracies: table(|l| &l.v_degens, |p, q| (p, q + 1)),
        }
    }

    pub fn to_set(&self) -> Result<BisimplicialSet> {
        let [m, n] = self.bound;
        let bad = |msg: String| Error::Format(msg);
        if self.cells.len() != m + 1 || self.cells.iter().any(|r| r.len() != n + 1) {
            return Err(bad(format!("cell lists do not match the bound [{m}, {n}]")));
        }
        let lookup: Vec<Vec<HashMap<&str, usize>>> = self
            .cells
            .iter()
            .map(|row| row.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect()).collect())
            .collect();
        let resolve = |tables: &Tables, p: usize, q: usize, tp: usize, tq: usize, what: &str| -> Result<Vec<Vec<usize>>> {
            let Some(ts) = tables.get(p).and_then(|r| r.get(q)) else {
                return Err(bad(format!("{what} missing at ({p},{q})")));
            };
            ts.iter()
                .map(|t| {
                    t.iter()
                        .map(|name| {
                            lookup
                                .get(tp)
                                .and_then(|r| r.get(tq))
                                .and_then(|l| l.get(name.as_str()).copied())
                                .ok_or_else(|| bad(format!("{what} at ({p},{q}): unknown cell {name:?} in ({tp},{tq})")))
                        })
                        .collect()
                })
                .collect()
        };
        let mut levels = Vec::with_capacity(m + 1);
        for p in 0..=m {
            let mut row = Vec::with_capacity(n + 1);
            for q in 0..=n {
                row.push(Level {
                    names: self.cells[p][q].clone(),
                    h_faces: resolve(&self.horizontal_faces, p, q, p.saturating_sub(1), q, "horizontal faces")?,
                    h_degens: resolve(&self.horizontal_degeneracies, p, q, p + 1, q, "horizontal degeneracies")?,
                    v_faces: resolve(&self.vertical_faces, p, q, p, q.saturating_sub(1), "vertical faces")?,
                    v_degens: resolve(&self.vertical_degeneracies, p, q, p, q + 1, "vertical degeneracies")?,
                });
            }
            levels.push(row);
        }
        let x = BisimplicialSet { bound: (m, n), levels };
        x.validate()?;
        Ok(x)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

impl BisimplicialSet {
    pub fn to_json(&self) -> String {
        BisimplicialDoc::from_set(self).to_json()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        BisimplicialDoc::from_json(text)?.to_set()
    }

    /// Graphviz picture of bidegrees `(0,0)`, `(1,0)` and `(0,1)`: points,
    /// nondegenerate horizontal edges (solid) and vertical edges (dashed).
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph bisimplicial {\n");
        for name in self.names(0, 0) {
            out.push_str(&format!("  {name:?};\n"));
        }
        let (m, n) = self.bound;
        let mut edges = |dir: Direction, p: usize, q: usize, style: &str| {
            let degenerate: Vec<usize> = (0..self.count(0, 0)).map(|o| self.degeneracy(dir, 0, 0, 0, o)).collect();
            for e in (0..self.count(p, q)).filter(|e| !degenerate.contains(e)) {
                let (s, t) = (self.face(dir, p, q, 1, e), self.face(dir, p, q, 0, e));
                out.push_str(&format!(
                    "  {:?} -> {:?} [label={:?}{style}];\n",
                    self.name(0, 0, s),
                    self.name(0, 0, t),
                    self.name(p, q, e)
                ));
            }
        };
        if m >= 1 {
            edges(Direction::Horizontal, 1, 0, "");
        }
        if n >= 1 {
            edges(Direction::Vertical, 0, 1, ", style=dashed");
        }
        out.push_str("}\n");
        out
    }
}
