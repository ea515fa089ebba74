use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::delta::OrdinalMap;
use crate::error::{arg, Error, Result};
use crate::sset::{simplex_cell, standard_object, Cell, Extender, Simplex, SimplexTable, SimplicialSet, StandardKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HornMode {
    Inner,
    Kan,
    Left,
    Right,
}

impl HornMode {
    pub fn includes(self, n: usize, k: usize) -> bool {
        match self {
            HornMode::Inner => 0 < k && k < n,
            HornMode::Kan => true,
            HornMode::Left => k < n,
            HornMode::Right => k > 0,
        }
    }

    /// The mode whose horns correspond under `X ↦ X^op`.
    pub fn opposite(self) -> HornMode {
        match self {
            HornMode::Left => HornMode::Right,
            HornMode::Right => HornMode::Left,
            m => m,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HornCount {
    pub n: usize,
    pub k: usize,
    pub tested: usize,
    pub unfillable: usize,
    pub non_unique: usize,
}

/// A horn map `Λ^n_k → X` given on the cells of the horn: each entry is
/// `(horn cell, surjection values, target cell)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HornWitness {
    pub n: usize,
    pub k: usize,
    pub assignment: Vec<(String, Vec<usize>, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HornReport {
    pub dim: usize,
    pub mode: HornMode,
    pub counts: Vec<HornCount>,
    /// The first unfillable horn found, if any.
    pub witness: Option<HornWitness>,
}

impl HornReport {
    /// Every tested horn has a filler.
    pub fn all_fillable(&self) -> bool {
        self.counts.iter().all(|c| c.unfillable == 0)
    }

    /// Every tested horn has exactly one filler.
    pub fn all_unique(&self) -> bool {
        self.counts.iter().all(|c| c.unfillable == 0 && c.non_unique == 0)
    }

    pub fn count(&self, n: usize, k: usize) -> Option<&HornCount> {
        self.counts.iter().find(|c| c.n == n && c.k == k)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Exhaustively tests the horns `Λ^n_k → X` for `1 ≤ n ≤ d` and the `k`
/// admitted by `mode`, counting fillers.
pub fn classify(x: &Arc<SimplicialSet>, d: usize, mode: HornMode) -> Result<HornReport> {
    let table = SimplexTable::new(x.clone(), d)?;
    let mut counts = Vec::new();
    let mut witness = None;
    for n in 1..=d {
        let simplex = standard_object(StandardKind::Simplex, n, None)?;
        let ext = Extender::new(&table, &simplex);
        let top = Cell::new(n, 0);
        for k in (0..=n).filter(|&k| mode.includes(n, k)) {
            let horn: Vec<Cell> = SimplicialSet::standard_subset_cells(StandardKind::Horn, n, Some(k))?.into_iter().collect();
            let missing = [missing_face(n, k), top];
            let mut count = HornCount { n, k, tested: 0, unfillable: 0, non_unique: 0 };
            let empty = vec![None; ext.slots()];
            ext.solve(&empty, &horn, None, &mut |sol| {
                count.tested += 1;
                let mut fillers = 0;
                ext.solve(sol, &missing, None, &mut |_| {
                    fillers += 1;
                    fillers < 2
                })
                .expect("horn cells close up");
                match fillers {
                    0 => {
                        count.unfillable += 1;
                        if witness.is_none() {
                            witness = Some(describe_horn(&table, &simplex, &ext, &horn, sol, n, k));
                        }
                    }
                    1 => {}
                    _ => count.non_unique += 1,
                }
                true
            })?;
            counts.push(count);
        }
    }
    Ok(HornReport { dim: d, mode, counts, witness })
}

fn missing_face(n: usize, k: usize) -> Cell {
    simplex_cell(n, &(0..=n).filter(|&v| v != k).collect::<Vec<_>>())
}

fn describe_horn(
    table: &SimplexTable,
    simplex: &SimplicialSet,
    ext: &Extender<'_>,
    horn: &[Cell],
    sol: &[Option<u32>],
    n: usize,
    k: usize,
) -> HornWitness {
    let x = table.set();
    let assignment = horn
        .iter()
        .map(|&c| {
            let image = table.simplex(sol[ext.slot(c)].expect("horn assigned"));
            (simplex.name(c).to_string(), image.degeneracy().values().to_vec(), x.name(image.cell()).to_string())
        })
        .collect();
    HornWitness { n, k, assignment }
}

impl HornWitness {
    /// Re-checks the witness against `X`: the assignment must be a horn map
    /// without any filler.
    pub fn reproduces(&self, x: &Arc<SimplicialSet>) -> Result<bool> {
        let table = SimplexTable::new(x.clone(), self.n)?;
        let simplex = standard_object(StandardKind::Simplex, self.n, None)?;
        let ext = Extender::new(&table, &simplex);
        let horn: BTreeSet<Cell> = SimplicialSet::standard_subset_cells(StandardKind::Horn, self.n, Some(self.k))?;
        let mut fixed = vec![None; ext.slots()];
        for (cell_name, values, target) in &self.assignment {
            let c = simplex.cell_by_name(cell_name).ok_or_else(|| Error::Format(format!("unknown horn cell {cell_name:?}")))?;
            if !horn.contains(&c) {
                return arg(format!("{cell_name} is not a cell of the horn"));
            }
            let t = x.cell_by_name(target).ok_or_else(|| Error::Format(format!("unknown cell {target:?}")))?;
            let s = Simplex::new(OrdinalMap::new(t.dim, values.clone())?, t)?;
            if s.dim() != c.dim {
                return arg(format!("image of {cell_name} has the wrong dimension"));
            }
            fixed[ext.slot(c)] = Some(table.id(&s));
        }
        if horn.iter().any(|&c| fixed[ext.slot(c)].is_none()) {
            return arg("witness does not cover the horn");
        }
        // the assignment must commute with faces
        for &c in &horn {
            let id = fixed[ext.slot(c)].expect("covered");
            for (i, f) in simplex.cell_faces(c).iter().enumerate() {
                let face_id = table.degenerate(fixed[ext.slot(f.cell())].expect("horn is closed"), f.degeneracy());
                if table.face(id, i) != face_id {
                    return Ok(false);
                }
            }
        }
        let missing = [missing_face(self.n, self.k), Cell::new(self.n, 0)];
        let fillers = ext.solve(&fixed, &missing, None, &mut |_| false)?;
        Ok(fillers == 0)
    }
}

/// Error unless every horn of `mode` up to `d` fills.
pub fn require_fillers(x: &Arc<SimplicialSet>, d: usize, mode: HornMode) -> Result<HornReport> {
    let report = classify(x, d, mode)?;
    if let Some(w) = &report.witness {
        let text = format!(
            "Λ^{}_{} ↦ {}",
            w.n,
            w.k,
            w.assignment.iter().map(|(c, s, t)| format!("{c}:{s:?}{t}")).collect::<Vec<_>>().join(" ")
        );
        return Err(match mode {
            HornMode::Inner => Error::NotQuasicategory { dim: d, witness: text },
            _ => Error::NotKan { dim: d, witness: text },
        });
    }
    Ok(report)
}

pub fn is_quasicategory(x: &Arc<SimplicialSet>, d: usize) -> Result<bool> {
    Ok(classify(x, d, HornMode::Inner)?.all_fillable())
}

pub fn is_kan(x: &Arc<SimplicialSet>, d: usize) -> Result<bool> {
    Ok(classify(x, d, HornMode::Kan)?.all_fillable())
}

/// Counts for the spine restriction `X_n → Hom(Spine(n), X)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineReport {
    pub n: usize,
    pub simplices: usize,
    pub spine_maps: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl SpineReport {
    pub fn is_bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Compares `n`-simplices with chains of `n` composable edges.
pub fn spine_check(x: &Arc<SimplicialSet>, n: usize) -> Result<SpineReport> {
    let table = SimplexTable::new(x.clone(), n)?;
    let edges: Vec<u32> = table.level(1.min(n)).collect();
    let spine_maps = if n == 0 {
        table.level(0).len()
    } else {
        // chains of edges e_1 … e_n with the target of e_i the source of e_{i+1}
        let mut ends: Vec<usize> = table.level(0).map(|_| 1).collect();
        let vertex_base = table.level(0).start;
        for _ in 0..n {
            let mut next = vec![0; ends.len()];
            for &e in &edges {
                let (s, t) = (table.face(e, 1) - vertex_base, table.face(e, 0) - vertex_base);
                next[t as usize] += ends[s as usize];
            }
            ends = next;
        }
        ends.iter().sum()
    };
    let mut images: HashSet<Vec<u32>> = HashSet::new();
    let mut simplices = 0;
    let mut injective = true;
    for id in table.level(n) {
        simplices += 1;
        let s = table.simplex(id);
        let spine: Vec<u32> = if n == 0 { vec![id] } else { (0..n).map(|i| table.id(&x.edge_of(s, i, i + 1))).collect() };
        if !images.insert(spine) {
            injective = false;
        }
    }
    let surjective = images.len() == spine_maps;
    Ok(SpineReport { n, simplices, spine_maps, injective, surjective })
}
