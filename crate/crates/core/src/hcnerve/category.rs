use std::sync::Arc;

use crate::error::{arg, Error, Result};
use crate::nerve_cat::FinCategory;
use crate::sset::{product, Cell, ProductSet, Simplex, SimplicialMap, SimplicialSet, Truncation, VertexIndex};

#[derive(Clone, Debug)]
struct Composition {
    product: ProductSet,
    map: SimplicialMap,
}

/// A category enriched in finite (possibly truncated) simplicial sets.
#[derive(Clone, Debug)]
pub struct SimplicialCategory {
    objects: Vec<String>,
    maps: Vec<Arc<SimplicialSet>>,
    identities: Vec<Cell>,
    compositions: Vec<Option<Composition>>,
}

impl SimplicialCategory {
    /// Builds the category from map spaces `maps[x][y] = Map(x, y)`,
    /// identity vertices, and a composition rule `compose(x, y, z, g, f)`
    /// for `g ∈ Map(y, z)`, `f ∈ Map(x, y)` of equal dimension. The rule is
    /// evaluated on the cells of each product and the laws are checked.
    pub fn new(
        objects: Vec<String>,
        maps: Vec<Vec<Arc<SimplicialSet>>>,
        identities: Vec<Cell>,
        compose: impl Fn(usize, usize, usize, &Simplex, &Simplex) -> Result<Simplex>,
    ) -> Result<Self> {
        let n = objects.len();
        if maps.len() != n || maps.iter().any(|row| row.len() != n) || identities.len() != n {
            return arg("map spaces and identities must be indexed by pairs of objects");
        }
        for (x, &id) in identities.iter().enumerate() {
            if id.dim != 0 || !maps[x][x].contains(id) {
                return arg(format!("identity of {} is not a vertex of Map(x, x)", objects[x]));
            }
        }
        let maps: Vec<Arc<SimplicialSet>> = maps.into_iter().flatten().collect();
        let mut compositions = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (g_space, f_space) = (&maps[y * n + z], &maps[x * n + y]);
                    if g_space.top_dim().is_none() || f_space.top_dim().is_none() {
                        compositions.push(None);
                        continue;
                    }
                    let product = product(g_space, f_space)?;
                    let target = maps[x * n + z].clone();
                    let top = product.set.top_dim().unwrap_or(0);
                    let assignment = (0..=top)
                        .map(|d| {
                            product
                                .set
                                .cells(d)
                                .map(|c| {
                                    let (g, f) = product.components(c);
                                    compose(x, y, z, g, f)
                                })
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let map = SimplicialMap::new(product.set.clone(), target, assignment).map_err(|e| {
                        Error::Argument(format!("composition {} → {} → {} is not simplicial: {e}", objects[x], objects[y], objects[z]))
                    })?;
                    compositions.push(Some(Composition { product, map }));
                }
            }
        }
        let c = Self { objects, maps, identities, compositions };
        c.validate()?;
        Ok(c)
    }

    /// Composition determined on vertices, for map spaces whose simplices
    /// are determined by their vertex sequences.
    pub fn from_vertex_rule(
        objects: Vec<String>,
        maps: Vec<Vec<Arc<SimplicialSet>>>,
        identities: Vec<Cell>,
        rule: impl Fn(usize, usize, usize, Cell, Cell) -> Result<Cell>,
    ) -> Result<Self> {
        let index: Vec<Vec<VertexIndex>> = maps
            .iter()
            .map(|row| {
                row.iter()
                    .map(|m| VertexIndex::new(m).ok_or_else(|| Error::Argument("map space is not determined by vertices".into())))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let spaces = maps.clone();
        Self::new(objects, maps, identities, |x, y, z, g, f| {
            let (gv, fv) = (spaces[y][z].vertices_of(g), spaces[x][y].vertices_of(f));
            let hv = gv.iter().zip(&fv).map(|(&a, &b)| rule(x, y, z, a, b)).collect::<Result<Vec<_>>>()?;
            index[x][z].simplex(&hv).ok_or_else(|| Error::Argument(format!("no simplex with vertices {hv:?}")))
        })
    }

    /// The ordinary category with discrete map spaces.
    pub fn discrete(c: &FinCategory) -> Result<Self> {
        let n = c.num_objects();
        let maps = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let names: Vec<String> = c.hom(x, y).iter().map(|&a| c.arrow_name(a).to_string()).collect();
                        Arc::new(SimplicialSet::from_ordered_complex(&names, &(0..names.len()).map(|v| vec![v]).collect::<Vec<_>>()).expect("points"))
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        let position = |x: usize, y: usize, a: usize| Cell::new(0, c.hom(x, y).iter().position(|&b| b == a).expect("in hom"));
        let identities = (0..n).map(|x| position(x, x, c.identity(x))).collect();
        let homs: Vec<Vec<Vec<usize>>> = (0..n).map(|x| (0..n).map(|y| c.hom(x, y)).collect()).collect();
        Self::from_vertex_rule(c.objects().to_vec(), maps, identities, |x, y, z, g, f| {
            let h = c.compose(homs[y][z][g.index], homs[x][y][f.index]).expect("composable");
            Ok(position(x, z, h))
        })
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn map_space(&self, x: usize, y: usize) -> &Arc<SimplicialSet> {
        &self.maps[x * self.objects.len() + y]
    }

    pub fn identity(&self, x: usize) -> Cell {
        self.identities[x]
    }

    /// `id_x` as a `k`-simplex.
    pub fn identity_simplex(&self, x: usize, k: usize) -> Simplex {
        self.map_space(x, x).degenerate_vertex(self.identities[x], k)
    }

    /// `g ∘ f` for `g ∈ Map(y, z)_k`, `f ∈ Map(x, y)_k`.
    pub fn compose(&self, x: usize, y: usize, z: usize, g: &Simplex, f: &Simplex) -> Simplex {
        let n = self.objects.len();
        let c = self.compositions[(x * n + y) * n + z].as_ref().expect("map spaces are nonempty");
        c.map.on_simplex(&c.product.pair(g, f))
    }

    /// Dimension through which the laws are checked: the least truncation,
    /// or the largest cell dimension when nothing is truncated.
    pub fn checked_dim(&self) -> usize {
        let mut d = None;
        for m in &self.maps {
            if let Truncation::At(t) = m.truncation() {
                d = Some(d.map_or(t, |e: usize| e.min(t)));
            }
        }
        d.unwrap_or_else(|| self.maps.iter().filter_map(|m| m.top_dim()).max().unwrap_or(0))
    }

    /// Exhaustive check of associativity and units on simplices through
    /// [`SimplicialCategory::checked_dim`].
    pub fn validate(&self) -> Result<()> {
        let n = self.objects.len();
        let top = self.checked_dim();
        let simplices: Vec<Vec<Vec<Simplex>>> = self
            .maps
            .iter()
            .map(|m| (0..=top).map(|k| if m.truncation().covers(k) { m.simplices(k).unwrap_or_default() } else { Vec::new() }).collect())
            .collect();
        for k in 0..=top {
            for x in 0..n {
                for y in 0..n {
                    for f in &simplices[x * n + y][k] {
                        if self.compose(x, y, y, &self.identity_simplex(y, k), f) != *f
                            || self.compose(x, x, y, f, &self.identity_simplex(x, k)) != *f
                        {
                            return Err(Error::Argument(format!("identity law fails on {}", self.map_space(x, y).describe(f))));
                        }
                        for z in 0..n {
                            for g in &simplices[y * n + z][k] {
                                let gf = self.compose(x, y, z, g, f);
                                for w in 0..n {
                                    for h in &simplices[z * n + w][k] {
                                        let left = self.compose(x, z, w, h, &gf);
                                        let right = self.compose(x, y, w, &self.compose(y, z, w, h, g), f);
                                        if left != right {
                                            return Err(Error::Argument(format!(
                                                "composition is not associative on {} {} {}",
                                                self.map_space(z, w).describe(h),
                                                self.map_space(y, z).describe(g),
                                                self.map_space(x, y).describe(f)
                                            )));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
