use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::complex::{ChainComplex, Ring};
use crate::delta::{self, epi_mono_factorize, OrdinalMap};
use crate::error::{arg, Error, Result};
use crate::linalg::{kernel_mod, smith, solve_mod, Lattice, Matrix};
use crate::sset::{SimplexTable, SimplicialSet};

/// A simplicial object in free modules over a ring, truncated at `D`:
/// `A_n = R^{rank(n)}` with faces and degeneracies as matrices acting on
/// column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialAbGroup {
    ring: Ring,
    ranks: Vec<usize>,
    faces: Vec<Vec<Matrix>>,
    degeneracies: Vec<Vec<Matrix>>,
}

impl SimplicialAbGroup {
    /// `faces[n][i] = d_i : A_n → A_{n-1}` for `1 ≤ n ≤ D` (`faces[0]` is
    /// empty), `degeneracies[n][i] = s_i : A_n → A_{n+1}` for `n < D`.
    pub fn new(ring: Ring, ranks: Vec<usize>, faces: Vec<Vec<Matrix>>, degeneracies: Vec<Vec<Matrix>>) -> Result<Self> {
        let top = ranks.len().checked_sub(1).ok_or_else(|| Error::Argument("need at least level 0".into()))?;
        if faces.len() != top + 1 || degeneracies.len() != top {
            return arg(format!("truncation {top} needs faces for levels 0..={top} and degeneracies for levels 0..{top}"));
        }
        for n in 0..=top {
            let want = if n == 0 { 0 } else { n + 1 };
            if faces[n].len() != want {
                return arg(format!("level {n} needs {want} faces"));
            }
            for (i, d) in faces[n].iter().enumerate() {
                if n > 0 && (d.rows() != ranks[n - 1] || d.cols() != ranks[n]) {
                    return arg(format!("d_{i} on level {n} has the wrong shape"));
                }
            }
            if n < top {
                if degeneracies[n].len() != n + 1 {
                    return arg(format!("level {n} needs {} degeneracies", n + 1));
                }
                for (i, s) in degeneracies[n].iter().enumerate() {
                    if s.rows() != ranks[n + 1] || s.cols() != ranks[n] {
                        return arg(format!("s_{i} on level {n} has the wrong shape"));
                    }
                }
            }
        }
        let a = Self { ring, ranks, faces, degeneracies };
        a.check_identities()?;
        Ok(a)
    }

    fn check_identities(&self) -> Result<()> {
        let top = self.dim();
        let eq = |x: &Matrix, y: &Matrix| self.ring.matrices_equal(x, y);
        let fail = |what: String| Err(Error::Argument(format!("simplicial identity fails: {what}")));
        for n in 2..=top {
            for j in 0..=n {
                for i in 0..j {
                    // d_i d_j = d_{j-1} d_i on A_n
                    if !eq(&self.face(n - 1, i).mul(self.face(n, j)), &self.face(n - 1, j - 1).mul(self.face(n, i))) {
                        return fail(format!("d_{i} d_{j} on level {n}"));
                    }
                }
            }
        }
        for n in 0..top {
            let id = Matrix::identity(self.ranks[n]);
            for j in 0..=n {
                let s = self.degeneracy(n, j);
                for i in 0..=n + 1 {
                    let lhs = self.face(n + 1, i).mul(s);
                    let rhs = if i == j || i == j + 1 {
                        id.clone()
                    } else if i < j {
                        self.degeneracy(n - 1, j - 1).mul(self.face(n, i))
                    } else {
                        self.degeneracy(n - 1, j).mul(self.face(n, i - 1))
                    };
                    if !eq(&lhs, &rhs) {
                        return fail(format!("d_{i} s_{j} on level {n}"));
                    }
                }
                if n + 1 < top {
                    for i in 0..=j {
                        // s_i s_j = s_{j+1} s_i on A_n
                        if !eq(&self.degeneracy(n + 1, i).mul(s), &self.degeneracy(n + 1, j + 1).mul(self.degeneracy(n, i))) {
                            return fail(format!("s_{i} s_{j} on level {n}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `R[X]`: the free module on the simplices of `X` through dimension `d`.
    pub fn free(x: &Arc<SimplicialSet>, d: usize, ring: Ring) -> Result<Self> {
        let table = SimplexTable::new(x.clone(), d)?;
        let position: HashMap<u32, usize> =
            (0..=d).flat_map(|n| table.level(n).enumerate().map(|(k, id)| (id, k))).collect();
        let ranks: Vec<usize> = (0..=d).map(|n| table.level(n).len()).collect();
        let basis_map = |n_from: usize, n_to: usize, f: &dyn Fn(u32) -> u32| {
            let mut m = Matrix::zeros(ranks[n_to], ranks[n_from]);
            for (k, id) in table.level(n_from).enumerate() {
                m.set(position[&f(id)], k, BigInt::from(1));
            }
            m
        };
        let faces = (0..=d)
            .map(|n| if n == 0 { Vec::new() } else { (0..=n).map(|i| basis_map(n, n - 1, &|id| table.face(id, i))).collect() })
            .collect();
        let degeneracies = (0..d)
            .map(|n| {
                (0..=n)
                    .map(|i| {
                        let s = OrdinalMap::degeneracy(n + 1, i).expect("degeneracy");
                        basis_map(n, n + 1, &|id| table.degenerate(id, &s))
                    })
                    .collect()
            })
            .collect();
        Self::new(ring, ranks, faces, degeneracies)
    }

    /// The constant simplicial module `R^rank`.
    pub fn constant(ring: Ring, rank: usize, d: usize) -> Self {
        let id = Matrix::identity(rank);
        let faces = (0..=d).map(|n| if n == 0 { Vec::new() } else { vec![id.clone(); n + 1] }).collect();
        let degeneracies = (0..d).map(|n| vec![id.clone(); n + 1]).collect();
        Self::new(ring, vec![rank; d + 1], faces, degeneracies).expect("constant object")
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// The truncation `D`.
    pub fn dim(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn face(&self, n: usize, i: usize) -> &Matrix {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, i: usize) -> &Matrix {
        &self.degeneracies[n][i]
    }

    /// `θ^* : A_n → A_m` for `θ : [m] → [n]`, both at most `D`.
    pub fn action(&self, theta: &OrdinalMap) -> Matrix {
        let (epi, mono) = epi_mono_factorize(theta);
        let mut out = Matrix::identity(self.ranks[theta.source()]);
        // degeneracies first in Δ, so leftmost in the product
        let mut level = epi.source();
        for &i in epi.degeneracy_word().expect("surjective").iter().rev() {
            out = out.mul(self.degeneracy(level - 1, i));
            level -= 1;
        }
        let mut word = mono.face_word().expect("injective");
        word.reverse();
        for i in word {
            out = out.mul(self.face(level + 1, i));
            level += 1;
        }
        out
    }
}

/// A basis of the free part of a lattice `K ⊇ mℤ^r` viewed as a
/// `ℤ/m`-module, or the lattice basis itself over `ℤ`.
fn free_basis(k: &Lattice, r: usize, ring: Ring) -> Result<Matrix> {
    let m = ring.modulus();
    if m.is_zero() {
        return Ok(k.basis());
    }
    let b = k.basis();
    let coords: Vec<Vec<BigInt>> = (0..r)
        .map(|j| {
            let mut e = vec![BigInt::zero(); r];
            e[j] = m.clone();
            k.coordinates(&e).expect("mℤ^r lies in the kernel")
        })
        .collect();
    let s = smith(&Matrix::from_columns(k.rank(), &coords));
    let adapted = b.mul(&s.u_inv);
    let mut keep = Vec::new();
    for (i, d) in s.diagonal.iter().enumerate() {
        if *d == m {
            keep.push(i);
        } else if *d != BigInt::from(1) {
            return Err(Error::Unsupported(format!("a Moore kernel over {ring} has a summand ℤ/{d} and is not free")));
        }
    }
    Ok(adapted.select_columns(keep).reduce(&m))
}

/// The Moore complex `N_n = ⋂_{i ≥ 1} ker d_i` with differential `d_0`,
/// in degrees `[0, D]`. The top edge is open: `N_{D+1}` is not known.
///
/// Over `ℤ/m` the kernels must be free modules, otherwise this fails with
/// `Unsupported`.
pub fn normalized_chains(a: &SimplicialAbGroup) -> Result<ChainComplex> {
    Ok(normalized_chains_with_bases(a)?.0)
}

/// The Moore complex together with the basis of each `N_n` inside `A_n`.
pub(crate) fn normalized_chains_with_bases(a: &SimplicialAbGroup) -> Result<(ChainComplex, Vec<Matrix>)> {
    let m = a.ring.modulus();
    let mut bases = Vec::with_capacity(a.dim() + 1);
    for n in 0..=a.dim() {
        let r = a.rank(n);
        let basis = if n == 0 {
            Matrix::identity(r)
        } else {
            let mut stacked = Matrix::zeros(0, r);
            for i in 1..=n {
                let d = a.face(n, i);
                stacked = stacked.transpose().hstack(&d.transpose()).transpose();
            }
            free_basis(&kernel_mod(&stacked, &m), r, a.ring)?
        };
        bases.push(basis);
    }
    let mut diffs = Vec::with_capacity(a.dim());
    for n in 1..=a.dim() {
        let image = a.face(n, 0).mul(&bases[n]);
        let cols = image
            .columns()
            .iter()
            .map(|v| solve_mod(&bases[n - 1], v, &m).ok_or_else(|| Error::Inconsistent("d_0 leaves the Moore kernel".into())))
            .collect::<Result<Vec<_>>>()?;
        diffs.push(Matrix::from_columns(bases[n - 1].cols(), &cols));
    }
    let ranks = bases.iter().map(Matrix::cols).collect();
    let c = ChainComplex::new(a.ring, 0, ranks, diffs)?.with_open_edges(false, true);
    Ok((c, bases))
}

/// Summands of `Γ(C)_n`: one block `C_k` per surjection `[n] ↠ [k]`.
struct GammaLevel {
    summands: Vec<(OrdinalMap, usize)>,
    index: HashMap<Vec<usize>, usize>,
    rank: usize,
}

fn gamma_level(c: &ChainComplex, n: usize) -> GammaLevel {
    let mut summands = Vec::new();
    let mut index = HashMap::new();
    let mut offset = 0;
    for k in 0..=n {
        let r = c.rank(k as i64);
        for s in delta::surjections(n, k) {
            index.insert(s.values().to_vec(), summands.len());
            summands.push((s, offset));
            offset += r;
        }
    }
    GammaLevel { summands, index, rank: offset }
}

/// `Γ(C)` through level `d`: `Γ(C)_n = ⊕_{[n] ↠ [k]} C_k`. For
/// `θ : [m] → [n]` and a summand `σ`, factor `σθ = μ ε`; the block maps by
/// the identity into `ε` when `μ = id`, by `d_k` into `ε` when `μ = δ^0`,
/// and vanishes otherwise.
pub fn dold_kan_gamma(c: &ChainComplex, d: usize) -> Result<SimplicialAbGroup> {
    if c.degrees().any(|n| n < 0 && c.rank(n) > 0) {
        return arg("Γ needs a complex with no terms in negative degrees");
    }
    let levels: Vec<GammaLevel> = (0..=d).map(|n| gamma_level(c, n)).collect();
    let structure = |theta: &OrdinalMap| {
        let (src, dst) = (&levels[theta.target()], &levels[theta.source()]);
        let mut out = Matrix::zeros(dst.rank, src.rank);
        for (sigma, offset) in &src.summands {
            let k = sigma.target();
            let composite = delta::compose(sigma, theta).expect("composable");
            let (epi, mono) = epi_mono_factorize(&composite);
            let block = if mono.is_identity() {
                Matrix::identity(c.rank(k as i64))
            } else if mono == OrdinalMap::face(k, 0).expect("face") {
                c.differential(k as i64)
            } else {
                continue;
            };
            let target_offset = dst.summands[dst.index[epi.values()]].1;
            for r in 0..block.rows() {
                for col in 0..block.cols() {
                    let x = block.get(r, col);
                    if !x.is_zero() {
                        out.set(target_offset + r, offset + col, x.clone());
                    }
                }
            }
        }
        out
    };
    let faces = (0..=d)
        .map(|n| if n == 0 { Vec::new() } else { (0..=n).map(|i| structure(&OrdinalMap::face(n, i).expect("face"))).collect() })
        .collect();
    let degeneracies = (0..d).map(|n| (0..=n).map(|i| structure(&OrdinalMap::degeneracy(n + 1, i).expect("degeneracy"))).collect()).collect();
    SimplicialAbGroup::new(c.ring(), levels.iter().map(|l| l.rank).collect(), faces, degeneracies)
}

/// Fills the horn `Λ^n_k` in a simplicial module: `faces[i]` is the face
/// opposite `i` (an element of `A_{n-1}`), `faces[k]` must be `None`.
/// Builds `u` one face at a time by `u ← u + s(x_r − d_r u)`, first for
/// `r < k` upwards, then for `r > k` downwards.
pub fn simplicial_group_kan_fill(a: &SimplicialAbGroup, n: usize, k: usize, faces: &[Option<Vec<BigInt>>]) -> Result<Vec<BigInt>> {
    if n == 0 || k > n {
        return arg(format!("Λ^{n}_{k} is not a horn"));
    }
    if n > a.dim() {
        return Err(Error::TruncationTooLow { needed: n, have: a.dim() });
    }
    if faces.len() != n + 1 || faces[k].is_some() || (0..=n).any(|i| i != k && faces[i].is_none()) {
        return arg(format!("Λ^{n}_{k} needs exactly the faces other than {k}"));
    }
    let ring = a.ring;
    let x: Vec<Vec<BigInt>> = faces.iter().map(|f| f.as_ref().map(|v| ring.reduce_vec(v)).unwrap_or_default()).collect();
    for (i, f) in x.iter().enumerate() {
        if i != k && f.len() != a.rank(n - 1) {
            return arg(format!("face {i} must have {} coordinates", a.rank(n - 1)));
        }
    }
    if n >= 2 {
        for j in 0..=n {
            for i in 0..j {
                if i == k || j == k {
                    continue;
                }
                if !ring.vectors_equal(&a.face(n - 1, i).apply(&x[j]), &a.face(n - 1, j - 1).apply(&x[i])) {
                    return arg(format!("horn faces disagree: d_{i} x_{j} ≠ d_{} x_{i}", j - 1));
                }
            }
        }
    }
    let mut u = vec![BigInt::zero(); a.rank(n)];
    let step = |u: &mut Vec<BigInt>, r: usize, s: usize| {
        let gap: Vec<BigInt> = x[r].iter().zip(a.face(n, r).apply(u)).map(|(p, q)| p - q).collect();
        let add = a.degeneracy(n - 1, s).apply(&gap);
        for (y, z) in u.iter_mut().zip(add) {
            *y = ring.reduce(&(&*y + z));
        }
    };
    for r in 0..k {
        step(&mut u, r, r);
    }
    for r in (k + 1..=n).rev() {
        step(&mut u, r, r - 1);
    }
    for (i, xi) in x.iter().enumerate() {
        if i != k && !ring.vectors_equal(&a.face(n, i).apply(&u), xi) {
            return Err(Error::Inconsistent(format!("filler misses face {i}")));
        }
    }
    Ok(u)
}

/// A square matrix is a unit over the ring when its columns and `mℤ^r`
/// span `ℤ^r`.
#[cfg(test)]
pub(crate) fn is_invertible(p: &Matrix, ring: Ring) -> bool {
    if p.rows() != p.cols() {
        return false;
    }
    let full = Lattice::spanned_by(&Matrix::identity(p.rows()));
    let image = crate::linalg::image_mod(p, &ring.modulus());
    crate::linalg::quotient_factors(&full, &image).is_some_and(|f| f.is_empty())
}
