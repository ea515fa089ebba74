//! Exact integer matrices: Smith and Hermite normal forms, kernels,
//! solving and lattice quotients. Modular problems are lifted to lattices
//! in `ℤ^r` containing `mℤ^r`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, BigInt::one())
    }

    pub fn scalar(n: usize, c: BigInt) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    /// Row-major entries; panics on a length mismatch.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Self { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        Self::from_vec(rows, cols, data.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column has the wrong length");
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: BigInt) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "vector has the wrong length");
        (0..self.rows).map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shapes differ");
        Self::from_vec(self.rows, self.cols, self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        Self::from_vec(self.rows, self.cols, self.data.iter().map(|a| -a).collect())
    }

    /// Entries reduced into `[0, m)`; the identity for `m = 0`.
    pub fn reduce(&self, m: &BigInt) -> Matrix {
        if m.is_zero() {
            return self.clone();
        }
        Self::from_vec(self.rows, self.cols, self.data.iter().map(|a| a.mod_floor(m)).collect())
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row counts differ");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        assert!(a.rows == b.rows && c.rows == d.rows && a.cols == c.cols && b.cols == d.cols, "block shapes differ");
        let mut out = Self::zeros(a.rows + c.rows, a.cols + b.cols);
        for (m, r0, c0) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for r in 0..m.rows {
                for col in 0..m.cols {
                    out.set(r0 + r, c0 + col, m.get(r, col).clone());
                }
            }
        }
        out
    }

    pub fn select_columns(&self, cols: impl IntoIterator<Item = usize>) -> Matrix {
        let cs: Vec<Vec<BigInt>> = cols.into_iter().map(|c| self.column(c)).collect();
        Self::from_columns(self.rows, &cs)
    }

    pub fn select_rows(&self, rows: impl IntoIterator<Item = usize>) -> Matrix {
        let rs: Vec<usize> = rows.into_iter().collect();
        let mut data = Vec::with_capacity(rs.len() * self.cols);
        for &r in &rs {
            data.extend_from_slice(self.row(r));
        }
        Self::from_vec(rs.len(), self.cols, data)
    }

    /// Entries as `i64` rows when they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|x| x.to_i64()).collect()).collect()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    /// `row_i += c · row_j`.
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.cols {
            let x = &self.data[j * self.cols + k] * c;
            self.data[i * self.cols + k] += x;
        }
    }

    /// `col_i += c · col_j`.
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        for r in 0..self.rows {
            let x = &self.data[r * self.cols + j] * c;
            self.data[r * self.cols + i] += x;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let x = -&self.data[i * self.cols + k];
            self.data[i * self.cols + k] = x;
        }
    }

    fn negate_col(&mut self, i: usize) {
        for r in 0..self.rows {
            let x = -&self.data[r * self.cols + i];
            self.data[r * self.cols + i] = x;
        }
    }
}

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | … | d_rank`, all positive.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diagonal: Vec<BigInt>,
    pub u: Matrix,
    pub u_inv: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

struct SmithState {
    a: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
    v_inv: Matrix,
}

impl SmithState {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        self.a.add_row(i, j, c);
        self.u.add_row(i, j, c);
        self.u_inv.add_col(j, i, &-c);
    }

    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        self.a.add_col(i, j, c);
        self.v.add_col(i, j, c);
        self.v_inv.add_row(j, i, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest nonzero entry of the lower-right block from `t`.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for r in t..self.a.rows {
            for c in t..self.a.cols {
                let x = self.a.get(r, c).abs();
                if !x.is_zero() && best.as_ref().is_none_or(|b| x < b.2) {
                    best = Some((r, c, x));
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }
}

pub fn smith(a: &Matrix) -> Smith {
    let mut s = SmithState {
        a: a.clone(),
        u: Matrix::identity(a.rows),
        u_inv: Matrix::identity(a.rows),
        v: Matrix::identity(a.cols),
        v_inv: Matrix::identity(a.cols),
    };
    let mut diagonal = Vec::new();
    let mut t = 0;
    while let Some((r, c)) = s.pivot(t) {
        s.swap_rows(t, r);
        s.swap_cols(t, c);
        loop {
            let p = s.a.get(t, t).clone();
            let mut dirty = false;
            for r in t + 1..s.a.rows {
                let q = s.a.get(r, t).div_floor(&p);
                if !q.is_zero() {
                    s.add_row(r, t, &-q);
                }
                dirty |= !s.a.get(r, t).is_zero();
            }
            for c in t + 1..s.a.cols {
                let q = s.a.get(t, c).div_floor(&p);
                if !q.is_zero() {
                    s.add_col(c, t, &-q);
                }
                dirty |= !s.a.get(t, c).is_zero();
            }
            if dirty {
                // a remainder smaller than the pivot: move it into place
                let (r, c) = (t..s.a.rows)
                    .flat_map(|r| (t..s.a.cols).map(move |c| (r, c)))
                    .filter(|&(r, c)| (r == t || c == t) && !s.a.get(r, c).is_zero())
                    .min_by_key(|&(r, c)| s.a.get(r, c).abs())
                    .expect("nonzero remainder");
                s.swap_rows(t, r);
                s.swap_cols(t, c);
                continue;
            }
            let bad = (t + 1..s.a.rows).find(|&r| (t + 1..s.a.cols).any(|c| !s.a.get(r, c).is_multiple_of(&p)));
            match bad {
                Some(r) => s.add_row(t, r, &BigInt::one()),
                None => break,
            }
        }
        if s.a.get(t, t).is_negative() {
            s.negate_row(t);
        }
        diagonal.push(s.a.get(t, t).clone());
        t += 1;
    }
    Smith { diagonal, u: s.u, u_inv: s.u_inv, v: s.v, v_inv: s.v_inv }
}

/// Row-style Hermite normal form of the lattice spanned by the rows:
/// nonzero rows only, pivots positive and strictly right-moving, entries
/// above a pivot reduced into `[0, pivot)`.
pub fn hermite(a: &Matrix) -> Matrix {
    let mut m = a.clone();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        loop {
            let best = (r..m.rows).filter(|&i| !m.get(i, c).is_zero()).min_by_key(|&i| m.get(i, c).abs());
            let Some(i) = best else { break };
            m.swap_rows(r, i);
            let p = m.get(r, c).clone();
            let mut done = true;
            for i in r + 1..m.rows {
                let q = m.get(i, c).div_floor(&p);
                if !q.is_zero() {
                    m.add_row(i, r, &-q);
                }
                done &= m.get(i, c).is_zero();
            }
            if done {
                break;
            }
        }
        if r < m.rows && !m.get(r, c).is_zero() {
            if m.get(r, c).is_negative() {
                m.negate_row(r);
            }
            let p = m.get(r, c).clone();
            for i in 0..r {
                let q = m.get(i, c).div_floor(&p);
                if !q.is_zero() {
                    m.add_row(i, r, &-q);
                }
            }
            r += 1;
        }
    }
    m.select_rows(0..r)
}

/// A sublattice of `ℤ^n`, stored as a Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Lattice {
    /// The lattice spanned by the columns of `generators`.
    pub fn spanned_by(generators: &Matrix) -> Self {
        let basis = hermite(&generators.transpose());
        let pivots = (0..basis.rows).map(|r| (0..basis.cols).find(|&c| !basis.get(r, c).is_zero()).expect("nonzero row")).collect();
        Self { dim: generators.rows, basis, pivots }
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    /// Basis vectors as columns.
    pub fn basis(&self) -> Matrix {
        if self.basis.rows == 0 {
            return Matrix::zeros(self.dim, 0);
        }
        self.basis.transpose()
    }

    /// Coordinates in the Hermite basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut w = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (r, &c) in self.pivots.iter().enumerate() {
            let p = self.basis.get(r, c);
            if !w[c].is_multiple_of(p) {
                return None;
            }
            let q = &w[c] / p;
            for (k, x) in w.iter_mut().enumerate() {
                *x -= &q * self.basis.get(r, k);
            }
            coords.push(q);
        }
        w.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }
}

/// A basis (as columns) of `{x : A x = 0}` over `ℤ`.
pub fn kernel(a: &Matrix) -> Matrix {
    let s = smith(a);
    s.v.select_columns(s.rank()..a.cols)
}

/// Some integer `x` with `A x = b`.
pub fn solve(a: &Matrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let s = smith(a);
    let ub = s.u.apply(b);
    let mut z = vec![BigInt::zero(); a.cols];
    for (i, d) in s.diagonal.iter().enumerate() {
        if !ub[i].is_multiple_of(d) {
            return None;
        }
        z[i] = &ub[i] / d;
    }
    if ub[s.rank()..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(s.v.apply(&z))
}

/// `{x ∈ ℤ^c : A x ∈ mℤ^r}`, the lift of the kernel over `ℤ/m`, as a
/// lattice in `ℤ^c`. Plain kernel for `m = 0`.
pub fn kernel_mod(a: &Matrix, m: &BigInt) -> Lattice {
    if m.is_zero() {
        return Lattice::spanned_by(&kernel(a));
    }
    let wide = a.hstack(&Matrix::scalar(a.rows, -m));
    let k = kernel(&wide);
    Lattice::spanned_by(&k.select_rows(0..a.cols))
}

/// `im A + mℤ^r`.
pub fn image_mod(a: &Matrix, m: &BigInt) -> Lattice {
    if m.is_zero() {
        return Lattice::spanned_by(a);
    }
    Lattice::spanned_by(&a.hstack(&Matrix::scalar(a.rows, m.clone())))
}

/// Invariant factors of `K / L` for lattices `L ⊆ K`: the nontrivial
/// torsion factors in divisibility order, then one `0` per free summand.
/// `None` when `L ⊄ K`.
pub fn quotient_factors(k: &Lattice, l: &Lattice) -> Option<Vec<BigInt>> {
    let lb = l.basis();
    let coords: Option<Vec<Vec<BigInt>>> = lb.columns().iter().map(|v| k.coordinates(v)).collect();
    let c = Matrix::from_columns(k.rank(), &coords?);
    let s = smith(&c);
    let mut out: Vec<BigInt> = s.diagonal.iter().filter(|d| !d.is_one()).cloned().collect();
    out.extend(std::iter::repeat_n(BigInt::zero(), k.rank() - s.rank()));
    Some(out)
}

/// Some `x` with `A x ≡ b (mod m)`; exact solving for `m = 0`.
pub fn solve_mod(a: &Matrix, b: &[BigInt], m: &BigInt) -> Option<Vec<BigInt>> {
    if m.is_zero() {
        return solve(a, b);
    }
    let wide = a.hstack(&Matrix::scalar(a.rows, m.clone()));
    solve(&wide, b).map(|x| x[..a.cols].iter().map(|v| v.mod_floor(m)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..7, r * c).prop_map(move |d| Matrix::from_i64(r, c, &d))
        })
    }

    fn det(m: &Matrix) -> BigInt {
        // cofactor expansion, fine for the sizes used here
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        (0..n)
            .map(|j| {
                let minor = m.select_rows(1..n).select_columns((0..n).filter(|&c| c != j));
                let term = m.get(0, j) * det(&minor);
                if j % 2 == 0 { term } else { -term }
            })
            .sum()
    }

    #[test]
    fn smith_of_a_classic_example() {
        let a = Matrix::from_i64(3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]);
        let s = smith(&a);
        assert_eq!(s.diagonal, big(&[2, 6, 12]));
    }

    #[test]
    fn hermite_and_membership() {
        let g = Matrix::from_i64(2, 2, &[2, 0, 0, 3]);
        let l = Lattice::spanned_by(&g);
        assert!(l.contains(&big(&[4, 9])));
        assert!(!l.contains(&big(&[1, 3])));
        let h = hermite(&Matrix::from_i64(2, 2, &[4, 6, 2, 2]));
        assert_eq!(h, Matrix::from_i64(2, 2, &[2, 0, 0, 2]));
    }

    #[test]
    fn modular_kernel_of_doubling_on_z4() {
        let a = Matrix::from_i64(1, 1, &[2]);
        let m = BigInt::from(4);
        let k = kernel_mod(&a, &m);
        let l = image_mod(&a, &m);
        assert_eq!(quotient_factors(&k, &l), Some(vec![]));
        assert_eq!(quotient_factors(&k, &image_mod(&Matrix::zeros(1, 0), &m)), Some(big(&[2])));
    }

    proptest! {
        #[test]
        fn smith_decomposes(a in small_matrix()) {
            let s = smith(&a);
            let d = s.u.mul(&a).mul(&s.v);
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    let want = if r == c && r < s.rank() { s.diagonal[r].clone() } else { BigInt::zero() };
                    prop_assert_eq!(d.get(r, c), &want);
                }
            }
            for w in s.diagonal.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            prop_assert!(s.diagonal.iter().all(|x| x.is_positive()));
            prop_assert_eq!(s.u.mul(&s.u_inv), Matrix::identity(a.rows()));
            prop_assert_eq!(s.v.mul(&s.v_inv), Matrix::identity(a.cols()));
            prop_assert_eq!(det(&s.u).abs(), BigInt::one());
        }

        #[test]
        fn kernel_and_solve(a in small_matrix(), x in proptest::collection::vec(-5i64..6, 5)) {
            let k = kernel(&a);
            prop_assert!(a.mul(&k).is_zero());
            let x = big(&x[..a.cols()]);
            let b = a.apply(&x);
            let y = solve(&a, &b).expect("b is in the image");
            prop_assert_eq!(a.apply(&y), b);
            let l = Lattice::spanned_by(&a);
            prop_assert!(l.contains(&a.apply(&x)));
        }

        #[test]
        fn hermite_spans_the_same_lattice(a in small_matrix()) {
            let l = Lattice::spanned_by(&a);
            for c in a.columns() {
                prop_assert!(l.contains(&c));
            }
            let b = l.basis();
            let back = Lattice::spanned_by(&a);
            for c in b.columns() {
                prop_assert!(solve(&a, &c).is_some());
            }
            prop_assert_eq!(back.rank(), smith(&a).rank());
        }
    }
}
