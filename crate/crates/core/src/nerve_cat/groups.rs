use std::sync::Arc;

use super::category::{Arrow, FinCategory};
use super::functor::Functor;
use crate::error::{arg, Result};

/// A finite monoid as a multiplication table: `table[a][b] = a·b`, read as
/// "first `b`, then `a`" when the monoid acts as a one-object category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monoid {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl Monoid {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return arg("multiplication table must be a square table over the elements");
        }
        let m = Self { names, table };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c)) {
                        return arg(format!("table is not associative at ({}, {}, {})", m.names[a], m.names[b], m.names[c]));
                    }
                }
            }
        }
        if m.unit().is_none() {
            return arg("table has no unit");
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn unit(&self) -> Option<usize> {
        let n = self.order();
        (0..n).find(|&e| (0..n).all(|a| self.table[e][a] == a && self.table[a][e] == a))
    }

    pub fn is_group(&self) -> bool {
        let e = self.unit().expect("validated");
        (0..self.order()).all(|a| (0..self.order()).any(|b| self.mul(a, b) == e && self.mul(b, a) == e))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// ℤ/n with elements named `0 … n-1`.
    pub fn cyclic(n: usize) -> Monoid {
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(names, table).expect("cyclic group")
    }

    pub fn trivial() -> Monoid {
        Self::cyclic(1)
    }

    /// The symmetric group on three letters; elements are named by their
    /// images of `0 1 2`, e.g. `102` for the transposition of 0 and 1.
    pub fn symmetric3() -> Monoid {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let names = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        Self::new(names, table).expect("symmetric group")
    }

    /// Whether `map` is a monoid homomorphism `self → other`.
    pub fn is_homomorphism(&self, other: &Monoid, map: &[usize]) -> bool {
        map.len() == self.order()
            && map.iter().all(|&v| v < other.order())
            && map[self.unit().expect("unit")] == other.unit().expect("unit")
            && (0..self.order()).all(|a| (0..self.order()).all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])))
    }
}

/// The one-object category of a monoid; the object is named `*` and each
/// arrow carries its element's name.
pub fn bg(m: &Monoid) -> FinCategory {
    let arrows = m
        .names
        .iter()
        .map(|n| Arrow { name: n.clone(), source: 0, target: 0 })
        .collect();
    let e = m.unit().expect("validated monoid");
    FinCategory::from_parts(vec!["*".into()], arrows, vec![e], |g, f| Some(m.mul(g, f))).expect("monoid table")
}

/// `B(φ) : BG → BH` for a homomorphism `φ`.
pub fn bg_functor(g: &Monoid, h: &Monoid, map: &[usize]) -> Result<Functor> {
    if !g.is_homomorphism(h, map) {
        return arg("map is not a homomorphism");
    }
    Functor::new(Arc::new(bg(g)), Arc::new(bg(h)), vec![0], map.to_vec())
}

impl FinCategory {
    /// The maximal subgroupoid: same objects, exactly the invertible arrows.
    pub fn max_subgroupoid(self: &Arc<Self>) -> (Arc<FinCategory>, Functor) {
        let keep = (0..self.num_arrows()).filter(|&a| self.is_invertible(a)).collect();
        self.subcategory(&keep).expect("invertible arrows compose")
    }
}
