use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::error::{Error, Result};
use crate::nerve_cat::{bg, nerve, random_category, CategoryBuilder, FinCategory, Functor, Monoid};
use crate::quasicat::{classify, homotopy_category, is_kan, HornMode};
use crate::sset::{find_isomorphism, product, standard_object, Cell, SimplicialSet, StandardKind};

fn arc<T>(x: T) -> Arc<T> {
    Arc::new(x)
}

fn iso_pair_plus_arrow() -> FinCategory {
    let mut b = CategoryBuilder::new();
    let (x, y, z) = (b.object("a"), b.object("b"), b.object("c"));
    b.arrow("f", x, y);
    b.arrow("g", y, x);
    b.arrow("h", y, z);
    b.arrow("hf", x, z);
    b.composite("g", "f", "id_a").unwrap();
    b.composite("f", "g", "id_b").unwrap();
    b.composite("h", "f", "hf").unwrap();
    b.composite("hf", "g", "h").unwrap();
    b.build().unwrap()
}

fn simplex(n: usize) -> Arc<SimplicialSet> {
    arc(standard_object(StandardKind::Simplex, n, None).unwrap())
}

fn empty() -> Arc<SimplicialSet> {
    arc(SimplicialSet::empty())
}

/// The groupoid with one arrow between any two elements of `ℤ/m`; its
/// nerve `Eℤ/m` is a simplicial group under pointwise addition.
fn chaotic(m: usize) -> FinCategory {
    let mut b = CategoryBuilder::new();
    for a in 0..m {
        b.object(a.to_string());
    }
    for a in 0..m {
        for c in 0..m {
            if a != c {
                b.arrow(format!("{a}>{c}"), a, c);
            }
        }
    }
    for a in 0..m {
        for c in 0..m {
            for e in 0..m {
                if a != c && c != e {
                    let h = if a == e { format!("id_{a}") } else { format!("{a}>{e}") };
                    b.composite(&format!("{c}>{e}"), &format!("{a}>{c}"), &h).unwrap();
                }
            }
        }
    }
    b.build().unwrap()
}

/// One object with `Map = Eℤ/m` truncated at `t`.
fn translation_category(m: usize, t: usize) -> SimplicialCategory {
    let space = arc(nerve(&arc(chaotic(m)), t).set.as_ref().clone());
    SimplicialCategory::from_vertex_rule(vec!["*".into()], vec![vec![space]], vec![Cell::new(0, 0)], |_, _, _, g, f| {
        Ok(Cell::new(0, (g.index + f.index) % m))
    })
    .unwrap()
}

/// Objects `0`, `1` with `Map(0, 1) = Δ^1`, points as endomorphisms and
/// nothing from `1` to `0`.
fn interval_category() -> SimplicialCategory {
    let maps = vec![vec![simplex(0), simplex(1)], vec![empty(), simplex(0)]];
    SimplicialCategory::from_vertex_rule(vec!["0".into(), "1".into()], maps, vec![Cell::new(0, 0); 2], |x, y, z, g, f| {
        Ok(match (x, y, z) {
            (0, 0, 1) => g,
            (0, 1, 1) => f,
            _ => Cell::new(0, 0),
        })
    })
    .unwrap()
}

#[test]
fn low_dimensional_frak_c() {
    let c1 = frak_c(1).unwrap();
    assert_eq!(c1.num_objects(), 2);
    assert_eq!(c1.map_space(0, 1).cell_counts(), vec![1]);
    assert_eq!(c1.map_space(1, 0).top_dim(), None);
    let c2 = frak_c(2).unwrap();
    let m = c2.map_space(0, 2);
    assert_eq!(m.cell_counts(), vec![2, 1]);
    // the edge runs from h = {0,2} to gf = {0,1,2}
    let e = m.cell_faces(Cell::new(1, 0));
    assert_eq!((m.name(e[1].cell()), m.name(e[0].cell())), ("{0,2}", "{0,1,2}"));
    let g = crate::sset::Simplex::nondegenerate(c2.map_space(1, 2).vertex("{1,2}").unwrap());
    let f = crate::sset::Simplex::nondegenerate(c2.map_space(0, 1).vertex("{0,1}").unwrap());
    assert_eq!(m.describe(&c2.compose(0, 1, 2, &g, &f)), "{0,1,2}");
}

#[test]
fn mapping_spaces_of_frak_c_are_cubes() {
    for n in 2..=4 {
        let c = frak_c(n).unwrap();
        let mut cube = simplex(1);
        for _ in 1..n - 1 {
            cube = product(&cube, &simplex(1)).unwrap().set;
        }
        assert!(find_isomorphism(c.map_space(0, n), &cube).is_some(), "n = {n}");
    }
}

#[test]
fn frak_c_is_a_simplicial_category() {
    for n in 0..=5 {
        let c = frak_c(n).unwrap();
        c.validate().unwrap();
        assert_eq!(c.num_objects(), n + 1);
    }
}

#[test]
fn horn_mapspaces() {
    let (sub, ambient, inc) = horn_mapspace(2, 1).unwrap();
    assert_eq!(sub.cell_counts(), vec![1]);
    assert_eq!(sub.names(0), &["{0,2}".to_string()]);
    assert_eq!(ambient.cell_counts(), vec![2, 1]);
    assert!(inc.is_injective());
    let (sub, ambient, inc) = horn_mapspace(3, 1).unwrap();
    assert_eq!(sub.cell_counts(), vec![4, 3]);
    assert_eq!(ambient.cell_counts(), vec![4, 5, 2]);
    assert!(inc.is_injective());
    let (sub, _, _) = horn_mapspace(4, 2).unwrap();
    // five of the six square faces of the 3-cube
    assert_eq!(sub.cell_counts()[2], 10);
    for (n, i) in [(2, 0), (2, 2), (1, 0), (4, 7)] {
        assert!(matches!(horn_mapspace(n, i), Err(Error::Argument(_))));
    }
}

#[test]
fn coherent_nerve_vertices_are_objects() {
    let c = SimplicialCategory::discrete(&iso_pair_plus_arrow()).unwrap();
    let n = coherent_nerve(&c, 0).unwrap();
    assert_eq!(n.names(0), c.objects());
}

#[test]
fn coherent_nerves_of_discrete_categories_are_nerves() {
    for c in [iso_pair_plus_arrow(), FinCategory::ordinal(2), bg(&Monoid::cyclic(2)), bg(&Monoid::symmetric3())] {
        let c = arc(c);
        let s = SimplicialCategory::discrete(&c).unwrap();
        let hc = coherent_nerve(&s, 3).unwrap();
        hc.validate().unwrap();
        let n = nerve(&c, 3);
        assert_eq!(hc.cell_counts(), n.set.cell_counts());
        assert!(find_isomorphism(&hc, &n.set).is_some());
    }
}

/// Independent count of simplicial functors `𝔠^2 → C`: a pair of vertices
/// `f, g` and an edge of `Map(x, z)` from some vertex to `g ∘ f`.
fn two_simplices_oracle(c: &SimplicialCategory) -> usize {
    let k = c.num_objects();
    let mut count = 0;
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                let (mf, mg, mh) = (c.map_space(x, y), c.map_space(y, z), c.map_space(x, z));
                for f in mf.cells(0) {
                    for g in mg.cells(0) {
                        let gf = c.compose(x, y, z, &mg.degenerate_vertex(g, 0), &mf.degenerate_vertex(f, 0));
                        count += mh.simplices(1).unwrap().iter().filter(|e| mh.face(e, 0) == gf).count();
                    }
                }
            }
        }
    }
    count
}

#[test]
fn coherent_nerve_of_an_interval_category() {
    let c = interval_category();
    let n = coherent_nerve(&c, 2).unwrap();
    assert_eq!(n.count_simplices(2).unwrap(), 8);
    assert_eq!(two_simplices_oracle(&c), 8);
    assert!(matches!(coherent_nerve(&translation_category(2, 1), 3), Err(Error::Argument(_))));
}

#[test]
fn pi0_examples() {
    let p = arc(pi0_category(&frak_c(2).unwrap()).unwrap());
    assert!(Functor::find_isomorphism(&p, &arc(FinCategory::ordinal(2))).is_some());
    let c = arc(iso_pair_plus_arrow());
    let p = arc(pi0_category(&SimplicialCategory::discrete(&c).unwrap()).unwrap());
    assert!(Functor::find_isomorphism(&p, &c).is_some());
    // Map = Δ^1 ⊔ Δ^0 with the interval multiplied by min
    let space = arc(SimplicialSet::coproduct(&simplex(1), &simplex(0)));
    let unit = space.vertex("1:0").unwrap();
    let c = SimplicialCategory::from_vertex_rule(vec!["*".into()], vec![vec![space.clone()]], vec![unit], |_, _, _, g, f| {
        Ok(if g == unit {
            f
        } else if f == unit {
            g
        } else {
            space.vertex("0:0").map(|low| if g == low || f == low { low } else { g })?
        })
    })
    .unwrap();
    let p = pi0_category(&c).unwrap();
    assert_eq!(p.num_arrows(), 2);
    let u = (0..2).find(|&a| !p.is_identity(a)).unwrap();
    assert_eq!(p.compose(u, u), Some(u));
}

#[test]
fn pi0_of_a_connected_mapping_space() -> Result<()> {
    let p = pi0_category(&translation_category(3, 2))?;
    assert_eq!(p.num_arrows(), 1);
    Ok(())
}

#[test]
fn coherent_nerves_with_kan_mapping_spaces_are_quasicategories() {
    for c in [translation_category(2, 3), translation_category(3, 2)] {
        let t = c.checked_dim();
        assert!(is_kan(c.map_space(0, 0), t).unwrap());
        let n = coherent_nerve(&c, 3).unwrap();
        assert!(classify(&n, 3, HornMode::Inner).unwrap().all_fillable());
        let ho = arc(homotopy_category(&n).unwrap().category.as_ref().clone());
        let p = arc(pi0_category(&c).unwrap());
        assert!(Functor::find_isomorphism(&ho, &p).is_some());
    }
}

#[test]
fn non_kan_mapping_spaces_can_fail() {
    let n = coherent_nerve(&interval_category(), 3).unwrap();
    let report = classify(&n, 3, HornMode::Inner).unwrap();
    assert_eq!(report.count(2, 1).unwrap().unfillable, 0);
    assert_eq!(report.count(3, 1).unwrap().unfillable, 2);
    assert!(report.witness.unwrap().reproduces(&n).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn discrete_coherent_nerves(seed in any::<u64>()) {
        let c = arc(random_category(seed, 3, 6));
        let s = SimplicialCategory::discrete(&c).unwrap();
        let hc = coherent_nerve(&s, 3).unwrap();
        prop_assert!(classify(&hc, 3, HornMode::Inner).unwrap().all_fillable());
        let n = nerve(&c, 3);
        prop_assert_eq!(hc.cell_counts(), n.set.cell_counts());
        prop_assert_eq!(two_simplices_oracle(&s), n.set.count_simplices(2).unwrap());
        let ho = arc(homotopy_category(&hc).unwrap().category.as_ref().clone());
        let p = arc(pi0_category(&s).unwrap());
        prop_assert!(Functor::find_isomorphism(&ho, &p).is_some());
    }
}

#[test]
fn simplicial_category_documents_round_trip() {
    for c in [interval_category(), translation_category(3, 2), frak_c(2).unwrap()] {
        let doc = SimplicialCategoryDoc::from_category(&c);
        let back = SimplicialCategoryDoc::from_json(&doc.to_json()).unwrap().to_category().unwrap();
        assert_eq!(SimplicialCategoryDoc::from_category(&back), doc);
        let (n, m) = (coherent_nerve(&c, 2).unwrap(), coherent_nerve(&back, 2).unwrap());
        assert!(find_isomorphism(&n, &m).is_some());
    }
}

#[test]
fn simplicial_category_documents_need_composites() {
    let mut doc = SimplicialCategoryDoc::from_category(&interval_category());
    doc.compose.pop();
    assert!(matches!(doc.to_category(), Err(Error::Format(_))));
}
