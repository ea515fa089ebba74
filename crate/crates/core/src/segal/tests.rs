use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::delta::all_maps;
use crate::nerve_cat::{bg, nerve, random_category, Arrow, FinCategory, Monoid, RelativeCategory};
use crate::sset::{find_isomorphism, standard_object, StandardKind};

fn arc<T>(x: T) -> Arc<T> {
    Arc::new(x)
}

fn standard(kind: StandardKind, n: usize, k: Option<usize>) -> Arc<SimplicialSet> {
    arc(standard_object(kind, n, k).unwrap())
}

fn discrete_nerve(c: &FinCategory, bound: (usize, usize)) -> BisimplicialSet {
    let n = nerve(&arc(c.clone()), bound.0);
    BisimplicialSet::embed(EmbedKind::Discrete, &n.set, bound).unwrap()
}

fn poset_category() -> FinCategory {
    let names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    // a ≤ b ≤ d, a ≤ c ≤ d
    FinCategory::poset(&names, |x, y| x == y || x == 0 || y == 3).unwrap()
}

/// A random set of arrows closed under composition.
fn random_weak(c: &FinCategory, seed: u64) -> BTreeSet<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weak: BTreeSet<usize> = (0..c.num_arrows()).filter(|_| rng.gen_bool(0.4)).collect();
    weak.extend((0..c.num_objects()).map(|x| c.identity(x)));
    loop {
        let more: Vec<usize> = weak
            .iter()
            .flat_map(|&g| weak.iter().filter_map(move |&f| c.compose(g, f)))
            .filter(|h| !weak.contains(h))
            .collect();
        if more.is_empty() {
            return weak;
        }
        weak.extend(more);
    }
}

/// `Fun([n], C)` with natural transformations whose components lie in `weak`,
/// built directly from chains and commuting squares.
fn functor_category(c: &FinCategory, weak: &BTreeSet<usize>, n: usize) -> FinCategory {
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut starts = Vec::new();
    for x in 0..c.num_objects() {
        let mut stack = vec![vec![]];
        while let Some(chain) = stack.pop() {
            if chain.len() == n {
                starts.push(x);
                chains.push(chain);
                continue;
            }
            let end = chain.last().map_or(x, |&a: &usize| c.target(a));
            for a in (0..c.num_arrows()).filter(|&a| c.source(a) == end) {
                let mut longer = chain.clone();
                longer.push(a);
                stack.push(longer);
            }
        }
    }
    let object = |k: usize, i: usize| if i == 0 { starts[k] } else { c.target(chains[k][i - 1]) };
    let mut arrows = Vec::new();
    let mut components: Vec<Vec<usize>> = Vec::new();
    for s in 0..chains.len() {
        for t in 0..chains.len() {
            let mut partial: Vec<Vec<usize>> = vec![vec![]];
            for i in 0..=n {
                partial = partial
                    .into_iter()
                    .flat_map(|ws| {
                        weak.iter()
                            .copied()
                            .filter(|&w| c.source(w) == object(s, i) && c.target(w) == object(t, i))
                            .filter(|&w| i == 0 || c.compose(w, chains[s][i - 1]) == c.compose(chains[t][i - 1], ws[i - 1]))
                            .map(|w| {
                                let mut ws = ws.clone();
                                ws.push(w);
                                ws
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect();
            }
            for ws in partial {
                arrows.push(Arrow { name: format!("{s}=>{t}:{ws:?}"), source: s, target: t });
                components.push(ws);
            }
        }
    }
    let identities = (0..chains.len())
        .map(|k| components.iter().enumerate().position(|(a, ws)| arrows[a].source == k && arrows[a].target == k && ws.iter().enumerate().all(|(i, &w)| w == c.identity(object(k, i)))).unwrap())
        .collect();
    let names = (0..chains.len()).map(|k| format!("o{k}")).collect();
    FinCategory::from_parts(names, arrows.clone(), identities, |g, f| {
        let ws: Vec<usize> = (0..=n).map(|i| c.compose(components[g][i], components[f][i]).unwrap()).collect();
        (0..arrows.len()).find(|&a| arrows[a].source == arrows[f].source && arrows[a].target == arrows[g].target && components[a] == ws)
    })
    .unwrap()
}

#[test]
fn discrete_rows_are_constant() {
    let x = BisimplicialSet::embed(EmbedKind::Discrete, &standard(StandardKind::Simplex, 1, None), (2, 2)).unwrap();
    for q in 0..=2 {
        assert_eq!(x.count(1, q), all_maps(1, 1).len());
        assert_eq!(x.count(2, q), all_maps(2, 1).len());
    }
}

#[test]
fn constant_rows_repeat_the_set() {
    let x = BisimplicialSet::embed(EmbedKind::Constant, &standard(StandardKind::Simplex, 1, None), (2, 2)).unwrap();
    for p in 0..=2 {
        let row = arc(x.row(p).unwrap());
        assert!(find_isomorphism(&row, &arc(standard_object(StandardKind::Simplex, 1, None).unwrap().with_truncation(crate::sset::Truncation::At(2)))).is_some());
        for q in 0..=2 {
            assert_eq!(x.count(p, q), all_maps(q, 1).len());
        }
    }
}

#[test]
fn representables_count_pairs_of_maps() {
    for (m, n) in [(0, 0), (1, 0), (2, 0), (1, 1), (2, 1)] {
        let x = BisimplicialSet::representable(m, n, (2, 2)).unwrap();
        for p in 0..=2 {
            for q in 0..=2 {
                assert_eq!(x.count(p, q), all_maps(p, m).len() * all_maps(q, n).len(), "Δ^{{{m},{n}}} at ({p},{q})");
            }
        }
    }
}

#[test]
fn representables_are_strictly_segal() {
    // Hom([2], [m]) is in bijection with composable pairs in Hom([1], [m])
    for m in 0..=3 {
        let x = BisimplicialSet::representable(m, 0, (3, 1)).unwrap();
        assert!(strict_segal_check(&x).unwrap().holds, "Δ^{{{m},0}}");
    }
}

#[test]
fn discrete_triangle_boundary_is_not_segal() {
    for (kind, k) in [(StandardKind::Boundary, None), (StandardKind::Horn, Some(1))] {
        let x = BisimplicialSet::embed(EmbedKind::Discrete, &standard(kind, 2, k), (2, 1)).unwrap();
        let r = strict_segal_check(&x).unwrap();
        let f = r.failure.expect("fails");
        assert_eq!((f.p, f.q), (2, 0));
        // nondegenerate chain (01, 12) has no filler
        assert_eq!(f.chains, f.cells as u128 + 1);
        assert!(f.injective);
    }
}

#[test]
fn segal_check_needs_two_columns() {
    let x = BisimplicialSet::representable(1, 1, (1, 2)).unwrap();
    assert!(matches!(strict_segal_check(&x), Err(Error::Argument(_))));
}

#[test]
fn constant_embeddings_are_segal() {
    let x = BisimplicialSet::embed(EmbedKind::Constant, &standard(StandardKind::Horn, 2, Some(0)), (3, 2)).unwrap();
    assert!(strict_segal_check(&x).unwrap().holds);
}

#[test]
fn point_has_a_point_everywhere() {
    let x = rezk_nerve(&RelativeCategory::minimal(arc(FinCategory::terminal())), 2, 2).unwrap();
    assert!(x.counts().iter().flatten().all(|&k| k == 1));
}

#[test]
fn delooping_row_zero_is_its_nerve() {
    let g = arc(bg(&Monoid::cyclic(3)));
    let x = rezk_nerve(&RelativeCategory::maximal(g.clone()), 2, 2).unwrap();
    let row = arc(x.row(0).unwrap());
    assert!(find_isomorphism(&row, &nerve(&g, 2).set).is_some());
    assert_eq!(x.count(0, 2), 9);
}

#[test]
fn rezk_nerve_without_isomorphisms_is_discrete() {
    let c = poset_category();
    let x = rezk_nerve(&RelativeCategory::isomorphisms(arc(c.clone())), 2, 2).unwrap();
    let d = discrete_nerve(&c, (2, 2));
    assert_eq!(x.counts(), d.counts());
    for p in 0..=2 {
        for q in 0..2 {
            let image: BTreeSet<usize> = (0..x.count(p, q)).map(|c| x.degeneracy(Direction::Vertical, p, q, 0, c)).collect();
            assert_eq!(image.len(), x.count(p, q + 1));
        }
    }
}

#[test]
fn rows_are_nerves_of_functor_categories() {
    for seed in 0..6 {
        let c = random_category(seed, 3, 5);
        let weak = random_weak(&c, seed);
        let r = RelativeCategory::new(arc(c.clone()), weak.clone()).unwrap();
        let x = rezk_nerve(&r, 2, 2).unwrap();
        for n in 0..=2 {
            let fun = arc(functor_category(&c, &weak, n));
            let row = arc(x.row(n).unwrap());
            assert!(find_isomorphism(&row, &nerve(&fun, 2).set).is_some(), "seed {seed}, row {n}");
        }
    }
}

#[test]
fn rezk_nerve_needs_closed_weak_arrows() {
    // a → b → c with both generators weak but not their composite
    let c = FinCategory::ordinal(2);
    let weak = ["0->1", "1->2"].iter().map(|n| c.arrow_by_name(n).unwrap()).collect();
    let r = RelativeCategory::new(arc(c), weak).unwrap();
    assert!(matches!(rezk_nerve(&r, 2, 2), Err(Error::Argument(_))));
}

#[test]
fn delooping_is_not_complete() {
    let x = discrete_nerve(&bg(&Monoid::cyclic(2)), (2, 2));
    let r = completeness_check(&x).unwrap();
    assert!(!r.complete);
    assert_eq!(r.invertible_classes, 2);
    assert_eq!(r.equivalence_cells, vec![2, 2, 2]);
    assert_eq!(r.not_reached.len(), 1);
}

#[test]
fn posets_are_complete() {
    let r = completeness_check(&discrete_nerve(&poset_category(), (2, 2))).unwrap();
    assert!(r.complete, "{r:?}");
    assert_eq!(r.invertible_classes, 4);
}

#[test]
fn classification_diagrams_of_categories_are_complete() {
    for c in [bg(&Monoid::cyclic(2)), bg(&Monoid::cyclic(3)), poset_category()] {
        let x = rezk_nerve(&RelativeCategory::isomorphisms(arc(c)), 2, 2).unwrap();
        let r = completeness_check(&x).unwrap();
        assert!(r.complete, "{r:?}");
    }
}

#[test]
fn non_groupoid_rows_are_not_decidable() {
    let x = BisimplicialSet::embed(EmbedKind::Constant, &standard(StandardKind::Simplex, 1, None), (2, 2)).unwrap();
    assert!(matches!(completeness_check(&x), Err(Error::NotDecidable(_))));
    let y = BisimplicialSet::embed(EmbedKind::Discrete, &standard(StandardKind::Boundary, 2, None), (2, 2)).unwrap();
    assert!(matches!(completeness_check(&y), Err(Error::NotDecidable(_))));
    let z = discrete_nerve(&poset_category(), (2, 1));
    assert!(matches!(completeness_check(&z), Err(Error::NotDecidable(_))));
}

fn shuffled(x: &BisimplicialSet, seed: u64) -> BisimplicialSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (m, n) = x.bound();
    let perm: Vec<Vec<Vec<usize>>> = (0..=m)
        .map(|p| {
            (0..=n)
                .map(|q| {
                    let mut v: Vec<usize> = (0..x.count(p, q)).collect();
                    v.shuffle(&mut rng);
                    v
                })
                .collect()
        })
        .collect();
    x.permuted(&perm).unwrap().renamed(|p, q, s| format!("{p}{q}:{s}")).unwrap()
}

#[test]
fn completeness_ignores_cell_order() {
    for (i, x) in [
        discrete_nerve(&bg(&Monoid::cyclic(2)), (2, 2)),
        discrete_nerve(&poset_category(), (2, 2)),
        rezk_nerve(&RelativeCategory::isomorphisms(arc(bg(&Monoid::cyclic(3)))), 2, 2).unwrap(),
    ]
    .iter()
    .enumerate()
    {
        let base = completeness_check(x).unwrap();
        for seed in 0..4 {
            let r = completeness_check(&shuffled(x, seed)).unwrap();
            assert_eq!(
                (r.complete, r.homotopy_classes, r.invertible_classes, &r.equivalence_cells, r.not_reached.len()),
                (base.complete, base.homotopy_classes, base.invertible_classes, &base.equivalence_cells, base.not_reached.len()),
                "case {i}, seed {seed}"
            );
        }
    }
}

#[test]
fn documents_round_trip() {
    let x = rezk_nerve(&RelativeCategory::maximal(arc(FinCategory::ordinal(1))), 2, 1).unwrap();
    let back = BisimplicialSet::from_json(&x.to_json()).unwrap();
    assert_eq!(back, x);
}

#[test]
fn tampered_tables_are_rejected() {
    let x = BisimplicialSet::representable(1, 1, (2, 2)).unwrap();
    let mut doc = BisimplicialDoc::from_set(&x);
    // send the first vertical face of a (1,1)-cell to the wrong cell
    let t = &mut doc.vertical_faces[1][1][0];
    let wrong = doc.cells[1][0].iter().find(|c| **c != t[0]).unwrap().clone();
    t[0] = wrong;
    assert!(matches!(doc.to_set(), Err(Error::Inconsistent(_))));
    let mut doc = BisimplicialDoc::from_set(&x);
    doc.cells[0][0][0] = "nowhere".into();
    assert!(matches!(doc.to_set(), Err(Error::Format(_))));
}

#[test]
fn dot_shows_points_and_edges() {
    let dot = discrete_nerve(&FinCategory::ordinal(1), (2, 2)).to_dot();
    assert!(dot.contains("\"0\" -> \"1\""));
    assert!(!dot.contains("style=dashed"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classification_diagrams_are_segal(seed in any::<u64>()) {
        let c = random_category(seed, 3, 5);
        let r = RelativeCategory::new(arc(c.clone()), random_weak(&c, seed)).unwrap();
        let x = rezk_nerve(&r, 2, 2).unwrap();
        prop_assert!(strict_segal_check(&x).unwrap().holds);
        prop_assert!(strict_segal_check(&discrete_nerve(&c, (3, 1))).unwrap().holds);
    }

    #[test]
    fn classification_diagrams_of_isomorphisms_are_complete(seed in any::<u64>()) {
        let c = arc(random_category(seed, 3, 5));
        let x = rezk_nerve(&RelativeCategory::isomorphisms(c), 2, 2).unwrap();
        let r = completeness_check(&x).unwrap();
        prop_assert!(r.complete, "{:?}", r);
    }
}
