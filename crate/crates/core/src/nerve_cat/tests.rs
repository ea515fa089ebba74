use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::sset::{lift_extensions, SimplicialMap, SimplicialSet, UNLIMITED};

fn arc(c: FinCategory) -> Arc<FinCategory> {
    Arc::new(c)
}

/// Objects `a`, `b`, inverse arrows `f : a → b`, `g : b → a`, and a
/// non-invertible `h : b → c`.
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

/// Every simplicial map `X → Y` between truncated sets.
fn all_maps(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Vec<SimplicialMap> {
    let empty = Arc::new(SimplicialSet::empty());
    let i = SimplicialMap::new(empty.clone(), x.clone(), vec![]).unwrap();
    let f = SimplicialMap::new(empty, y.clone(), vec![]).unwrap();
    lift_extensions(&i, &f, UNLIMITED).unwrap()
}

#[test]
fn nerve_of_ordinal() {
    let n = nerve(&arc(FinCategory::ordinal(2)), 3);
    assert_eq!(n.set.cell_counts(), vec![3, 3, 1, 0]);
    n.set.validate().unwrap();
    assert_eq!(n.set.count_simplices(2).unwrap(), 10);
}

#[test]
fn nerve_of_discrete() {
    let c = FinCategory::discrete(&["x".into(), "y".into()]);
    assert_eq!(nerve(&arc(c), 2).set.cell_counts(), vec![2, 0, 0]);
}

#[test]
fn nerve_of_deloopings() {
    let n = nerve(&arc(bg(&Monoid::cyclic(2))), 4);
    assert_eq!(n.set.cell_counts(), vec![1, 1, 1, 1, 1]);
    n.set.validate().unwrap();
    let s3 = nerve(&arc(bg(&Monoid::symmetric3())), 2);
    assert_eq!(s3.set.count_simplices(2).unwrap(), 36);
    let c = bg(&Monoid::symmetric3());
    assert_eq!((c.num_objects(), c.num_arrows()), (1, 6));
    assert_eq!(bg(&Monoid::trivial()).num_arrows(), 1);
}

#[test]
fn chains_round_trip() {
    let c = arc(iso_pair_plus_arrow());
    let n = nerve(&c, 3);
    n.set.validate().unwrap();
    for d in 0..=3 {
        for s in n.set.simplices(d).unwrap() {
            let (start, chain) = n.chain(&s);
            assert_eq!(n.simplex(start, &chain), s);
            if d > 0 {
                // faces of chains agree with faces in the simplicial set
                for i in 0..=d {
                    let f = n.set.face(&s, i);
                    let (fs, fc) = n.chain(&f);
                    assert_eq!(n.simplex(fs, &fc), f);
                }
            }
        }
    }
}

#[test]
fn bad_monoid_tables() {
    // 0·1 = 1, 1·1 = 0 but not associative with a third element
    let t = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 2, 1]];
    assert!(matches!(Monoid::new(vec!["e".into(), "a".into(), "b".into()], t), Err(Error::Argument(_))));
    let no_unit = vec![vec![0, 0], vec![0, 0]];
    assert!(Monoid::new(vec!["a".into(), "b".into()], no_unit).is_err());
}

#[test]
fn symmetric_group_is_nonabelian() {
    let g = Monoid::symmetric3();
    assert!(g.is_group());
    assert!(!g.is_commutative());
    assert!(Monoid::cyclic(4).is_commutative());
}

#[test]
fn maximal_subgroupoids() {
    let p = arc(FinCategory::ordinal(2));
    let (g, _) = p.max_subgroupoid();
    assert_eq!((g.num_objects(), g.num_arrows()), (3, 3));
    let b = arc(bg(&Monoid::symmetric3()));
    let (g, inc) = b.max_subgroupoid();
    assert!(inc.is_isomorphism());
    assert_eq!(g.num_arrows(), 6);
    let c = arc(iso_pair_plus_arrow());
    let (g, _) = c.max_subgroupoid();
    let names: BTreeSet<&str> = g.non_identity_arrows().map(|a| g.arrow_name(a)).collect();
    assert_eq!(names, ["f", "g"].into_iter().collect());
}

#[test]
fn localize_an_arrow() {
    let c = arc(FinCategory::ordinal(1));
    let r = RelativeCategory::maximal(c);
    let l = localize(&r, 5).unwrap();
    assert!(l.rounds <= 3);
    let lc = &l.category;
    assert_eq!((lc.num_objects(), lc.num_arrows()), (2, 4));
    assert!(lc.is_groupoid());
    assert_eq!(lc.hom(0, 1).len(), 1);
    assert_eq!(lc.hom(1, 0).len(), 1);
}

#[test]
fn localize_nothing_or_everything() {
    let c = arc(iso_pair_plus_arrow());
    let l = localize(&RelativeCategory::minimal(c.clone()), 5).unwrap();
    assert!(l.functor.is_isomorphism());
    let b = arc(bg(&Monoid::symmetric3()));
    let l = localize(&RelativeCategory::maximal(b), 5).unwrap();
    assert!(l.functor.is_isomorphism());
}

#[test]
fn localize_an_idempotent() {
    let m = Monoid::new(vec!["1".into(), "e".into()], vec![vec![0, 1], vec![1, 1]]).unwrap();
    let c = arc(bg(&m));
    let l = localize(&RelativeCategory::maximal(c), 5).unwrap();
    assert_eq!(l.category.num_arrows(), 1);
}

#[test]
fn infinite_localization_runs_out_of_fuel() {
    // two parallel arrows, both inverted: the result has Hom(a, a) = ℤ
    let mut b = CategoryBuilder::new();
    let (x, y) = (b.object("a"), b.object("b"));
    b.arrow("f", x, y);
    b.arrow("g", x, y);
    let c = arc(b.build().unwrap());
    let r = RelativeCategory::maximal(c);
    assert!(matches!(localize(&r, 6), Err(Error::FuelExhausted { .. })));
    assert!(matches!(localize(&RelativeCategory::minimal(Arc::new(FinCategory::ordinal(1))), 0), Err(Error::Argument(_))));
}

#[test]
fn category_json_round_trip() {
    for c in [iso_pair_plus_arrow(), bg(&Monoid::symmetric3()), FinCategory::ordinal(3), random_category(7, 3, 10)] {
        let back = FinCategory::from_json(&c.to_json()).unwrap();
        let (a, b) = (arc(c), arc(back));
        let f = Functor::find_isomorphism(&a, &b).expect("isomorphic after round trip");
        for x in 0..a.num_arrows() {
            assert_eq!(a.arrow_name(x), b.arrow_name(f.on_arrow(x)));
        }
    }
    assert!(matches!(FinCategory::from_json("{\"objects\": [\"a\"]}"), Err(Error::Format(_))));
}

#[test]
fn products_and_opposites() {
    let p = FinCategory::product(&FinCategory::ordinal(1), &FinCategory::ordinal(1));
    assert_eq!((p.num_objects(), p.num_arrows()), (4, 9));
    let c = iso_pair_plus_arrow();
    let op = c.opposite();
    op.validate().unwrap();
    assert_eq!(op.opposite(), c);
}

#[test]
fn generated_categories() {
    // a constant map on a two-element set is idempotent
    let c = FinCategory::from_functions(&[2], &[(0, 0, vec![0, 0])], 10).unwrap();
    assert_eq!(c.num_arrows(), 2);
    let c = FinCategory::from_functions(&[3], &[(0, 0, vec![1, 2, 0])], 10).unwrap();
    assert!(c.is_groupoid());
    assert_eq!(c.num_arrows(), 3);
    assert!(FinCategory::from_functions(&[3], &[(0, 0, vec![1, 2, 0]), (0, 0, vec![1, 0, 2])], 5).is_err());
}

/// Independent universal-property oracle: precomposition with the
/// localization functor is a bijection `Fun(L, D) → Fun_W(C, D)`.
fn check_universal_property(r: &RelativeCategory, l: &Localization, targets: &[Arc<FinCategory>]) {
    for d in targets {
        let from_c: Vec<Functor> = Functor::enumerate(&r.category, d, UNLIMITED)
            .into_iter()
            .filter(|f| r.weak().iter().all(|&w| d.is_invertible(f.on_arrow(w))))
            .collect();
        let from_l = Functor::enumerate(&l.category, d, UNLIMITED);
        let mut images: Vec<Functor> = from_l.iter().map(|g| g.after(&l.functor).unwrap()).collect();
        images.sort_by(|a, b| (a.object_map(), a.arrow_map()).cmp(&(b.object_map(), b.arrow_map())));
        let before = images.len();
        images.dedup();
        assert_eq!(before, images.len(), "precomposition is injective");
        let mut expected = from_c;
        expected.sort_by(|a, b| (a.object_map(), a.arrow_map()).cmp(&(b.object_map(), b.arrow_map())));
        assert_eq!(images, expected);
    }
}

fn test_targets() -> Vec<Arc<FinCategory>> {
    vec![
        arc(FinCategory::ordinal(1)),
        arc(FinCategory::ordinal(2)),
        arc(bg(&Monoid::cyclic(2))),
        arc(bg(&Monoid::cyclic(3))),
        arc(iso_pair_plus_arrow()),
        arc(FinCategory::from_functions(&[2], &[(0, 0, vec![0, 0]), (0, 0, vec![1, 0])], 10).unwrap()),
    ]
}

#[test]
fn localization_universal_property_examples() {
    let targets = test_targets();
    let c = arc(iso_pair_plus_arrow());
    let h = c.arrow_by_name("h").unwrap();
    let r = RelativeCategory::new(c, [h].into_iter().collect()).unwrap();
    let l = localize(&r, 8).unwrap();
    check_universal_property(&r, &l, &targets);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn nerve_is_fully_faithful(a in any::<u64>(), b in any::<u64>()) {
        let c = arc(random_category(a, 3, 6));
        let d = arc(random_category(b, 3, 6));
        let (nc, nd) = (nerve(&c, 3), nerve(&d, 3));
        let functors = Functor::enumerate(&c, &d, UNLIMITED);
        let maps = all_maps(&nc.set, &nd.set);
        prop_assert_eq!(functors.len(), maps.len());
        let mut images: Vec<String> = functors.iter().map(|f| format!("{:?}", nerve_map(f, &nc, &nd).unwrap())).collect();
        images.sort();
        images.dedup();
        prop_assert_eq!(images.len(), maps.len());
    }

    #[test]
    fn localization_is_universal(seed in any::<u64>(), mask in any::<u16>()) {
        let c = arc(random_category(seed, 3, 8));
        let weak: BTreeSet<usize> = (0..c.num_arrows()).filter(|&a| mask & (1 << (a % 16)) != 0).collect();
        let r = RelativeCategory::new(c, weak).unwrap();
        match localize(&r, 10) {
            Ok(l) => {
                l.category.validate().unwrap();
                for &w in r.weak() {
                    prop_assert!(l.category.is_invertible(l.functor.on_arrow(w)));
                }
                check_universal_property(&r, &l, &test_targets());
            }
            Err(Error::FuelExhausted { .. }) => {}
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn random_categories_are_categories(seed in any::<u64>()) {
        let c = random_category(seed, 4, 10);
        prop_assert!(c.num_objects() <= 4 && c.num_arrows() <= 10);
        c.validate().unwrap();
    }
}
