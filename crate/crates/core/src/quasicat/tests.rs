use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::nerve_cat::{bg, nerve, random_category, CategoryBuilder, FinCategory, Functor, Monoid};
use crate::sset::{
    find_isomorphism, lift_extensions, random_simplicial_set, standard_object, Cell, Simplex, SimplexTable, SimplicialMap,
    SimplicialSet, StandardKind, Truncation, UNLIMITED,
};

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

fn std_set(kind: StandardKind, n: usize, k: Option<usize>) -> Arc<SimplicialSet> {
    arc(standard_object(kind, n, k).unwrap())
}

/// `Δ^2` with the edge `{0,1}` crushed: two parallel edges and a
/// 2-simplex identifying them.
fn crushed_triangle() -> Arc<SimplicialSet> {
    let d2 = std_set(StandardKind::Simplex, 2, None);
    let e = d2.cell_by_name("{0,1}").unwrap();
    d2.collapse(&[e].into_iter().collect()).unwrap()
}

#[test]
fn nerves_have_unique_inner_fillers() {
    for c in [iso_pair_plus_arrow(), FinCategory::ordinal(3), bg(&Monoid::symmetric3())] {
        let n = nerve(&arc(c), 4);
        let report = classify(&n.set, 4, HornMode::Inner).unwrap();
        assert!(report.all_unique(), "{report:?}");
        assert!(report.witness.is_none());
        for k in 0..=3 {
            assert!(spine_check(&n.set, k).unwrap().is_bijective());
        }
    }
}

#[test]
fn horn_counts_of_a_simplex() {
    // Λ^2_1 → Δ^1: the composable pairs of edges among 0 ≤ 0 ≤ 1
    let d1 = std_set(StandardKind::Simplex, 1, None);
    let r = classify(&d1, 3, HornMode::Inner).unwrap();
    assert_eq!(r.count(2, 1).unwrap().tested, 4);
    assert!(r.all_unique());
    let r = classify(&d1, 2, HornMode::Kan).unwrap();
    let c = r.count(2, 0).unwrap();
    // pairs of edges out of a common vertex; only (s0 0, e) cannot fill
    assert_eq!((c.tested, c.unfillable), (5, 1));
}

#[test]
fn horns_are_not_quasicategories() {
    let horn = std_set(StandardKind::Horn, 2, Some(1));
    let report = classify(&horn, 2, HornMode::Inner).unwrap();
    assert!(!report.all_fillable());
    let w = report.witness.clone().unwrap();
    assert_eq!((w.n, w.k), (2, 1));
    assert!(w.reproduces(&horn).unwrap());
    let json = report.to_json();
    let back: HornReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report);
    assert!(matches!(require_fillers(&horn, 2, HornMode::Inner), Err(Error::NotQuasicategory { dim: 2, .. })));
    // the witness does not reproduce on a set that fills it
    let d2 = std_set(StandardKind::Simplex, 2, None);
    assert!(!w.reproduces(&d2).unwrap());
    assert!(!is_quasicategory(&std_set(StandardKind::Boundary, 2, None), 2).unwrap());
    assert!(!is_quasicategory(&std_set(StandardKind::Spine, 3, None), 3).unwrap());
}

#[test]
fn kan_complexes() {
    assert!(is_kan(&nerve(&arc(bg(&Monoid::symmetric3())), 3).set, 3).unwrap());
    assert!(!is_kan(&nerve(&arc(FinCategory::ordinal(1)), 3).set, 3).unwrap());
    let groupoid = nerve(&arc(iso_pair_plus_arrow()), 3);
    assert!(!is_kan(&groupoid.set, 3).unwrap());
    // left horns fill in nerves only when arrows out of horn vertices invert
    let r = classify(&groupoid.set, 3, HornMode::Left).unwrap();
    assert!(!r.all_fillable());
    assert!(matches!(require_fillers(&groupoid.set, 3, HornMode::Kan), Err(Error::NotKan { .. })));
}

#[test]
fn classification_needs_enough_simplices() {
    let n = nerve(&arc(FinCategory::ordinal(2)), 2);
    assert!(matches!(classify(&n.set, 3, HornMode::Inner), Err(Error::TruncationTooLow { .. })));
}

#[test]
fn spine_check_counts() {
    let spine = std_set(StandardKind::Spine, 2, None);
    let r = spine_check(&spine, 2).unwrap();
    // chains of two edges: (s0, s0), (s0, e01), (e01, s1), (e01, e12), …
    assert!(!r.surjective);
    assert!(r.injective);
    let sq = crushed_triangle();
    assert!(!spine_check(&sq, 2).unwrap().is_bijective());
}

/// The homotopy category of a nerve is the category.
#[test]
fn homotopy_category_of_nerves() {
    for c in [iso_pair_plus_arrow(), FinCategory::ordinal(2), bg(&Monoid::cyclic(3))] {
        let c = arc(c);
        let n = nerve(&c, 3);
        let ho = homotopy_category(&n.set).unwrap();
        let f = Functor::find_isomorphism(&c, &ho.category).expect("Ho N C ≅ C");
        for a in 0..c.num_arrows() {
            assert_eq!(ho.class_of(&n.edge(a)), Some(f.on_arrow(a)));
        }
    }
}

#[test]
fn crushed_triangle_is_not_a_quasicategory() {
    let x = crushed_triangle();
    assert!(is_quasicategory(&x, 2).unwrap());
    assert!(matches!(homotopy_category(&x), Err(Error::NotQuasicategory { dim: 3, .. })));
    // the two conventions for the homotopy relation differ off quasicategories
    let table = SimplexTable::new(x, 2).unwrap();
    assert_ne!(homotopy_classes(&table, HomotopyConvention::Left), homotopy_classes(&table, HomotopyConvention::Right));
}

#[test]
fn homotopy_conventions_agree() {
    for c in [iso_pair_plus_arrow(), bg(&Monoid::symmetric3())] {
        let table = SimplexTable::new(nerve(&arc(c), 3).set, 2).unwrap();
        assert_eq!(homotopy_classes(&table, HomotopyConvention::Left), homotopy_classes(&table, HomotopyConvention::Right));
    }
}

#[test]
fn opposite_homotopy_category() {
    let x = nerve(&arc(iso_pair_plus_arrow()), 3).set;
    let ho = homotopy_category(&x).unwrap();
    let ho_op = homotopy_category(&arc(x.opposite())).unwrap();
    let expected = arc(ho.category.opposite());
    assert!(Functor::find_isomorphism(&expected, &ho_op.category).is_some());
}

#[test]
fn equivalences_and_cores() {
    let c = arc(iso_pair_plus_arrow());
    let n = nerve(&c, 3);
    let eq = equivalences(&n.set).unwrap();
    // three identities and f, g
    assert_eq!(eq.len(), 5);
    let core = max_kan_subset(&n.set).unwrap();
    let (g, _) = c.max_subgroupoid();
    let expected = nerve(&g, 3).set;
    assert!(find_isomorphism(&core, &expected).is_some());
    assert!(is_kan(&core, 3).unwrap());
}

/// Maps `H_R^n → X` sending the cone vertices to `a` and `b`.
fn cone_maps(x: &Arc<SimplicialSet>, a: Cell, b: Cell, n: usize) -> usize {
    let (cone, [start, end]) = right_cone(n).unwrap();
    let (ends, inc) = cone.sub(&[start, end].into_iter().collect(), Truncation::Complete).unwrap();
    let assignment = vec![ends
        .cells(0)
        .map(|v| {
            let image = if inc.on_cell(v).cell() == start { a } else { b };
            Simplex::nondegenerate(image)
        })
        .collect()];
    let f = SimplicialMap::new(ends, x.clone(), assignment).unwrap();
    lift_extensions(&inc, &f, UNLIMITED).unwrap().len()
}

/// `(n+1)`-simplices with `d_0` degenerate on `b` and first vertex `a`.
fn left_hom_oracle(x: &Arc<SimplicialSet>, a: Cell, b: Cell, n: usize) -> usize {
    x.simplices(n + 1)
        .unwrap()
        .into_iter()
        .filter(|h| x.face(h, 0) == x.degenerate_vertex(b, n) && x.vertex_of(h, 0) == a)
        .count()
}

#[test]
fn mapping_spaces_of_nerves_are_discrete() {
    let c = arc(iso_pair_plus_arrow());
    let n = nerve(&c, 3);
    for (a, b, size) in [("a", "b", 1), ("a", "c", 1), ("c", "a", 0), ("a", "a", 1)] {
        for side in [HomSide::Left, HomSide::Right] {
            let h = hom_space(&n.set, a, b, side, 2).unwrap();
            assert_eq!(h.cell_counts(), vec![size, 0, 0], "{a} {b} {side:?}");
        }
    }
}

#[test]
fn right_cone_shape() {
    let (c, [s, e]) = right_cone(1).unwrap();
    assert_eq!(c.cell_counts(), vec![2, 2, 1]);
    assert_ne!(s, e);
    let (c, _) = right_cone(0).unwrap();
    assert_eq!(c.cell_counts(), vec![2, 1]);
}

fn check_hom_spaces(x: &Arc<SimplicialSet>, d: usize) {
    for a in x.cells(0) {
        for b in x.cells(0) {
            let right = hom_space(x, x.name(a), x.name(b), HomSide::Right, d).unwrap();
            let left = hom_space(x, x.name(a), x.name(b), HomSide::Left, d).unwrap();
            right.validate().unwrap();
            left.validate().unwrap();
            for n in 0..=d {
                assert_eq!(right.count_simplices(n).unwrap(), cone_maps(x, a, b, n));
                assert_eq!(left.count_simplices(n).unwrap(), left_hom_oracle(x, a, b, n));
            }
        }
    }
}

#[test]
fn mapping_spaces_match_cone_maps() {
    check_hom_spaces(&crushed_triangle(), 1);
    check_hom_spaces(&nerve(&arc(bg(&Monoid::cyclic(2))), 3).set, 2);
    check_hom_spaces(&std_set(StandardKind::Simplex, 2, None), 1);
}

#[test]
fn fundamental_groups_of_deloopings() {
    for (m, expected) in [
        (Monoid::trivial(), Recognized::Trivial),
        (Monoid::cyclic(3), Recognized::Cyclic(3)),
        (Monoid::symmetric3(), Recognized::Symmetric3),
    ] {
        let n = nerve(&arc(bg(&m)), 4);
        let HomotopyInvariant::Group(g) = homotopy_group(&n.set, "*", 1).unwrap() else { panic!("group expected") };
        assert_eq!(g.recognized, expected);
        assert_eq!(g.order(), m.order());
        assert_eq!(g.abelian, m.is_commutative());
        // the classes multiply like the group
        let unit = m.unit().unwrap();
        let iso: Vec<usize> =
            g.elements.iter().map(|e| m.names.iter().position(|x| x == e).unwrap_or(unit)).collect();
        assert!(g.to_monoid().unwrap().is_homomorphism(&m, &iso));
        let HomotopyInvariant::Group(g2) = homotopy_group(&n.set, "*", 2).unwrap() else { panic!() };
        assert_eq!(g2.recognized, Recognized::Trivial);
    }
}

#[test]
fn presentations_have_valid_relations() {
    let n = nerve(&arc(bg(&Monoid::symmetric3())), 3);
    let HomotopyInvariant::Group(g) = homotopy_group(&n.set, "*", 1).unwrap() else { panic!() };
    assert_eq!(g.generators.len(), 2);
    let inverse = |a: usize| (0..g.order()).find(|&b| g.table[a][b] == g.identity).unwrap();
    for r in &g.relations {
        let value = r.iter().fold(g.identity, |acc, &(p, inv)| {
            let x = g.generators[p];
            g.table[acc][if inv { inverse(x) } else { x }]
        });
        assert_eq!(value, g.identity);
    }
}

#[test]
fn homotopy_group_failures() {
    let n = nerve(&arc(bg(&Monoid::symmetric3())), 3);
    assert!(matches!(homotopy_group_with_budget(&n.set, "*", 1, 10), Err(Error::FuelExhausted { .. })));
    let d1 = nerve(&arc(FinCategory::ordinal(1)), 3);
    assert!(matches!(homotopy_group(&d1.set, "0", 1), Err(Error::NotKan { .. })));
    assert!(homotopy_group(&d1.set, "nope", 1).is_err());
}

#[test]
fn path_components() {
    let x = SimplicialSet::coproduct(&std_set(StandardKind::Simplex, 1, None), &std_set(StandardKind::Horn, 2, Some(0)));
    let HomotopyInvariant::Components(c) = homotopy_group(&arc(x), "0:0", 0).unwrap() else { panic!() };
    assert_eq!(c.iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 3]);
}

/// Independent oracle for the homotopy relation: components of the graph
/// whose vertices are maps `Δ^1 → X` and whose edges are maps `H_R^1 → X`.
fn relation_by_cone_maps(x: &Arc<SimplicialSet>) -> BTreeSet<BTreeSet<Simplex>> {
    let (cone, _) = right_cone(1).unwrap();
    let empty = arc(SimplicialSet::empty());
    let from_empty = |y: &Arc<SimplicialSet>| SimplicialMap::new(empty.clone(), y.clone(), vec![]).unwrap();
    let into_x = SimplicialMap::new(empty.clone(), x.clone(), vec![]).unwrap();
    let edges: Vec<SimplicialMap> =
        lift_extensions(&from_empty(&std_set(StandardKind::Simplex, 1, None)), &into_x, UNLIMITED).unwrap();
    let mut class: BTreeMap<Simplex, Simplex> =
        edges.iter().map(|m| (m.on_cell(Cell::new(1, 0)).clone(), m.on_cell(Cell::new(1, 0)).clone())).collect();
    fn root(class: &BTreeMap<Simplex, Simplex>, s: &Simplex) -> Simplex {
        let mut r = s.clone();
        while class[&r] != r {
            r = class[&r].clone();
        }
        r
    }
    let cone_edges: Vec<Cell> = cone.cells(1).collect();
    for m in lift_extensions(&from_empty(&cone), &into_x, UNLIMITED).unwrap() {
        let (a, b) = (root(&class, m.on_cell(cone_edges[0])), root(&class, m.on_cell(cone_edges[1])));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            class.insert(hi, lo);
        }
    }
    let mut groups: BTreeMap<Simplex, BTreeSet<Simplex>> = BTreeMap::new();
    for s in class.keys() {
        groups.entry(root(&class, s)).or_default().insert(s.clone());
    }
    groups.into_values().collect()
}

fn relation_by_engine(x: &Arc<SimplicialSet>) -> BTreeSet<BTreeSet<Simplex>> {
    let table = SimplexTable::new(x.clone(), 2).unwrap();
    let (labels, count) = homotopy_classes(&table, HomotopyConvention::Left);
    let mut groups = vec![BTreeSet::new(); count];
    for (i, id) in table.level(1).enumerate() {
        groups[labels[i]].insert(table.simplex(id).clone());
    }
    groups.into_iter().collect()
}

#[test]
fn homotopy_relation_matches_cone_oracle_on_examples() {
    for x in [crushed_triangle(), nerve(&arc(iso_pair_plus_arrow()), 2).set] {
        assert_eq!(relation_by_engine(&x), relation_by_cone_maps(&x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn nerves_of_random_categories(seed in any::<u64>()) {
        let c = arc(random_category(seed, 3, 7));
        let n = nerve(&c, 3);
        prop_assert!(classify(&n.set, 3, HornMode::Inner).unwrap().all_unique());
        prop_assert!(spine_check(&n.set, 3).unwrap().is_bijective());
        let ho = homotopy_category(&n.set).unwrap();
        prop_assert!(Functor::find_isomorphism(&c, &ho.category).is_some());
    }

    #[test]
    fn homotopy_relation_matches_cone_oracle(seed in any::<u64>()) {
        let x = arc(random_simplicial_set(seed, 4, 2).with_truncation(Truncation::At(2)));
        prop_assert_eq!(relation_by_engine(&x), relation_by_cone_maps(&x));
    }

    #[test]
    fn horn_modes_swap_under_opposites(seed in any::<u64>()) {
        let x = arc(random_simplicial_set(seed, 4, 3));
        for mode in [HornMode::Left, HornMode::Right, HornMode::Inner] {
            let a = classify(&x, 3, mode).unwrap();
            let b = classify(&arc(x.opposite()), 3, mode.opposite()).unwrap();
            for c in &a.counts {
                let d = b.count(c.n, c.n - c.k).unwrap();
                prop_assert_eq!((c.tested, c.unfillable, c.non_unique), (d.tested, d.unfillable, d.non_unique));
            }
        }
    }
}
