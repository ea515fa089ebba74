use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::delta;

fn std_obj(kind: StandardKind, n: usize, k: Option<usize>) -> Arc<SimplicialSet> {
    Arc::new(standard_object(kind, n, k).unwrap())
}

fn simplex(n: usize) -> Arc<SimplicialSet> {
    std_obj(StandardKind::Simplex, n, None)
}

/// Inclusion of a standard subobject into `Δ^n`.
fn standard_inclusion(kind: StandardKind, n: usize, k: Option<usize>) -> SimplicialMap {
    let full = simplex(n);
    let cells = SimplicialSet::standard_subset_cells(kind, n, k).unwrap();
    full.sub(&cells, Truncation::Complete).unwrap().1
}

/// The map out of `a` determined by vertex images, when the target has at
/// most one simplex with given vertices (nerves of posets).
fn vertex_map(a: &Arc<SimplicialSet>, x: &Arc<SimplicialSet>, images: &[&str]) -> SimplicialMap {
    let sk0 = a.skeleton(0).unwrap();
    let assignment = vec![images.iter().map(|v| Simplex::nondegenerate(x.vertex(v).unwrap())).collect()];
    let f = SimplicialMap::new(sk0.clone(), x.clone(), assignment).unwrap();
    let i = a.sub(&a.cells(0).collect(), Truncation::Complete).unwrap().1;
    let mut ext = lift_extensions(&i, &f, 2).unwrap();
    assert_eq!(ext.len(), 1, "vertex data must determine the map");
    ext.pop().unwrap()
}

fn point() -> Arc<SimplicialSet> {
    simplex(0)
}

fn to_point(a: &Arc<SimplicialSet>) -> SimplicialMap {
    let p = point();
    let v = p.vertex("0").unwrap();
    let assignment = (0..a.top_dim().map_or(0, |d| d + 1))
        .map(|d| a.cells(d).map(|_| p.degenerate_vertex(v, d)).collect())
        .collect();
    SimplicialMap::new(a.clone(), p, assignment).unwrap()
}

#[test]
fn standard_counts() {
    assert_eq!(simplex(2).cell_counts(), vec![3, 3, 1]);
    let horn = std_obj(StandardKind::Horn, 2, Some(1));
    assert_eq!(horn.cell_counts(), vec![3, 2]);
    assert!(horn.cell_by_name("{0,2}").is_none());
    assert_eq!(std_obj(StandardKind::Spine, 3, None).cell_counts(), vec![4, 3]);
    assert_eq!(std_obj(StandardKind::Boundary, 3, None).cell_counts(), vec![4, 6, 4]);
    assert!(matches!(standard_object(StandardKind::Horn, 2, Some(3)), Err(Error::Argument(_))));
    assert!(matches!(standard_object(StandardKind::Horn, 0, Some(0)), Err(Error::Argument(_))));
}

#[test]
fn standard_cells_are_injections() {
    for n in 0..6 {
        let x = simplex(n);
        for j in 0..=n {
            assert_eq!(x.num_cells(j), delta::injections(j, n).len());
        }
        x.validate().unwrap();
    }
}

#[test]
fn faces_of_simplex_cells() {
    let x = simplex(3);
    let c = x.cell_by_name("{0,1,3}").unwrap();
    let faces: Vec<&str> = x.cell_faces(c).iter().map(|f| x.name(f.cell())).collect();
    assert_eq!(faces, vec!["{1,3}", "{0,3}", "{0,1}"]);
}

#[test]
fn products_of_simplices() {
    let p = product(&simplex(1), &simplex(1)).unwrap();
    assert_eq!(p.set.num_cells(2), 2);
    let p = product(&simplex(2), &simplex(1)).unwrap();
    assert_eq!(p.set.num_cells(3), 3);
    assert_eq!(p.set.top_dim(), Some(3));
    p.set.validate().unwrap();
    for n in 0..=7 {
        for m in 0..=(7 - n) {
            if n + m > 5 {
                continue;
            }
            let p = product(&simplex(n), &simplex(m)).unwrap();
            assert_eq!(p.set.num_cells(n + m), delta::binomial(n + m, n), "Δ{n}×Δ{m}");
        }
    }
}

#[test]
fn large_product_top_cells() {
    // binomial(n+m, n) for the remaining pairs with n+m = 6, 7
    for (n, m) in [(3, 3), (4, 2), (4, 3), (5, 2), (6, 1)] {
        let p = product(&simplex(n), &simplex(m)).unwrap();
        assert_eq!(p.set.num_cells(n + m), delta::binomial(n + m, n), "Δ{n}×Δ{m}");
    }
}

#[test]
fn product_with_point() {
    let x = Arc::new(SimplicialSet::from_ordered_complex(
        &["a".into(), "b".into(), "c".into()],
        &[vec![0, 1, 2]],
    )
    .unwrap());
    let p = product(&x, &point()).unwrap();
    assert!(find_isomorphism(&p.set, &x).is_some());
}

#[test]
fn product_projections_split() {
    let p = product(&simplex(2), &simplex(1)).unwrap();
    let l = p.left_projection();
    let r = p.right_projection();
    l.validate().unwrap();
    r.validate().unwrap();
    for n in 0..=3 {
        for s in p.set.simplices(n).unwrap() {
            let (a, b) = p.split(&s);
            assert_eq!(p.pair(&a, &b), s);
            assert_eq!(l.on_simplex(&s), a);
            assert_eq!(r.on_simplex(&s), b);
        }
    }
}

#[test]
fn wedge_of_edges_is_spine() {
    let e = simplex(1);
    let pt = point();
    let at = |v: &str| {
        let a = vec![vec![Simplex::nondegenerate(e.vertex(v).unwrap())]];
        SimplicialMap::new(pt.clone(), e.clone(), a).unwrap()
    };
    let p = pushout(&at("1"), &at("0")).unwrap();
    assert_eq!(p.set.cell_counts(), vec![3, 2]);
    assert!(find_isomorphism(&p.set, &std_obj(StandardKind::Spine, 2, None)).is_some());
}

#[test]
fn right_hom_shape() {
    // Δ^2 with the edge {0,1} collapsed to a point
    let full = simplex(2);
    let edge = full.cell_by_name("{0,1}").unwrap();
    let d2 = full.sub(&[edge].into_iter().collect(), Truncation::Complete).unwrap().1;
    let collapse = to_point(d2.source());
    let p = pushout(&d2, &collapse).unwrap();
    assert_eq!(p.set.cell_counts(), vec![2, 2, 1]);
    p.set.validate().unwrap();
    p.left.validate().unwrap();
    p.right.validate().unwrap();
}

#[test]
fn pushout_along_identities() {
    let x = simplex(2);
    let id = SimplicialMap::identity(x.clone());
    let p = pushout(&id, &id).unwrap();
    assert!(find_isomorphism(&p.set, &x).is_some());
}

#[test]
fn pushout_needs_an_injective_leg() {
    let e = simplex(1);
    let c = to_point(&e);
    assert!(matches!(pushout(&c, &c), Err(Error::Unsupported(_))));
}

#[test]
fn lift_horn_into_simplex() {
    let i = standard_inclusion(StandardKind::Horn, 2, Some(1));
    let x = simplex(2);
    let f = vertex_map(i.source(), &x, &["0", "1", "2"]);
    let ext = lift_extensions(&i, &f, UNLIMITED).unwrap();
    assert_eq!(ext.len(), 1);
    ext[0].validate().unwrap();
    assert_eq!(ext[0].after(&i).unwrap(), f);
}

#[test]
fn lift_into_point() {
    let i = standard_inclusion(StandardKind::Boundary, 1, None);
    let f = to_point(i.source());
    assert_eq!(lift_extensions(&i, &f, UNLIMITED).unwrap().len(), 1);
}

#[test]
fn lift_outer_horn_fails() {
    let i = standard_inclusion(StandardKind::Horn, 2, Some(0));
    let x = simplex(1);
    // {0,1} to the arrow 0 → 1, {0,2} to the identity at 0
    let f = vertex_map(i.source(), &x, &["0", "1", "0"]);
    assert_eq!(lift_extensions(&i, &f, UNLIMITED).unwrap().len(), 0);
}

#[test]
fn lift_limit_zero_is_an_error() {
    let i = standard_inclusion(StandardKind::Boundary, 1, None);
    let f = to_point(i.source());
    assert!(matches!(lift_extensions(&i, &f, 0), Err(Error::Argument(_))));
}

#[test]
fn lift_counts_maps_from_simplex() {
    // maps Δ^2 → Δ^2 are monotone maps [2] → [2]
    let full = simplex(2);
    let empty = Arc::new(SimplicialSet::empty());
    let i = SimplicialMap::new(empty.clone(), full.clone(), vec![]).unwrap();
    let f = SimplicialMap::new(empty, full.clone(), vec![]).unwrap();
    assert_eq!(lift_extensions(&i, &f, UNLIMITED).unwrap().len(), delta::all_maps(2, 2).len());
    assert_eq!(lift_extensions(&i, &f, 4).unwrap().len(), 4);
}

#[test]
fn skeleta() {
    for n in 1..5 {
        let s = simplex(n).skeleton(n - 1).unwrap();
        assert!(find_isomorphism(&s, &std_obj(StandardKind::Boundary, n, None)).is_some());
    }
    let s = simplex(3).skeleton(0).unwrap();
    assert_eq!(s.cell_counts(), vec![4]);
    let t = Arc::new(simplex(3).with_truncation(Truncation::At(2)));
    let s = t.skeleton(2).unwrap();
    assert_eq!(s.as_ref(), t.as_ref());
}

#[test]
fn opposite_is_involutive() {
    let x = random_set(&[vec![0, 1, 2], vec![1, 3]], &[vec![1, 2]]);
    x.opposite().validate().unwrap();
    assert_eq!(x.opposite().opposite(), *x);
}

#[test]
fn json_round_trip_example() {
    let x = random_set(&[vec![0, 1, 2], vec![2, 3]], &[vec![0, 1]]);
    let text = x.to_json();
    let y = SimplicialSet::from_json(&text).unwrap();
    assert_eq!(y, *x);
    assert_eq!(y.to_json(), text);
    assert!(SimplicialSet::from_json("{\"truncation\":null}").is_err());
}

#[test]
fn isomorphism_certificate() {
    let x = simplex(2);
    let f = find_isomorphism(&x, &x).unwrap();
    assert!(is_isomorphism(&f));
    let b = std_obj(StandardKind::Boundary, 2, None);
    assert!(find_isomorphism(&x, &b).is_none());
    let i = standard_inclusion(StandardKind::Boundary, 2, None);
    assert!(!is_isomorphism(&i));
}

/// An ordered simplicial complex on five vertices with the subcomplex
/// spanned by `collapse` crushed to a point.
fn random_set(simplices: &[Vec<usize>], collapse: &[Vec<usize>]) -> Arc<SimplicialSet> {
    let names: Vec<String> = (0..5).map(|v| format!("v{v}")).collect();
    let x = Arc::new(SimplicialSet::from_ordered_complex(&names, simplices).unwrap());
    let wanted: Vec<Vec<usize>> = collapse
        .iter()
        .filter(|s| simplices.iter().any(|t| s.iter().all(|v| t.contains(v))))
        .cloned()
        .collect();
    if wanted.is_empty() {
        return x;
    }
    let a = SimplicialSet::from_ordered_complex(&names, &wanted).unwrap();
    let cells: BTreeSet<Cell> = a
        .all_cells()
        .filter(|&c| c.dim > 0 || wanted.iter().flatten().any(|&v| names[v] == a.name(c)))
        .map(|c| x.cell_by_name(a.name(c)).unwrap())
        .collect();
    let (sub, inc) = x.sub(&cells, Truncation::Complete).unwrap();
    pushout(&inc, &to_point(&sub)).unwrap().set
}

fn arb_simplex_list() -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::collection::btree_set(0usize..5, 1..=4), 1..5)
        .prop_map(|v| v.into_iter().map(|s| s.into_iter().collect()).collect())
}

fn arb_set() -> impl Strategy<Value = Arc<SimplicialSet>> {
    (arb_simplex_list(), prop::collection::vec(prop::collection::btree_set(0usize..5, 1..=3), 0..2)).prop_map(
        |(s, c)| {
            let c: Vec<Vec<usize>> = c.into_iter().map(|t| t.into_iter().collect()).collect();
            random_set(&s, &c)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_a_bijection(x in arb_set()) {
        x.validate().unwrap();
        for n in 0..=4 {
            let all = x.simplices(n).unwrap();
            let distinct: BTreeSet<&Simplex> = all.iter().collect();
            prop_assert_eq!(distinct.len(), all.len());
            prop_assert_eq!(all.len(), x.count_simplices(n).unwrap());
            for s in &all {
                // re-normalizing an expanded simplex returns it
                let again = x.apply(&OrdinalMap::identity(n), s);
                prop_assert_eq!(&again, s);
                for theta in delta::all_maps(2.min(n), n) {
                    for phi in delta::all_maps(1.min(theta.source()), theta.source()) {
                        let lhs = x.apply(&phi, &x.apply(&theta, s));
                        let rhs = x.apply(&delta::compose(&theta, &phi).unwrap(), s);
                        prop_assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip(x in arb_set()) {
        let y = SimplicialSet::from_json(&x.to_json()).unwrap();
        prop_assert_eq!(&y, x.as_ref());
    }

    #[test]
    fn product_symmetry(x in arb_set(), y in arb_set()) {
        prop_assume!(x.total_cells() + y.total_cells() < 24);
        let xy = product(&x, &y).unwrap();
        let yx = product(&y, &x).unwrap();
        xy.set.validate().unwrap();
        prop_assert!(find_isomorphism(&xy.set, &yx.set).is_some());
    }

    #[test]
    fn product_associativity(x in arb_set()) {
        prop_assume!(x.total_cells() < 14);
        let e = simplex(1);
        let left = product(&product(&x, &e).unwrap().set, &e).unwrap();
        let right = product(&x, &product(&e, &e).unwrap().set).unwrap();
        prop_assert!(find_isomorphism(&left.set, &right.set).is_some());
    }

    #[test]
    fn pushout_legs(x in arb_simplex_list(), c in prop::collection::btree_set(0usize..5, 1..=3)) {
        let names: Vec<String> = (0..5).map(|v| format!("v{v}")).collect();
        let full = Arc::new(SimplicialSet::from_ordered_complex(&names, &x).unwrap());
        let cells: BTreeSet<Cell> = c.iter().filter_map(|v| full.cell_by_name(&names[*v])).collect();
        prop_assume!(!cells.is_empty());
        let (sub, inc) = full.sub(&cells, Truncation::Complete).unwrap();
        let p = pushout(&inc, &to_point(&sub)).unwrap();
        p.left.validate().unwrap();
        p.right.validate().unwrap();
        let mut hit: BTreeSet<Cell> = p.left.image_cells();
        hit.extend(p.right.image_cells());
        prop_assert_eq!(hit.len(), p.set.total_cells());
        prop_assert_eq!(p.left.after(&inc).unwrap(), p.right.after(&to_point(&sub)).unwrap());
    }

    #[test]
    fn lift_is_order_independent(x in arb_set(), seed in any::<u64>()) {
        let i = standard_inclusion(StandardKind::Horn, 2, Some(1));
        let sk0 = i.source().skeleton(0).unwrap();
        let j = i.source().sub(&i.source().cells(0).collect(), Truncation::Complete).unwrap().1;
        // maps Λ²₁ → X, then their extensions to Δ²
        let empty_to = |t: &Arc<SimplicialSet>| SimplicialMap::new(Arc::new(SimplicialSet::empty()), t.clone(), vec![]).unwrap();
        let vertex_maps = lift_extensions(&empty_to(&sk0), &empty_to(&x), UNLIMITED).unwrap();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for v in vertex_maps.iter().take(6) {
            for h in lift_extensions(&j, v, UNLIMITED).unwrap() {
                let mut e1: Vec<String> = lift_extensions(&i, &h, UNLIMITED).unwrap().iter().map(|g| format!("{:?}", g)).collect();
                let mut e2: Vec<String> = lift_extensions_shuffled(&i, &h, UNLIMITED, seed).unwrap().iter().map(|g| format!("{:?}", g)).collect();
                e1.sort();
                e2.sort();
                a.push(e1);
                b.push(e2);
            }
        }
        prop_assert_eq!(a, b);
    }
}
