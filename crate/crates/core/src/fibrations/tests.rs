use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::nerve_cat::{bg, bg_functor, random_category, Monoid};

fn arc(c: FinCategory) -> Arc<FinCategory> {
    Arc::new(c)
}

/// The functor sending each arrow to the unique arrow between the images
/// of its endpoints; `target` must be a poset.
fn to_poset(c: &Arc<FinCategory>, target: &Arc<FinCategory>, objects: Vec<usize>) -> Functor {
    let arrows = (0..c.num_arrows()).map(|a| target.hom(objects[c.source(a)], objects[c.target(a)])[0]).collect();
    Functor::new(c.clone(), target.clone(), objects, arrows).unwrap()
}

/// `[1] × [1] → [2]` with `c00 ↦ 0`, `c01 ↦ 1`, `c10, c11 ↦ 2`.
fn square_over_two() -> Functor {
    let sq = arc(FinCategory::product(&FinCategory::ordinal(1), &FinCategory::ordinal(1)));
    to_poset(&sq, &arc(FinCategory::ordinal(2)), vec![0, 1, 2, 2])
}

fn flag<'a>(a: &'a CocartAnalysis, name: &str) -> &'a ArrowFlags {
    a.arrows.iter().find(|f| f.arrow == name).unwrap_or_else(|| panic!("no arrow {name}"))
}

fn z4_to_z2() -> Functor {
    bg_functor(&Monoid::cyclic(4), &Monoid::cyclic(2), &[0, 1, 0, 1]).unwrap()
}

#[test]
fn delooping_a_surjection_is_a_left_fibration() {
    let r = is_left_fibration(&z4_to_z2());
    assert!(r.holds, "{:?}", r.witnesses);
    let s3 = Monoid::symmetric3();
    let sign: Vec<usize> = s3.names.iter().map(|p| usize::from(!["012", "120", "201"].contains(&p.as_str()))).collect();
    assert!(is_left_fibration(&bg_functor(&s3, &Monoid::cyclic(2), &sign).unwrap()).holds);
}

#[test]
fn non_surjection_is_not_a_left_fibration() {
    let f = bg_functor(&Monoid::trivial(), &Monoid::cyclic(2), &[0]).unwrap();
    let r = is_left_fibration(&f);
    assert!(!r.holds);
    assert!(r.witnesses.iter().any(|w| matches!(w, LeftFibrationWitness::MissingLift { base_arrow, .. } if base_arrow == "1")));
}

#[test]
fn projection_is_left_fibration_iff_groupoid() {
    let d = FinCategory::ordinal(1);
    for (c, groupoid) in [(bg(&Monoid::cyclic(3)), true), (FinCategory::ordinal(1), false), (FinCategory::discrete(&["a".into(), "b".into()]), true)] {
        let p = arc(FinCategory::product(&c, &d));
        let k = d.num_arrows();
        let m = d.num_objects();
        let proj = Functor::new(p.clone(), arc(d.clone()), (0..p.num_objects()).map(|x| x % m).collect(), (0..p.num_arrows()).map(|a| a % k).collect()).unwrap();
        assert_eq!(is_left_fibration(&proj).holds, groupoid);
        let to_point = Functor::new(arc(c.clone()), arc(FinCategory::terminal()), vec![0; c.num_objects()], vec![0; c.num_arrows()]).unwrap();
        assert_eq!(is_left_fibration(&to_point).holds, groupoid);
    }
}

#[test]
fn square_over_two_is_locally_but_not_cocartesian() {
    let f = square_over_two();
    let a = cocart_analyze(&f);
    assert!(a.is_locally_cocartesian_fibration);
    assert!(!a.is_cocartesian_fibration);
    assert!(!a.is_left_fibration);
    for name in ["(0->1,id_0)", "(id_0,0->1)", "(0->1,id_1)"] {
        assert!(flag(&a, name).locally_cocartesian, "{name}");
    }
    // c00 → c01 → c11 composes to a non-locally-cocartesian arrow
    assert!(!flag(&a, "(0->1,0->1)").locally_cocartesian);
    assert!(a.pairs.iter().any(|p| !p.locally_cocartesian && p.composite == "(0->1,0->1)"));
    for flags in &a.arrows {
        assert!(!flags.cocartesian || flags.locally_cocartesian);
    }
    assert!(a.report().contains("cocartesian fibration: false"));
}

#[test]
fn identity_functor_is_cocartesian_everywhere() {
    let c = arc(random_category(7, 3, 10));
    let a = cocart_analyze(&Functor::identity(c));
    assert!(a.arrows.iter().all(|f| f.cocartesian && f.locally_cocartesian));
    assert!(a.is_cocartesian_fibration);
}

#[test]
fn theta_of_square_over_two() {
    let f = square_over_two();
    let a = cocart_analyze(&f);
    let data = grothendieck_read(&f, &a).unwrap();
    assert_eq!(data.thetas.len(), 1);
    let t = &data.thetas[0];
    assert_eq!((t.first.as_str(), t.second.as_str()), ("0->1", "1->2"));
    assert!(!t.is_isomorphism);
    assert_eq!(t.components["(0,0)"], "(id_1,0->1)");
    assert!(!data.all_thetas_invertible);
    assert!(data.choice_independent);
}

#[test]
fn read_rejects_non_fibrations() {
    let f = bg_functor(&Monoid::trivial(), &Monoid::cyclic(2), &[0]).unwrap();
    let a = cocart_analyze(&f);
    assert!(matches!(grothendieck_read(&f, &a), Err(crate::Error::Argument(_))));
}

/// `C_3 ⋊ C_2` as a split functor `B(C_2) → Cat` with fiber `B(C_3)`.
fn dihedral_split() -> SplitFunctorToCat {
    let base = arc(bg(&Monoid::cyclic(2)));
    let fiber = arc(bg(&Monoid::cyclic(3)));
    let id = Functor::identity(fiber.clone());
    let invert = Functor::new(fiber.clone(), fiber.clone(), vec![0], vec![0, 2, 1]).unwrap();
    SplitFunctorToCat::new(base, vec![fiber], vec![id, invert]).unwrap()
}

#[test]
fn semidirect_product_is_rebuilt() {
    let p = grothendieck_build(&dihedral_split()).unwrap();
    assert_eq!(p.source().num_arrows(), 6);
    let s3 = arc(bg(&Monoid::symmetric3()));
    assert!(Functor::find_isomorphism(p.source(), &s3).is_some());
    assert!(is_left_fibration(&p).holds);
}

#[test]
fn split_functor_rejects_non_functorial_transport() {
    let base = arc(bg(&Monoid::cyclic(2)));
    let fiber = arc(bg(&Monoid::cyclic(3)));
    // the generator must act by an involution, and the zero map is not one
    let id = Functor::identity(fiber.clone());
    let bad = Functor::new(fiber.clone(), fiber.clone(), vec![0], vec![0, 0, 0]).unwrap();
    assert!(SplitFunctorToCat::new(base, vec![fiber], vec![id, bad]).is_err());
}

#[test]
fn build_over_a_point_is_the_fiber() {
    let fiber = arc(random_category(3, 3, 8));
    let split = SplitFunctorToCat::new(arc(FinCategory::terminal()), vec![fiber.clone()], vec![Functor::identity(fiber.clone())]).unwrap();
    let p = grothendieck_build(&split).unwrap();
    assert!(Functor::find_isomorphism(p.source(), &fiber).is_some());
    let data = grothendieck_read(&p, &cocart_analyze(&p)).unwrap();
    assert_eq!(data.fibers.len(), 1);
    assert!(data.thetas.is_empty());
}

#[test]
fn groupoid_fibers_over_an_arrow() {
    let base = arc(FinCategory::ordinal(1));
    let f0 = arc(bg(&Monoid::cyclic(2)));
    let f1 = arc(FinCategory::product(&bg(&Monoid::cyclic(2)), &FinCategory::discrete(&["p".into(), "q".into()])));
    // C_2 → C_2 × {p, q}, landing in the p copy
    let t = Functor::new(f0.clone(), f1.clone(), vec![0], vec![0, 2]).unwrap();
    let split = SplitFunctorToCat::new(base, vec![f0.clone(), f1.clone()], vec![Functor::identity(f0), t, Functor::identity(f1)]).unwrap();
    let p = grothendieck_build(&split).unwrap();
    assert!(is_left_fibration(&p).holds);
    let a = cocart_analyze(&p);
    assert!(a.is_cocartesian_fibration);
}

#[test]
fn join_of_ordinals() {
    let j = join(&FinCategory::ordinal(0), &FinCategory::ordinal(0));
    assert!(Functor::find_isomorphism(&arc(j), &arc(FinCategory::ordinal(1))).is_some());
    for (m, n) in [(0, 1), (1, 1), (2, 0), (1, 2)] {
        let j = arc(join(&FinCategory::ordinal(m), &FinCategory::ordinal(n)));
        assert_eq!(j.num_objects(), m + n + 2);
        assert!(Functor::find_isomorphism(&j, &arc(FinCategory::ordinal(m + n + 1))).is_some(), "[{m}] ⋆ [{n}]");
    }
    let d = random_category(11, 3, 10);
    let j = join(&FinCategory::empty(), &d);
    assert_eq!(j, d);
}

#[test]
fn join_hom_sets() {
    let c = bg(&Monoid::cyclic(2));
    let d = FinCategory::ordinal(1);
    let j = join(&c, &d);
    let (star, zero, one) = (j.object_by_name("*").unwrap(), j.object_by_name("0").unwrap(), j.object_by_name("1").unwrap());
    assert_eq!(j.hom(star, zero).len(), 1);
    assert_eq!(j.hom(one, star).len(), 0);
    assert_eq!(j.hom(star, star).len(), 2);
    assert_eq!(j.hom(zero, one).len(), 1);
}

#[test]
fn twisted_arrows_of_interval() {
    let tw = twisted_arrows(&arc(FinCategory::ordinal(1)));
    assert_eq!(tw.category.num_objects(), 3);
    // the arrow maps to both identities, nothing else
    assert_eq!(tw.category.num_arrows(), 5);
    assert!(is_left_fibration(&tw.projection).holds);
}

#[test]
fn twisted_arrows_of_discrete() {
    let c = arc(FinCategory::discrete(&["a".into(), "b".into(), "c".into()]));
    let tw = twisted_arrows(&c);
    assert_eq!((tw.category.num_objects(), tw.category.num_arrows()), (3, 3));
}

/// Definition-unfolding oracle: build the pullback of `f` along `F(α) : [1]
/// → D` (or along the identity of `D`) as an explicit category and count
/// the arrows of the cartesian square there.
fn oracle_cocartesian(f: &Functor, alpha: usize, local: bool) -> bool {
    let (c, d) = (f.source(), f.target());
    // objects of the pullback: (x, i) with i an object of the base-change source
    let abar = f.on_arrow(alpha);
    let base_objects: Vec<usize> = if local { vec![d.source(abar), d.target(abar)] } else { (0..d.num_objects()).collect() };
    // arrows of the base-change source between i and j, as arrows of D
    let base_arrows = |i: usize, j: usize| -> Vec<usize> {
        if local {
            match (i, j) {
                (0, 0) => vec![d.identity(base_objects[0])],
                (1, 1) => vec![d.identity(base_objects[1])],
                (0, 1) => vec![abar],
                _ => vec![],
            }
        } else {
            d.hom(i, j)
        }
    };
    let objs: Vec<(usize, usize)> = (0..c.num_objects())
        .flat_map(|x| (0..base_objects.len()).map(move |i| (x, i)))
        .filter(|&(x, i)| f.on_object(x) == base_objects[i])
        .collect();
    let homs = |(x, i): (usize, usize), (z, j): (usize, usize)| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for g in base_arrows(i, j) {
            for u in c.hom(x, z) {
                if f.on_arrow(u) == g {
                    out.push((u, g));
                }
            }
        }
        out
    };
    let (src, dst) = if local { ((c.source(alpha), 0), (c.target(alpha), 1)) } else { ((c.source(alpha), d.source(abar)), (c.target(alpha), d.target(abar))) };
    let compose_base = |g: usize, h: usize| d.compose(g, h).unwrap();
    objs.iter().all(|&z| {
        // Hom(src, z) ×_{Hom_base(i_src, j)} Hom_base(i_dst, j) versus Hom(dst, z)
        let from_dst = homs(dst, z);
        let from_src = homs(src, z);
        let base_dst = base_arrows(dst.1, z.1);
        let mut count = 0;
        for &(v, gv) in &from_src {
            for &gbar in &base_dst {
                if compose_base(gbar, abar) != gv {
                    continue;
                }
                count += 1;
                let n = from_dst.iter().filter(|&&(u, gu)| gu == gbar && c.compose(u, alpha) == Some(v)).count();
                if n != 1 {
                    return false;
                }
            }
        }
        count == from_dst.len()
    })
}

fn random_functor(seed: u64) -> Option<Functor> {
    let c = arc(random_category(seed, 3, 8));
    let d = arc(random_category(seed.wrapping_mul(31).wrapping_add(5), 2, 6));
    let all = Functor::enumerate(&c, &d, 64);
    if all.is_empty() {
        return None;
    }
    Some(all[(seed as usize) % all.len()].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn analysis_matches_oracle(seed in any::<u64>()) {
        let Some(f) = random_functor(seed) else { return Ok(()) };
        let a = cocart_analyze(&f);
        for alpha in 0..f.source().num_arrows() {
            prop_assert_eq!(a.arrows[alpha].cocartesian, oracle_cocartesian(&f, alpha, false));
            prop_assert_eq!(a.arrows[alpha].locally_cocartesian, oracle_cocartesian(&f, alpha, true));
            prop_assert!(!a.arrows[alpha].cocartesian || a.arrows[alpha].locally_cocartesian);
        }
        let left = a.is_cocartesian_fibration && a.arrows.iter().all(|f| f.cocartesian);
        prop_assert_eq!(a.is_left_fibration, left);
        if a.is_left_fibration {
            for d in 0..f.target().num_objects() {
                prop_assert!(fiber(&f, d).0.is_groupoid());
            }
        }
        if a.is_locally_cocartesian_fibration {
            let data = grothendieck_read(&f, &a).unwrap();
            prop_assert!(data.choice_independent);
            prop_assert_eq!(data.all_thetas_invertible, a.is_cocartesian_fibration);
        }
    }

    #[test]
    fn twisted_fibers_are_hom_sets(seed in any::<u64>()) {
        let c = arc(random_category(seed, 3, 10));
        let tw = twisted_arrows(&c);
        prop_assert!(is_left_fibration(&tw.projection).holds);
        let m = c.num_objects();
        for x in 0..m {
            for y in 0..m {
                let (fib, objects, _) = fiber(&tw.projection, x * m + y);
                prop_assert_eq!(fib.num_arrows(), fib.num_objects());
                let mut names: Vec<String> = objects.iter().map(|&o| tw.category.object_name(o).to_string()).collect();
                let mut expect: Vec<String> = c.hom(x, y).iter().map(|&a| c.arrow_name(a).to_string()).collect();
                names.sort();
                expect.sort();
                prop_assert_eq!(names, expect);
            }
        }
    }

    #[test]
    fn split_round_trip(seed in any::<u64>()) {
        let split = random_split(seed);
        let p = grothendieck_build(&split).unwrap();
        let a = cocart_analyze(&p);
        prop_assert!(a.is_locally_cocartesian_fibration);
        prop_assert!(a.is_cocartesian_fibration);
        let data = grothendieck_read(&p, &a).unwrap();
        prop_assert!(data.all_thetas_invertible);
        let base = split.base();
        for t in &data.transports {
            let phi = base.arrow_by_name(&t.base_arrow).unwrap();
            let (s, e) = (base.source(phi), base.target(phi));
            let tr = split.transport(phi);
            for x in 0..split.fiber(s).num_objects() {
                let from = format!("({},{})", base.object_name(s), split.fiber(s).object_name(x));
                let to = format!("({},{})", base.object_name(e), split.fiber(e).object_name(tr.on_object(x)));
                prop_assert_eq!(&t.objects[&from], &to);
            }
        }
        for th in &data.thetas {
            for name in th.components.values() {
                prop_assert!(p.source().is_identity(p.source().arrow_by_name(name).unwrap()));
            }
        }
    }
}

/// A split functor on a random poset base with ≤ 3 objects: the fibers are
/// copies of one random category and all transports are identities, or
/// constant functors onto an object for non-identity arrows when the base is
/// a chain.
fn random_split(seed: u64) -> SplitFunctorToCat {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=3);
    let base = arc(FinCategory::ordinal(n - 1));
    let fiber = arc(random_category(seed, 2, 6));
    let fibers = vec![fiber.clone(); n];
    let constant = rng.gen_bool(0.5);
    let target_object = rng.gen_range(0..fiber.num_objects());
    let transports = (0..base.num_arrows())
        .map(|a| {
            if base.is_identity(a) || !constant {
                Functor::identity(fiber.clone())
            } else {
                let id = fiber.identity(target_object);
                Functor::new(fiber.clone(), fiber.clone(), vec![target_object; fiber.num_objects()], vec![id; fiber.num_arrows()]).unwrap()
            }
        })
        .collect();
    SplitFunctorToCat::new(base, fibers, transports).unwrap()
}

#[test]
fn split_documents_round_trip() {
    let split = dihedral_split();
    let doc = SplitFunctorDoc::from_split(&split);
    let back = SplitFunctorDoc::from_json(&doc.to_json()).unwrap().to_split().unwrap();
    assert_eq!(grothendieck_build(&back).unwrap(), grothendieck_build(&split).unwrap());
}

#[test]
fn functor_documents_round_trip() {
    let f = square_over_two();
    // indices may move, names may not
    let g = Functor::from_json(&f.to_json()).unwrap();
    assert_eq!(g.to_json(), f.to_json());
    let c = g.source();
    for a in 0..c.num_arrows() {
        let original = f.source().arrow_by_name(c.arrow_name(a)).unwrap();
        assert_eq!(g.target().arrow_name(g.on_arrow(a)), f.target().arrow_name(f.on_arrow(original)));
    }
}
