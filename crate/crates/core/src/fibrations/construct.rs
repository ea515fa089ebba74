use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::nerve_cat::{Arrow, FinCategory, Functor};

/// `C ⋆ D`: the disjoint union plus exactly one arrow `c → d` for every
/// `c ∈ C`, `d ∈ D`. Names are kept when they do not clash, otherwise
/// prefixed with `L.` and `R.`; the cross arrows are named `c⋆d`.
pub fn join(c: &FinCategory, d: &FinCategory) -> FinCategory {
    join_named(c, d, "", "").unwrap_or_else(|| join_named(c, d, "L.", "R.").expect("prefixed names are distinct"))
}

fn join_named(c: &FinCategory, d: &FinCategory, lp: &str, rp: &str) -> Option<FinCategory> {
    let (n, m) = (c.num_objects(), d.num_objects());
    let (ka, kb) = (c.num_arrows(), d.num_arrows());
    let mut objects: Vec<String> = c.objects().iter().map(|o| format!("{lp}{o}")).collect();
    objects.extend(d.objects().iter().map(|o| format!("{rp}{o}")));
    let mut arrows: Vec<Arrow> = c.arrows().iter().map(|a| Arrow { name: format!("{lp}{}", a.name), ..a.clone() }).collect();
    arrows.extend(d.arrows().iter().map(|a| Arrow { name: format!("{rp}{}", a.name), source: a.source + n, target: a.target + n }));
    for x in 0..n {
        for y in 0..m {
            arrows.push(Arrow { name: format!("{}⋆{}", objects[x], objects[n + y]), source: x, target: n + y });
        }
    }
    let names: BTreeSet<&str> = arrows.iter().map(|a| a.name.as_str()).collect();
    let objs: BTreeSet<&str> = objects.iter().map(String::as_str).collect();
    if names.len() != arrows.len() || objs.len() != objects.len() {
        return None;
    }
    let cross = |x: usize, y: usize| ka + kb + x * m + y;
    let mut identities: Vec<usize> = (0..n).map(|x| c.identity(x)).collect();
    identities.extend((0..m).map(|y| ka + d.identity(y)));
    let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.source, a.target)).collect();
    FinCategory::from_parts(objects, arrows, identities, |g, f| match (g < ka, f < ka, g < ka + kb, f < ka + kb) {
        (true, true, _, _) => c.compose(g, f),
        (false, false, true, true) => d.compose(g - ka, f - ka).map(|h| h + ka),
        // D-arrow after a cross arrow, or a cross arrow after a C-arrow
        _ => Some(cross(ends[f].0, ends[g].1 - n)),
    })
    .ok()
}

/// The twisted arrow category with its projection to `C^op × C`.
#[derive(Clone, Debug)]
pub struct TwistedArrows {
    pub category: Arc<FinCategory>,
    pub projection: Functor,
}

/// Objects are the arrows `f : x → y` of `C`; an arrow `f → g` with
/// `g : x' → y'` is a pair `(u : x' → x, v : y → y')` with `g = v f u`.
/// The projection sends `f` to `(x, y)`.
pub fn twisted_arrows(c: &Arc<FinCategory>) -> TwistedArrows {
    let k = c.num_arrows();
    let mut arrows = Vec::new();
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    let mut index = HashMap::new();
    for f in 0..k {
        let (x, y) = (c.source(f), c.target(f));
        for v in c.arrows_from(y) {
            let vf = c.compose(v, f).expect("composable");
            for u in c.arrows_to(x) {
                let g = c.compose(vf, u).expect("composable");
                index.insert((f, u, v), triples.len());
                triples.push((f, u, v));
                arrows.push(Arrow { name: format!("({},{})@{}", c.arrow_name(u), c.arrow_name(v), c.arrow_name(f)), source: f, target: g });
            }
        }
    }
    let identities = (0..k).map(|f| index[&(f, c.identity(c.source(f)), c.identity(c.target(f)))]).collect();
    let tw = FinCategory::from_parts(
        (0..k).map(|f| c.arrow_name(f).to_string()).collect(),
        arrows,
        identities,
        |second, first| {
            let (f, u, v) = triples[first];
            let (_, u2, v2) = triples[second];
            Some(index[&(f, c.compose(u, u2)?, c.compose(v2, v)?)])
        },
    )
    .expect("twisted arrows form a category");
    let tw = Arc::new(tw);
    let target = Arc::new(FinCategory::product(&c.opposite(), c));
    let m = c.num_objects();
    let objects = (0..k).map(|f| c.source(f) * m + c.target(f)).collect();
    let arrow_map = triples.iter().map(|&(_, u, v)| u * k + v).collect();
    let projection = Functor::new(tw.clone(), target, objects, arrow_map).expect("projection is a functor");
    TwistedArrows { category: tw, projection }
}
