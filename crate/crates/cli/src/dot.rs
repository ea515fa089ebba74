use infcat::fibrations::CocartAnalysis;
use infcat::nerve_cat::{FinCategory, Functor};
use infcat::sset::{Simplex, SimplicialSet};

/// Objects as nodes, non-identity arrows as labelled edges.
pub fn category(c: &FinCategory) -> String {
    let mut out = String::from("digraph category {\n");
    for o in c.objects() {
        out.push_str(&format!("  {o:?};\n"));
    }
    for a in c.non_identity_arrows() {
        out.push_str(&format!(
            "  {:?} -> {:?} [label={:?}];\n",
            c.object_name(c.source(a)),
            c.object_name(c.target(a)),
            c.arrow_name(a)
        ));
    }
    out.push_str("}\n");
    out
}

/// The 2-truncation: vertices, nondegenerate edges, and one comment line
/// per nondegenerate triangle listing its edges.
pub fn simplicial_set(x: &SimplicialSet) -> String {
    let mut out = String::from("digraph simplicial_set {\n");
    for v in x.names(0) {
        out.push_str(&format!("  {v:?};\n"));
    }
    let vertex = |s: &Simplex| x.name(s.cell()).to_string();
    for e in x.cells(1) {
        let f = x.cell_faces(e);
        out.push_str(&format!("  {:?} -> {:?} [label={:?}];\n", vertex(&f[1]), vertex(&f[0]), x.name(e)));
    }
    for t in x.cells(2) {
        let f = x.cell_faces(t);
        out.push_str(&format!(
            "  // triangle {:?}: d2 = {}, d0 = {}, d1 = {}\n",
            x.name(t),
            x.describe(&f[2]),
            x.describe(&f[0]),
            x.describe(&f[1])
        ));
    }
    out.push_str("}\n");
    out
}

/// The source category of `f`, each arrow carrying its flags and its image.
pub fn cocart(f: &Functor, analysis: &CocartAnalysis) -> String {
    let (c, d) = (f.source(), f.target());
    let mut out = String::from("digraph cocartesian_analysis {\n");
    for x in 0..c.num_objects() {
        out.push_str(&format!("  {:?} [over={:?}];\n", c.object_name(x), d.object_name(f.on_object(x))));
    }
    for a in c.non_identity_arrows() {
        let flags = &analysis.arrows[a];
        let style = match (flags.cocartesian, flags.locally_cocartesian) {
            (true, _) => ", style=bold",
            (false, true) => ", style=dashed",
            _ => "",
        };
        out.push_str(&format!(
            "  {:?} -> {:?} [label={:?}, over={:?}, cocartesian={}, locally_cocartesian={}{style}];\n",
            c.object_name(c.source(a)),
            c.object_name(c.target(a)),
            c.arrow_name(a),
            d.arrow_name(f.on_arrow(a)),
            flags.cocartesian,
            flags.locally_cocartesian
        ));
    }
    out.push_str("}\n");
    out
}
