use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use infcat::chain_model::{factor_cofib_trivfib_partial, factor_trivcofib_fib, is_quasi_iso, FactorizationCertificate};
use infcat::doldkan::{dold_kan_gamma, entries_to_json, homology, normalized_chains, DegreeHomology, Ring, SimplicialAbGroup};
use infcat::fibrations::{cocart_analyze, grothendieck_build, grothendieck_read, is_left_fibration, join, twisted_arrows};
use infcat::hcnerve::{coherent_nerve, frak_c, SimplicialCategoryDoc};
use infcat::linalg::Matrix;
use infcat::nerve_cat::{bg, localize, nerve, CategoryDoc, FinCategory, Functor, FunctorDoc, Monoid};
use infcat::quasicat::{
    classify, equivalences, hom_space, homotopy_category, homotopy_group, max_kan_subset, GroupPresentation, HomSide, HomotopyInvariant,
    HornMode, HornReport,
};
use infcat::segal::{completeness_check, rezk_nerve, strict_segal_check, BisimplicialSet, EmbedKind};
use infcat::sset::{SimplicialSet, Truncation};
use infcat::{Error, Result};
use serde::Serialize;

use crate::input::{load, Input};
use crate::{dot, Command, EmbedArg, ModeArg, Outcome, SideArg, Status};

pub fn failure(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(match e {
        Error::NotQuasicategory { .. } | Error::NotKan { .. } => 1,
        Error::FuelExhausted { .. } | Error::NotDecidable(_) => 2,
        _ => 3,
    })
}

fn json<T: Serialize + ?Sized>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("outputs serialize")
}

fn outcome(status: Status, text: String, structured: String) -> Outcome {
    Outcome { status, text, structured, dot: None }
}

impl Outcome {
    fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }
}

fn horn_mode(m: ModeArg) -> HornMode {
    match m {
        ModeArg::Inner => HornMode::Inner,
        ModeArg::Kan => HornMode::Kan,
        ModeArg::Left => HornMode::Left,
        ModeArg::Right => HornMode::Right,
    }
}

fn mode_name(m: HornMode) -> &'static str {
    match m {
        HornMode::Inner => "inner",
        HornMode::Kan => "all",
        HornMode::Left => "left",
        HornMode::Right => "right",
    }
}

fn horn_text(r: &HornReport) -> String {
    let mut out = format!("{} horns up to dimension {}: ", mode_name(r.mode), r.dim);
    out.push_str(match (r.all_fillable(), r.all_unique()) {
        (true, true) => "all fillable, all fillers unique\n",
        (true, false) => "all fillable, some fillers not unique\n",
        _ => "not all fillable\n",
    });
    for c in &r.counts {
        let _ = writeln!(out, "  Λ^{}_{}: {} tested, {} unfillable, {} with several fillers", c.n, c.k, c.tested, c.unfillable, c.non_unique);
    }
    if let Some(w) = &r.witness {
        let _ = writeln!(out, "witness: unfillable horn Λ^{}_{}", w.n, w.k);
        for (cell, values, target) in &w.assignment {
            let _ = writeln!(out, "  {cell} ↦ s{values:?}({target})");
        }
    }
    out
}

fn horns(x: &Arc<SimplicialSet>, dim: usize, mode: HornMode) -> Result<Outcome> {
    let r = classify(x, dim, mode)?;
    let status = if r.all_fillable() { Status::Holds } else { Status::Fails };
    Ok(outcome(status, horn_text(&r), r.to_json()))
}

/// Runs the horn check a later step relies on, returning its failure as
/// an outcome with witness.
fn require(x: &Arc<SimplicialSet>, dim: usize, mode: HornMode) -> Result<Option<Outcome>> {
    let d = match x.truncation() {
        Truncation::Complete => dim,
        Truncation::At(t) => t.min(dim),
    };
    let o = horns(x, d, mode)?;
    Ok((o.status != Status::Holds).then_some(o))
}

fn category_text(c: &FinCategory) -> String {
    let mut out = format!("objects: {}\n", c.objects().join(", "));
    for a in c.non_identity_arrows() {
        let _ = writeln!(out, "{}: {} → {}", c.arrow_name(a), c.object_name(c.source(a)), c.object_name(c.target(a)));
    }
    for f in c.non_identity_arrows() {
        for g in c.arrows_from(c.target(f)).filter(|&g| !c.is_identity(g)) {
            let h = c.compose(g, f).expect("composable");
            let _ = writeln!(out, "{} ∘ {} = {}", c.arrow_name(g), c.arrow_name(f), c.arrow_name(h));
        }
    }
    out
}

fn category_outcome(c: &FinCategory) -> Outcome {
    outcome(Status::Holds, category_text(c), c.to_json()).with_dot(dot::category(c))
}

fn set_text(x: &SimplicialSet) -> String {
    let mut out = format!("nondegenerate cells by dimension: {:?}\n", x.cell_counts());
    if let Truncation::At(t) = x.truncation() {
        let _ = writeln!(out, "truncated at dimension {t}");
    }
    for c in x.all_cells() {
        let faces: Vec<String> = x.cell_faces(c).iter().map(|f| x.describe(f)).collect();
        if faces.is_empty() {
            let _ = writeln!(out, "{}", x.name(c));
        } else {
            let _ = writeln!(out, "{}: faces {}", x.name(c), faces.join(", "));
        }
    }
    out
}

fn set_outcome(x: &SimplicialSet) -> Outcome {
    outcome(Status::Holds, set_text(x), x.to_json()).with_dot(dot::simplicial_set(x))
}

fn functor_text(f: &Functor) -> String {
    let (c, d) = (f.source(), f.target());
    let mut out = String::new();
    for x in 0..c.num_objects() {
        let _ = writeln!(out, "{} ↦ {}", c.object_name(x), d.object_name(f.on_object(x)));
    }
    for a in c.non_identity_arrows() {
        let _ = writeln!(out, "{} ↦ {}", c.arrow_name(a), d.arrow_name(f.on_arrow(a)));
    }
    out
}

fn group_text(g: &GroupPresentation) -> String {
    let mut out = format!("group of order {}\nrecognized: {:?}\nabelian: {}\n", g.order(), g.recognized, g.abelian);
    let _ = writeln!(out, "identity: {}", g.elements[g.identity]);
    let gens: Vec<&str> = g.generators.iter().map(|&i| g.elements[i].as_str()).collect();
    let _ = writeln!(out, "generators: {}", gens.join(", "));
    let _ = writeln!(out, "multiplication table:");
    for (a, row) in g.table.iter().enumerate() {
        let cells: Vec<&str> = row.iter().map(|&b| g.elements[b].as_str()).collect();
        let _ = writeln!(out, "  {} · _ = {}", g.elements[a], cells.join(" "));
    }
    out
}

fn invariant_outcome(inv: HomotopyInvariant) -> Outcome {
    let text = match &inv {
        HomotopyInvariant::Components(cs) => {
            let mut out = format!("{} components\n", cs.len());
            for c in cs {
                let _ = writeln!(out, "{{{}}}", c.join(", "));
            }
            out
        }
        HomotopyInvariant::Group(g) => group_text(g),
    };
    outcome(Status::Holds, text, json(&inv))
}

fn homology_text(hs: &[DegreeHomology]) -> String {
    let mut out = String::new();
    for h in hs {
        let _ = writeln!(out, "H_{} = {}{}", h.degree, h.group, if h.conclusive { "" } else { "  (window edge: inconclusive)" });
    }
    out
}

fn certificate_text(c: &FactorizationCertificate) -> String {
    let mut out = format!("{:?} through a middle complex with ranks {:?}\n", c.kind, c.middle.ranks());
    let _ = writeln!(out, "{} variables joined over {} stages", c.variables.len(), c.stages);
    for v in &c.variables {
        let _ = writeln!(out, "  degree {}: du = {:?}, p(u) = {:?}", v.degree, v.boundary.iter().map(|x| x.to_string()).collect::<Vec<_>>(), v.image.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }
    if !c.complete {
        let _ = writeln!(out, "stage budget exhausted: partial certificate");
    }
    out
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<infcat::doldkan::IntEntry>> {
    (0..m.rows()).map(|r| entries_to_json(&m.entries()[r * m.cols()..(r + 1) * m.cols()])).collect()
}

#[derive(Serialize)]
struct SimplicialModuleDoc {
    ring: Ring,
    ranks: Vec<usize>,
    /// `faces[n][i] = d_i : A_n → A_{n-1}`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<Vec<infcat::doldkan::IntEntry>>>>,
    /// `degeneracies[n][i] = s_i : A_n → A_{n+1}`.
    degeneracies: Vec<Vec<Vec<Vec<infcat::doldkan::IntEntry>>>>,
}

impl SimplicialModuleDoc {
    fn new(a: &SimplicialAbGroup) -> Self {
        let d = a.dim();
        Self {
            ring: a.ring(),
            ranks: a.ranks().to_vec(),
            faces: (0..=d).map(|n| if n == 0 { Vec::new() } else { (0..=n).map(|i| matrix_rows(a.face(n, i))).collect() }).collect(),
            degeneracies: (0..d).map(|n| (0..=n).map(|i| matrix_rows(a.degeneracy(n, i))).collect()).collect(),
        }
    }
}

fn monoid(name: &str) -> Result<Monoid> {
    match name {
        "S3" => Ok(Monoid::symmetric3()),
        _ => match name.strip_prefix("Z/").map(str::parse::<usize>) {
            Some(Ok(n)) if n >= 1 => Ok(Monoid::cyclic(n)),
            _ => Err(Error::Argument(format!("unknown group {name:?}: use Z/n or S3"))),
        },
    }
}

fn embed_kind(e: EmbedArg) -> EmbedKind {
    match e {
        EmbedArg::Discrete => EmbedKind::Discrete,
        EmbedArg::Constant => EmbedKind::Constant,
    }
}

fn load_bisimplicial(args: &crate::Bisimplicial) -> Result<BisimplicialSet> {
    load(&args.file)?.bisimplicial((args.dim, args.vertical_dim), embed_kind(args.embed))
}

fn set_of(file: &Path, dim: usize) -> Result<Arc<SimplicialSet>> {
    load(file)?.simplicial_set(dim)
}

pub fn run(command: &Command) -> Result<Outcome> {
    Ok(match command {
        Command::CheckQuasicategory { file, dim, mode } => horns(&set_of(file, dim.dim)?, dim.dim, horn_mode(*mode))?,
        Command::CheckKan { file, dim } => horns(&set_of(file, dim.dim)?, dim.dim, HornMode::Kan)?,
        Command::Ho { file } => {
            let x = set_of(file, 3)?;
            if let Some(o) = require(&x, 3, HornMode::Inner)? {
                return Ok(o);
            }
            category_outcome(&homotopy_category(&x)?.category)
        }
        Command::Equivalences { file } => {
            let x = set_of(file, 3)?;
            if let Some(o) = require(&x, 3, HornMode::Inner)? {
                return Ok(o);
            }
            let names: Vec<String> = equivalences(&x)?.iter().map(|e| x.describe(e)).collect();
            outcome(Status::Holds, names.iter().map(|n| format!("{n}\n")).collect(), json(&names))
        }
        Command::MaxKan { file } => {
            let x = set_of(file, 3)?;
            if let Some(o) = require(&x, 3, HornMode::Inner)? {
                return Ok(o);
            }
            set_outcome(&*max_kan_subset(&x)?)
        }
        Command::HomSpace { file, from, to, side, dim } => {
            let x = set_of(file, dim.dim + 1)?;
            let side = match side {
                SideArg::Left => HomSide::Left,
                SideArg::Right => HomSide::Right,
            };
            set_outcome(&hom_space(&x, from, to, side, dim.dim)?)
        }
        Command::Pi0 { file } => {
            let x = set_of(file, 1)?;
            let base = x.names(0).first().cloned().ok_or_else(|| Error::Argument("empty simplicial set".into()))?;
            invariant_outcome(homotopy_group(&x, &base, 0)?)
        }
        Command::Pi1 { file, base } => pi(file, base, 1)?,
        Command::Pin { file, base, n } => pi(file, base, *n)?,
        Command::Nerve { file, dim } => set_outcome(&nerve(&load(file)?.category()?, dim.dim).set),
        Command::Bg { group } => category_outcome(&bg(&monoid(group)?)),
        Command::Localize { file, fuel } => {
            let r = load(file)?.relative()?;
            let l = localize(&r, *fuel as usize)?;
            let mut text = category_text(&l.category);
            let _ = writeln!(text, "closed after {} rounds\nlocalization functor:", l.rounds);
            text.push_str(&functor_text(&l.functor));
            let structured = json(&serde_json::json!({
                "category": CategoryDoc::from_category(&l.category),
                "functor": FunctorDoc::from_functor(&l.functor),
                "rounds": l.rounds,
            }));
            outcome(Status::Holds, text, structured).with_dot(dot::category(&l.category))
        }
        Command::CoherentNerve { file, dim } => set_outcome(&*coherent_nerve(load(file)?.simplicial_category()?, dim.dim)?),
        Command::FrakC { dim } => {
            let c = frak_c(dim.dim)?;
            let mut text = format!("objects: {}\n", c.objects().join(", "));
            for x in 0..c.num_objects() {
                for y in x..c.num_objects() {
                    let _ = writeln!(text, "Map({}, {}): nondegenerate cells {:?}", c.objects()[x], c.objects()[y], c.map_space(x, y).cell_counts());
                }
            }
            outcome(Status::Holds, text, SimplicialCategoryDoc::from_category(&c).to_json())
        }
        Command::NormalizedChains { file, dim, ring } => {
            let ring: Ring = ring.parse().map_err(|e: Error| Error::Argument(e.to_string()))?;
            let a = SimplicialAbGroup::free(&set_of(file, dim.dim)?, dim.dim, ring)?;
            let c = normalized_chains(&a)?;
            let text = format!("ranks {:?} in degrees {}..={}\n{}", c.ranks(), c.lo(), c.hi(), homology_text(&homology(&c)));
            outcome(Status::Holds, text, c.to_json())
        }
        Command::DoldKan { file, dim } => {
            let a = dold_kan_gamma(load(file)?.complex()?, dim.dim)?;
            let text = format!("simplicial module over {} with ranks {:?}\n", a.ring(), a.ranks());
            outcome(Status::Holds, text, json(&SimplicialModuleDoc::new(&a)))
        }
        Command::Homology { file } => {
            let hs = homology(load(file)?.complex()?);
            outcome(Status::Holds, homology_text(&hs), json(&hs))
        }
        Command::QuasiIso { file } => {
            let r = is_quasi_iso(load(file)?.chain_map()?)?;
            let status = match (r.quasi_iso, r.inconclusive.is_empty()) {
                (false, _) => Status::Fails,
                (true, true) => Status::Holds,
                (true, false) => Status::Undecided,
            };
            let mut text = format!("quasi-isomorphism: {}\n", if status == Status::Undecided { "undecided".into() } else { r.quasi_iso.to_string() });
            text.push_str("homology of the cone:\n");
            text.push_str(&homology_text(&r.cone_homology));
            outcome(status, text, json(&r))
        }
        Command::Factor4a { file } => {
            let f = load(file)?.chain_map()?.clone();
            let c = factor_trivcofib_fib(&f)?;
            c.verify(&f)?;
            outcome(Status::Holds, certificate_text(&c), json(&c))
        }
        Command::Factor4b { file, fuel } => {
            let f = load(file)?.chain_map()?.clone();
            let c = factor_cofib_trivfib_partial(&f, *fuel as usize)?;
            let status = if c.complete {
                c.verify(&f)?;
                Status::Holds
            } else {
                Status::Undecided
            };
            outcome(status, certificate_text(&c), json(&c))
        }
        Command::LeftFibration { file } => {
            let r = is_left_fibration(load(file)?.functor()?);
            let mut text = format!("left fibration: {}\n", r.holds);
            for w in &r.witnesses {
                let _ = writeln!(text, "  {}", serde_json::to_string(w).expect("witnesses serialize"));
            }
            outcome(if r.holds { Status::Holds } else { Status::Fails }, text, json(&r))
        }
        Command::CocartAnalyze { file } => {
            let input = load(file)?;
            let f = input.functor()?;
            let a = cocart_analyze(f);
            outcome(Status::Holds, a.report(), json(&a)).with_dot(dot::cocart(f, &a))
        }
        Command::GrothendieckBuild { file } => {
            let p = grothendieck_build(load(file)?.split()?)?;
            let mut text = category_text(p.source());
            text.push_str("projection:\n");
            text.push_str(&functor_text(&p));
            outcome(Status::Holds, text, FunctorDoc::from_functor(&p).to_json()).with_dot(dot::category(p.source()))
        }
        Command::GrothendieckRead { file } => {
            let input = load(file)?;
            let f = input.functor()?;
            let data = grothendieck_read(f, &cocart_analyze(f))?;
            let mut text = String::new();
            for fib in &data.fibers {
                let _ = writeln!(text, "fiber over {}: objects {}; arrows {}", fib.base_object, fib.objects.join(", "), fib.arrows.join(", "));
            }
            for t in &data.transports {
                let objects: Vec<String> = t.objects.iter().map(|(a, b)| format!("{a} ↦ {b}")).collect();
                let _ = writeln!(text, "transport along {}: {}", t.base_arrow, objects.join(", "));
            }
            for th in &data.thetas {
                let _ = writeln!(text, "θ({}, {}) invertible: {}", th.second, th.first, th.is_isomorphism);
            }
            let _ = writeln!(text, "all comparison maps invertible: {}", data.all_thetas_invertible);
            let _ = writeln!(text, "independent of the choice of lifts: {} ({} choices checked)", data.choice_independent, data.choices_checked);
            outcome(Status::Holds, text, json(&data))
        }
        Command::Join { left, right } => category_outcome(&join(&*load(left)?.category()?, &*load(right)?.category()?)),
        Command::TwistedArrows { file } => {
            let t = twisted_arrows(&load(file)?.category()?);
            let mut text = category_text(&t.category);
            text.push_str("projection:\n");
            text.push_str(&functor_text(&t.projection));
            outcome(Status::Holds, text, FunctorDoc::from_functor(&t.projection).to_json()).with_dot(dot::category(&t.category))
        }
        Command::RezkNerve { file, dim, vertical_dim } => {
            let x = rezk_nerve(&load(file)?.relative()?, *dim, *vertical_dim)?;
            let mut text = String::from("cells by bidegree (rows p, columns q):\n");
            for row in x.counts() {
                let _ = writeln!(text, "  {row:?}");
            }
            outcome(Status::Holds, text, x.to_json()).with_dot(x.to_dot())
        }
        Command::SegalCheck(args) => {
            let r = strict_segal_check(&load_bisimplicial(args)?)?;
            let mut text = format!("strict Segal: {}\n", r.holds);
            if let Some(f) = &r.failure {
                let _ = writeln!(
                    text,
                    "spine map fails at bidegree ({}, {}): {} cells, {} chains, injective {}",
                    f.p, f.q, f.cells, f.chains, f.injective
                );
            }
            outcome(if r.holds { Status::Holds } else { Status::Fails }, text, json(&r))
        }
        Command::Completeness(args) => {
            let r = completeness_check(&load_bisimplicial(args)?)?;
            let mut text = format!("complete: {}\n", r.complete);
            let _ = writeln!(text, "homotopy classes of arrows: {}, invertible: {}", r.homotopy_classes, r.invertible_classes);
            for o in &r.not_reached {
                let _ = writeln!(text, "  equivalence not hit by an object: {o}");
            }
            for (a, b) in &r.not_fully_faithful {
                let _ = writeln!(text, "  not fully faithful between {a} and {b}");
            }
            outcome(if r.complete { Status::Holds } else { Status::Fails }, text, json(&r))
        }
        Command::ExportDot { file } => {
            let d = match load(file)? {
                Input::Category(doc) => dot::category(&doc.to_category()?),
                Input::Set(x) => dot::simplicial_set(&x),
                Input::Functor(f) => dot::cocart(&f, &cocart_analyze(&f)),
                Input::Bisimplicial(x) => x.to_dot(),
                other => return Err(Error::Unsupported(format!("no graph form for a {}", other.kind()))),
            };
            outcome(Status::Holds, d.clone(), d.clone()).with_dot(d)
        }
    })
}

/// `π_n` needs horn fillers through `n + 2`; categories are read through
/// their nerve truncated there.
fn pi(file: &Path, base: &str, n: usize) -> Result<Outcome> {
    let x = set_of(file, (n + 2).max(3))?;
    if let Some(o) = require(&x, n + 2, HornMode::Kan)? {
        return Ok(o);
    }
    Ok(invariant_outcome(homotopy_group(&x, base, n)?))
}
