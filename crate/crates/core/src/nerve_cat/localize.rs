//! Naive localization `C[W⁻¹]` by completion of a path rewriting system.
//!
//! Words are composable paths in the arrows of `C` and formal inverses of
//! `W`, read in traversal order. The relations of `C` and the inverse laws
//! are oriented by shortlex and completed à la Knuth–Bendix; one round adds
//! every critical pair of the current system. Once the system is confluent
//! the irreducible words are the arrows of the localization.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use super::category::{Arrow, FinCategory};
use super::functor::Functor;
use crate::error::{arg, Error, Result};

/// Largest number of rules or irreducible words the engine will hold.
const CAPACITY: usize = 20_000;

/// A category with a distinguished set of weak arrows containing the identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeCategory {
    pub category: Arc<FinCategory>,
    weak: BTreeSet<usize>,
}

impl RelativeCategory {
    /// Identities are added to `weak` automatically.
    pub fn new(category: Arc<FinCategory>, weak: BTreeSet<usize>) -> Result<Self> {
        if weak.iter().any(|&a| a >= category.num_arrows()) {
            return arg("weak arrow out of range");
        }
        let mut weak = weak;
        weak.extend((0..category.num_objects()).map(|x| category.identity(x)));
        Ok(Self { category, weak })
    }

    pub fn minimal(category: Arc<FinCategory>) -> Self {
        Self::new(category, BTreeSet::new()).expect("identities only")
    }

    pub fn maximal(category: Arc<FinCategory>) -> Self {
        let all = (0..category.num_arrows()).collect();
        Self::new(category, all).expect("all arrows")
    }

    /// `W` = the isomorphisms of `C`.
    pub fn isomorphisms(category: Arc<FinCategory>) -> Self {
        let isos = (0..category.num_arrows()).filter(|&a| category.is_invertible(a)).collect();
        Self::new(category, isos).expect("isomorphisms")
    }

    pub fn weak(&self) -> &BTreeSet<usize> {
        &self.weak
    }

    pub fn is_weak(&self, a: usize) -> bool {
        self.weak.contains(&a)
    }

    /// Whether `W` is closed under composition.
    pub fn is_subcategory(&self) -> bool {
        let c = &self.category;
        self.weak
            .iter()
            .all(|&g| self.weak.iter().all(|&f| c.compose(g, f).is_none_or(|h| self.weak.contains(&h))))
    }
}

/// The localization with its canonical functor and the number of completion
/// rounds used.
#[derive(Clone, Debug)]
pub struct Localization {
    pub category: Arc<FinCategory>,
    pub functor: Functor,
    pub rounds: usize,
}

type Word = Vec<u32>;

fn shortlex(a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

struct System {
    rules: Vec<(Word, Word)>,
}

impl System {
    fn reduce(&self, word: &Word) -> Word {
        let mut w = word.clone();
        'outer: loop {
            for (l, r) in &self.rules {
                if let Some(p) = find(&w, l) {
                    w.splice(p..p + l.len(), r.iter().copied());
                    continue 'outer;
                }
            }
            return w;
        }
    }

    fn is_reducible_suffix(&self, w: &Word) -> bool {
        self.rules.iter().any(|(l, _)| w.ends_with(l))
    }

    fn critical_pairs(&self) -> Vec<(Word, Word)> {
        let mut out = Vec::new();
        for (l1, r1) in &self.rules {
            for (l2, r2) in &self.rules {
                // suffix of l1 overlapping a prefix of l2
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] == l2[..k] {
                        let mut a = r1.clone();
                        a.extend_from_slice(&l2[k..]);
                        let mut b = l1[..l1.len() - k].to_vec();
                        b.extend_from_slice(r2);
                        out.push((a, b));
                    }
                }
                // l2 inside l1
                if l2.len() < l1.len() {
                    if let Some(p) = find(l1, l2) {
                        let mut b = l1[..p].to_vec();
                        b.extend_from_slice(r2);
                        b.extend_from_slice(&l1[p + l2.len()..]);
                        out.push((r1.clone(), b));
                    }
                }
            }
        }
        out
    }

    /// Drops rules whose left side is reducible by another rule and
    /// normalizes right sides.
    fn interreduce(&mut self) {
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..self.rules.len() {
                let l = self.rules[i].0.clone();
                let reducible = self.rules.iter().enumerate().any(|(j, (l2, _))| j != i && find(&l, l2).is_some());
                if reducible {
                    let (l, r) = self.rules.remove(i);
                    let (a, b) = (self.reduce(&l), self.reduce(&r));
                    if let Some(rule) = orient(a, b) {
                        if !self.rules.contains(&rule) {
                            self.rules.push(rule);
                        }
                    }
                    changed = true;
                    break;
                }
            }
        }
        for i in 0..self.rules.len() {
            let r = self.rules[i].1.clone();
            self.rules[i].1 = self.reduce(&r);
        }
        self.rules.sort_by(|a, b| shortlex(&a.0, &b.0).then_with(|| shortlex(&a.1, &b.1)));
        self.rules.dedup();
    }
}

fn find(hay: &[u32], needle: &[u32]) -> Option<usize> {
    if needle.len() > hay.len() {
        return None;
    }
    (0..=hay.len() - needle.len()).find(|&p| hay[p..p + needle.len()] == *needle)
}

fn orient(a: Word, b: Word) -> Option<(Word, Word)> {
    match shortlex(&a, &b) {
        Ordering::Equal => None,
        Ordering::Greater => Some((a, b)),
        Ordering::Less => Some((b, a)),
    }
}

/// `C[W⁻¹]` if the completion terminates within `fuel` rounds and the result
/// is finite; `FuelExhausted` otherwise.
pub fn localize(r: &RelativeCategory, fuel: usize) -> Result<Localization> {
    if fuel == 0 {
        return arg("fuel must be positive");
    }
    let c = &r.category;
    // letters: non-identity arrows, then inverses of non-identity weak arrows
    let mut letters: Vec<(usize, bool)> = c.non_identity_arrows().map(|a| (a, false)).collect();
    letters.extend(r.weak.iter().filter(|&&a| !c.is_identity(a)).map(|&a| (a, true)));
    let letter_of: HashMap<(usize, bool), u32> = letters.iter().enumerate().map(|(i, &l)| (l, i as u32)).collect();
    let ends = |l: u32| {
        let (a, inv) = letters[l as usize];
        if inv {
            (c.target(a), c.source(a))
        } else {
            (c.source(a), c.target(a))
        }
    };
    let as_word = |a: usize| -> Word {
        if c.is_identity(a) {
            Vec::new()
        } else {
            vec![letter_of[&(a, false)]]
        }
    };

    let mut system = System { rules: Vec::new() };
    for f in c.non_identity_arrows() {
        for g in c.arrows_from(c.target(f)) {
            if c.is_identity(g) {
                continue;
            }
            let h = c.compose(g, f).expect("composable");
            system.rules.push((vec![letter_of[&(f, false)], letter_of[&(g, false)]], as_word(h)));
        }
    }
    for &w in r.weak.iter().filter(|&&a| !c.is_identity(a)) {
        let (l, li) = (letter_of[&(w, false)], letter_of[&(w, true)]);
        system.rules.push((vec![l, li], Vec::new()));
        system.rules.push((vec![li, l], Vec::new()));
    }
    system.interreduce();

    let mut rounds = 0;
    loop {
        if rounds == fuel {
            return Err(Error::FuelExhausted {
                rounds,
                detail: format!("rewriting system not confluent yet ({} rules)", system.rules.len()),
            });
        }
        rounds += 1;
        let mut new_rules: Vec<(Word, Word)> = Vec::new();
        for (a, b) in system.critical_pairs() {
            if let Some(rule) = orient(system.reduce(&a), system.reduce(&b)) {
                if !new_rules.contains(&rule) {
                    new_rules.push(rule);
                }
            }
        }
        if new_rules.is_empty() {
            break;
        }
        system.rules.extend(new_rules);
        system.interreduce();
        if system.rules.len() > CAPACITY {
            return Err(Error::FuelExhausted { rounds, detail: format!("more than {CAPACITY} rules") });
        }
    }

    // irreducible words, breadth first from every object
    let max_lhs = system.rules.iter().map(|(l, _)| l.len()).max().unwrap_or(1);
    let mut words: Vec<(usize, Word)> = (0..c.num_objects()).map(|x| (x, Vec::new())).collect();
    let mut queue: VecDeque<usize> = (0..words.len()).collect();
    let mut states: Option<usize> = if max_lhs <= 1 { Some(c.num_objects()) } else { None };
    let mut current_len = 0;
    while let Some(i) = queue.pop_front() {
        let (start, word) = words[i].clone();
        if word.len() > current_len {
            current_len = word.len();
            if current_len == max_lhs - 1 && states.is_none() {
                states = Some(words.iter().filter(|(_, w)| w.len() == current_len).count());
            }
            if let Some(s) = states {
                if current_len > s + max_lhs {
                    return Err(Error::FuelExhausted {
                        rounds,
                        detail: "the localization is infinite: irreducible words have unbounded length".into(),
                    });
                }
            }
        }
        let end = word.last().map_or(start, |&l| ends(l).1);
        for l in 0..letters.len() as u32 {
            if ends(l).0 != end {
                continue;
            }
            let mut longer = word.clone();
            longer.push(l);
            if !system.is_reducible_suffix(&longer) {
                if words.len() >= CAPACITY {
                    return Err(Error::FuelExhausted { rounds, detail: format!("more than {CAPACITY} arrows") });
                }
                words.push((start, longer));
                queue.push_back(words.len() - 1);
            }
        }
    }

    let letter_name = |l: u32| {
        let (a, inv) = letters[l as usize];
        if inv {
            format!("{}^-1", c.arrow_name(a))
        } else {
            c.arrow_name(a).to_string()
        }
    };
    let arrows: Vec<Arrow> = words
        .iter()
        .map(|(start, w)| {
            let name = if w.is_empty() {
                c.arrow_name(c.identity(*start)).to_string()
            } else {
                w.iter().map(|&l| letter_name(l)).collect::<Vec<_>>().join(";")
            };
            let target = w.last().map_or(*start, |&l| ends(l).1);
            Arrow { name, source: *start, target }
        })
        .collect();
    let index: HashMap<(usize, Word), usize> = words.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let identities = (0..c.num_objects()).collect();
    let composite = |g: usize, f: usize| {
        let (start, wf) = &words[f];
        let mut w = wf.clone();
        w.extend_from_slice(&words[g].1);
        index.get(&(*start, system.reduce(&w))).copied()
    };
    let category = Arc::new(FinCategory::from_parts(c.objects().to_vec(), arrows, identities, composite).map_err(|e| {
        Error::Inconsistent(format!("completed system does not present a category: {e}"))
    })?);
    let arrow_map = (0..c.num_arrows())
        .map(|a| index[&(c.source(a), system.reduce(&as_word(a)))])
        .collect();
    let functor = Functor::new(c.clone(), category.clone(), (0..c.num_objects()).collect(), arrow_map)?;
    Ok(Localization { category, functor, rounds })
}
