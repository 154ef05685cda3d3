//! Ore conditions and bounded zig-zag localization.

use std::collections::HashMap;
use std::fmt;

use super::{FinCategory, MorId, ObjId};
use crate::error::{Error, Result};
use crate::util::UnionFind;

const WORD_BUDGET: usize = 2_000_000;

/// A set of morphisms of a fixed category. Identities are always members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismClass {
    members: Vec<bool>,
}

impl MorphismClass {
    pub fn new(c: &FinCategory, members: impl IntoIterator<Item = MorId>) -> Result<Self> {
        let mut flags = vec![false; c.num_morphisms()];
        for m in members {
            *flags.get_mut(m).ok_or_else(|| Error::invalid(format!("morphism {m} is not in the category")))? = true;
        }
        for o in 0..c.num_objects() {
            flags[c.identity(o)] = true;
        }
        Ok(MorphismClass { members: flags })
    }

    pub fn from_names(c: &FinCategory, names: &[&str]) -> Result<Self> {
        let ids = names
            .iter()
            .map(|n| c.morphism_named(n).ok_or_else(|| Error::invalid(format!("unknown morphism `{n}`"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(c, ids)
    }

    pub fn identities(c: &FinCategory) -> Self {
        Self::new(c, []).expect("identities are morphisms")
    }

    pub fn isomorphisms(c: &FinCategory) -> Self {
        Self::new(c, (0..c.num_morphisms()).filter(|&f| c.is_iso(f))).expect("isos are morphisms")
    }

    pub fn all(c: &FinCategory) -> Self {
        Self::new(c, 0..c.num_morphisms()).expect("all morphisms")
    }

    pub fn contains(&self, m: MorId) -> bool {
        self.members[m]
    }

    pub fn members(&self) -> impl Iterator<Item = MorId> + '_ {
        self.members.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn flags(&self) -> &[bool] {
        &self.members
    }

    pub fn is_closed_under_composition(&self, c: &FinCategory) -> bool {
        c.composition_table().iter().all(|(&(g, f), &gf)| !(self.members[g] && self.members[f]) || self.members[gf])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OreOrientation {
    /// Spans `b <-s- a -f-> c` complete to `b -g-> d <-t- c` with `t ∈ S`.
    Left,
    /// Cospans `b -s-> a <-f- c` complete to `b <-g- d -t-> c` with `t ∈ S`.
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OreVerdict {
    Holds,
    Fails { s: MorId, f: MorId },
}

impl OreVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, OreVerdict::Holds)
    }
}

pub fn ore_check(c: &FinCategory, s: &MorphismClass, orientation: OreOrientation) -> OreVerdict {
    for sm in s.members() {
        match orientation {
            OreOrientation::Left => {
                let (a, b) = (c.source(sm), c.target(sm));
                for &f in c.outgoing(a) {
                    let completes = c.outgoing(c.target(f)).iter().any(|&t| {
                        s.contains(t)
                            && c.hom(b, c.target(t)).iter().any(|&g| c.compose(g, sm) == c.compose(t, f))
                    });
                    if !completes {
                        return OreVerdict::Fails { s: sm, f };
                    }
                }
            }
            OreOrientation::Right => {
                let (b, a) = (c.source(sm), c.target(sm));
                for &f in c.incoming(a) {
                    let completes = c.incoming(c.source(f)).iter().any(|&t| {
                        s.contains(t)
                            && c.hom(c.source(t), b).iter().any(|&g| c.compose(sm, g) == c.compose(f, t))
                    });
                    if !completes {
                        return OreVerdict::Fails { s: sm, f };
                    }
                }
            }
        }
    }
    OreVerdict::Holds
}

/// A zig-zag letter: a morphism traversed forwards or a member of S
/// traversed backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Forward(MorId),
    Backward(MorId),
}

impl Letter {
    pub fn start(self, c: &FinCategory) -> ObjId {
        match self {
            Letter::Forward(f) => c.source(f),
            Letter::Backward(s) => c.target(s),
        }
    }

    pub fn end(self, c: &FinCategory) -> ObjId {
        match self {
            Letter::Forward(f) => c.target(f),
            Letter::Backward(s) => c.source(s),
        }
    }

    pub fn render(self, c: &FinCategory) -> String {
        match self {
            Letter::Forward(f) => c.morphism(f).name.clone(),
            Letter::Backward(s) => format!("{}^-1", c.morphism(s).name),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalizedHom {
    /// One shortest representative word per class, in path order.
    Stable { classes: Vec<Vec<Letter>> },
    Unknown { previous: usize, current: usize },
}

impl LocalizedHom {
    pub fn class_count(&self) -> Option<usize> {
        match self {
            LocalizedHom::Stable { classes } => Some(classes.len()),
            LocalizedHom::Unknown { .. } => None,
        }
    }
}

/// Renders a word; the empty word is the identity.
pub fn render_word(c: &FinCategory, x: ObjId, word: &[Letter]) -> String {
    if word.is_empty() {
        return c.morphism(c.identity(x)).name.clone();
    }
    word.iter().map(|l| l.render(c)).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Forward(m) => write!(f, "+{m}"),
            Letter::Backward(m) => write!(f, "-{m}"),
        }
    }
}

/// Hom-set of `C[S^-1]` from `x` to `y`, computed on zig-zag words of length
/// at most `word_cap`. The answer is reported only when the class count at
/// `word_cap - 1` agrees with the count at `word_cap`.
pub fn gz_localize_hom(c: &FinCategory, s: &MorphismClass, x: ObjId, y: ObjId, word_cap: usize) -> Result<LocalizedHom> {
    if word_cap < 1 {
        return Err(Error::invalid("word_cap must be at least 1"));
    }
    if x >= c.num_objects() || y >= c.num_objects() {
        return Err(Error::invalid("object out of range"));
    }
    let previous = classes_up_to(c, s, x, y, word_cap - 1)?.len();
    let classes = classes_up_to(c, s, x, y, word_cap)?;
    if previous == classes.len() {
        Ok(LocalizedHom::Stable { classes })
    } else {
        Ok(LocalizedHom::Unknown { previous, current: classes.len() })
    }
}

fn letters_from(c: &FinCategory, s: &MorphismClass, o: ObjId) -> Vec<Letter> {
    let mut out: Vec<Letter> =
        c.outgoing(o).iter().filter(|&&f| !c.is_identity(f)).map(|&f| Letter::Forward(f)).collect();
    out.extend(c.incoming(o).iter().filter(|&&t| !c.is_identity(t) && s.contains(t)).map(|&t| Letter::Backward(t)));
    out
}

fn classes_up_to(c: &FinCategory, s: &MorphismClass, x: ObjId, y: ObjId, cap: usize) -> Result<Vec<Vec<Letter>>> {
    let mut words: Vec<Vec<Letter>> = Vec::new();
    let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut all_count = 0usize;
    if x == y {
        words.push(Vec::new());
    }
    for _ in 0..cap {
        let mut next = Vec::new();
        for w in &frontier {
            let here = w.last().map_or(x, |l| l.end(c));
            for l in letters_from(c, s, here) {
                let mut w2 = w.clone();
                w2.push(l);
                if l.end(c) == y {
                    words.push(w2.clone());
                }
                next.push(w2);
                all_count += 1;
                if all_count > WORD_BUDGET {
                    return Err(Error::resource("word budget", format!("more than {WORD_BUDGET} zig-zag words")));
                }
            }
        }
        frontier = next;
    }
    let index: HashMap<&Vec<Letter>, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut uf = UnionFind::new(words.len());
    for (i, w) in words.iter().enumerate() {
        for r in rewrites(c, s, w) {
            let j = index[&r];
            uf.union(i, j);
        }
    }
    let (labels, count) = uf.labels();
    let mut reps: Vec<Option<usize>> = vec![None; count];
    for (i, &l) in labels.iter().enumerate() {
        let better = match reps[l] {
            None => true,
            Some(j) => (words[i].len(), &words[i]) < (words[j].len(), &words[j]),
        };
        if better {
            reps[l] = Some(i);
        }
    }
    let mut out: Vec<Vec<Letter>> = reps.into_iter().map(|r| words[r.expect("every class has a word")].clone()).collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(out)
}

/// One-step rewrites that never lengthen a word. Each is an identity that
/// holds in the localization.
fn rewrites(c: &FinCategory, s: &MorphismClass, w: &[Letter]) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    for p in 0..w.len().saturating_sub(1) {
        let replacement: Option<Vec<Letter>> = match (w[p], w[p + 1]) {
            (Letter::Forward(f), Letter::Forward(g)) => {
                let gf = c.compose(g, f).expect("path is composable");
                Some(if c.is_identity(gf) { vec![] } else { vec![Letter::Forward(gf)] })
            }
            (Letter::Forward(f), Letter::Backward(t)) if f == t => Some(vec![]),
            (Letter::Backward(t), Letter::Forward(f)) if f == t => Some(vec![]),
            (Letter::Forward(f), Letter::Backward(t)) => {
                // f = t∘h gives t⁻¹∘f = h
                c.hom(c.source(f), c.source(t))
                    .iter()
                    .find(|&&h| c.compose(t, h) == Some(f))
                    .map(|&h| if c.is_identity(h) { vec![] } else { vec![Letter::Forward(h)] })
            }
            (Letter::Backward(t), Letter::Forward(f)) => {
                // f = h∘t gives f∘t⁻¹ = h
                c.hom(c.target(t), c.target(f))
                    .iter()
                    .find(|&&h| c.compose(h, t) == Some(f))
                    .map(|&h| if c.is_identity(h) { vec![] } else { vec![Letter::Forward(h)] })
            }
            (Letter::Backward(t), Letter::Backward(u)) => {
                // path t̄ then ū, with u: a -> b and t: b -> c
                let tu = c.compose(t, u).expect("path is composable");
                if s.contains(tu) {
                    Some(if c.is_identity(tu) { vec![] } else { vec![Letter::Backward(tu)] })
                } else {
                    None
                }
            }
        };
        if let Some(rep) = replacement {
            let mut w2 = w[..p].to_vec();
            w2.extend(rep);
            w2.extend_from_slice(&w[p + 2..]);
            out.push(w2);
        }
    }
    // a formal inverse of a morphism that is already invertible is its inverse
    for (p, &l) in w.iter().enumerate() {
        if let Letter::Backward(t) = l {
            if let Some(u) = c.inverse(t) {
                let mut w2 = w.to_vec();
                w2[p] = Letter::Forward(u);
                out.push(w2);
            }
        }
    }
    // members of S are monic and epic after localization
    for (p, &l) in w.iter().enumerate() {
        let (Letter::Forward(f) | Letter::Backward(f)) = l;
        for g in cancellation_partners(c, s, f) {
            let mut w2 = w[..p].to_vec();
            match l {
                Letter::Forward(_) if c.is_identity(g) => {}
                Letter::Forward(_) => w2.push(Letter::Forward(g)),
                Letter::Backward(_) if c.is_identity(g) => {}
                Letter::Backward(_) if s.contains(g) => w2.push(Letter::Backward(g)),
                Letter::Backward(_) => continue,
            }
            w2.extend_from_slice(&w[p + 1..]);
            out.push(w2);
        }
    }
    out
}

/// Morphisms `g` parallel to `f` with `t∘f = t∘g` or `f∘t = g∘t` for some
/// `t ∈ S`.
fn cancellation_partners(c: &FinCategory, s: &MorphismClass, f: MorId) -> Vec<MorId> {
    let (a, b) = (c.source(f), c.target(f));
    c.hom(a, b)
        .iter()
        .copied()
        .filter(|&g| g != f)
        .filter(|&g| {
            c.outgoing(b).iter().any(|&t| s.contains(t) && c.compose(t, f) == c.compose(t, g))
                || c.incoming(a).iter().any(|&t| s.contains(t) && c.compose(f, t) == c.compose(g, t))
        })
        .collect()
}
