//! Finite categories, functors and the constructions built on them.

mod localization;
mod nerve;
mod text;
mod theta;

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

pub use localization::{gz_localize_hom, ore_check, render_word, Letter, LocalizedHom, MorphismClass, OreOrientation, OreVerdict};
pub use nerve::{nerve, nerve_chain, nerve_map};
pub use text::{
    parse_category, parse_category_unchecked, parse_functor, parse_functor_bundle, write_category, write_functor,
    write_functor_bundle,
};
pub use theta::{parse_theta, theta_compose, theta_hom, ThetaMorphism, ThetaObject};

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub source: ObjId,
    pub target: ObjId,
}

/// A finite category: objects, morphisms with endpoints, designated
/// identities and a composition table `(g, f) -> g∘f` on composable pairs.
#[derive(Clone, Debug)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorId>,
    composition: HashMap<(MorId, MorId), MorId>,
    hom: HashMap<(ObjId, ObjId), Vec<MorId>>,
    outgoing: Vec<Vec<MorId>>,
    incoming: Vec<Vec<MorId>>,
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.composition == other.composition
    }
}

impl Eq for FinCategory {}

#[derive(Clone, Debug, Default)]
pub struct FinCategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: HashMap<ObjId, MorId>,
    composition: HashMap<(MorId, MorId), MorId>,
}

impl FinCategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: impl Into<String>) -> ObjId {
        self.objects.push(name.into());
        self.objects.len() - 1
    }

    pub fn morphism(&mut self, name: impl Into<String>, source: ObjId, target: ObjId) -> MorId {
        self.morphisms.push(Morphism { name: name.into(), source, target });
        self.morphisms.len() - 1
    }

    /// Designates `mor` as the identity of `obj`.
    pub fn identity(&mut self, obj: ObjId, mor: MorId) -> &mut Self {
        self.identities.insert(obj, mor);
        self
    }

    /// Records `g∘f = gf`.
    pub fn compose(&mut self, g: MorId, f: MorId, gf: MorId) -> &mut Self {
        self.composition.insert((g, f), gf);
        self
    }

    pub fn object_named(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_named(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn object_name(&self, obj: ObjId) -> &str {
        &self.objects[obj]
    }

    pub fn has_identity(&self, obj: ObjId) -> bool {
        self.identities.contains_key(&obj)
    }

    /// Checks endpoints and identity designations, then fills in the
    /// composites with identities that were not given explicitly. Other
    /// gaps and law violations are left for [`verify_category`].
    pub fn build(self) -> Result<FinCategory> {
        let n = self.objects.len();
        for (i, m) in self.morphisms.iter().enumerate() {
            if m.source >= n || m.target >= n {
                return Err(Error::ill_formed(format!("morphism {i} has an endpoint outside the object list")));
            }
        }
        let mut identities = Vec::with_capacity(n);
        for obj in 0..n {
            let id = *self
                .identities
                .get(&obj)
                .ok_or_else(|| Error::ill_formed(format!("object `{}` has no identity", self.objects[obj])))?;
            let m = self.morphisms.get(id).ok_or_else(|| Error::ill_formed("identity is not a morphism"))?;
            if m.source != obj || m.target != obj {
                return Err(Error::ill_formed(format!("identity of `{}` is not an endomorphism of it", self.objects[obj])));
            }
            identities.push(id);
        }
        let mut composition = self.composition;
        for ((g, f), gf) in &composition {
            if *g >= self.morphisms.len() || *f >= self.morphisms.len() || *gf >= self.morphisms.len() {
                return Err(Error::ill_formed("composition table refers to a missing morphism"));
            }
        }
        for (f, m) in self.morphisms.iter().enumerate() {
            composition.entry((identities[m.target], f)).or_insert(f);
            composition.entry((f, identities[m.source])).or_insert(f);
        }
        Ok(FinCategory::assemble(self.objects, self.morphisms, identities, composition))
    }
}

/// One violated law or gap in a composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CategoryViolation {
    MissingComposite { g: MorId, f: MorId },
    CompositeEndpoints { g: MorId, f: MorId, gf: MorId },
    NotComposable { g: MorId, f: MorId },
    LeftIdentity { f: MorId },
    RightIdentity { f: MorId },
    Associativity { h: MorId, g: MorId, f: MorId },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CategoryReport {
    pub violations: Vec<CategoryViolation>,
}

impl CategoryReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn describe(&self, c: &FinCategory) -> Vec<String> {
        let n = |m: &MorId| c.morphism(*m).name.clone();
        self.violations
            .iter()
            .map(|v| match v {
                CategoryViolation::MissingComposite { g, f } => format!("missing composite {}∘{}", n(g), n(f)),
                CategoryViolation::CompositeEndpoints { g, f, gf } => {
                    format!("composite {}∘{} = {} has wrong endpoints", n(g), n(f), n(gf))
                }
                CategoryViolation::NotComposable { g, f } => format!("composite given for non-composable {}, {}", n(g), n(f)),
                CategoryViolation::LeftIdentity { f } => format!("left identity law fails for {}", n(f)),
                CategoryViolation::RightIdentity { f } => format!("right identity law fails for {}", n(f)),
                CategoryViolation::Associativity { h, g, f } => {
                    format!("associativity fails for ({}, {}, {})", n(h), n(g), n(f))
                }
            })
            .collect()
    }
}

impl FinCategory {
    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        composition: HashMap<(MorId, MorId), MorId>,
    ) -> Self {
        let n = objects.len();
        let mut hom: HashMap<(ObjId, ObjId), Vec<MorId>> = HashMap::new();
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for (i, m) in morphisms.iter().enumerate() {
            hom.entry((m.source, m.target)).or_default().push(i);
            outgoing[m.source].push(i);
            incoming[m.target].push(i);
        }
        FinCategory { objects, morphisms, identities, composition, hom, outgoing, incoming }
    }

    /// The one-object, one-morphism category.
    pub fn terminal() -> Self {
        Self::discrete(&["*"])
    }

    pub fn discrete(names: &[&str]) -> Self {
        let mut b = FinCategoryBuilder::new();
        for name in names {
            let o = b.object(*name);
            let id = b.morphism(format!("id_{name}"), o, o);
            b.identity(o, id);
        }
        b.build().expect("discrete category is well formed")
    }

    /// `x --f--> y`.
    pub fn walking_arrow() -> Self {
        let mut b = FinCategoryBuilder::new();
        let x = b.object("x");
        let y = b.object("y");
        let idx = b.morphism("id_x", x, x);
        let idy = b.morphism("id_y", y, y);
        b.identity(x, idx).identity(y, idy);
        b.morphism("f", x, y);
        b.build().expect("walking arrow is well formed")
    }

    /// `x <--> y` with `i : x -> y` and inverse `j`.
    pub fn walking_iso() -> Self {
        let mut b = FinCategoryBuilder::new();
        let x = b.object("x");
        let y = b.object("y");
        let idx = b.morphism("id_x", x, x);
        let idy = b.morphism("id_y", y, y);
        b.identity(x, idx).identity(y, idy);
        let i = b.morphism("i", x, y);
        let j = b.morphism("j", y, x);
        b.compose(j, i, idx).compose(i, j, idy);
        b.build().expect("walking iso is well formed")
    }

    /// One-object category of a monoid. `table[a][b] = a·b`, element 0 is the
    /// unit, and `g∘f` is `g·f`.
    pub fn monoid(names: &[&str], table: &[Vec<usize>]) -> Result<Self> {
        let k = names.len();
        if table.len() != k || table.iter().any(|r| r.len() != k || r.iter().any(|&v| v >= k)) {
            return Err(Error::invalid("monoid table must be square over the element list"));
        }
        let mut b = FinCategoryBuilder::new();
        let o = b.object("*");
        for name in names {
            b.morphism(*name, o, o);
        }
        b.identity(o, 0);
        for g in 0..k {
            for f in 0..k {
                b.compose(g, f, table[g][f]);
            }
        }
        b.build()
    }

    /// `Z/n` as a one-object groupoid.
    pub fn cyclic_group(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::monoid(&refs, &table).expect("cyclic group table is valid")
    }

    /// Poset on `0..n` from a reflexive, transitive, antisymmetric relation.
    pub fn poset(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut b = FinCategoryBuilder::new();
        for i in 0..n {
            b.object(format!("p{i}"));
        }
        let mut arrow = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    if i != j && leq(j, i) {
                        return Err(Error::invalid("relation is not antisymmetric"));
                    }
                    let name = if i == j { format!("id_p{i}") } else { format!("p{i}<p{j}") };
                    arrow.insert((i, j), b.morphism(name, i, j));
                }
            }
        }
        for i in 0..n {
            let id = *arrow.get(&(i, i)).ok_or_else(|| Error::invalid("relation is not reflexive"))?;
            b.identity(i, id);
        }
        for (&(i, j), &f) in &arrow {
            for k in 0..n {
                if let Some(&g) = arrow.get(&(j, k)) {
                    let gf = *arrow.get(&(i, k)).ok_or_else(|| Error::invalid("relation is not transitive"))?;
                    b.compose(g, f, gf);
                }
            }
        }
        b.build()
    }

    /// The groupoid with objects `0..n` and exactly one morphism between any
    /// two objects.
    pub fn codiscrete(n: usize) -> Self {
        Self::poset_like_codiscrete(n)
    }

    fn poset_like_codiscrete(n: usize) -> Self {
        let mut b = FinCategoryBuilder::new();
        for i in 0..n {
            b.object(format!("o{i}"));
        }
        let mut arrow = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                let name = if i == j { format!("id_o{i}") } else { format!("o{i}>o{j}") };
                arrow.insert((i, j), b.morphism(name, i, j));
            }
        }
        for i in 0..n {
            b.identity(i, arrow[&(i, i)]);
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    b.compose(arrow[&(j, k)], arrow[&(i, j)], arrow[&(i, k)]);
                }
            }
        }
        b.build().expect("codiscrete groupoid is well formed")
    }

    /// Cartesian product, with names `(a,b)`.
    pub fn product(&self, other: &Self) -> Self {
        let mut b = FinCategoryBuilder::new();
        let no = other.num_objects();
        for x in 0..self.num_objects() {
            for y in 0..no {
                b.object(format!("({},{})", self.objects[x], other.objects[y]));
            }
        }
        let nm = other.num_morphisms();
        for f in 0..self.num_morphisms() {
            for g in 0..nm {
                let (mf, mg) = (self.morphism(f), other.morphism(g));
                b.morphism(
                    format!("({},{})", mf.name, mg.name),
                    mf.source * no + mg.source,
                    mf.target * no + mg.target,
                );
            }
        }
        for x in 0..self.num_objects() {
            for y in 0..no {
                b.identity(x * no + y, self.identity(x) * nm + other.identity(y));
            }
        }
        for (&(g1, f1), &h1) in &self.composition {
            for (&(g2, f2), &h2) in &other.composition {
                b.compose(g1 * nm + g2, f1 * nm + f2, h1 * nm + h2);
            }
        }
        b.build().expect("product of categories is well formed")
    }

    /// Disjoint union; clashing names on the right get primes.
    pub fn coproduct(&self, other: &Self) -> Self {
        let mut b = FinCategoryBuilder::new();
        let fresh = |taken: &dyn Fn(&str) -> bool, name: &str| {
            let mut n = name.to_string();
            while taken(&n) {
                n.push('\'');
            }
            n
        };
        for o in &self.objects {
            b.object(o.clone());
        }
        for m in &self.morphisms {
            b.morphism(m.name.clone(), m.source, m.target);
        }
        let (oo, mo) = (self.num_objects(), self.num_morphisms());
        for o in &other.objects {
            let name = fresh(&|n| b.object_named(n).is_some(), o);
            b.object(name);
        }
        for m in &other.morphisms {
            let name = fresh(&|n| b.morphism_named(n).is_some(), &m.name);
            b.morphism(name, m.source + oo, m.target + oo);
        }
        for x in 0..self.num_objects() {
            b.identity(x, self.identity(x));
        }
        for x in 0..other.num_objects() {
            b.identity(x + oo, other.identity(x) + mo);
        }
        for (&(g, f), &h) in &self.composition {
            b.compose(g, f, h);
        }
        for (&(g, f), &h) in &other.composition {
            b.compose(g + mo, f + mo, h + mo);
        }
        b.build().expect("coproduct of categories is well formed")
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o]
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, m: MorId) -> &Morphism {
        &self.morphisms[m]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_named(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_named(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn source(&self, m: MorId) -> ObjId {
        self.morphisms[m].source
    }

    pub fn target(&self, m: MorId) -> ObjId {
        self.morphisms[m].target
    }

    pub fn identity(&self, o: ObjId) -> MorId {
        self.identities[o]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identities[self.morphisms[m].source] == m
    }

    /// `g∘f` when recorded.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.composition.get(&(g, f)).copied()
    }

    /// Composite of a path given in order of application.
    pub fn compose_path(&self, path: &[MorId]) -> Option<MorId> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &next| self.compose(next, acc))
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        self.hom.get(&(a, b)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn outgoing(&self, a: ObjId) -> &[MorId] {
        &self.outgoing[a]
    }

    pub fn incoming(&self, a: ObjId) -> &[MorId] {
        &self.incoming[a]
    }

    pub fn composition_table(&self) -> &HashMap<(MorId, MorId), MorId> {
        &self.composition
    }

    pub fn non_identity_morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.num_morphisms()).filter(move |&m| !self.is_identity(m))
    }

    /// Exhaustive check of composability, identity laws and associativity.
    pub fn verify(&self) -> CategoryReport {
        let mut report = CategoryReport::default();
        let mut entries: Vec<_> = self.composition.iter().collect();
        entries.sort();
        for (&(g, f), &gf) in entries {
            if self.target(f) != self.source(g) {
                report.violations.push(CategoryViolation::NotComposable { g, f });
            } else if self.source(gf) != self.source(f) || self.target(gf) != self.target(g) {
                report.violations.push(CategoryViolation::CompositeEndpoints { g, f, gf });
            }
        }
        for b in 0..self.num_objects() {
            for &f in &self.incoming[b] {
                for &g in &self.outgoing[b] {
                    if self.compose(g, f).is_none() {
                        report.violations.push(CategoryViolation::MissingComposite { g, f });
                    }
                }
            }
        }
        for f in 0..self.num_morphisms() {
            if self.compose(self.identity(self.target(f)), f) != Some(f) {
                report.violations.push(CategoryViolation::LeftIdentity { f });
            }
            if self.compose(f, self.identity(self.source(f))) != Some(f) {
                report.violations.push(CategoryViolation::RightIdentity { f });
            }
        }
        if !report.is_empty() {
            return report;
        }
        for f in 0..self.num_morphisms() {
            for &g in &self.outgoing[self.target(f)] {
                let gf = self.composition[&(g, f)];
                for &h in &self.outgoing[self.target(g)] {
                    let hg = self.composition[&(h, g)];
                    if self.composition.get(&(h, gf)) != self.composition.get(&(hg, f)) {
                        report.violations.push(CategoryViolation::Associativity { h, g, f });
                    }
                }
            }
        }
        report
    }

    /// A two-sided inverse of `f`, if one exists.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (a, b) = (self.source(f), self.target(f));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == Some(self.identity(a)) && self.compose(f, g) == Some(self.identity(b)))
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.num_morphisms()).all(|f| self.is_iso(f))
    }

    /// Subcategory on the same objects with the morphisms flagged in `keep`
    /// (which must contain identities and be closed under composition).
    /// Returns it with the list of original ids of its morphisms.
    pub fn wide_subcategory(&self, keep: &[bool]) -> Result<(FinCategory, Vec<MorId>)> {
        let kept: Vec<MorId> = (0..self.num_morphisms()).filter(|&m| keep[m]).collect();
        let renumber: HashMap<MorId, MorId> = kept.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut b = FinCategoryBuilder::new();
        for o in &self.objects {
            b.object(o.clone());
        }
        for &m in &kept {
            let mm = self.morphism(m);
            b.morphism(mm.name.clone(), mm.source, mm.target);
        }
        for o in 0..self.num_objects() {
            let id = *renumber.get(&self.identity(o)).ok_or_else(|| Error::invalid("subcategory must contain identities"))?;
            b.identity(o, id);
        }
        for (&(g, f), &gf) in &self.composition {
            if let (Some(&g2), Some(&f2)) = (renumber.get(&g), renumber.get(&f)) {
                let gf2 =
                    *renumber.get(&gf).ok_or_else(|| Error::invalid("morphism set is not closed under composition"))?;
                b.compose(g2, f2, gf2);
            }
        }
        Ok((b.build()?, kept))
    }

    /// Full subcategory on the flagged objects, with the inclusion functor.
    pub fn full_subcategory(&self, keep_objects: &[bool]) -> Result<Functor> {
        let objs: Vec<ObjId> = (0..self.num_objects()).filter(|&o| keep_objects[o]).collect();
        let obj_renumber: HashMap<ObjId, ObjId> = objs.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let mors: Vec<MorId> = (0..self.num_morphisms())
            .filter(|&m| keep_objects[self.source(m)] && keep_objects[self.target(m)])
            .collect();
        let mor_renumber: HashMap<MorId, MorId> = mors.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut b = FinCategoryBuilder::new();
        for &o in &objs {
            b.object(self.objects[o].clone());
        }
        for &m in &mors {
            let mm = self.morphism(m);
            b.morphism(mm.name.clone(), obj_renumber[&mm.source], obj_renumber[&mm.target]);
        }
        for &o in &objs {
            b.identity(obj_renumber[&o], mor_renumber[&self.identity(o)]);
        }
        for (&(g, f), &gf) in &self.composition {
            if let (Some(&g2), Some(&f2), Some(&gf2)) = (mor_renumber.get(&g), mor_renumber.get(&f), mor_renumber.get(&gf)) {
                b.compose(g2, f2, gf2);
            }
        }
        let sub = b.build()?;
        Functor::new(sub, self.clone(), objs, mors)
    }

    /// The subcategory of all isomorphisms.
    pub fn maximal_subgroupoid(&self) -> FinCategory {
        let keep: Vec<bool> = (0..self.num_morphisms()).map(|f| self.is_iso(f)).collect();
        self.wide_subcategory(&keep).expect("isomorphisms form a wide subcategory").0
    }

    /// All length-`n` composable chains `(f_1, ..., f_n)` (identities
    /// allowed). For `n = 0` the chains are `[id_x]` for each object `x`.
    pub fn chains(&self, n: usize) -> Vec<Vec<MorId>> {
        if n == 0 {
            return (0..self.num_objects()).map(|o| vec![self.identity(o)]).collect();
        }
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fn rec(c: &FinCategory, n: usize, cur: &mut Vec<MorId>, out: &mut Vec<Vec<MorId>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            let options: Vec<MorId> = match cur.last() {
                None => (0..c.num_morphisms()).collect(),
                Some(&f) => c.outgoing(c.target(f)).to_vec(),
            };
            for g in options {
                cur.push(g);
                rec(c, n, cur, out);
                cur.pop();
            }
        }
        rec(self, n, &mut cur, &mut out);
        out
    }

    /// Objects of a chain: `c_0, ..., c_n`.
    pub fn chain_objects(&self, chain: &[MorId], n: usize) -> Vec<ObjId> {
        if n == 0 {
            return vec![self.source(chain[0])];
        }
        let mut objs = vec![self.source(chain[0])];
        objs.extend(chain.iter().map(|&f| self.target(f)));
        objs
    }

    /// The functor category `C^[n]`: objects are composable `n`-chains and
    /// morphisms are commuting ladders `(a_0, ..., a_n)`.
    pub fn arrow_category(&self, n: usize) -> FinCategory {
        self.ladder_category(n, false)
    }

    /// `iso(C^[n])`, built directly from ladders of isomorphisms.
    pub fn iso_arrow_category(&self, n: usize) -> FinCategory {
        self.ladder_category(n, true)
    }

    /// Commuting ladders between `n`-chains, as `(source, rungs, target)`
    /// with chains indexed as in [`FinCategory::chains`]. With `iso_only`
    /// every rung is an isomorphism. Ladders are grouped by source chain.
    pub fn ladders(&self, n: usize, iso_only: bool) -> Vec<Ladder> {
        let isos: Vec<bool> = (0..self.num_morphisms()).map(|f| !iso_only || self.is_iso(f)).collect();
        let chains = self.chains(n);
        let chain_index: HashMap<&Vec<MorId>, usize> = chains.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut ladders = Vec::new();
        for (ci, chain) in chains.iter().enumerate() {
            let objs = self.chain_objects(chain, n);
            let mut rungs = Vec::with_capacity(n + 1);
            let mut targets = Vec::with_capacity(n);
            self.extend_ladder(n, chain, &objs, &|f| isos[f], &mut rungs, &mut targets, &mut |rungs, targets| {
                let tgt_chain = if n == 0 { vec![self.identity(self.target(rungs[0]))] } else { targets.to_vec() };
                ladders.push(Ladder { source: ci, rungs: rungs.to_vec(), target: chain_index[&tgt_chain] });
            });
        }
        ladders
    }

    fn ladder_category(&self, n: usize, iso_only: bool) -> FinCategory {
        let chains = self.chains(n);
        let mut b = FinCategoryBuilder::new();
        for chain in &chains {
            b.object(self.chain_name(chain, n));
        }
        let ladders = self.ladders(n, iso_only);
        let ladder_index: HashMap<(usize, &Vec<MorId>, usize), MorId> =
            ladders.iter().enumerate().map(|(i, l)| ((l.source, &l.rungs, l.target), i)).collect();
        let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); chains.len()];
        for (i, l) in ladders.iter().enumerate() {
            b.morphism(format!("<{}>", l.rungs.iter().map(|&f| &self.morphisms[f].name).join(",")), l.source, l.target);
            outgoing[l.source].push(i);
        }
        for (ci, chain) in chains.iter().enumerate() {
            let rungs: Vec<MorId> = self.chain_objects(chain, n).iter().map(|&o| self.identity(o)).collect();
            b.identity(ci, ladder_index[&(ci, &rungs, ci)]);
        }
        for (li, l) in ladders.iter().enumerate() {
            for &lj in &outgoing[l.target] {
                let l2 = &ladders[lj];
                let comp: Vec<MorId> =
                    l.rungs.iter().zip(&l2.rungs).map(|(&a, &b2)| self.compose(b2, a).expect("rungs compose")).collect();
                if let Some(&lk) = ladder_index.get(&(l.source, &comp, l2.target)) {
                    b.compose(lj, li, lk);
                }
            }
        }
        b.build().expect("ladder category is well formed")
    }

    /// `f1,f2,...` in parentheses, or the object name for `n = 0`.
    pub fn chain_name(&self, chain: &[MorId], n: usize) -> String {
        if n == 0 {
            self.objects[self.source(chain[0])].clone()
        } else {
            format!("({})", chain.iter().map(|&f| &self.morphisms[f].name).join(","))
        }
    }

    /// `d_i` on composable `n`-chains (identities allowed). Chains of length 0
    /// are written `[id_x]`.
    pub fn chain_face(&self, chain: &[MorId], n: usize, i: usize) -> Vec<MorId> {
        assert!(n >= 1 && i <= n);
        if n == 1 {
            let o = if i == 0 { self.target(chain[0]) } else { self.source(chain[0]) };
            return vec![self.identity(o)];
        }
        let mut out = Vec::with_capacity(n - 1);
        for p in 0..n {
            if (i == 0 && p == 0) || (i == n && p == n - 1) || (i > 0 && i < n && p == i) {
                continue;
            }
            if i > 0 && i < n && p == i - 1 {
                out.push(self.compose(chain[i], chain[i - 1]).expect("chain is composable"));
            } else {
                out.push(chain[p]);
            }
        }
        out
    }

    /// `s_j` on composable `n`-chains: insert the identity at object `j`.
    pub fn chain_degeneracy(&self, chain: &[MorId], n: usize, j: usize) -> Vec<MorId> {
        assert!(j <= n);
        if n == 0 {
            return chain.to_vec();
        }
        let objs = self.chain_objects(chain, n);
        let mut out = chain.to_vec();
        out.insert(j, self.identity(objs[j]));
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_ladder(
        &self,
        n: usize,
        chain: &[MorId],
        objs: &[ObjId],
        rung_ok: &impl Fn(MorId) -> bool,
        rungs: &mut Vec<MorId>,
        targets: &mut Vec<MorId>,
        emit: &mut impl FnMut(&[MorId], &[MorId]),
    ) {
        let i = rungs.len();
        if i == n + 1 {
            emit(rungs, targets);
            return;
        }
        for &a in self.outgoing(objs[i]) {
            if !rung_ok(a) {
                continue;
            }
            if i == 0 {
                rungs.push(a);
                self.extend_ladder(n, chain, objs, rung_ok, rungs, targets, emit);
                rungs.pop();
                continue;
            }
            // need f' with f'∘a_{i-1} = a_i∘f_i
            let lhs_target = self.compose(a, chain[i - 1]);
            let prev = rungs[i - 1];
            for &f2 in self.hom(self.target(prev), self.target(a)) {
                if lhs_target.is_some() && self.compose(f2, prev) == lhs_target {
                    rungs.push(a);
                    targets.push(f2);
                    self.extend_ladder(n, chain, objs, rung_ok, rungs, targets, emit);
                    targets.pop();
                    rungs.pop();
                }
            }
        }
    }
}

/// A morphism of `C^[n]`: rungs `a_0, ..., a_n` between two chains.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ladder {
    pub source: usize,
    pub rungs: Vec<MorId>,
    pub target: usize,
}

/// Why a functor is not an equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceFailure {
    NotFaithful { a: ObjId, b: ObjId },
    NotFull { a: ObjId, b: ObjId },
    NotEssentiallySurjective { object: ObjId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    source: FinCategory,
    target: FinCategory,
    object_map: Vec<ObjId>,
    morphism_map: Vec<MorId>,
}

impl Functor {
    /// Validates that endpoints, identities and composites are preserved.
    pub fn new(source: FinCategory, target: FinCategory, object_map: Vec<ObjId>, morphism_map: Vec<MorId>) -> Result<Self> {
        if object_map.len() != source.num_objects() || morphism_map.len() != source.num_morphisms() {
            return Err(Error::ill_formed("functor maps do not cover the source"));
        }
        if object_map.iter().any(|&o| o >= target.num_objects()) || morphism_map.iter().any(|&m| m >= target.num_morphisms()) {
            return Err(Error::ill_formed("functor maps leave the target"));
        }
        for f in 0..source.num_morphisms() {
            let ff = morphism_map[f];
            if target.source(ff) != object_map[source.source(f)] || target.target(ff) != object_map[source.target(f)] {
                return Err(Error::ill_formed(format!("functor does not preserve endpoints of `{}`", source.morphism(f).name)));
            }
        }
        for o in 0..source.num_objects() {
            if morphism_map[source.identity(o)] != target.identity(object_map[o]) {
                return Err(Error::ill_formed(format!("functor does not preserve the identity of `{}`", source.objects[o])));
            }
        }
        for (&(g, f), &gf) in &source.composition {
            if target.compose(morphism_map[g], morphism_map[f]) != Some(morphism_map[gf]) {
                return Err(Error::ill_formed(format!(
                    "functor does not preserve {}∘{}",
                    source.morphism(g).name,
                    source.morphism(f).name
                )));
            }
        }
        Ok(Functor { source, target, object_map, morphism_map })
    }

    pub fn identity(c: &FinCategory) -> Self {
        Functor::new(c.clone(), c.clone(), (0..c.num_objects()).collect(), (0..c.num_morphisms()).collect())
            .expect("identity functor")
    }

    /// Builds a functor from name pairs.
    pub fn from_names(
        source: &FinCategory,
        target: &FinCategory,
        objects: &[(&str, &str)],
        morphisms: &[(&str, &str)],
    ) -> Result<Self> {
        let mut object_map = vec![usize::MAX; source.num_objects()];
        for (a, b) in objects {
            let s = source.object_named(a).ok_or_else(|| Error::invalid(format!("unknown object `{a}`")))?;
            object_map[s] = target.object_named(b).ok_or_else(|| Error::invalid(format!("unknown object `{b}`")))?;
        }
        let mut morphism_map = vec![usize::MAX; source.num_morphisms()];
        for (a, b) in morphisms {
            let s = source.morphism_named(a).ok_or_else(|| Error::invalid(format!("unknown morphism `{a}`")))?;
            morphism_map[s] = target.morphism_named(b).ok_or_else(|| Error::invalid(format!("unknown morphism `{b}`")))?;
        }
        for o in 0..source.num_objects() {
            if morphism_map[source.identity(o)] == usize::MAX && object_map[o] != usize::MAX {
                morphism_map[source.identity(o)] = target.identity(object_map[o]);
            }
        }
        if object_map.contains(&usize::MAX) || morphism_map.contains(&usize::MAX) {
            return Err(Error::invalid("functor assignment is incomplete"));
        }
        Functor::new(source.clone(), target.clone(), object_map, morphism_map)
    }

    pub fn source(&self) -> &FinCategory {
        &self.source
    }

    pub fn target(&self) -> &FinCategory {
        &self.target
    }

    pub fn on_object(&self, o: ObjId) -> ObjId {
        self.object_map[o]
    }

    pub fn on_morphism(&self, m: MorId) -> MorId {
        self.morphism_map[m]
    }

    pub fn object_map(&self) -> &[ObjId] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[MorId] {
        &self.morphism_map
    }

    /// Fully faithful and essentially surjective, decided by enumerating
    /// hom-sets and isomorphisms.
    pub fn check_equivalence(&self) -> std::result::Result<(), EquivalenceFailure> {
        let (c, d) = (&self.source, &self.target);
        for a in 0..c.num_objects() {
            for b in 0..c.num_objects() {
                let images: Vec<MorId> = c.hom(a, b).iter().map(|&f| self.morphism_map[f]).collect();
                let distinct: std::collections::HashSet<MorId> = images.iter().copied().collect();
                if distinct.len() != images.len() {
                    return Err(EquivalenceFailure::NotFaithful { a, b });
                }
                if distinct.len() != d.hom(self.object_map[a], self.object_map[b]).len() {
                    return Err(EquivalenceFailure::NotFull { a, b });
                }
            }
        }
        for y in 0..d.num_objects() {
            let reached = self.object_map.iter().any(|&fx| d.hom(fx, y).iter().any(|&m| d.is_iso(m)));
            if !reached {
                return Err(EquivalenceFailure::NotEssentiallySurjective { object: y });
            }
        }
        Ok(())
    }

    pub fn is_equivalence(&self) -> bool {
        self.check_equivalence().is_ok()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Functor) -> Result<Functor> {
        if self.target != other.source {
            return Err(Error::invalid("functors are not composable"));
        }
        Functor::new(
            self.source.clone(),
            other.target.clone(),
            self.object_map.iter().map(|&o| other.object_map[o]).collect(),
            self.morphism_map.iter().map(|&m| other.morphism_map[m]).collect(),
        )
    }
}

impl fmt::Display for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_category(self))
    }
}

/// `check_equivalence` as a free function over a functor.
pub fn check_equivalence(f: &Functor) -> bool {
    f.is_equivalence()
}

/// `verify_category` as a free function.
pub fn verify_category(c: &FinCategory) -> CategoryReport {
    c.verify()
}
