//! Finite simplicial categories: components, Dwyer-Kan comparison, the cube
//! categories `C[Δ^n]`, the coherent nerve and hammock mapping spaces.

mod coherent;
mod cube;
mod hammock;
mod text;
#[cfg(test)]
mod tests;

use std::collections::HashMap;

use crate::certify::{certify_map, combine_dk, DkVerdict};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FinCategoryBuilder, Functor, MorId};
use crate::simpset::{check_explicit_map, ExplicitMap, ExplicitSimplicialSet};

pub use coherent::{coherent_nerve, coherent_nerve_explicit, MAX_COHERENT_DIM};
pub use cube::{cdelta, CubePoset};
pub use hammock::{hammock_mapping_space, Hammock, HammockSpace, Zigzag};
pub use text::{parse_simplicial_category, write_simplicial_category};

/// A category enriched in truncated simplicial sets. Composition is stored
/// per level as `composition[(a, b, c)][n][g * |Map(a,b)_n| + f]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSimplicialCategory {
    dim_cap: usize,
    objects: Vec<String>,
    maps: Vec<Vec<ExplicitSimplicialSet>>,
    identities: Vec<usize>,
    composition: HashMap<(usize, usize, usize), Vec<Vec<usize>>>,
}

impl FinSimplicialCategory {
    /// Builds the composition tables from `compose(a, b, c, n, g, f)` and
    /// checks the enrichment laws.
    pub fn from_fn(
        objects: Vec<String>,
        maps: Vec<Vec<ExplicitSimplicialSet>>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize, usize, usize, usize, usize) -> usize,
    ) -> Result<Self> {
        let k = objects.len();
        let dim_cap = maps.first().and_then(|r| r.first()).map_or(0, |m| m.dim_cap);
        if maps.len() != k || maps.iter().any(|r| r.len() != k) {
            return Err(Error::ill_formed("mapping spaces must be given for every ordered pair"));
        }
        let mut composition = HashMap::new();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let levels = (0..=dim_cap)
                        .map(|n| {
                            let (nf, ng) = (maps[a][b].size(n), maps[b][c].size(n));
                            (0..ng).flat_map(|g| (0..nf).map(move |f| (g, f))).map(|(g, f)| compose(a, b, c, n, g, f)).collect()
                        })
                        .collect();
                    composition.insert((a, b, c), levels);
                }
            }
        }
        Self::from_tables(objects, maps, identities, composition)
    }

    pub fn from_tables(
        objects: Vec<String>,
        maps: Vec<Vec<ExplicitSimplicialSet>>,
        identities: Vec<usize>,
        composition: HashMap<(usize, usize, usize), Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let dim_cap = maps.first().and_then(|r| r.first()).map_or(0, |m| m.dim_cap);
        let c = FinSimplicialCategory { dim_cap, objects, maps, identities, composition };
        c.verify()?;
        Ok(c)
    }

    /// Checks mapping spaces, table shapes, compatibility with faces and
    /// degeneracies, the unit laws and associativity at every level.
    pub fn verify(&self) -> Result<()> {
        let k = self.objects.len();
        if self.maps.len() != k || self.maps.iter().any(|r| r.len() != k) || self.identities.len() != k {
            return Err(Error::ill_formed("mapping spaces or identities do not cover the objects"));
        }
        for a in 0..k {
            for b in 0..k {
                let m = &self.maps[a][b];
                if m.dim_cap != self.dim_cap {
                    return Err(Error::ill_formed(format!("Map({a},{b}) has cap {} instead of {}", m.dim_cap, self.dim_cap)));
                }
                m.check_identities().map_err(|e| Error::ill_formed(format!("Map({a},{b}): {e}")))?;
            }
            if self.identities[a] >= self.maps[a][a].size(0) {
                return Err(Error::ill_formed(format!("identity of `{}` is not a vertex", self.objects[a])));
            }
        }
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let table = self
                        .composition
                        .get(&(a, b, c))
                        .ok_or_else(|| Error::ill_formed(format!("missing composition table ({a},{b},{c})")))?;
                    if table.len() != self.dim_cap + 1 {
                        return Err(Error::ill_formed(format!("composition ({a},{b},{c}) has the wrong number of levels")));
                    }
                    for n in 0..=self.dim_cap {
                        let (nf, ng, nh) = (self.maps[a][b].size(n), self.maps[b][c].size(n), self.maps[a][c].size(n));
                        if table[n].len() != nf * ng || table[n].iter().any(|&x| x >= nh) {
                            return Err(Error::ill_formed(format!("composition ({a},{b},{c}) at level {n} is not a function")));
                        }
                    }
                }
            }
        }
        let fail = |what: &str, a: usize, b: usize, c: usize, n: usize| {
            Err(Error::ill_formed(format!("composition ({a},{b},{c}) at level {n} violates {what}")))
        };
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    for n in 0..=self.dim_cap {
                        for g in 0..self.maps[b][c].size(n) {
                            for f in 0..self.maps[a][b].size(n) {
                                let gf = self.compose(a, b, c, n, g, f);
                                for i in (0..=n).filter(|_| n >= 1) {
                                    let lhs = self.maps[a][c].face(n, i, gf);
                                    let rhs = self.compose(a, b, c, n - 1, self.maps[b][c].face(n, i, g), self.maps[a][b].face(n, i, f));
                                    if lhs != rhs {
                                        return fail("faces", a, b, c, n);
                                    }
                                }
                                for j in (0..=n).filter(|_| n < self.dim_cap) {
                                    let lhs = self.maps[a][c].degeneracy(n, j, gf);
                                    let rhs =
                                        self.compose(a, b, c, n + 1, self.maps[b][c].degeneracy(n, j, g), self.maps[a][b].degeneracy(n, j, f));
                                    if lhs != rhs {
                                        return fail("degeneracies", a, b, c, n);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        for a in 0..k {
            for b in 0..k {
                for n in 0..=self.dim_cap {
                    for f in 0..self.maps[a][b].size(n) {
                        if self.compose(a, b, b, n, self.identity_at(b, n), f) != f
                            || self.compose(a, a, b, n, f, self.identity_at(a, n)) != f
                        {
                            return fail("the unit laws", a, a, b, n);
                        }
                    }
                }
            }
        }
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    for d in 0..k {
                        for n in 0..=self.dim_cap {
                            for h in 0..self.maps[c][d].size(n) {
                                for g in 0..self.maps[b][c].size(n) {
                                    let hg = self.compose(b, c, d, n, h, g);
                                    for f in 0..self.maps[a][b].size(n) {
                                        let left = self.compose(a, c, d, n, h, self.compose(a, b, c, n, g, f));
                                        if left != self.compose(a, b, d, n, hg, f) {
                                            return fail("associativity", a, b, c, n);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Every mapping space is the discrete simplicial set on a hom-set.
    pub fn discrete(c: &FinCategory, dim_cap: usize) -> Self {
        Self::enrich(c, dim_cap, ExplicitSimplicialSet::discrete)
    }

    /// Every mapping space is the nerve of the codiscrete groupoid on a
    /// hom-set (a Kan complex, contractible when nonempty).
    pub fn codiscrete(c: &FinCategory, dim_cap: usize) -> Self {
        Self::enrich(c, dim_cap, ExplicitSimplicialSet::codiscrete)
    }

    /// Both enrichments list the `n`-simplices of `Map(a,b)` as tuples of
    /// morphisms in lexicographic order, so composition is tuplewise.
    fn enrich(c: &FinCategory, dim_cap: usize, space: fn(&[String], usize) -> ExplicitSimplicialSet) -> Self {
        let k = c.num_objects();
        let homs: Vec<Vec<&[MorId]>> = (0..k).map(|a| (0..k).map(|b| c.hom(a, b)).collect()).collect();
        let maps: Vec<Vec<ExplicitSimplicialSet>> = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        let names: Vec<String> = homs[a][b].iter().map(|&f| c.morphism(f).name.clone()).collect();
                        space(&names, dim_cap)
                    })
                    .collect()
            })
            .collect();
        let position: HashMap<MorId, usize> =
            homs.iter().flatten().flat_map(|h| h.iter().enumerate().map(|(i, &f)| (f, i))).collect();
        let tuples: Vec<Vec<Vec<Vec<Vec<usize>>>>> = (0..k)
            .map(|a| (0..k).map(|b| (0..=dim_cap).map(|n| tuples_of(&maps[a][b], n)).collect()).collect())
            .collect();
        let index: Vec<Vec<Vec<HashMap<Vec<usize>, usize>>>> = tuples
            .iter()
            .map(|r| {
                r.iter().map(|levels| levels.iter().map(|l| l.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect()).collect()).collect()
            })
            .collect();
        let identities = (0..k).map(|a| position[&c.identity(a)]).collect();
        Self::from_fn(c.objects().to_vec(), maps, identities, |a, b, cc, n, g, f| {
            let composite: Vec<usize> = tuples[b][cc][n][g]
                .iter()
                .zip(&tuples[a][b][n][f])
                .map(|(&gi, &fi)| position[&c.compose(homs[b][cc][gi], homs[a][b][fi]).expect("composable")])
                .collect();
            index[a][cc][n][&composite]
        })
        .expect("enriched hom-sets form a simplicial category")
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_named(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn map(&self, a: usize, b: usize) -> &ExplicitSimplicialSet {
        &self.maps[a][b]
    }

    /// Identity vertex of `Map(a,a)`.
    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    /// The identity degenerated to level `n`.
    pub fn identity_at(&self, a: usize, n: usize) -> usize {
        (0..n).fold(self.identities[a], |x, m| self.maps[a][a].degeneracy(m, 0, x))
    }

    /// `g ∘ f` for `f ∈ Map(a,b)_n`, `g ∈ Map(b,c)_n`.
    pub fn compose(&self, a: usize, b: usize, c: usize, n: usize, g: usize, f: usize) -> usize {
        self.composition[&(a, b, c)][n][g * self.maps[a][b].size(n) + f]
    }

    /// Full simplicial subcategory on the flagged objects, with its
    /// inclusion.
    pub fn full_subcategory(&self, keep: &[bool]) -> Result<SimplicialFunctor> {
        let objs: Vec<usize> = (0..self.num_objects()).filter(|&o| keep[o]).collect();
        let maps = objs.iter().map(|&a| objs.iter().map(|&b| self.maps[a][b].clone()).collect()).collect();
        let sub = Self::from_fn(
            objs.iter().map(|&o| self.objects[o].clone()).collect(),
            maps,
            objs.iter().map(|&o| self.identities[o]).collect(),
            |a, b, c, n, g, f| self.compose(objs[a], objs[b], objs[c], n, g, f),
        )?;
        let level_maps = objs
            .iter()
            .map(|&a| objs.iter().map(|&b| (0..=self.dim_cap).map(|n| (0..self.maps[a][b].size(n)).collect()).collect()).collect())
            .collect();
        SimplicialFunctor::new(sub, self.clone(), objs, level_maps)
    }
}

fn tuples_of(x: &ExplicitSimplicialSet, n: usize) -> Vec<Vec<usize>> {
    (0..x.size(n))
        .map(|s| (0..=n).map(|v| vertex_of(x, n, s, &[v])).collect())
        .collect()
}

/// Restriction of an `n`-simplex to the vertices in `keep`.
fn vertex_of(x: &ExplicitSimplicialSet, n: usize, s: usize, keep: &[usize]) -> usize {
    let (mut cur, mut level) = (s, n);
    for i in (0..=n).rev() {
        if !keep.contains(&i) {
            cur = x.face(level, i, cur);
            level -= 1;
        }
    }
    cur
}

/// A simplicial functor: an object map and simplicial maps
/// `Map(a,b) -> Map(Fa,Fb)` preserving identities and composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialFunctor {
    source: FinSimplicialCategory,
    target: FinSimplicialCategory,
    object_map: Vec<usize>,
    maps: Vec<Vec<ExplicitMap>>,
}

impl SimplicialFunctor {
    pub fn new(
        source: FinSimplicialCategory,
        target: FinSimplicialCategory,
        object_map: Vec<usize>,
        maps: Vec<Vec<ExplicitMap>>,
    ) -> Result<Self> {
        let k = source.num_objects();
        if object_map.len() != k || object_map.iter().any(|&o| o >= target.num_objects()) {
            return Err(Error::ill_formed("object map does not cover the source"));
        }
        if source.dim_cap != target.dim_cap {
            return Err(Error::ill_formed("source and target have different caps"));
        }
        if maps.len() != k || maps.iter().any(|r| r.len() != k) {
            return Err(Error::ill_formed("a map is needed for every ordered pair"));
        }
        let cap = source.dim_cap;
        for a in 0..k {
            for b in 0..k {
                let (s, t) = (&source.maps[a][b], &target.maps[object_map[a]][object_map[b]]);
                let m = &maps[a][b];
                if m.len() != cap + 1 || (0..=cap).any(|n| m[n].len() != s.size(n) || m[n].iter().any(|&y| y >= t.size(n))) {
                    return Err(Error::ill_formed(format!("Map({a},{b}) is not mapped into its target")));
                }
                check_explicit_map(s, t, m)?;
            }
            if maps[a][a][0][source.identities[a]] != target.identities[object_map[a]] {
                return Err(Error::ill_formed(format!("identity of `{}` is not preserved", source.objects[a])));
            }
        }
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    for n in 0..=cap {
                        for g in 0..source.maps[b][c].size(n) {
                            for f in 0..source.maps[a][b].size(n) {
                                let lhs = maps[a][c][n][source.compose(a, b, c, n, g, f)];
                                let rhs = target.compose(object_map[a], object_map[b], object_map[c], n, maps[b][c][n][g], maps[a][b][n][f]);
                                if lhs != rhs {
                                    return Err(Error::ill_formed(format!("composition ({a},{b},{c}) is not preserved at level {n}")));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(SimplicialFunctor { source, target, object_map, maps })
    }

    /// The functor of discrete enrichments induced by an ordinary functor.
    pub fn discrete(f: &Functor, dim_cap: usize) -> Result<Self> {
        let (c, d) = (f.source(), f.target());
        let k = c.num_objects();
        let maps = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        let (fa, fb) = (f.on_object(a), f.on_object(b));
                        let level: Vec<usize> = c
                            .hom(a, b)
                            .iter()
                            .map(|&m| d.hom(fa, fb).iter().position(|&n| n == f.on_morphism(m)).expect("functors preserve hom-sets"))
                            .collect();
                        vec![level; dim_cap + 1]
                    })
                    .collect()
            })
            .collect();
        Self::new(
            FinSimplicialCategory::discrete(c, dim_cap),
            FinSimplicialCategory::discrete(d, dim_cap),
            f.object_map().to_vec(),
            maps,
        )
    }

    pub fn identity(c: &FinSimplicialCategory) -> Self {
        let k = c.num_objects();
        let maps = (0..k)
            .map(|a| (0..k).map(|b| (0..=c.dim_cap).map(|n| (0..c.maps[a][b].size(n)).collect()).collect()).collect())
            .collect();
        SimplicialFunctor { source: c.clone(), target: c.clone(), object_map: (0..k).collect(), maps }
    }

    pub fn source(&self) -> &FinSimplicialCategory {
        &self.source
    }

    pub fn target(&self) -> &FinSimplicialCategory {
        &self.target
    }

    pub fn on_object(&self, a: usize) -> usize {
        self.object_map[a]
    }

    pub fn map(&self, a: usize, b: usize) -> &ExplicitMap {
        &self.maps[a][b]
    }
}

/// Components of every mapping space, with the category they form.
struct Components {
    category: FinCategory,
    /// `class_of[a][b][v]`: morphism of the component of vertex `v`.
    class_of: Vec<Vec<Vec<MorId>>>,
    representative: Vec<(usize, usize, usize)>,
}

fn components(c: &FinSimplicialCategory) -> Result<Components> {
    let k = c.num_objects();
    let mut b = FinCategoryBuilder::new();
    for o in &c.objects {
        b.object(o.clone());
    }
    let mut class_of = vec![vec![Vec::new(); k]; k];
    let mut representative = Vec::new();
    let mut used = std::collections::HashSet::new();
    for x in 0..k {
        for y in 0..k {
            let space = &c.maps[x][y];
            let (labels, count) = space.pi0_labels();
            let mut ids = vec![usize::MAX; count];
            for (v, &l) in labels.iter().enumerate() {
                if ids[l] == usize::MAX {
                    let mut name = space.labels[0][v].clone();
                    while !used.insert(name.clone()) {
                        name.push('\'');
                    }
                    ids[l] = b.morphism(name, x, y);
                    representative.push((x, y, v));
                }
            }
            class_of[x][y] = labels.iter().map(|&l| ids[l]).collect();
        }
    }
    for x in 0..k {
        b.identity(x, class_of[x][x][c.identities[x]]);
    }
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                let mut seen: HashMap<(MorId, MorId), MorId> = HashMap::new();
                for g in 0..c.maps[y][z].size(0) {
                    for f in 0..c.maps[x][y].size(0) {
                        let key = (class_of[y][z][g], class_of[x][y][f]);
                        let value = class_of[x][z][c.compose(x, y, z, 0, g, f)];
                        if *seen.entry(key).or_insert(value) != value {
                            return Err(Error::ill_formed(format!(
                                "composition ({x},{y},{z}) is not constant on components"
                            )));
                        }
                    }
                }
                for ((g, f), h) in seen {
                    b.compose(g, f, h);
                }
            }
        }
    }
    let category = b.build()?;
    let report = category.verify();
    if !report.is_empty() {
        return Err(Error::ill_formed(report.describe(&category).join("; ")));
    }
    Ok(Components { category, class_of, representative })
}

/// `π0 C`: same objects, hom-sets the components of the mapping spaces.
pub fn pi0_category(c: &FinSimplicialCategory) -> Result<FinCategory> {
    Ok(components(c)?.category)
}

/// Mapping-space battery plus equivalence of `π0` functors.
pub fn dk_check_enriched(f: &SimplicialFunctor) -> Result<DkVerdict> {
    let (src, tgt) = (f.source(), f.target());
    let cs = components(src)?;
    let ct = components(tgt)?;
    let morphism_map = cs
        .representative
        .iter()
        .map(|&(a, b, v)| ct.class_of[f.on_object(a)][f.on_object(b)][f.maps[a][b][0][v]])
        .collect();
    let pi0_f = Functor::new(cs.category.clone(), ct.category.clone(), f.object_map.clone(), morphism_map)?;
    let mut certificates = Vec::new();
    for a in 0..src.num_objects() {
        for b in 0..src.num_objects() {
            let target = &tgt.maps[f.on_object(a)][f.on_object(b)];
            certificates.push(((a, b), certify_map(&src.maps[a][b], target, &f.maps[a][b])?));
        }
    }
    Ok(combine_dk(pi0_f.check_equivalence(), certificates))
}
