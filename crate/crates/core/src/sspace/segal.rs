use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use super::{BisimplicialMap, TruncatedBisimplicialSet};
use crate::certify::{certify_map, combine_dk, Certificate, DkVerdict, Obstruction};
use crate::error::{Error, Result};
use crate::fincat::{EquivalenceFailure, FinCategory, FinCategoryBuilder, Functor, Ladder, MorId};
use crate::simpset::{ExplicitMap, ExplicitSimplicialSet, TruncatedSimplicialSet};
use crate::util::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegalVerdict {
    /// The Segal map is a bijection in every vertical degree.
    Bijection,
    /// Not a bijection, but components and homology agree.
    InvariantsMatch { witness: String },
    Fail { witness: String, obstruction: Obstruction },
}

impl SegalVerdict {
    pub fn passes(&self) -> bool {
        !matches!(self, SegalVerdict::Fail { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            SegalVerdict::Bijection => "bijection",
            SegalVerdict::InvariantsMatch { .. } => "invariants-match",
            SegalVerdict::Fail { .. } => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegalEntry {
    pub k: usize,
    pub verdict: SegalVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegalReport {
    pub entries: Vec<SegalEntry>,
}

impl SegalReport {
    pub fn passes(&self) -> bool {
        self.entries.iter().all(|e| e.verdict.passes())
    }

    pub fn all_bijections(&self) -> bool {
        self.entries.iter().all(|e| e.verdict == SegalVerdict::Bijection)
    }

    pub fn verdict(&self, k: usize) -> Option<&SegalVerdict> {
        self.entries.iter().find(|e| e.k == k).map(|e| &e.verdict)
    }
}

/// `W_1 ×_{W_0} ... ×_{W_0} W_1` with `k` factors, as a simplicial set in
/// the vertical direction, with the tuple index per level.
fn fiber_power(w: &TruncatedBisimplicialSet, k: usize) -> (ExplicitSimplicialSet, Vec<HashMap<Vec<usize>, usize>>) {
    let m_cap = w.caps().1;
    let mut tuples: Vec<Vec<Vec<usize>>> = Vec::with_capacity(m_cap + 1);
    for m in 0..=m_cap {
        let mut by_source: HashMap<usize, Vec<usize>> = HashMap::new();
        for e in 0..w.size(1, m) {
            by_source.entry(w.hface(1, m, 1, e)).or_default().push(e);
        }
        let mut level: Vec<Vec<usize>> = (0..w.size(1, m)).map(|e| vec![e]).collect();
        for _ in 1..k {
            level = level
                .iter()
                .flat_map(|t| {
                    let end = w.hface(1, m, 0, *t.last().expect("nonempty"));
                    by_source.get(&end).into_iter().flatten().map(move |&e| {
                        let mut t2 = t.clone();
                        t2.push(e);
                        t2
                    })
                })
                .collect();
        }
        tuples.push(level);
    }
    let index: Vec<HashMap<Vec<usize>, usize>> =
        tuples.iter().map(|l| l.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect()).collect();
    let labels = (0..=m_cap)
        .map(|m| tuples[m].iter().map(|t| format!("[{}]", t.iter().map(|&e| w.label(1, m, e)).join("|"))).collect())
        .collect();
    let faces = (0..=m_cap)
        .map(|m| {
            if m == 0 {
                return Vec::new();
            }
            (0..=m)
                .map(|i| {
                    tuples[m].iter().map(|t| index[m - 1][&t.iter().map(|&e| w.vface(1, m, i, e)).collect::<Vec<_>>()]).collect()
                })
                .collect()
        })
        .collect();
    let degeneracies = (0..m_cap)
        .map(|m| {
            (0..=m)
                .map(|j| {
                    tuples[m].iter().map(|t| index[m + 1][&t.iter().map(|&e| w.vdeg(1, m, j, e)).collect::<Vec<_>>()]).collect()
                })
                .collect()
        })
        .collect();
    (ExplicitSimplicialSet { dim_cap: m_cap, labels, faces, degeneracies }, index)
}

fn segal_verdict(w: &TruncatedBisimplicialSet, k: usize) -> Result<SegalVerdict> {
    let m_cap = w.caps().1;
    let (fp, index) = fiber_power(w, k);
    let map: ExplicitMap = (0..=m_cap)
        .map(|m| {
            (0..w.size(k, m))
                .map(|x| {
                    let spine: Vec<usize> = (1..=k).map(|j| w.hrestrict(k, m, x, &[j - 1, j])).collect();
                    index[m][&spine]
                })
                .collect()
        })
        .collect();
    let mut witness = None;
    'levels: for m in 0..=m_cap {
        let mut hit: Vec<Option<usize>> = vec![None; fp.size(m)];
        for (x, &t) in map[m].iter().enumerate() {
            if let Some(prev) = hit[t] {
                witness = Some(format!(
                    "`{}` and `{}` in W_{{{k},{m}}} have the same spine",
                    w.label(k, m, prev),
                    w.label(k, m, x)
                ));
                break 'levels;
            }
            hit[t] = Some(x);
        }
        if let Some(t) = hit.iter().position(|h| h.is_none()) {
            witness = Some(format!("`{}` has no preimage in W_{{{k},{m}}}", fp.labels[m][t]));
            break;
        }
    }
    let Some(witness) = witness else {
        return Ok(SegalVerdict::Bijection);
    };
    Ok(match certify_map(w.column(k), &fp, &map)? {
        Certificate::NotEquivalent(obstruction) => SegalVerdict::Fail { witness, obstruction },
        _ => SegalVerdict::InvariantsMatch { witness },
    })
}

/// Compares each `W_k` (for `2 <= k <= N`) with the `k`-fold fiber power of
/// `W_1` over `W_0` through the spine map.
pub fn segal_check(w: &TruncatedBisimplicialSet) -> Result<SegalReport> {
    let n_cap = w.caps().0;
    if n_cap < 2 {
        return Err(Error::invalid("the Segal check needs a horizontal cap of at least 2"));
    }
    let entries = (2..=n_cap).map(|k| Ok(SegalEntry { k, verdict: segal_verdict(w, k)? })).collect::<Result<_>>()?;
    Ok(SegalReport { entries })
}

fn require_segal(w: &TruncatedBisimplicialSet) -> Result<()> {
    if w.caps().0 < 2 {
        return Err(Error::invalid("a horizontal cap of at least 2 is needed for composition"));
    }
    match segal_verdict(w, 2)? {
        SegalVerdict::Fail { witness, .. } => Err(Error::Precondition(format!("Segal condition fails at k = 2: {witness}"))),
        _ => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingSpace {
    pub x: usize,
    pub y: usize,
    pub explicit: ExplicitSimplicialSet,
    pub carrier: TruncatedSimplicialSet,
    /// `inclusion[m][i]` is the element of `W_{1,m}` behind the `i`-th
    /// `m`-simplex.
    pub inclusion: ExplicitMap,
}

fn in_mapping_space(w: &TruncatedBisimplicialSet, m: usize, e: usize, x: usize, y: usize) -> bool {
    w.hface(1, m, 1, e) == w.vconstant(0, m, x) && w.hface(1, m, 0, e) == w.vconstant(0, m, y)
}

/// The fiber of `W_1 -> W_0 × W_0` over the constant simplices on `(x, y)`.
pub fn mapping_space(w: &TruncatedBisimplicialSet, x: usize, y: usize) -> Result<MappingSpace> {
    let (n_cap, m_cap) = w.caps();
    if n_cap < 1 {
        return Err(Error::invalid("mapping spaces need a horizontal cap of at least 1"));
    }
    if x >= w.size(0, 0) || y >= w.size(0, 0) {
        return Err(Error::invalid("object out of range"));
    }
    let keep: Vec<Vec<bool>> =
        (0..=m_cap).map(|m| (0..w.size(1, m)).map(|e| in_mapping_space(w, m, e, x, y)).collect()).collect();
    let (explicit, inclusion) = w.column(1).restrict(&keep);
    let carrier = explicit.to_truncated();
    Ok(MappingSpace { x, y, explicit, carrier, inclusion })
}

/// `Ho(W)`: objects `W_{0,0}`, morphisms the components of the mapping
/// spaces, composition through `W_{2,0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoCategory {
    pub category: FinCategory,
    /// The morphism of `Ho(W)` represented by each element of `W_{1,0}`.
    pub class_of: Vec<MorId>,
    /// Number of elements of `W_{2,0}` whose composite was compared.
    pub lifts_checked: usize,
}

pub fn homotopy_category(w: &TruncatedBisimplicialSet) -> Result<HoCategory> {
    require_segal(w)?;
    let m_cap = w.caps().1;
    let objects = w.size(0, 0);
    let edges = w.size(1, 0);
    let mut uf = UnionFind::new(edges);
    if m_cap >= 1 {
        for e in 0..w.size(1, 1) {
            let (a, b) = (w.vface(1, 1, 1, e), w.vface(1, 1, 0, e));
            let (x, y) = (w.hface(1, 0, 1, a), w.hface(1, 0, 0, a));
            if in_mapping_space(w, 1, e, x, y) {
                uf.union(a, b);
            }
        }
    }
    let (class_of, count) = uf.labels();
    let mut rep = vec![usize::MAX; count];
    for (e, &c) in class_of.iter().enumerate().rev() {
        rep[c] = e;
    }
    let mut b = FinCategoryBuilder::new();
    for x in 0..objects {
        b.object(w.label(0, 0, x));
    }
    let mut used: std::collections::HashSet<String> = std::collections::HashSet::new();
    for &r in &rep {
        let mut name = w.label(1, 0, r).to_string();
        while !used.insert(name.clone()) {
            name.push('\'');
        }
        b.morphism(name, w.hface(1, 0, 1, r), w.hface(1, 0, 0, r));
    }
    for x in 0..objects {
        b.identity(x, class_of[w.hdeg(0, 0, 0, x)]);
    }
    let mut table: HashMap<(MorId, MorId), MorId> = HashMap::new();
    for k in 0..w.size(2, 0) {
        let f = class_of[w.hface(2, 0, 2, k)];
        let g = class_of[w.hface(2, 0, 0, k)];
        let h = class_of[w.hface(2, 0, 1, k)];
        if let Some(&old) = table.get(&(g, f)) {
            if old != h {
                return Err(Error::Precondition(format!(
                    "composite depends on the lift: `{}` and `{}` differ",
                    w.label(1, 0, rep[old]),
                    w.label(1, 0, rep[h])
                )));
            }
        }
        table.insert((g, f), h);
    }
    for f in 0..count {
        for g in 0..count {
            let (rf, rg) = (rep[f], rep[g]);
            if w.hface(1, 0, 0, rf) == w.hface(1, 0, 1, rg) && !table.contains_key(&(g, f)) {
                return Err(Error::Precondition(format!(
                    "no lift composes `{}` with `{}`",
                    w.label(1, 0, rf),
                    w.label(1, 0, rg)
                )));
            }
        }
    }
    for (&(g, f), &h) in &table {
        b.compose(g, f, h);
    }
    let category = b.build()?;
    let report = category.verify();
    if !report.is_empty() {
        return Err(Error::Precondition(format!(
            "induced composition is not a category: {}",
            report.describe(&category).join("; ")
        )));
    }
    Ok(HoCategory { category, class_of, lifts_checked: w.size(2, 0) })
}

/// The components of `W_1` made of homotopy equivalences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Heq {
    /// Component label of every element of `W_{1,0}`.
    pub component_of: Vec<usize>,
    /// Labels of the components whose elements are invertible in `Ho(W)`.
    pub components: Vec<usize>,
    /// Per element of `W_{1,0}`: lies in a homotopy-equivalence component.
    pub vertices: Vec<bool>,
}

impl Heq {
    /// `W_heq` as a subspace of `W_1`, with its inclusion.
    pub fn space(&self, w: &TruncatedBisimplicialSet) -> (ExplicitSimplicialSet, ExplicitMap) {
        let m_cap = w.caps().1;
        let keep: Vec<Vec<bool>> =
            (0..=m_cap).map(|m| (0..w.size(1, m)).map(|e| self.vertices[w.vbase(1, m, e)]).collect()).collect();
        w.column(1).restrict(&keep)
    }
}

fn heq_from(w: &TruncatedBisimplicialSet, ho: &HoCategory) -> Heq {
    let (component_of, count) = w.column(1).pi0_labels();
    let mut invertible = vec![true; count];
    for (e, &c) in component_of.iter().enumerate() {
        if !ho.category.is_iso(ho.class_of[e]) {
            invertible[c] = false;
        }
    }
    let components = (0..count).filter(|&c| invertible[c]).collect();
    let vertices = component_of.iter().map(|&c| invertible[c]).collect();
    Heq { component_of, components, vertices }
}

pub fn heq(w: &TruncatedBisimplicialSet) -> Result<Heq> {
    let ho = homotopy_category(w)?;
    Ok(heq_from(w, &ho))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IncompleteWitness {
    /// `x` and `y` lie in one component of `W_0` but are not isomorphic in
    /// `Ho(W)`, or the other way round.
    Partition { x: usize, y: usize },
    /// `s_0 x` is not a homotopy equivalence.
    NotHeq { x: usize },
    Groupoid(EquivalenceFailure),
    Invariant(Obstruction),
}

impl fmt::Display for IncompleteWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IncompleteWitness::Partition { x, y } => write!(f, "objects {x} and {y}: components of W_0 disagree with Ho isomorphism"),
            IncompleteWitness::NotHeq { x } => write!(f, "s_0 of object {x} is not a homotopy equivalence"),
            IncompleteWitness::Groupoid(e) => write!(f, "groupoid comparison: {e:?}"),
            IncompleteWitness::Invariant(o) => write!(f, "{o}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completeness {
    Complete,
    Incomplete(IncompleteWitness),
    Unknown,
}

impl Completeness {
    pub fn label(&self) -> &'static str {
        match self {
            Completeness::Complete => "Complete",
            Completeness::Incomplete(_) => "Incomplete",
            Completeness::Unknown => "Unknown",
        }
    }
}

/// Decides whether `s_0: W_0 -> W_heq` is an equivalence.
pub fn completeness_check(w: &TruncatedBisimplicialSet) -> Result<Completeness> {
    let ho = homotopy_category(w)?;
    let heq = heq_from(w, &ho);
    let objects = w.size(0, 0);
    for x in 0..objects {
        if !heq.vertices[w.hdeg(0, 0, 0, x)] {
            return Ok(Completeness::Incomplete(IncompleteWitness::NotHeq { x }));
        }
    }
    let (w0_labels, _) = w.column(0).pi0_labels();
    for (x, y) in (0..objects).tuple_combinations() {
        let same_component = w0_labels[x] == w0_labels[y];
        let isomorphic = ho.category.hom(x, y).iter().any(|&f| ho.category.is_iso(f));
        if same_component != isomorphic {
            return Ok(Completeness::Incomplete(IncompleteWitness::Partition { x, y }));
        }
    }
    if let Some(c) = w.origin() {
        return Ok(match groupoid_completeness(c, &heq)? {
            Ok(()) => Completeness::Complete,
            Err(e) => Completeness::Incomplete(IncompleteWitness::Groupoid(e)),
        });
    }
    let (space, inclusion) = heq.space(w);
    let m_cap = w.caps().1;
    let position: Vec<HashMap<usize, usize>> =
        inclusion.iter().map(|l| l.iter().enumerate().map(|(i, &e)| (e, i)).collect()).collect();
    let s0: ExplicitMap =
        (0..=m_cap).map(|m| (0..w.size(0, m)).map(|x| position[m][&w.hdeg(0, m, 0, x)]).collect()).collect();
    Ok(match certify_map(w.column(0), &space, &s0)? {
        Certificate::Equivalent => Completeness::Complete,
        Certificate::NotEquivalent(o) => Completeness::Incomplete(IncompleteWitness::Invariant(o)),
        Certificate::Unknown => Completeness::Unknown,
    })
}

/// `s_0: iso(C) -> iso(C^[1])` restricted to the homotopy-equivalence
/// objects, checked as a functor of groupoids.
fn groupoid_completeness(c: &FinCategory, heq: &Heq) -> Result<std::result::Result<(), EquivalenceFailure>> {
    let g0 = c.iso_arrow_category(0);
    let g1 = c.iso_arrow_category(1);
    let inclusion = g1.full_subcategory(&heq.vertices)?;
    let obj_pos: HashMap<usize, usize> = inclusion.object_map().iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mor_pos: HashMap<usize, usize> = inclusion.morphism_map().iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let ladders1: HashMap<Ladder, usize> = c.ladders(1, true).into_iter().enumerate().map(|(i, l)| (l, i)).collect();
    let object_map = (0..g0.num_objects()).map(|x| obj_pos.get(&c.identity(x)).copied()).collect::<Option<Vec<_>>>();
    let morphism_map = c
        .ladders(0, true)
        .iter()
        .map(|l| {
            let r = l.rungs[0];
            let degenerate =
                Ladder { source: c.identity(c.source(r)), rungs: vec![r, r], target: c.identity(c.target(r)) };
            mor_pos.get(&ladders1[&degenerate]).copied()
        })
        .collect::<Option<Vec<_>>>();
    let (Some(object_map), Some(morphism_map)) = (object_map, morphism_map) else {
        return Err(Error::Precondition("s_0 leaves the homotopy equivalences".into()));
    };
    let s0 = Functor::new(g0, inclusion.source().clone(), object_map, morphism_map)?;
    Ok(s0.check_equivalence())
}

/// `true` when column 0 is constant: every simplex of `W_0` is totally
/// degenerate.
pub fn is_segal_precategory(w: &TruncatedBisimplicialSet) -> bool {
    let m_cap = w.caps().1;
    (1..=m_cap).all(|m| {
        let mut hit = vec![false; w.size(0, m)];
        (0..w.size(0, 0)).for_each(|x| hit[w.vconstant(0, m, x)] = true);
        w.size(0, m) == w.size(0, 0) && hit.iter().all(|&h| h)
    })
}

/// `RW`: the elements of `W` whose horizontal vertices are constant in the
/// vertical direction.
pub fn discretize(w: &TruncatedBisimplicialSet) -> TruncatedBisimplicialSet {
    let (n_cap, m_cap) = w.caps();
    let constant: Vec<Vec<bool>> = (0..=m_cap)
        .map(|m| {
            let mut flags = vec![false; w.size(0, m)];
            for x in 0..w.size(0, 0) {
                flags[w.vconstant(0, m, x)] = true;
            }
            flags
        })
        .collect();
    let keep: Vec<Vec<Vec<bool>>> = (0..=n_cap)
        .map(|n| {
            (0..=m_cap)
                .map(|m| (0..w.size(n, m)).map(|x| (0..=n).all(|v| constant[m][w.hrestrict(n, m, x, &[v])])).collect())
                .collect()
        })
        .collect();
    w.restrict(&keep)
}

/// Dwyer-Kan comparison of a map of Segal-type objects: the induced
/// functor on homotopy categories and the battery on every mapping-space
/// map.
pub fn dk_check(f: &BisimplicialMap) -> Result<DkVerdict> {
    let (w, z) = (f.source(), f.target());
    let ho_w = homotopy_category(w)?;
    let ho_z = homotopy_category(z)?;
    let mut rep = vec![usize::MAX; ho_w.category.num_morphisms()];
    for (e, &c) in ho_w.class_of.iter().enumerate().rev() {
        rep[c] = e;
    }
    let ho_f = Functor::new(
        ho_w.category.clone(),
        ho_z.category.clone(),
        (0..w.size(0, 0)).map(|x| f.apply(0, 0, x)).collect(),
        rep.iter().map(|&e| ho_z.class_of[f.apply(1, 0, e)]).collect(),
    )?;
    let m_cap = w.caps().1;
    let mut certificates = Vec::new();
    for x in 0..w.size(0, 0) {
        for y in 0..w.size(0, 0) {
            let source = mapping_space(w, x, y)?;
            let target = mapping_space(z, f.apply(0, 0, x), f.apply(0, 0, y))?;
            let position: Vec<HashMap<usize, usize>> =
                target.inclusion.iter().map(|l| l.iter().enumerate().map(|(i, &e)| (e, i)).collect()).collect();
            let map: ExplicitMap = (0..=m_cap)
                .map(|m| source.inclusion[m].iter().map(|&e| position[m][&f.apply(1, m, e)]).collect())
                .collect();
            certificates.push(((x, y), certify_map(&source.explicit, &target.explicit, &map)?));
        }
    }
    Ok(combine_dk(ho_f.check_equivalence(), certificates))
}
