//! Horn lifting: enumerate horns, find fillers, and classify truncated
//! simplicial sets as Kan complexes, quasi-categories or nerves, up to a
//! dimension bound.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::fincat::{nerve, FinCategory, FinCategoryBuilder};
use crate::simpset::{SimplexRef, SimplicialMap, TruncatedSimplicialSet};

/// A map `V[n,k] -> X`: the faces `d_i` for every `i != k`, in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HornProblem {
    pub n: usize,
    pub k: usize,
    pub faces: Vec<SimplexRef>,
}

impl HornProblem {
    pub fn new(x: &TruncatedSimplicialSet, n: usize, k: usize, faces: Vec<SimplexRef>) -> Result<Self> {
        check_range(x, n, k)?;
        if faces.len() != n || faces.iter().any(|f| f.dim() + 1 != n) {
            return Err(Error::invalid(format!("a V[{n},{k}] horn needs {n} faces of dimension {}", n - 1)));
        }
        let p = HornProblem { n, k, faces };
        for j in 0..=n {
            for i in 0..j {
                if i == k || j == k || n < 2 {
                    continue;
                }
                if x.face(p.face(j).expect("j != k"), i) != x.face(p.face(i).expect("i != k"), j - 1) {
                    return Err(Error::invalid(format!("faces {i} and {j} do not match")));
                }
            }
        }
        Ok(p)
    }

    /// The `i`-th face, `None` for the missing one.
    pub fn face(&self, i: usize) -> Option<&SimplexRef> {
        match i.cmp(&self.k) {
            std::cmp::Ordering::Less => Some(&self.faces[i]),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(&self.faces[i - 1]),
        }
    }

    pub fn is_inner(&self) -> bool {
        0 < self.k && self.k < self.n
    }

    pub fn describe(&self, x: &TruncatedSimplicialSet) -> String {
        let faces = (0..=self.n)
            .filter(|&i| i != self.k)
            .map(|i| format!("d{i}={}", x.simplex_label(self.face(i).expect("i != k"))))
            .join(" ");
        format!("V[{},{}] {faces}", self.n, self.k)
    }
}

fn check_range(x: &TruncatedSimplicialSet, n: usize, k: usize) -> Result<()> {
    if n < 1 || n > x.dim_cap() || k > n {
        return Err(Error::invalid(format!("horn V[{n},{k}] is out of range for dim_cap {}", x.dim_cap())));
    }
    Ok(())
}

/// Every compatible tuple of faces, in lexicographic order of simplices.
pub fn enumerate_horns(x: &TruncatedSimplicialSet, n: usize, k: usize) -> Result<Vec<HornProblem>> {
    check_range(x, n, k)?;
    let simplices = x.n_simplices(n - 1)?;
    if n == 1 {
        return Ok(simplices.into_iter().map(|v| HornProblem { n, k, faces: vec![v] }).collect());
    }
    let faces: Vec<Vec<SimplexRef>> = simplices.iter().map(|s| (0..n).map(|i| x.face(s, i)).collect()).collect();
    let mut by_face: Vec<HashMap<&SimplexRef, Vec<usize>>> = vec![HashMap::new(); n];
    for (idx, fs) in faces.iter().enumerate() {
        for (i, f) in fs.iter().enumerate() {
            by_face[i].entry(f).or_default().push(idx);
        }
    }
    let slots: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
    let all: Vec<usize> = (0..simplices.len()).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    search(&slots, &faces, &by_face, &all, &mut chosen, &mut |chosen| {
        out.push(HornProblem { n, k, faces: chosen.iter().map(|&c| simplices[c].clone()).collect() });
    });
    Ok(out)
}

fn search(
    slots: &[usize],
    faces: &[Vec<SimplexRef>],
    by_face: &[HashMap<&SimplexRef, Vec<usize>>],
    all: &[usize],
    chosen: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    let pos = chosen.len();
    if pos == slots.len() {
        emit(chosen);
        return;
    }
    let j = slots[pos];
    // candidates for x_j: d_i(x_j) = d_{j-1}(x_i) for every chosen i < j
    let candidates: &[usize] = match pos {
        0 => all,
        _ => {
            let i = slots[0];
            match by_face[i].get(&faces[chosen[0]][j - 1]) {
                Some(v) => v,
                None => return,
            }
        }
    };
    for &c in candidates {
        let ok = (1..pos).all(|q| faces[c][slots[q]] == faces[chosen[q]][j - 1]);
        if ok {
            chosen.push(c);
            search(slots, faces, by_face, all, chosen, emit);
            chosen.pop();
        }
    }
}

/// Every `n`-simplex (degenerate ones included) whose faces match the horn.
pub fn fillers(x: &TruncatedSimplicialSet, p: &HornProblem) -> Result<Vec<SimplexRef>> {
    check_range(x, p.n, p.k)?;
    Ok(x.n_simplices(p.n)?
        .into_iter()
        .filter(|z| (0..=p.n).filter(|&i| i != p.k).all(|i| Some(&x.face(z, i)) == p.face(i)))
        .collect())
}

/// Counts for all horns `V[n,k]` at one `(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornStats {
    pub n: usize,
    pub k: usize,
    pub total: usize,
    pub unfilled: usize,
    pub multifilled: usize,
    pub unfilled_witness: Option<HornProblem>,
    pub multifilled_witness: Option<HornProblem>,
}

impl HornStats {
    pub fn is_inner(&self) -> bool {
        0 < self.k && self.k < self.n
    }
}

/// Horn statistics for `2 <= n <= d` and the chosen range of `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub d: usize,
    pub entries: Vec<HornStats>,
}

impl LiftReport {
    fn first<'a>(&'a self, inner_only: bool, bad: impl Fn(&HornStats) -> bool + 'a) -> Option<&'a HornStats> {
        self.entries.iter().find(|e| (!inner_only || e.is_inner()) && bad(e))
    }

    /// Every horn in the report has a filler.
    pub fn all_filled(&self) -> bool {
        self.first(false, |e| e.unfilled > 0).is_none()
    }

    pub fn inner_filled(&self) -> bool {
        self.first(true, |e| e.unfilled > 0).is_none()
    }

    pub fn inner_unique(&self) -> bool {
        self.first(true, |e| e.unfilled > 0 || e.multifilled > 0).is_none()
    }

    pub fn all_unique(&self) -> bool {
        self.first(false, |e| e.unfilled > 0 || e.multifilled > 0).is_none()
    }

    /// The first `(n, k)` with an unfilled horn, restricted to inner horns
    /// when asked.
    pub fn first_unfilled(&self, inner_only: bool) -> Option<&HornStats> {
        self.first(inner_only, |e| e.unfilled > 0)
    }

    pub fn first_multifilled(&self, inner_only: bool) -> Option<&HornStats> {
        self.first(inner_only, |e| e.multifilled > 0)
    }

    /// One line per `(n, k)`: `n k total unfilled multifilled`.
    pub fn table(&self) -> String {
        self.entries.iter().map(|e| format!("{} {} {} {} {}\n", e.n, e.k, e.total, e.unfilled, e.multifilled)).collect()
    }
}

impl fmt::Display for LiftReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.table())
    }
}

fn check_bound(x: &TruncatedSimplicialSet, d: usize) -> Result<()> {
    if d < 2 || d > x.dim_cap() {
        return Err(Error::invalid(format!("dimension bound {d} must lie in 2..={}", x.dim_cap())));
    }
    Ok(())
}

fn horn_stats(x: &TruncatedSimplicialSet, n: usize, k: usize) -> Result<HornStats> {
    let horns = enumerate_horns(x, n, k)?;
    let mut index: HashMap<Vec<SimplexRef>, usize> = HashMap::new();
    for z in x.n_simplices(n)? {
        let key: Vec<SimplexRef> = (0..=n).filter(|&i| i != k).map(|i| x.face(&z, i)).collect();
        *index.entry(key).or_default() += 1;
    }
    let mut stats = HornStats {
        n,
        k,
        total: horns.len(),
        unfilled: 0,
        multifilled: 0,
        unfilled_witness: None,
        multifilled_witness: None,
    };
    for h in horns {
        match index.get(&h.faces).copied().unwrap_or(0) {
            0 => {
                stats.unfilled += 1;
                stats.unfilled_witness.get_or_insert(h);
            }
            1 => {}
            _ => {
                stats.multifilled += 1;
                stats.multifilled_witness.get_or_insert(h);
            }
        }
    }
    Ok(stats)
}

fn report(x: &TruncatedSimplicialSet, d: usize, inner_only: bool) -> Result<LiftReport> {
    check_bound(x, d)?;
    let mut entries = Vec::new();
    for n in 2..=d {
        for k in 0..=n {
            if inner_only && (k == 0 || k == n) {
                continue;
            }
            entries.push(horn_stats(x, n, k)?);
        }
    }
    Ok(LiftReport { d, entries })
}

/// All horns `V[n,k]` with `2 <= n <= d`.
pub fn is_kan(x: &TruncatedSimplicialSet, d: usize) -> Result<LiftReport> {
    report(x, d, false)
}

/// Inner horns only.
pub fn is_quasicategory(x: &TruncatedSimplicialSet, d: usize) -> Result<LiftReport> {
    report(x, d, true)
}

/// Outcome of a nerve recognition test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NerveVerdict {
    Pass,
    /// Some horn has no filler.
    Unfilled(HornProblem),
    /// Some horn has more than one filler.
    NotUnique(HornProblem),
}

impl NerveVerdict {
    pub fn passes(&self) -> bool {
        matches!(self, NerveVerdict::Pass)
    }
}

fn nerve_verdict(r: &LiftReport, inner_only: bool) -> NerveVerdict {
    for e in r.entries.iter().filter(|e| !inner_only || e.is_inner()) {
        if let Some(w) = &e.unfilled_witness {
            return NerveVerdict::Unfilled(w.clone());
        }
        if let Some(w) = &e.multifilled_witness {
            return NerveVerdict::NotUnique(w.clone());
        }
    }
    NerveVerdict::Pass
}

/// Every horn has exactly one filler up to dimension `d`.
pub fn is_nerve_of_groupoid(x: &TruncatedSimplicialSet, d: usize) -> Result<NerveVerdict> {
    Ok(nerve_verdict(&is_kan(x, d)?, false))
}

/// Every inner horn has exactly one filler up to dimension `d`.
pub fn is_nerve_of_category(x: &TruncatedSimplicialSet, d: usize) -> Result<NerveVerdict> {
    Ok(nerve_verdict(&is_quasicategory(x, d)?, true))
}

/// Reads a category off a simplicial set with unique inner 2-fillers:
/// vertices are objects, 1-simplices are morphisms (degenerate ones are the
/// identities) and `g∘f = d_1 z` for the filler `z` of the horn `(g, -, f)`.
pub fn reconstruct_category(x: &TruncatedSimplicialSet) -> Result<FinCategory> {
    if x.dim_cap() < 2 {
        return Err(Error::Precondition("reconstruction needs 2-simplices".into()));
    }
    let mut b = FinCategoryBuilder::new();
    for cell in x.cells(0) {
        b.object(cell.name.clone());
    }
    let edges = x.n_simplices(1)?;
    let mut edge_id = HashMap::new();
    let taken = |b: &FinCategoryBuilder, n: &str| b.morphism_named(n).is_some();
    for id in x.cell_ids(0) {
        let mut name = format!("id_{}", x.cell(id).name);
        while taken(&b, &name) || x.cell_by_name(&name).is_some() {
            name.push('\'');
        }
        let m = b.morphism(name, id.index, id.index);
        b.identity(id.index, m);
        edge_id.insert(x.degeneracy(&SimplexRef::nondegenerate(id), 0), m);
    }
    for e in edges.iter().filter(|e| !e.is_degenerate()) {
        let (s, t) = (x.face(e, 1).base.index, x.face(e, 0).base.index);
        edge_id.insert(e.clone(), b.morphism(x.cell(e.base).name.clone(), s, t));
    }
    let mut by_outer: HashMap<(SimplexRef, SimplexRef), Vec<SimplexRef>> = HashMap::new();
    for z in x.n_simplices(2)? {
        by_outer.entry((x.face(&z, 0), x.face(&z, 2))).or_default().push(z);
    }
    for f in &edges {
        for g in &edges {
            if x.face(f, 0) != x.face(g, 1) {
                continue;
            }
            match by_outer.get(&(g.clone(), f.clone())).map(|v| v.as_slice()) {
                Some([z]) => {
                    b.compose(edge_id[g], edge_id[f], edge_id[&x.face(z, 1)]);
                }
                _ => {
                    return Err(Error::Precondition(format!(
                        "the horn ({}, -, {}) does not have exactly one filler",
                        x.simplex_label(g),
                        x.simplex_label(f)
                    )))
                }
            }
        }
    }
    let c = b.build()?;
    let report = c.verify();
    if !report.is_empty() {
        return Err(Error::Precondition(format!("reconstructed table is not a category: {}", report.describe(&c).join("; "))));
    }
    Ok(c)
}

/// The comparison map `X -> nerve(C)` for `C = reconstruct_category(X)`,
/// built from spines. It is an isomorphism up to `dim_cap` exactly when `X`
/// is a nerve up to that dimension.
pub fn nerve_comparison(x: &TruncatedSimplicialSet, c: &FinCategory) -> Result<SimplicialMap> {
    let nc = nerve(c, x.dim_cap());
    SimplicialMap::from_spines(x, &nc, |v| v, |e| {
        if e.is_degenerate() {
            e.clone()
        } else {
            SimplexRef::nondegenerate(e.base)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    /// Brute force: every `n`-tuple of `(n-1)`-simplices, kept when the
    /// matching conditions hold.
    fn horn_count_oracle(x: &TruncatedSimplicialSet, n: usize, k: usize) -> usize {
        let simplices = x.n_simplices(n - 1).unwrap();
        let slots: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
        let mut count = 0;
        for tuple in (0..n).map(|_| simplices.iter()).multi_cartesian_product() {
            let ok = slots.iter().enumerate().all(|(a, &j)| {
                slots[..a].iter().enumerate().all(|(b, &i)| x.face(tuple[a], i) == x.face(tuple[b], j - 1))
            });
            if ok {
                count += 1;
            }
        }
        count
    }

    fn edge(x: &TruncatedSimplicialSet, name: &str) -> SimplexRef {
        SimplexRef::nondegenerate(x.cell_by_name(name).unwrap())
    }

    #[test]
    fn horn_enumeration_examples() {
        let e = nerve(&FinCategory::walking_arrow(), 3);
        assert_eq!(enumerate_horns(&e, 2, 1).unwrap().len(), 4);
        assert_eq!(horn_count_oracle(&e, 2, 1), 4);
        let pt = TruncatedSimplicialSet::standard_simplex(0).with_dim_cap(2);
        let horns = enumerate_horns(&pt, 2, 0).unwrap();
        assert_eq!(horns.len(), 1);
        assert!(horns[0].faces.iter().all(|f| f.is_degenerate()));
        let b = TruncatedSimplicialSet::boundary(2).with_dim_cap(2);
        let p = HornProblem::new(&b, 2, 1, vec![edge(&b, "1-2"), edge(&b, "0-1")]).unwrap();
        assert!(enumerate_horns(&b, 2, 1).unwrap().contains(&p));
        assert!(fillers(&b, &p).unwrap().is_empty());
        assert!(enumerate_horns(&b, 3, 0).is_err());
        assert!(enumerate_horns(&b, 2, 3).is_err());
    }

    #[test]
    fn horn_enumeration_matches_brute_force() {
        let sets = [
            nerve(&FinCategory::walking_iso(), 3),
            nerve(&corpus::idempotent_split(), 3),
            TruncatedSimplicialSet::boundary(3).with_dim_cap(3),
            TruncatedSimplicialSet::horn(3, 1).unwrap(),
        ];
        for x in &sets {
            for n in 1..=3 {
                for k in 0..=n {
                    assert_eq!(enumerate_horns(x, n, k).unwrap().len(), horn_count_oracle(x, n, k), "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn indexed_counts_match_filler_scan() {
        for (_, c) in corpus::categories().into_iter().take(25) {
            let x = nerve(&c, 3);
            for n in 2..=3 {
                for k in 0..=n {
                    let stats = horn_stats(&x, n, k).unwrap();
                    let mut unfilled = 0;
                    let mut multi = 0;
                    for h in enumerate_horns(&x, n, k).unwrap() {
                        match fillers(&x, &h).unwrap().len() {
                            0 => unfilled += 1,
                            1 => {}
                            _ => multi += 1,
                        }
                    }
                    assert_eq!((stats.unfilled, stats.multifilled), (unfilled, multi));
                }
            }
        }
    }

    #[test]
    fn filler_examples() {
        let e = nerve(&FinCategory::walking_arrow(), 3);
        let f = edge(&e, "f");
        let id_y = e.degeneracy(&edge(&e, "y"), 0);
        let p = HornProblem::new(&e, 2, 1, vec![id_y, f]).unwrap();
        assert_eq!(fillers(&e, &p).unwrap().len(), 1);
        let d = nerve(&FinCategory::walking_iso(), 3);
        for h in enumerate_horns(&d, 2, 0).unwrap() {
            assert!(!fillers(&d, &h).unwrap().is_empty());
        }
    }

    #[test]
    fn classification_examples() {
        let d = nerve(&FinCategory::walking_iso(), 4);
        assert!(is_kan(&d, 3).unwrap().all_filled());
        let e = nerve(&FinCategory::walking_arrow(), 3);
        let q = is_quasicategory(&e, 3).unwrap();
        assert!(q.inner_filled() && q.inner_unique());
        let k = is_kan(&e, 3).unwrap();
        let bad = k.first_unfilled(false).unwrap();
        assert_eq!((bad.n, bad.k), (2, 0));
        let w = bad.unfilled_witness.as_ref().unwrap();
        // d1 and d2 leave the same vertex
        assert_eq!(e.face(w.face(1).unwrap(), 1), e.face(w.face(2).unwrap(), 1));
        let b = TruncatedSimplicialSet::boundary(2).with_dim_cap(2);
        assert!(!is_quasicategory(&b, 2).unwrap().inner_filled());
        assert!(is_kan(&b, 3).is_err());
        assert!(is_kan(&b, 1).is_err());
        assert_eq!(horn_count_oracle(&e, 2, 0), 5);
        assert_eq!(k.table().lines().next(), Some("2 0 5 1 0"));
    }

    #[test]
    fn reconstruction_of_a_nerve() {
        let c = corpus::symmetric_group_3();
        let x = nerve(&c, 3);
        let r = reconstruct_category(&x).unwrap();
        assert_eq!(r.num_morphisms(), c.num_morphisms());
        assert!(nerve_comparison(&x, &r).unwrap().is_levelwise_bijective());
        let b = TruncatedSimplicialSet::boundary(2).with_dim_cap(2);
        assert!(reconstruct_category(&b).is_err());
    }
}
