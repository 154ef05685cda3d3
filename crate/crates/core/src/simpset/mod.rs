//! Truncated simplicial sets.
//!
//! A [`TruncatedSimplicialSet`] stores only its nondegenerate simplices up to a
//! dimension cap. Degenerate simplices exist virtually: every simplex is a
//! [`SimplexRef`], a nondegenerate base together with a strictly decreasing
//! degeneracy word (Eilenberg-Zilber normal form). All simplicial operators
//! are computed by factoring order-preserving maps into a surjection followed
//! by an injection.

mod explicit;
mod homology;
mod map;
mod text;

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::util::UnionFind;

pub use explicit::{check_explicit_map, ExplicitMap, ExplicitSimplicialSet};
pub use homology::{invariant_factors, HomologyGroup, HomologyReport};
pub use map::SimplicialMap;
pub use text::{parse_simplicial_set, write_simplicial_set};
pub(crate) use text::{parse_simplex_token, read_simplicial_set_block};

/// Identifies a nondegenerate cell: its dimension and its position in that
/// dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellId {
    pub dim: usize,
    pub index: usize,
}

impl CellId {
    pub fn new(dim: usize, index: usize) -> Self {
        CellId { dim, index }
    }
}

/// A simplex in normal form `s_{j_1} ... s_{j_k} base` with
/// `j_1 > ... > j_k`. An empty word means the simplex is nondegenerate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub base: CellId,
    pub word: Vec<usize>,
}

impl SimplexRef {
    pub fn nondegenerate(base: CellId) -> Self {
        SimplexRef { base, word: Vec::new() }
    }

    pub fn new(base: CellId, word: Vec<usize>) -> Result<Self> {
        let dim = base.dim + word.len();
        if !word.windows(2).all(|w| w[0] > w[1]) {
            return Err(Error::invalid(format!("degeneracy word {word:?} is not strictly decreasing")));
        }
        if let Some(&top) = word.first() {
            if top >= dim {
                return Err(Error::invalid(format!("degeneracy index {top} out of range for dimension {dim}")));
            }
        }
        Ok(SimplexRef { base, word })
    }

    pub fn dim(&self) -> usize {
        self.base.dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// The surjection `[dim] -> [base.dim]` encoded by the degeneracy word.
    pub fn surjection(&self) -> Vec<usize> {
        let n = self.dim();
        let mut sigma = Vec::with_capacity(n + 1);
        sigma.push(0);
        for p in 0..n {
            let step = if self.word.contains(&p) { 0 } else { 1 };
            sigma.push(sigma[p] + step);
        }
        sigma
    }

    fn from_surjection(base: CellId, sigma: &[usize]) -> Self {
        let word = (0..sigma.len().saturating_sub(1)).rev().filter(|&p| sigma[p] == sigma[p + 1]).collect();
        SimplexRef { base, word }
    }
}

/// Factors a monotone map into (surjection onto its image, sorted image).
pub(crate) fn epi_mono(map: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut image: Vec<usize> = Vec::with_capacity(map.len());
    let mut surj = Vec::with_capacity(map.len());
    for &v in map {
        if image.last() != Some(&v) {
            image.push(v);
        }
        surj.push(image.len() - 1);
    }
    (surj, image)
}

/// Coface `δ_i : [n-1] -> [n]`.
pub fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..=n).filter(|&v| v != i).collect()
}

/// Codegeneracy `σ_j : [n+1] -> [n]`.
pub fn codegeneracy(n: usize, j: usize) -> Vec<usize> {
    (0..=n + 1).map(|v| if v <= j { v } else { v - 1 }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub name: String,
    /// `faces[i]` is `d_i` of this cell; empty for vertices.
    pub faces: Vec<SimplexRef>,
}

#[derive(Clone, Debug)]
pub struct TruncatedSimplicialSet {
    dim_cap: usize,
    cells: Vec<Vec<Cell>>,
    names: HashMap<String, CellId>,
}

impl PartialEq for TruncatedSimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        self.dim_cap == other.dim_cap && self.cells == other.cells
    }
}

impl Eq for TruncatedSimplicialSet {}

/// Incremental construction; faces must refer to cells added earlier.
#[derive(Clone, Debug)]
pub struct SimplicialSetBuilder {
    dim_cap: usize,
    cells: Vec<Vec<Cell>>,
    names: HashMap<String, CellId>,
}

impl SimplicialSetBuilder {
    pub fn new(dim_cap: usize) -> Self {
        SimplicialSetBuilder { dim_cap, cells: vec![Vec::new(); dim_cap + 1], names: HashMap::new() }
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn lookup(&self, name: &str) -> Option<CellId> {
        self.names.get(name).copied()
    }

    pub fn add_cell(&mut self, dim: usize, name: impl Into<String>, faces: Vec<SimplexRef>) -> Result<CellId> {
        let name = name.into();
        crate::text::check_name(&name)?;
        if dim > self.dim_cap {
            return Err(Error::invalid(format!("cell `{name}` of dimension {dim} exceeds dim_cap {}", self.dim_cap)));
        }
        if self.names.contains_key(&name) {
            return Err(Error::invalid(format!("duplicate cell name `{name}`")));
        }
        let expected = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expected {
            return Err(Error::invalid(format!("cell `{name}` needs {expected} faces, got {}", faces.len())));
        }
        for (i, face) in faces.iter().enumerate() {
            if face.dim() + 1 != dim {
                return Err(Error::invalid(format!("face {i} of `{name}` has dimension {}, expected {}", face.dim(), dim - 1)));
            }
            if face.base.index >= self.cells[face.base.dim].len() {
                return Err(Error::invalid(format!("face {i} of `{name}` refers to a missing cell")));
            }
            SimplexRef::new(face.base, face.word.clone())?;
        }
        let id = CellId::new(dim, self.cells[dim].len());
        self.names.insert(name.clone(), id);
        self.cells[dim].push(Cell { name, faces });
        Ok(id)
    }

    pub fn build(self) -> TruncatedSimplicialSet {
        TruncatedSimplicialSet { dim_cap: self.dim_cap, cells: self.cells, names: self.names }
    }
}

/// One failure of `d_i d_j = d_{j-1} d_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityViolation {
    pub cell: CellId,
    pub name: String,
    pub i: usize,
    pub j: usize,
    pub lhs: SimplexRef,
    pub rhs: SimplexRef,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub violations: Vec<IdentityViolation>,
}

impl IdentityReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Connected components of the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    /// Component label of each vertex, numbered by first occurrence.
    pub labels: Vec<usize>,
    pub count: usize,
}

impl Components {
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in self.labels.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

impl TruncatedSimplicialSet {
    pub fn empty(dim_cap: usize) -> Self {
        SimplicialSetBuilder::new(dim_cap).build()
    }

    /// `Δ[n]` with cap `n`.
    pub fn standard_simplex(n: usize) -> Self {
        Self::subsets_of_simplex(n, n, |_| true)
    }

    /// `∂Δ[n]` with cap `n`. For `n = 0` this is the empty simplicial set.
    pub fn boundary(n: usize) -> Self {
        if n == 0 {
            return Self::empty(0);
        }
        Self::subsets_of_simplex(n, n, |s| s.len() <= n)
    }

    /// The horn `Λ[n, k]`: the boundary with the face opposite vertex `k` removed.
    pub fn horn(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k > n {
            return Err(Error::invalid(format!("horn({n},{k}) requires n >= 1 and 0 <= k <= n")));
        }
        Ok(Self::subsets_of_simplex(n, n, |s| s.len() <= n && !(s.len() == n && !s.contains(&k))))
    }

    /// Simplicial subset of `Δ[n]` spanned by the vertex subsets accepted by
    /// `keep` (which must be closed under taking subsets).
    fn subsets_of_simplex(n: usize, cap: usize, keep: impl Fn(&[usize]) -> bool) -> Self {
        let mut b = SimplicialSetBuilder::new(cap);
        let mut ids: HashMap<Vec<usize>, CellId> = HashMap::new();
        for size in 1..=n + 1 {
            for subset in (0..=n).combinations(size) {
                if !keep(&subset) {
                    continue;
                }
                let faces = if size == 1 {
                    Vec::new()
                } else {
                    (0..size)
                        .map(|i| {
                            let mut f = subset.clone();
                            f.remove(i);
                            SimplexRef::nondegenerate(ids[&f])
                        })
                        .collect()
                };
                let name = subset.iter().join("-");
                let id = b.add_cell(size - 1, name, faces).expect("subsets of a simplex are well formed");
                ids.insert(subset, id);
            }
        }
        b.build()
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    /// Highest dimension carrying a nondegenerate cell, if any.
    pub fn top_dimension(&self) -> Option<usize> {
        (0..=self.dim_cap).rev().find(|&d| !self.cells[d].is_empty())
    }

    pub fn cells(&self, dim: usize) -> &[Cell] {
        self.cells.get(dim).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn num_cells(&self, dim: usize) -> usize {
        self.cells(dim).len()
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id.dim][id.index]
    }

    pub fn cell_by_name(&self, name: &str) -> Option<CellId> {
        self.names.get(name).copied()
    }

    pub fn cell_ids(&self, dim: usize) -> impl Iterator<Item = CellId> + '_ {
        (0..self.num_cells(dim)).map(move |i| CellId::new(dim, i))
    }

    pub fn is_empty(&self) -> bool {
        self.cells.iter().all(|c| c.is_empty())
    }

    /// Same cells, different cap. Lowering the cap drops cells above it.
    pub fn with_dim_cap(&self, dim_cap: usize) -> Self {
        let mut cells = self.cells.clone();
        cells.resize(dim_cap + 1, Vec::new());
        let names = self.names.iter().filter(|(_, id)| id.dim <= dim_cap).map(|(k, v)| (k.clone(), *v)).collect();
        TruncatedSimplicialSet { dim_cap, cells, names }
    }

    /// Human-readable token `name` or `name@j1.j2...`.
    pub fn simplex_label(&self, x: &SimplexRef) -> String {
        let name = &self.cell(x.base).name;
        if x.word.is_empty() {
            name.clone()
        } else {
            format!("{name}@{}", x.word.iter().join("."))
        }
    }

    /// `θ^* x` for a monotone `θ : [k] -> [dim x]` given by its image list.
    pub fn act(&self, x: &SimplexRef, theta: &[usize]) -> SimplexRef {
        let sigma = x.surjection();
        let composite: Vec<usize> = theta.iter().map(|&t| sigma[t]).collect();
        let (tau, image) = epi_mono(&composite);
        let restricted = self.restrict_injective(x.base, &image);
        let rho = restricted.surjection();
        let total: Vec<usize> = tau.iter().map(|&t| rho[t]).collect();
        SimplexRef::from_surjection(restricted.base, &total)
    }

    fn restrict_injective(&self, base: CellId, image: &[usize]) -> SimplexRef {
        if image.len() == base.dim + 1 {
            return SimplexRef::nondegenerate(base);
        }
        let missing = (0..=base.dim).find(|v| !image.contains(v)).expect("injective map misses a vertex");
        let shifted: Vec<usize> = image.iter().map(|&v| if v > missing { v - 1 } else { v }).collect();
        let face = &self.cell(base).faces[missing];
        self.act(face, &shifted)
    }

    pub fn face(&self, x: &SimplexRef, i: usize) -> SimplexRef {
        debug_assert!(x.dim() >= 1 && i <= x.dim());
        self.act(x, &coface(x.dim(), i))
    }

    pub fn degeneracy(&self, x: &SimplexRef, j: usize) -> SimplexRef {
        debug_assert!(j <= x.dim());
        self.act(x, &codegeneracy(x.dim(), j))
    }

    /// Vertices of a simplex, in order.
    pub fn vertices_of(&self, x: &SimplexRef) -> Vec<CellId> {
        (0..=x.dim()).map(|v| self.act(x, &[v]).base).collect()
    }

    /// The edge `v_{i-1} -> v_i` for each `i`, in order.
    pub fn spine_of(&self, x: &SimplexRef) -> Vec<SimplexRef> {
        (1..=x.dim()).map(|i| self.act(x, &[i - 1, i])).collect()
    }

    /// All `n`-simplices, degenerate ones included, in a fixed order:
    /// by base dimension, base index, then degeneracy word.
    pub fn n_simplices(&self, n: usize) -> Result<Vec<SimplexRef>> {
        if n > self.dim_cap {
            return Err(Error::invalid(format!("dimension {n} exceeds dim_cap {}", self.dim_cap)));
        }
        let mut out = Vec::new();
        for m in 0..=n {
            let words: Vec<Vec<usize>> =
                (0..n).combinations(n - m).map(|c| c.into_iter().rev().collect()).collect();
            for id in self.cell_ids(m) {
                for w in &words {
                    out.push(SimplexRef { base: id, word: w.clone() });
                }
            }
        }
        Ok(out)
    }

    pub fn verify_identities(&self) -> IdentityReport {
        let mut report = IdentityReport::default();
        for n in 2..=self.dim_cap {
            for id in self.cell_ids(n) {
                let x = SimplexRef::nondegenerate(id);
                for j in 1..=n {
                    let dj = self.face(&x, j);
                    for i in 0..j {
                        let lhs = self.face(&dj, i);
                        let rhs = self.face(&self.face(&x, i), j - 1);
                        if lhs != rhs {
                            report.violations.push(IdentityViolation {
                                cell: id,
                                name: self.cell(id).name.clone(),
                                i,
                                j,
                                lhs,
                                rhs,
                            });
                        }
                    }
                }
            }
        }
        report
    }

    pub fn pi0(&self) -> Components {
        let mut uf = UnionFind::new(self.num_cells(0));
        if self.dim_cap >= 1 {
            for cell in self.cells(1) {
                uf.union(cell.faces[0].base.index, cell.faces[1].base.index);
            }
        }
        let (labels, count) = uf.labels();
        Components { labels, count }
    }

    /// Alternating count of nondegenerate cells.
    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dim_cap).map(|n| if n % 2 == 0 { self.num_cells(n) as i64 } else { -(self.num_cells(n) as i64) }).sum()
    }

    /// Coproduct. Cells of `other` whose names clash get primes appended.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let cap = self.dim_cap.max(other.dim_cap);
        let mut b = SimplicialSetBuilder::new(cap);
        for n in 0..=self.dim_cap {
            for cell in self.cells(n) {
                b.add_cell(n, cell.name.clone(), cell.faces.clone()).expect("copy of a valid set");
            }
        }
        let offset: Vec<usize> = (0..=cap).map(|n| self.num_cells(n)).collect();
        for n in 0..=other.dim_cap {
            for cell in other.cells(n) {
                let mut name = cell.name.clone();
                while b.lookup(&name).is_some() {
                    name.push('\'');
                }
                let faces = cell
                    .faces
                    .iter()
                    .map(|f| SimplexRef {
                        base: CellId::new(f.base.dim, f.base.index + offset[f.base.dim]),
                        word: f.word.clone(),
                    })
                    .collect();
                b.add_cell(n, name, faces).expect("copy of a valid set");
            }
        }
        b.build()
    }
}

impl fmt::Display for TruncatedSimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_simplicial_set(self))
    }
}

#[cfg(test)]
mod tests;
