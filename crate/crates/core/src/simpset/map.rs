use std::collections::HashSet;

use super::{CellId, ExplicitSimplicialSet, SimplexRef, TruncatedSimplicialSet};
use crate::error::{Error, Result};

/// A simplicial map given on nondegenerate cells and extended to degenerate
/// simplices by `f(σ^* y) = σ^* f(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: TruncatedSimplicialSet,
    target: TruncatedSimplicialSet,
    /// `assignment[n][i]` is the image of the `i`-th nondegenerate `n`-cell.
    assignment: Vec<Vec<SimplexRef>>,
}

impl SimplicialMap {
    /// Validates dimensions and compatibility with faces up to the smaller cap.
    pub fn new(
        source: TruncatedSimplicialSet,
        target: TruncatedSimplicialSet,
        assignment: Vec<Vec<SimplexRef>>,
    ) -> Result<Self> {
        let cap = source.dim_cap().min(target.dim_cap());
        for n in 0..=cap {
            let images = assignment.get(n).map(|v| v.as_slice()).unwrap_or(&[]);
            if images.len() != source.num_cells(n) {
                return Err(Error::ill_formed(format!(
                    "assignment covers {} of {} cells in dimension {n}",
                    images.len(),
                    source.num_cells(n)
                )));
            }
            for img in images {
                if img.dim() != n || img.base.dim > target.dim_cap() || img.base.index >= target.num_cells(img.base.dim) {
                    return Err(Error::ill_formed(format!("image in dimension {n} is not an {n}-simplex of the target")));
                }
            }
        }
        let map = SimplicialMap { source, target, assignment };
        for n in 1..=cap {
            for id in map.source.cell_ids(n) {
                let x = SimplexRef::nondegenerate(id);
                let fx = map.apply(&x);
                for i in 0..=n {
                    if map.apply(&map.source.face(&x, i)) != map.target.face(&fx, i) {
                        return Err(Error::ill_formed(format!(
                            "map does not commute with d_{i} on `{}`",
                            map.source.cell(id).name
                        )));
                    }
                }
            }
        }
        Ok(map)
    }

    pub fn source(&self) -> &TruncatedSimplicialSet {
        &self.source
    }

    pub fn target(&self) -> &TruncatedSimplicialSet {
        &self.target
    }

    pub fn image_of_cell(&self, id: CellId) -> &SimplexRef {
        &self.assignment[id.dim][id.index]
    }

    pub fn apply(&self, x: &SimplexRef) -> SimplexRef {
        let y = &self.assignment[x.base.dim][x.base.index];
        if x.word.is_empty() {
            return y.clone();
        }
        self.target.act(y, &x.surjection())
    }

    /// Levelwise table between the explicit forms of source and target.
    pub fn to_explicit(&self) -> (ExplicitSimplicialSet, ExplicitSimplicialSet, Vec<Vec<usize>>) {
        let cap = self.source.dim_cap().min(self.target.dim_cap());
        let src = ExplicitSimplicialSet::from_truncated(&self.source.with_dim_cap(cap));
        let tgt = ExplicitSimplicialSet::from_truncated(&self.target.with_dim_cap(cap));
        let mut table = Vec::with_capacity(cap + 1);
        for n in 0..=cap {
            let tgt_level = self.target.n_simplices(n).expect("n <= cap");
            let index: std::collections::HashMap<SimplexRef, usize> =
                tgt_level.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
            let src_level = self.source.n_simplices(n).expect("n <= cap");
            table.push(src_level.iter().map(|x| index[&self.apply(x)]).collect());
        }
        (src, tgt, table)
    }

    /// True iff the map is a bijection on `n`-simplices for every `n` up to
    /// the smaller cap.
    pub fn is_levelwise_bijective(&self) -> bool {
        let cap = self.source.dim_cap().min(self.target.dim_cap());
        (0..=cap).all(|n| {
            let src = self.source.n_simplices(n).expect("n <= cap");
            let tgt = self.target.n_simplices(n).expect("n <= cap");
            if src.len() != tgt.len() {
                return false;
            }
            let images: HashSet<SimplexRef> = src.iter().map(|x| self.apply(x)).collect();
            images.len() == tgt.len()
        })
    }

    /// Builds the map determined by spines, for sets in which every simplex
    /// is determined by its chain of edges (nerves, for instance). `edge_image`
    /// sends each 1-simplex of the source (degenerate ones included) to one of
    /// the target.
    pub fn from_spines(
        source: &TruncatedSimplicialSet,
        target: &TruncatedSimplicialSet,
        vertex_image: impl Fn(CellId) -> CellId,
        edge_image: impl Fn(&SimplexRef) -> SimplexRef,
    ) -> Result<Self> {
        let cap = source.dim_cap().min(target.dim_cap());
        let mut assignment = Vec::with_capacity(cap + 1);
        assignment.push(source.cell_ids(0).map(|v| SimplexRef::nondegenerate(vertex_image(v))).collect());
        if cap >= 1 {
            assignment.push(source.cell_ids(1).map(|e| edge_image(&SimplexRef::nondegenerate(e))).collect());
        }
        for n in 2..=cap {
            let mut by_spine: std::collections::HashMap<Vec<SimplexRef>, Vec<SimplexRef>> = Default::default();
            for y in target.n_simplices(n)? {
                by_spine.entry(target.spine_of(&y)).or_default().push(y);
            }
            let mut level = Vec::new();
            for id in source.cell_ids(n) {
                let spine: Vec<SimplexRef> =
                    source.spine_of(&SimplexRef::nondegenerate(id)).iter().map(&edge_image).collect();
                match by_spine.get(&spine).map(|v| v.as_slice()) {
                    Some([y]) => level.push(y.clone()),
                    Some(_) => {
                        return Err(Error::ill_formed(format!(
                            "target simplex over the spine of `{}` is not unique",
                            source.cell(id).name
                        )))
                    }
                    None => {
                        return Err(Error::ill_formed(format!(
                            "no target simplex over the spine of `{}`",
                            source.cell(id).name
                        )))
                    }
                }
            }
            assignment.push(level);
        }
        SimplicialMap::new(source.with_dim_cap(cap), target.with_dim_cap(cap), assignment)
    }
}
