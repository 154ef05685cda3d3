//! Truncated bisimplicial sets and Segal-space checks.
//!
//! `W_{n,m}` is indexed by a horizontal degree `n` (the categorical
//! direction) and a vertical degree `m` (the space direction). The column
//! `W_n = W_{n,*}` is a simplicial set in `m`; the row `W_{*,m}` is a
//! simplicial set in `n`. Both are stored as explicit simplicial sets that
//! share element numbering.

mod classifying;
mod segal;
mod text;

use crate::error::{Error, Result};
use crate::fincat::FinCategory;
use crate::simpset::{ExplicitMap, ExplicitSimplicialSet};

pub use classifying::{classifying_diagram, classifying_diagram_map};
pub use segal::{
    completeness_check, discretize, dk_check, heq, homotopy_category, is_segal_precategory, mapping_space, segal_check,
    Completeness, Heq, HoCategory, IncompleteWitness, MappingSpace, SegalEntry, SegalReport, SegalVerdict,
};
pub use text::{parse_bisimplicial_set, write_bisimplicial_set};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedBisimplicialSet {
    columns: Vec<ExplicitSimplicialSet>,
    rows: Vec<ExplicitSimplicialSet>,
    origin: Option<FinCategory>,
}

impl TruncatedBisimplicialSet {
    /// Assembles columns (`n = 0..=N`, each with cap `M`) and rows
    /// (`m = 0..=M`, each with cap `N`) after checking that they agree,
    /// satisfy the simplicial identities and that horizontal and vertical
    /// operators commute.
    pub fn new(columns: Vec<ExplicitSimplicialSet>, rows: Vec<ExplicitSimplicialSet>) -> Result<Self> {
        let w = TruncatedBisimplicialSet { columns, rows, origin: None };
        w.verify()?;
        Ok(w)
    }

    /// The category a classifying diagram was built from, if any.
    pub fn origin(&self) -> Option<&FinCategory> {
        self.origin.as_ref()
    }

    pub fn verify(&self) -> Result<()> {
        let (n_cap, m_cap) = (self.columns.len().wrapping_sub(1), self.rows.len().wrapping_sub(1));
        if self.columns.is_empty() || self.rows.is_empty() {
            return Err(Error::ill_formed("a bisimplicial set needs at least one row and one column"));
        }
        for (n, col) in self.columns.iter().enumerate() {
            if col.dim_cap != m_cap {
                return Err(Error::ill_formed(format!("column {n} has cap {} instead of {m_cap}", col.dim_cap)));
            }
            col.check_identities().map_err(|e| Error::ill_formed(format!("column {n}: {e}")))?;
        }
        for (m, row) in self.rows.iter().enumerate() {
            if row.dim_cap != n_cap {
                return Err(Error::ill_formed(format!("row {m} has cap {} instead of {n_cap}", row.dim_cap)));
            }
            row.check_identities().map_err(|e| Error::ill_formed(format!("row {m}: {e}")))?;
        }
        for n in 0..=n_cap {
            for m in 0..=m_cap {
                if self.columns[n].labels[m] != self.rows[m].labels[n] {
                    return Err(Error::ill_formed(format!("row and column disagree on W_{{{n},{m}}}")));
                }
            }
        }
        self.check_commutation()
    }

    fn check_commutation(&self) -> Result<()> {
        let (n_cap, m_cap) = self.caps();
        let fail = |what: &str, n: usize, m: usize, x: usize| {
            Err(Error::ill_formed(format!("{what} do not commute at `{}` in W_{{{n},{m}}}", self.label(n, m, x))))
        };
        for n in 0..=n_cap {
            for m in 0..=m_cap {
                for x in 0..self.size(n, m) {
                    for i in 0..=n {
                        for j in 0..=m {
                            if n >= 1 && m >= 1 && self.hface(n, m - 1, i, self.vface(n, m, j, x)) != self.vface(n - 1, m, j, self.hface(n, m, i, x)) {
                                return fail("faces", n, m, x);
                            }
                            if n >= 1 && m < m_cap && self.hface(n, m + 1, i, self.vdeg(n, m, j, x)) != self.vdeg(n - 1, m, j, self.hface(n, m, i, x)) {
                                return fail("horizontal faces and vertical degeneracies", n, m, x);
                            }
                            if n < n_cap && m >= 1 && self.hdeg(n, m - 1, i, self.vface(n, m, j, x)) != self.vface(n + 1, m, j, self.hdeg(n, m, i, x)) {
                                return fail("horizontal degeneracies and vertical faces", n, m, x);
                            }
                            if n < n_cap && m < m_cap && self.hdeg(n, m + 1, i, self.vdeg(n, m, j, x)) != self.vdeg(n + 1, m, j, self.hdeg(n, m, i, x)) {
                                return fail("degeneracies", n, m, x);
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `(N, M)`: horizontal and vertical caps.
    pub fn caps(&self) -> (usize, usize) {
        (self.columns.len() - 1, self.rows.len() - 1)
    }

    pub fn column(&self, n: usize) -> &ExplicitSimplicialSet {
        &self.columns[n]
    }

    pub fn row(&self, m: usize) -> &ExplicitSimplicialSet {
        &self.rows[m]
    }

    pub fn size(&self, n: usize, m: usize) -> usize {
        self.columns[n].size(m)
    }

    pub fn label(&self, n: usize, m: usize, x: usize) -> &str {
        &self.columns[n].labels[m][x]
    }

    /// Horizontal `d_i: W_{n,m} -> W_{n-1,m}`.
    pub fn hface(&self, n: usize, m: usize, i: usize, x: usize) -> usize {
        self.rows[m].face(n, i, x)
    }

    /// Horizontal `s_j: W_{n,m} -> W_{n+1,m}`.
    pub fn hdeg(&self, n: usize, m: usize, j: usize, x: usize) -> usize {
        self.rows[m].degeneracy(n, j, x)
    }

    /// Vertical `d_i: W_{n,m} -> W_{n,m-1}`.
    pub fn vface(&self, n: usize, m: usize, i: usize, x: usize) -> usize {
        self.columns[n].face(m, i, x)
    }

    /// Vertical `s_j: W_{n,m} -> W_{n,m+1}`.
    pub fn vdeg(&self, n: usize, m: usize, j: usize, x: usize) -> usize {
        self.columns[n].degeneracy(m, j, x)
    }

    /// Restricts `x ∈ W_{n,m}` horizontally to the vertices in `keep`
    /// (increasing).
    pub fn hrestrict(&self, n: usize, m: usize, x: usize, keep: &[usize]) -> usize {
        let (mut cur, mut level) = (x, n);
        for i in (0..=n).rev() {
            if !keep.contains(&i) {
                cur = self.hface(level, m, i, cur);
                level -= 1;
            }
        }
        cur
    }

    /// The totally degenerate element `s_0 ... s_0 x ∈ W_{n,m}` over
    /// `x ∈ W_{n,0}`.
    pub fn vconstant(&self, n: usize, m: usize, x: usize) -> usize {
        (0..m).fold(x, |cur, k| self.vdeg(n, k, 0, cur))
    }

    /// The initial vertical vertex of `x ∈ W_{n,m}`, in `W_{n,0}`.
    pub fn vbase(&self, n: usize, m: usize, x: usize) -> usize {
        (1..=m).rev().fold(x, |cur, k| self.vface(n, k, k, cur))
    }

    /// Swaps the two directions.
    pub fn transpose(&self) -> Self {
        TruncatedBisimplicialSet { columns: self.rows.clone(), rows: self.columns.clone(), origin: None }
    }

    /// Every column is `k`; horizontal operators are identities.
    pub fn constant(k: &ExplicitSimplicialSet, n_cap: usize) -> Self {
        let columns = vec![k.clone(); n_cap + 1];
        let rows = (0..=k.dim_cap)
            .map(|m| {
                let size = k.size(m);
                let id: Vec<usize> = (0..size).collect();
                ExplicitSimplicialSet {
                    dim_cap: n_cap,
                    labels: vec![k.labels[m].clone(); n_cap + 1],
                    faces: (0..=n_cap).map(|n| if n == 0 { Vec::new() } else { vec![id.clone(); n + 1] }).collect(),
                    degeneracies: (0..n_cap).map(|n| vec![id.clone(); n + 1]).collect(),
                }
            })
            .collect();
        TruncatedBisimplicialSet { columns, rows, origin: None }
    }

    /// `W_{n,m} = k_n` for every `m`: a simplicial set viewed as a
    /// levelwise discrete simplicial space.
    pub fn levelwise_discrete(k: &ExplicitSimplicialSet, m_cap: usize) -> Self {
        Self::constant(k, m_cap).transpose()
    }

    /// Restriction to flagged elements `keep[n][m][x]`, which must be closed
    /// under all operators.
    pub(crate) fn restrict(&self, keep: &[Vec<Vec<bool>>]) -> Self {
        let (n_cap, m_cap) = self.caps();
        let columns: Vec<ExplicitSimplicialSet> = (0..=n_cap).map(|n| self.columns[n].restrict(&keep[n]).0).collect();
        let rows = (0..=m_cap)
            .map(|m| {
                let flags: Vec<Vec<bool>> = (0..=n_cap).map(|n| keep[n][m].clone()).collect();
                self.rows[m].restrict(&flags).0
            })
            .collect();
        TruncatedBisimplicialSet { columns, rows, origin: None }
    }
}

/// A map of truncated bisimplicial sets, `levels[n][m][x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisimplicialMap {
    source: TruncatedBisimplicialSet,
    target: TruncatedBisimplicialSet,
    levels: Vec<ExplicitMap>,
}

impl BisimplicialMap {
    /// Checks that the caps agree and that the map commutes with every
    /// horizontal and vertical operator.
    pub fn new(source: TruncatedBisimplicialSet, target: TruncatedBisimplicialSet, levels: Vec<ExplicitMap>) -> Result<Self> {
        let (n_cap, m_cap) = source.caps();
        if target.caps() != (n_cap, m_cap) {
            return Err(Error::ill_formed("source and target have different caps"));
        }
        if levels.len() != n_cap + 1 || levels.iter().any(|l| l.len() != m_cap + 1) {
            return Err(Error::ill_formed("map does not cover every bidegree"));
        }
        for n in 0..=n_cap {
            for m in 0..=m_cap {
                if levels[n][m].len() != source.size(n, m) || levels[n][m].iter().any(|&y| y >= target.size(n, m)) {
                    return Err(Error::ill_formed(format!("map is not a function W_{{{n},{m}}} -> Z_{{{n},{m}}}")));
                }
            }
        }
        let f = |n: usize, m: usize, x: usize| levels[n][m][x];
        for n in 0..=n_cap {
            for m in 0..=m_cap {
                for x in 0..source.size(n, m) {
                    let fx = f(n, m, x);
                    let bad = (0..=n).any(|i| {
                        (n >= 1 && f(n - 1, m, source.hface(n, m, i, x)) != target.hface(n, m, i, fx))
                            || (n < n_cap && f(n + 1, m, source.hdeg(n, m, i, x)) != target.hdeg(n, m, i, fx))
                    }) || (0..=m).any(|j| {
                        (m >= 1 && f(n, m - 1, source.vface(n, m, j, x)) != target.vface(n, m, j, fx))
                            || (m < m_cap && f(n, m + 1, source.vdeg(n, m, j, x)) != target.vdeg(n, m, j, fx))
                    });
                    if bad {
                        return Err(Error::ill_formed(format!(
                            "map is not natural at `{}` in W_{{{n},{m}}}",
                            source.label(n, m, x)
                        )));
                    }
                }
            }
        }
        Ok(BisimplicialMap { source, target, levels })
    }

    pub fn identity(w: &TruncatedBisimplicialSet) -> Self {
        let (n_cap, m_cap) = w.caps();
        let levels = (0..=n_cap).map(|n| (0..=m_cap).map(|m| (0..w.size(n, m)).collect()).collect()).collect();
        BisimplicialMap { source: w.clone(), target: w.clone(), levels }
    }

    pub fn source(&self) -> &TruncatedBisimplicialSet {
        &self.source
    }

    pub fn target(&self) -> &TruncatedBisimplicialSet {
        &self.target
    }

    pub fn apply(&self, n: usize, m: usize, x: usize) -> usize {
        self.levels[n][m][x]
    }

    /// The simplicial map `W_n -> Z_n`.
    pub fn column_map(&self, n: usize) -> &ExplicitMap {
        &self.levels[n]
    }
}
