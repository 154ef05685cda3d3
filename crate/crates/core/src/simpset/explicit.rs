use std::collections::HashMap;

use super::{SimplexRef, SimplicialSetBuilder, TruncatedSimplicialSet};
use crate::error::{Error, Result};

/// A truncated simplicial set listing every simplex (degenerate ones too)
/// with explicit face and degeneracy tables. This is the working form for
/// levels of bisimplicial sets and for levelwise comparisons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitSimplicialSet {
    pub dim_cap: usize,
    /// `labels[n][x]` names the `x`-th `n`-simplex.
    pub labels: Vec<Vec<String>>,
    /// `faces[n][i][x] = d_i x` for `n >= 1`; `faces[0]` is empty.
    pub faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[n][j][x] = s_j x` for `n < dim_cap`.
    pub degeneracies: Vec<Vec<Vec<usize>>>,
}

/// Levelwise function between explicit simplicial sets: `levels[n][x]`.
pub type ExplicitMap = Vec<Vec<usize>>;

impl ExplicitSimplicialSet {
    pub fn size(&self, n: usize) -> usize {
        self.labels[n].len()
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    pub fn degeneracy(&self, n: usize, j: usize, x: usize) -> usize {
        self.degeneracies[n][j][x]
    }

    /// Nerve of a finite preorder: `m`-simplices are weakly increasing
    /// sequences `x_0 <= ... <= x_m`. Labels join element labels with `<`.
    pub fn preorder_nerve(labels: &[String], leq: impl Fn(usize, usize) -> bool, dim_cap: usize) -> Self {
        let k = labels.len();
        let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..k).map(|x| vec![x]).collect()];
        for m in 1..=dim_cap {
            let next = levels[m - 1]
                .iter()
                .flat_map(|s| {
                    let last = *s.last().expect("nonempty");
                    (0..k).filter(|&y| leq(last, y)).map(move |y| [s.as_slice(), &[y]].concat()).collect::<Vec<_>>()
                })
                .collect();
            levels.push(next);
        }
        let index: Vec<HashMap<&Vec<usize>, usize>> =
            levels.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
        let names = levels
            .iter()
            .map(|l| l.iter().map(|s| s.iter().map(|&x| labels[x].as_str()).collect::<Vec<_>>().join("<")).collect())
            .collect();
        let mut faces = vec![Vec::new()];
        for m in 1..=dim_cap {
            faces.push(
                (0..=m)
                    .map(|i| {
                        levels[m]
                            .iter()
                            .map(|s| {
                                let mut t = s.clone();
                                t.remove(i);
                                index[m - 1][&t]
                            })
                            .collect()
                    })
                    .collect(),
            );
        }
        let degeneracies = (0..dim_cap)
            .map(|m| {
                (0..=m)
                    .map(|j| {
                        levels[m]
                            .iter()
                            .map(|s| {
                                let mut t = s.clone();
                                t.insert(j, s[j]);
                                index[m + 1][&t]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ExplicitSimplicialSet { dim_cap, labels: names, faces, degeneracies }
    }

    /// Constant simplicial set on a finite set.
    pub fn discrete(labels: &[String], dim_cap: usize) -> Self {
        Self::preorder_nerve(labels, |a, b| a == b, dim_cap)
    }

    /// Nerve of the codiscrete groupoid on a finite set: contractible when
    /// nonempty.
    pub fn codiscrete(labels: &[String], dim_cap: usize) -> Self {
        Self::preorder_nerve(labels, |_, _| true, dim_cap)
    }

    pub fn from_truncated(set: &TruncatedSimplicialSet) -> Self {
        let cap = set.dim_cap();
        let levels: Vec<Vec<SimplexRef>> = (0..=cap).map(|n| set.n_simplices(n).expect("n <= cap")).collect();
        let index: Vec<HashMap<&SimplexRef, usize>> =
            levels.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
        let labels = levels.iter().map(|l| l.iter().map(|s| set.simplex_label(s)).collect()).collect();
        let mut faces = vec![Vec::new()];
        for n in 1..=cap {
            faces.push((0..=n).map(|i| levels[n].iter().map(|x| index[n - 1][&set.face(x, i)]).collect()).collect());
        }
        let degeneracies = (0..cap)
            .map(|n| (0..=n).map(|j| levels[n].iter().map(|x| index[n + 1][&set.degeneracy(x, j)]).collect()).collect())
            .collect();
        ExplicitSimplicialSet { dim_cap: cap, labels, faces, degeneracies }
    }

    /// Checks all simplicial identities on the tables. Returns the first
    /// violation found.
    pub fn check_identities(&self) -> Result<()> {
        let cap = self.dim_cap;
        let fail = |what: String| Err(Error::ill_formed(what));
        for n in 2..=cap {
            for x in 0..self.size(n) {
                for j in 1..=n {
                    for i in 0..j {
                        if self.face(n - 1, i, self.face(n, j, x)) != self.face(n - 1, j - 1, self.face(n, i, x)) {
                            return fail(format!("d_{i} d_{j} != d_{} d_{i} on {}", j - 1, self.labels[n][x]));
                        }
                    }
                }
            }
        }
        for n in 0..cap {
            for x in 0..self.size(n) {
                for j in 0..=n {
                    let sx = self.degeneracy(n, j, x);
                    for i in 0..=n + 1 {
                        let lhs = self.face(n + 1, i, sx);
                        let ok = if i == j || i == j + 1 {
                            lhs == x
                        } else if i < j {
                            lhs == self.degeneracy(n - 1, j - 1, self.face(n, i, x))
                        } else {
                            lhs == self.degeneracy(n - 1, j, self.face(n, i - 1, x))
                        };
                        if !ok {
                            return fail(format!("d_{i} s_{j} identity fails on {}", self.labels[n][x]));
                        }
                    }
                    if n + 1 < cap {
                        for i in 0..=j {
                            let lhs = self.degeneracy(n + 1, i, sx);
                            let rhs = self.degeneracy(n + 1, j + 1, self.degeneracy(n, i, x));
                            if lhs != rhs {
                                return fail(format!("s_{i} s_{j} identity fails on {}", self.labels[n][x]));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `Some(j)` for the largest `j` with `x = s_j d_j x`.
    fn top_degeneracy(&self, n: usize, x: usize) -> Option<usize> {
        (0..n).rev().find(|&j| self.degeneracy(n - 1, j, self.face(n, j, x)) == x)
    }

    fn is_degenerate(&self, n: usize, x: usize) -> bool {
        n > 0 && self.top_degeneracy(n, x).is_some()
    }

    /// Converts to normal-form storage. Returns the truncated set and, per
    /// level, the normal form of every explicit simplex.
    pub fn to_truncated_with_index(&self) -> (TruncatedSimplicialSet, Vec<Vec<SimplexRef>>) {
        let cap = self.dim_cap;
        let mut b = SimplicialSetBuilder::new(cap);
        let mut normal: Vec<Vec<SimplexRef>> = Vec::with_capacity(cap + 1);
        for n in 0..=cap {
            let mut level = Vec::with_capacity(self.size(n));
            for x in 0..self.size(n) {
                let nf = match (n > 0).then(|| self.top_degeneracy(n, x)).flatten() {
                    Some(j) => {
                        let inner = &normal[n - 1][self.face(n, j, x)];
                        let mut word = vec![j];
                        word.extend_from_slice(&inner.word);
                        SimplexRef { base: inner.base, word }
                    }
                    None => {
                        let faces =
                            if n == 0 { Vec::new() } else { (0..=n).map(|i| normal[n - 1][self.face(n, i, x)].clone()).collect() };
                        let mut name: String = self.labels[n][x]
                            .chars()
                            .map(|c| if c.is_whitespace() || c == '@' || c == '#' { '_' } else { c })
                            .collect();
                        if name.is_empty() {
                            name.push('_');
                        }
                        while b.lookup(&name).is_some() {
                            name.push('\'');
                        }
                        let id = b.add_cell(n, name, faces).expect("explicit set converts to valid cells");
                        SimplexRef::nondegenerate(id)
                    }
                };
                level.push(nf);
            }
            normal.push(level);
        }
        (b.build(), normal)
    }

    pub fn to_truncated(&self) -> TruncatedSimplicialSet {
        self.to_truncated_with_index().0
    }

    /// Nondegenerate simplex count per level.
    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.dim_cap).map(|n| (0..self.size(n)).filter(|&x| !self.is_degenerate(n, x)).count()).collect()
    }

    /// Restriction to the simplices flagged in `keep`, which must be closed
    /// under faces and degeneracies. Returns the subset and the inclusion.
    pub fn restrict(&self, keep: &[Vec<bool>]) -> (ExplicitSimplicialSet, ExplicitMap) {
        let cap = self.dim_cap;
        let inclusion: ExplicitMap =
            (0..=cap).map(|n| (0..self.size(n)).filter(|&x| keep[n][x]).collect()).collect();
        let renumber: Vec<HashMap<usize, usize>> =
            inclusion.iter().map(|l| l.iter().enumerate().map(|(i, &x)| (x, i)).collect()).collect();
        let labels = (0..=cap).map(|n| inclusion[n].iter().map(|&x| self.labels[n][x].clone()).collect()).collect();
        let mut faces = vec![Vec::new()];
        for n in 1..=cap {
            faces.push(
                (0..=n).map(|i| inclusion[n].iter().map(|&x| renumber[n - 1][&self.face(n, i, x)]).collect()).collect(),
            );
        }
        let degeneracies = (0..cap)
            .map(|n| {
                (0..=n).map(|j| inclusion[n].iter().map(|&x| renumber[n + 1][&self.degeneracy(n, j, x)]).collect()).collect()
            })
            .collect();
        (ExplicitSimplicialSet { dim_cap: cap, labels, faces, degeneracies }, inclusion)
    }

    /// Components of the vertex set, as labels per vertex.
    pub fn pi0_labels(&self) -> (Vec<usize>, usize) {
        let mut uf = crate::util::UnionFind::new(self.size(0));
        if self.dim_cap >= 1 {
            for e in 0..self.size(1) {
                uf.union(self.face(1, 0, e), self.face(1, 1, e));
            }
        }
        uf.labels()
    }
}

/// Checks that `map` commutes with every face and degeneracy.
pub fn check_explicit_map(src: &ExplicitSimplicialSet, tgt: &ExplicitSimplicialSet, map: &ExplicitMap) -> Result<()> {
    let cap = src.dim_cap.min(tgt.dim_cap);
    for n in 0..=cap {
        if map[n].len() != src.size(n) {
            return Err(Error::ill_formed(format!("map has {} entries at level {n}, expected {}", map[n].len(), src.size(n))));
        }
        for x in 0..src.size(n) {
            if n >= 1 {
                for i in 0..=n {
                    if map[n - 1][src.face(n, i, x)] != tgt.face(n, i, map[n][x]) {
                        return Err(Error::ill_formed(format!("map does not commute with d_{i} at {}", src.labels[n][x])));
                    }
                }
            }
            if n < cap {
                for j in 0..=n {
                    if map[n + 1][src.degeneracy(n, j, x)] != tgt.degeneracy(n, j, map[n][x]) {
                        return Err(Error::ill_formed(format!("map does not commute with s_{j} at {}", src.labels[n][x])));
                    }
                }
            }
        }
    }
    Ok(())
}
