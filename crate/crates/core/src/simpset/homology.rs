use std::fmt;

use itertools::Itertools;

use super::{SimplexRef, TruncatedSimplicialSet};
use crate::error::{Error, Result};

/// `Z^betti ⊕ Z/t_1 ⊕ ... ⊕ Z/t_r` with `t_1 | t_2 | ... | t_r`, all `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    /// `groups[n]` is `H_n`.
    pub groups: Vec<HomologyGroup>,
    /// Highest degree that the truncation can see: `dim_cap - 1`.
    pub validity_bound: usize,
}

impl HomologyReport {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }
}

/// Nonzero invariant factors of an integer matrix (its Smith normal form
/// diagonal), each dividing the next.
pub fn invariant_factors(mut a: Vec<Vec<i128>>) -> Vec<u64> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block becomes the pivot
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // pivot must divide the rest of the block
                let offender = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % a[t][t] != 0);
                match offender {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = a[i][j];
                            a[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && (a[best.0][best.1] == 0 || a[i][t].abs() < a[best.0][best.1].abs()) {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        factors.push(a[t][t].unsigned_abs() as u64);
        t += 1;
    }
    factors
}

impl TruncatedSimplicialSet {
    /// Boundary matrix of the normalized chain complex, rows indexed by
    /// `(n-1)`-cells and columns by `n`-cells. Degenerate faces are dropped.
    pub fn boundary_matrix(&self, n: usize) -> Vec<Vec<i128>> {
        let rows = if n == 0 { 0 } else { self.num_cells(n - 1) };
        let cols = self.num_cells(n);
        let mut m = vec![vec![0i128; cols]; rows];
        if n == 0 {
            return m;
        }
        for (c, id) in self.cell_ids(n).enumerate() {
            let x = SimplexRef::nondegenerate(id);
            for i in 0..=n {
                let f = self.face(&x, i);
                if !f.is_degenerate() {
                    m[f.base.index][c] += if i % 2 == 0 { 1 } else { -1 };
                }
            }
        }
        m
    }

    /// Integral homology in degrees `0..=up_to` via Smith normal form.
    pub fn homology(&self, up_to: usize) -> Result<HomologyReport> {
        if self.dim_cap == 0 || up_to > self.dim_cap - 1 {
            return Err(Error::invalid(format!(
                "homology up to degree {up_to} needs dim_cap >= {}, have {}",
                up_to + 1,
                self.dim_cap
            )));
        }
        let factors: Vec<Vec<u64>> = (0..=up_to + 1).map(|n| invariant_factors(self.boundary_matrix(n))).collect();
        let groups = (0..=up_to)
            .map(|n| {
                let rank_out = factors[n].len();
                let rank_in = factors[n + 1].len();
                HomologyGroup {
                    betti: self.num_cells(n) - rank_out - rank_in,
                    torsion: factors[n + 1].iter().copied().filter(|&t| t > 1).sorted().collect(),
                }
            })
            .collect();
        Ok(HomologyReport { groups, validity_bound: self.dim_cap - 1 })
    }
}
