use std::collections::HashMap;

use itertools::Itertools;

use super::FinSimplicialCategory;
use crate::simpset::ExplicitSimplicialSet;

/// Subsets `S` with `{i, j} ⊆ S ⊆ {i, ..., j}`, ordered by inclusion.
/// Elements are stored as bitmasks over `i+1, ..., j-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CubePoset {
    pub i: usize,
    pub j: usize,
}

impl CubePoset {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i <= j, "cube posets need i <= j");
        CubePoset { i, j }
    }

    /// Number of free coordinates, `j - i - 1` (or 0).
    pub fn dimension(&self) -> usize {
        (self.j - self.i).saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        1 << self.dimension()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Interior masks in increasing numeric order.
    pub fn masks(&self) -> Vec<u32> {
        let free = self.free_mask();
        (0..1u32 << self.dimension()).map(|k| deposit(k, free)).collect()
    }

    /// Bits `i+1, ..., j-1`.
    pub fn free_mask(&self) -> u32 {
        (self.i + 1..self.j).fold(0, |m, b| m | 1 << b)
    }

    pub fn leq(a: u32, b: u32) -> bool {
        a & !b == 0
    }

    pub fn join(a: u32, b: u32) -> u32 {
        a | b
    }

    pub fn meet(a: u32, b: u32) -> u32 {
        a & b
    }

    /// The subset itself, endpoints included.
    pub fn subset(&self, mask: u32) -> Vec<usize> {
        let mut out = vec![self.i];
        out.extend((self.i + 1..self.j).filter(|&b| mask >> b & 1 == 1));
        if self.j != self.i {
            out.push(self.j);
        }
        out
    }

    pub fn label(&self, mask: u32) -> String {
        format!("{{{}}}", self.subset(mask).iter().join("."))
    }

    pub fn nerve(&self, dim_cap: usize) -> ExplicitSimplicialSet {
        let masks = self.masks();
        let labels: Vec<String> = masks.iter().map(|&m| self.label(m)).collect();
        ExplicitSimplicialSet::preorder_nerve(&labels, |a, b| Self::leq(masks[a], masks[b]), dim_cap)
    }
}

/// Spreads the low bits of `k` over the set bits of `free`.
fn deposit(mut k: u32, free: u32) -> u32 {
    let mut out = 0;
    for b in 0..32 {
        if free >> b & 1 == 1 {
            if k & 1 == 1 {
                out |= 1 << b;
            }
            k >>= 1;
        }
    }
    out
}

/// `C[Δ^n]`: objects `0..=n`, `Map(i,j)` the nerve of the cube poset for
/// `i <= j` and empty otherwise, composition by union.
pub fn cdelta(n: usize, dim_cap: usize) -> FinSimplicialCategory {
    let empty = ExplicitSimplicialSet::preorder_nerve(&[], |_, _| false, dim_cap);
    let maps: Vec<Vec<ExplicitSimplicialSet>> = (0..=n)
        .map(|i| (0..=n).map(|j| if i <= j { CubePoset::new(i, j).nerve(dim_cap) } else { empty.clone() }).collect())
        .collect();
    let sequences: Vec<Vec<Vec<Vec<Vec<u32>>>>> = (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| {
                    if i > j {
                        return vec![Vec::new(); dim_cap + 1];
                    }
                    let masks = CubePoset::new(i, j).masks();
                    (0..=dim_cap)
                        .map(|m| {
                            (0..maps[i][j].size(m))
                                .map(|s| (0..=m).map(|v| masks[super::vertex_of(&maps[i][j], m, s, &[v])]).collect())
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let index: Vec<Vec<Vec<HashMap<&Vec<u32>, usize>>>> = sequences
        .iter()
        .map(|r| r.iter().map(|levels| levels.iter().map(|l| l.iter().enumerate().map(|(k, s)| (s, k)).collect()).collect()).collect())
        .collect();
    FinSimplicialCategory::from_fn(
        (0..=n).map(|i| i.to_string()).collect(),
        maps.clone(),
        vec![0; n + 1],
        |a, b, c, m, g, f| {
            let middle = if a < b && b < c { 1 << b } else { 0 };
            let union: Vec<u32> =
                sequences[b][c][m][g].iter().zip(&sequences[a][b][m][f]).map(|(&x, &y)| x | y | middle).collect();
            index[a][c][m][&union]
        },
    )
    .expect("cube categories are simplicial categories")
}
