use std::collections::HashMap;

use itertools::Itertools;

use super::{BisimplicialMap, TruncatedBisimplicialSet};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, Functor, Ladder, MorId};
use crate::simpset::{ExplicitMap, ExplicitSimplicialSet};

/// Element bookkeeping for `W_{n,m}`: `m`-chains of isomorphism ladders
/// between `n`-chains of `C`.
struct Grids<'a> {
    c: &'a FinCategory,
    chains: Vec<Vec<Vec<MorId>>>,
    chain_index: Vec<HashMap<Vec<MorId>, usize>>,
    ladders: Vec<Vec<Ladder>>,
    ladder_index: Vec<HashMap<Ladder, usize>>,
    /// `sequences[n][m]` for `m >= 1`; `sequences[n][0]` is unused.
    sequences: Vec<Vec<Vec<Vec<usize>>>>,
    sequence_index: Vec<Vec<HashMap<Vec<usize>, usize>>>,
}

impl<'a> Grids<'a> {
    fn new(c: &'a FinCategory, n_cap: usize, m_cap: usize) -> Self {
        let mut g = Grids {
            c,
            chains: Vec::new(),
            chain_index: Vec::new(),
            ladders: Vec::new(),
            ladder_index: Vec::new(),
            sequences: Vec::new(),
            sequence_index: Vec::new(),
        };
        for n in 0..=n_cap {
            let chains = c.chains(n);
            let ladders = c.ladders(n, true);
            let mut outgoing = vec![Vec::new(); chains.len()];
            for (i, l) in ladders.iter().enumerate() {
                outgoing[l.source].push(i);
            }
            let mut seqs: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
            if m_cap >= 1 {
                seqs.push((0..ladders.len()).map(|l| vec![l]).collect());
            }
            for m in 2..=m_cap {
                let next = seqs[m - 1]
                    .iter()
                    .flat_map(|s| {
                        outgoing[ladders[*s.last().expect("nonempty")].target].iter().map(move |&l| {
                            let mut t = s.clone();
                            t.push(l);
                            t
                        })
                    })
                    .collect();
                seqs.push(next);
            }
            g.chain_index.push(chains.iter().enumerate().map(|(i, ch)| (ch.clone(), i)).collect());
            g.ladder_index.push(ladders.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect());
            g.sequence_index.push(seqs.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect());
            g.chains.push(chains);
            g.ladders.push(ladders);
            g.sequences.push(seqs);
        }
        g
    }

    fn size(&self, n: usize, m: usize) -> usize {
        if m == 0 {
            self.chains[n].len()
        } else {
            self.sequences[n][m].len()
        }
    }

    fn ladder_label(&self, n: usize, l: usize) -> String {
        let l = &self.ladders[n][l];
        format!(
            "{}<{}>",
            self.c.chain_name(&self.chains[n][l.source], n),
            l.rungs.iter().map(|&f| &self.c.morphism(f).name).join(",")
        )
    }

    fn label(&self, n: usize, m: usize, x: usize) -> String {
        if m == 0 {
            self.c.chain_name(&self.chains[n][x], n)
        } else {
            self.sequences[n][m][x].iter().map(|&l| self.ladder_label(n, l)).join(";")
        }
    }

    fn id_ladder(&self, n: usize, chain: usize) -> usize {
        let rungs = self.c.chain_objects(&self.chains[n][chain], n).iter().map(|&o| self.c.identity(o)).collect();
        self.ladder_index[n][&Ladder { source: chain, rungs, target: chain }]
    }

    fn sequence(&self, n: usize, seq: Vec<usize>) -> usize {
        self.sequence_index[n][seq.len()][&seq]
    }

    fn chain_face(&self, n: usize, chain: usize, i: usize) -> usize {
        self.chain_index[n - 1][&self.c.chain_face(&self.chains[n][chain], n, i)]
    }

    fn chain_degeneracy(&self, n: usize, chain: usize, j: usize) -> usize {
        self.chain_index[n + 1][&self.c.chain_degeneracy(&self.chains[n][chain], n, j)]
    }

    fn ladder_face(&self, n: usize, l: usize, i: usize) -> usize {
        let l = &self.ladders[n][l];
        let mut rungs = l.rungs.clone();
        rungs.remove(i);
        let face = Ladder { source: self.chain_face(n, l.source, i), rungs, target: self.chain_face(n, l.target, i) };
        self.ladder_index[n - 1][&face]
    }

    fn ladder_degeneracy(&self, n: usize, l: usize, j: usize) -> usize {
        let l = &self.ladders[n][l];
        let mut rungs = l.rungs.clone();
        rungs.insert(j, l.rungs[j]);
        let deg =
            Ladder { source: self.chain_degeneracy(n, l.source, j), rungs, target: self.chain_degeneracy(n, l.target, j) };
        self.ladder_index[n + 1][&deg]
    }

    fn compose_ladders(&self, n: usize, a: usize, b: usize) -> usize {
        let (la, lb) = (&self.ladders[n][a], &self.ladders[n][b]);
        let rungs =
            la.rungs.iter().zip(&lb.rungs).map(|(&x, &y)| self.c.compose(y, x).expect("ladders compose")).collect();
        self.ladder_index[n][&Ladder { source: la.source, rungs, target: lb.target }]
    }

    fn vface(&self, n: usize, m: usize, i: usize, x: usize) -> usize {
        let seq = &self.sequences[n][m][x];
        if m == 1 {
            let l = &self.ladders[n][seq[0]];
            return if i == 0 { l.target } else { l.source };
        }
        let mut out = seq.clone();
        if i == 0 {
            out.remove(0);
        } else if i == m {
            out.pop();
        } else {
            let comp = self.compose_ladders(n, seq[i - 1], seq[i]);
            out.splice(i - 1..=i, [comp]);
        }
        self.sequence(n, out)
    }

    fn vdeg(&self, n: usize, m: usize, j: usize, x: usize) -> usize {
        if m == 0 {
            return self.sequence(n, vec![self.id_ladder(n, x)]);
        }
        let seq = &self.sequences[n][m][x];
        let at = if j == 0 { self.ladders[n][seq[0]].source } else { self.ladders[n][seq[j - 1]].target };
        let mut out = seq.clone();
        out.insert(j, self.id_ladder(n, at));
        self.sequence(n, out)
    }

    fn hface(&self, n: usize, m: usize, i: usize, x: usize) -> usize {
        if m == 0 {
            return self.chain_face(n, x, i);
        }
        let out = self.sequences[n][m][x].iter().map(|&l| self.ladder_face(n, l, i)).collect();
        self.sequence(n - 1, out)
    }

    fn hdeg(&self, n: usize, m: usize, j: usize, x: usize) -> usize {
        if m == 0 {
            return self.chain_degeneracy(n, x, j);
        }
        let out = self.sequences[n][m][x].iter().map(|&l| self.ladder_degeneracy(n, l, j)).collect();
        self.sequence(n + 1, out)
    }

    fn assemble(&self, n_cap: usize, m_cap: usize) -> TruncatedBisimplicialSet {
        let labels: Vec<Vec<Vec<String>>> =
            (0..=n_cap).map(|n| (0..=m_cap).map(|m| (0..self.size(n, m)).map(|x| self.label(n, m, x)).collect()).collect()).collect();
        let columns = (0..=n_cap)
            .map(|n| ExplicitSimplicialSet {
                dim_cap: m_cap,
                labels: labels[n].clone(),
                faces: (0..=m_cap)
                    .map(|m| {
                        if m == 0 {
                            Vec::new()
                        } else {
                            (0..=m).map(|i| (0..self.size(n, m)).map(|x| self.vface(n, m, i, x)).collect()).collect()
                        }
                    })
                    .collect(),
                degeneracies: (0..m_cap)
                    .map(|m| (0..=m).map(|j| (0..self.size(n, m)).map(|x| self.vdeg(n, m, j, x)).collect()).collect())
                    .collect(),
            })
            .collect();
        let rows = (0..=m_cap)
            .map(|m| ExplicitSimplicialSet {
                dim_cap: n_cap,
                labels: (0..=n_cap).map(|n| labels[n][m].clone()).collect(),
                faces: (0..=n_cap)
                    .map(|n| {
                        if n == 0 {
                            Vec::new()
                        } else {
                            (0..=n).map(|i| (0..self.size(n, m)).map(|x| self.hface(n, m, i, x)).collect()).collect()
                        }
                    })
                    .collect(),
                degeneracies: (0..n_cap)
                    .map(|n| (0..=n).map(|j| (0..self.size(n, m)).map(|x| self.hdeg(n, m, j, x)).collect()).collect())
                    .collect(),
            })
            .collect();
        TruncatedBisimplicialSet { columns, rows, origin: Some(self.c.clone()) }
    }
}

/// The classifying diagram of `C` truncated at `caps = (N, M)`: column `n`
/// is the nerve of `iso(C^[n])`, so `W_{n,m}` consists of grids with `n`
/// horizontal arrows per row and `m` vertical isomorphisms per column.
///
/// Element orders match [`FinCategory::chains`] at `m = 0` and
/// [`FinCategory::ladders`] at `m = 1`.
pub fn classifying_diagram(c: &FinCategory, caps: (usize, usize)) -> TruncatedBisimplicialSet {
    Grids::new(c, caps.0, caps.1).assemble(caps.0, caps.1)
}

/// The map of classifying diagrams induced by a functor.
pub fn classifying_diagram_map(f: &Functor, caps: (usize, usize)) -> Result<BisimplicialMap> {
    let (n_cap, m_cap) = caps;
    let (c, d) = (f.source(), f.target());
    let gc = Grids::new(c, n_cap, m_cap);
    let gd = Grids::new(d, n_cap, m_cap);
    let map_chain = |n: usize, x: usize| -> usize {
        let image: Vec<MorId> = gc.chains[n][x].iter().map(|&m| f.on_morphism(m)).collect();
        gd.chain_index[n][&image]
    };
    let map_ladder = |n: usize, l: usize| -> Option<usize> {
        let l = &gc.ladders[n][l];
        let image = Ladder {
            source: map_chain(n, l.source),
            rungs: l.rungs.iter().map(|&m| f.on_morphism(m)).collect(),
            target: map_chain(n, l.target),
        };
        gd.ladder_index[n].get(&image).copied()
    };
    let mut levels: Vec<ExplicitMap> = Vec::with_capacity(n_cap + 1);
    for n in 0..=n_cap {
        let mut col = vec![(0..gc.size(n, 0)).map(|x| map_chain(n, x)).collect::<Vec<_>>()];
        for m in 1..=m_cap {
            let level = gc.sequences[n][m]
                .iter()
                .map(|seq| {
                    let image = seq.iter().map(|&l| map_ladder(n, l)).collect::<Option<Vec<_>>>();
                    image.and_then(|s| gd.sequence_index[n][m].get(&s).copied())
                })
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::ill_formed("functor image of a ladder is missing from the target"))?;
            col.push(level);
        }
        levels.push(col);
    }
    BisimplicialMap::new(gc.assemble(n_cap, m_cap), gd.assemble(n_cap, m_cap), levels)
}
