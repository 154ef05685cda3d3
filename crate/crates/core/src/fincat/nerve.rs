use std::collections::{HashMap, HashSet};

use itertools::Itertools;

use super::{FinCategory, Functor, MorId};
use crate::simpset::{CellId, SimplexRef, SimplicialMap, SimplicialSetBuilder, TruncatedSimplicialSet};

/// The nerve truncated at `dim_cap`. Vertex `i` is object `i`, edge `j` is the
/// `j`-th non-identity morphism, and higher cells are identity-free chains
/// named `f1;f2;...`.
pub fn nerve(c: &FinCategory, dim_cap: usize) -> TruncatedSimplicialSet {
    nerve_with_index(c, dim_cap).0
}

type ChainIndex = Vec<HashMap<Vec<MorId>, usize>>;

fn nerve_with_index(c: &FinCategory, dim_cap: usize) -> (TruncatedSimplicialSet, ChainIndex) {
    let mut b = SimplicialSetBuilder::new(dim_cap);
    let mut used: HashSet<String> = HashSet::new();
    let mut fresh = |name: String| {
        let mut name = name;
        while !used.insert(name.clone()) {
            name.push('\'');
        }
        name
    };
    for o in c.objects() {
        b.add_cell(0, fresh(o.clone()), Vec::new()).expect("vertex");
    }
    let mut index: ChainIndex = vec![HashMap::new(); dim_cap + 1];
    if dim_cap == 0 {
        return (b.build(), index);
    }
    let mut level: Vec<Vec<MorId>> = c.non_identity_morphisms().map(|f| vec![f]).collect();
    for n in 1..=dim_cap {
        for (pos, chain) in level.iter().enumerate() {
            let faces = if n == 1 {
                let f = chain[0];
                vec![vertex(c.target(f)), vertex(c.source(f))]
            } else {
                (0..=n).map(|i| normalize(c, &index, &chain_face(c, chain, i))).collect()
            };
            let name = if n == 1 { c.morphism(chain[0]).name.clone() } else { chain.iter().map(|&f| &c.morphism(f).name).join(";") };
            b.add_cell(n, fresh(name), faces).expect("nerve faces are valid");
            index[n].insert(chain.clone(), pos);
        }
        if n < dim_cap {
            level = level
                .iter()
                .flat_map(|chain| {
                    let last = *chain.last().expect("nonempty chain");
                    c.outgoing(c.target(last)).iter().filter(|&&g| !c.is_identity(g)).map(move |&g| {
                        let mut next = chain.clone();
                        next.push(g);
                        next
                    })
                })
                .collect();
        }
    }
    (b.build(), index)
}

/// The map of nerves induced by a functor.
pub fn nerve_map(f: &Functor, dim_cap: usize) -> SimplicialMap {
    let (c, d) = (f.source(), f.target());
    let (src, _) = nerve_with_index(c, dim_cap);
    let (tgt, index) = nerve_with_index(d, dim_cap);
    let assignment = (0..=dim_cap)
        .map(|n| {
            src.cell_ids(n)
                .map(|id| {
                    let x = SimplexRef::nondegenerate(id);
                    let chain: Vec<MorId> = nerve_chain(c, &src, &x).iter().map(|&m| f.on_morphism(m)).collect();
                    if n == 0 {
                        vertex(d.source(chain[0]))
                    } else {
                        normalize(d, &index, &chain)
                    }
                })
                .collect()
        })
        .collect();
    SimplicialMap::new(src, tgt, assignment).expect("functors induce simplicial maps")
}

fn vertex(o: usize) -> SimplexRef {
    SimplexRef::nondegenerate(CellId::new(0, o))
}

/// `d_i` of a chain of length at least 2, as a chain that may contain
/// identities.
fn chain_face(c: &FinCategory, chain: &[MorId], i: usize) -> Vec<MorId> {
    let n = chain.len();
    let mut out = Vec::with_capacity(n - 1);
    for (p, &f) in chain.iter().enumerate() {
        if (i == 0 && p == 0) || (i == n && p == n - 1) {
            continue;
        }
        if i > 0 && i < n && p == i {
            continue;
        }
        if i > 0 && i < n && p == i - 1 {
            out.push(c.compose(chain[i], f).expect("chain is composable"));
        } else {
            out.push(f);
        }
    }
    out
}

/// Normal form of a nonempty chain (identities allowed).
fn normalize(c: &FinCategory, index: &[HashMap<Vec<MorId>, usize>], chain: &[MorId]) -> SimplexRef {
    let m = chain.len();
    let base_chain: Vec<MorId> = chain.iter().copied().filter(|&f| !c.is_identity(f)).collect();
    let word: Vec<usize> = (0..m).rev().filter(|&p| c.is_identity(chain[p])).collect();
    let base = if base_chain.is_empty() {
        CellId::new(0, c.source(chain[0]))
    } else {
        CellId::new(base_chain.len(), index[base_chain.len()][&base_chain])
    };
    SimplexRef { base, word }
}

/// Inverse of [`nerve`] on simplices: the composable chain a simplex names.
/// A vertex gives the one-element chain of its identity.
pub fn nerve_chain(c: &FinCategory, set: &TruncatedSimplicialSet, x: &SimplexRef) -> Vec<MorId> {
    if x.dim() == 0 {
        return vec![c.identity(x.base.index)];
    }
    let edges: Vec<MorId> = c.non_identity_morphisms().collect();
    set.spine_of(x)
        .iter()
        .map(|e| if e.is_degenerate() { c.identity(e.base.index) } else { edges[e.base.index] })
        .collect()
}
