use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fincat::{FinCategory, MorId, MorphismClass, ObjId};
use crate::simpset::{ExplicitSimplicialSet, TruncatedSimplicialSet};

/// `a <-s- U -f-> V <-t- b` with `s, t ∈ S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Zigzag {
    pub s: MorId,
    pub f: MorId,
    pub t: MorId,
}

impl Zigzag {
    pub fn render(&self, c: &FinCategory) -> String {
        let name = |m: MorId| c.morphism(m).name.as_str();
        format!("{}^-1 {} {}^-1", name(self.s), name(self.f), name(self.t))
    }
}

/// A map of zig-zags: `u : U1 -> U2` and `v : V1 -> V2` in S making the
/// two-row diagram commute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Hammock {
    pub top: usize,
    pub bottom: usize,
    pub u: MorId,
    pub v: MorId,
}

fn zigzags(c: &FinCategory, s: &MorphismClass, a: ObjId, b: ObjId) -> Vec<Zigzag> {
    let mut out = Vec::new();
    for &sm in c.incoming(a).iter().filter(|&&m| s.contains(m)) {
        for &f in c.outgoing(c.source(sm)) {
            for &t in c.outgoing(b).iter().filter(|&&m| s.contains(m) && c.target(m) == c.target(f)) {
                out.push(Zigzag { s: sm, f, t });
            }
        }
    }
    out
}

fn hammocks(c: &FinCategory, s: &MorphismClass, zs: &[Zigzag]) -> Vec<Hammock> {
    let mut out = Vec::new();
    for (top, z1) in zs.iter().enumerate() {
        for (bottom, z2) in zs.iter().enumerate() {
            let (u1, u2) = (c.source(z1.s), c.source(z2.s));
            let (v1, v2) = (c.target(z1.f), c.target(z2.f));
            for &u in c.hom(u1, u2).iter().filter(|&&m| s.contains(m)) {
                if c.compose(z2.s, u) != Some(z1.s) {
                    continue;
                }
                for &v in c.hom(v1, v2).iter().filter(|&&m| s.contains(m)) {
                    if c.compose(v, z1.f) == c.compose(z2.f, u) && c.compose(v, z1.t) == Some(z2.t) {
                        out.push(Hammock { top, bottom, u, v });
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct HammockSpace {
    pub space: TruncatedSimplicialSet,
    pub zigzags: Vec<Zigzag>,
    pub hammocks: Vec<Hammock>,
}

impl HammockSpace {
    pub fn components(&self) -> usize {
        self.space.pi0().count
    }
}

/// The 1-truncated hammock mapping space from `a` to `b`: vertices are
/// zig-zags, edges are hammocks with `d_1` the top row and `d_0` the bottom
/// row.
pub fn hammock_mapping_space(c: &FinCategory, s: &MorphismClass, a: ObjId, b: ObjId) -> Result<HammockSpace> {
    if a >= c.num_objects() || b >= c.num_objects() {
        return Err(Error::invalid("object out of range"));
    }
    if s.flags().len() != c.num_morphisms() {
        return Err(Error::invalid("morphism class belongs to another category"));
    }
    let zs = zigzags(c, s, a, b);
    let hs = hammocks(c, s, &zs);
    let index: HashMap<Hammock, usize> = hs.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let degenerate: Vec<usize> = zs
        .iter()
        .enumerate()
        .map(|(x, z)| {
            let h = Hammock { top: x, bottom: x, u: c.identity(c.source(z.s)), v: c.identity(c.target(z.f)) };
            index[&h]
        })
        .collect();
    let name = |m: MorId| c.morphism(m).name.clone();
    let explicit = ExplicitSimplicialSet {
        dim_cap: 1,
        labels: vec![
            zs.iter().map(|z| z.render(c)).collect(),
            hs.iter().map(|h| format!("[{} => {}|{}|{}]", zs[h.top].render(c), zs[h.bottom].render(c), name(h.u), name(h.v))).collect(),
        ],
        faces: vec![Vec::new(), vec![hs.iter().map(|h| h.bottom).collect(), hs.iter().map(|h| h.top).collect()]],
        degeneracies: vec![vec![degenerate]],
    };
    explicit.check_identities()?;
    Ok(HammockSpace { space: explicit.to_truncated(), zigzags: zs, hammocks: hs })
}
