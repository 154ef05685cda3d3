use std::collections::HashMap;

use itertools::Itertools;

use super::{CubePoset, FinSimplicialCategory};
use crate::error::{Error, Result};
use crate::simpset::{ExplicitSimplicialSet, TruncatedSimplicialSet};

pub const MAX_COHERENT_DIM: usize = 3;
const SIMPLEX_BUDGET: usize = 2_000_000;

/// A nondegenerate simplex `S_0 ⊊ ... ⊊ S_m` of `Map(i,j)` in `C[Δ^n]`.
#[derive(Clone, Debug)]
struct Task {
    i: usize,
    j: usize,
    chain: Vec<u32>,
    /// Some interior vertex `k ∈ S_0`: the value factors through `k`.
    through: Option<usize>,
}

/// The combinatorics of `C[Δ^n]` needed to describe functors out of it.
struct Shape {
    tasks: Vec<Task>,
    index: HashMap<(usize, usize, Vec<u32>), usize>,
}

impl Shape {
    fn new(n: usize) -> Self {
        let mut tasks = Vec::new();
        for len in 1..=n {
            for i in 0..=n - len {
                let j = i + len;
                let masks = CubePoset::new(i, j).masks();
                let mut chains: Vec<Vec<u32>> = Vec::new();
                let mut stack: Vec<Vec<u32>> = masks.iter().map(|&m| vec![m]).collect();
                while let Some(c) = stack.pop() {
                    let last = *c.last().expect("nonempty");
                    for &m in &masks {
                        if m != last && CubePoset::leq(last, m) {
                            stack.push([c.as_slice(), &[m]].concat());
                        }
                    }
                    chains.push(c);
                }
                chains.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
                for chain in chains {
                    let through = (i + 1..j).find(|&k| chain[0] >> k & 1 == 1);
                    tasks.push(Task { i, j, chain, through });
                }
            }
        }
        let index = tasks.iter().enumerate().map(|(t, task)| ((task.i, task.j, task.chain.clone()), t)).collect();
        Shape { tasks, index }
    }
}

fn interior(i: usize, j: usize) -> u32 {
    (i + 1..j).fold(0, |m, b| m | 1 << b)
}

struct Enumerator<'a> {
    c: &'a FinSimplicialCategory,
    /// `by_faces[(a, b, m)]`: simplices of `Map(a,b)_m` keyed by their faces.
    by_faces: HashMap<(usize, usize, usize), HashMap<Vec<usize>, Vec<usize>>>,
}

impl<'a> Enumerator<'a> {
    fn new(c: &'a FinSimplicialCategory) -> Self {
        let mut by_faces = HashMap::new();
        for a in 0..c.num_objects() {
            for b in 0..c.num_objects() {
                let space = c.map(a, b);
                for m in 1..=space.dim_cap {
                    let mut index: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
                    for x in 0..space.size(m) {
                        index.entry((0..=m).map(|t| space.face(m, t, x)).collect()).or_default().push(x);
                    }
                    by_faces.insert((a, b, m), index);
                }
            }
        }
        Enumerator { c, by_faces }
    }

    /// Value of a functor on a possibly degenerate chain of `Map(i,j)`.
    fn evaluate(&self, shape: &Shape, objs: &[usize], values: &[usize], i: usize, j: usize, chain: &[u32]) -> usize {
        let m = chain.len() - 1;
        if i == j {
            return self.c.identity_at(objs[i], m);
        }
        if let Some(t) = (0..m).find(|&t| chain[t] == chain[t + 1]) {
            let mut shorter = chain.to_vec();
            shorter.remove(t + 1);
            let x = self.evaluate(shape, objs, values, i, j, &shorter);
            return self.c.map(objs[i], objs[j]).degeneracy(m - 1, t, x);
        }
        values[shape.index[&(i, j, chain.to_vec())]]
    }

    fn factor(&self, shape: &Shape, objs: &[usize], values: &[usize], task: &Task, k: usize) -> usize {
        let (i, j, m) = (task.i, task.j, task.chain.len() - 1);
        let left: Vec<u32> = task.chain.iter().map(|&s| s & interior(i, k)).collect();
        let right: Vec<u32> = task.chain.iter().map(|&s| s & interior(k, j)).collect();
        let f = self.evaluate(shape, objs, values, i, k, &left);
        let g = self.evaluate(shape, objs, values, k, j, &right);
        self.c.compose(objs[i], objs[k], objs[j], m, g, f)
    }

    fn candidates(&self, shape: &Shape, objs: &[usize], values: &[usize], task: &Task) -> Vec<usize> {
        let m = task.chain.len() - 1;
        let (a, b) = (objs[task.i], objs[task.j]);
        if m == 0 {
            return (0..self.c.map(a, b).size(0)).collect();
        }
        let faces: Vec<usize> = (0..=m)
            .map(|t| {
                let mut face = task.chain.clone();
                face.remove(t);
                self.evaluate(shape, objs, values, task.i, task.j, &face)
            })
            .collect();
        self.by_faces[&(a, b, m)].get(&faces).cloned().unwrap_or_default()
    }

    fn extend(&self, shape: &Shape, objs: &[usize], values: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) -> Result<()> {
        let t = values.len();
        if t == shape.tasks.len() {
            if out.len() >= SIMPLEX_BUDGET {
                return Err(Error::resource("coherent nerve simplices", format!("more than {SIMPLEX_BUDGET}")));
            }
            out.push(values.clone());
            return Ok(());
        }
        let task = &shape.tasks[t];
        match task.through {
            Some(k) => {
                let v = self.factor(shape, objs, values, task, k);
                values.push(v);
                self.extend(shape, objs, values, out)?;
                values.pop();
            }
            None => {
                for v in self.candidates(shape, objs, values, task) {
                    values.push(v);
                    self.extend(shape, objs, values, out)?;
                    values.pop();
                }
            }
        }
        Ok(())
    }
}

/// The coherent nerve truncated at `d`, with every simplex (degenerate
/// ones included) listed explicitly. An `n`-simplex is a simplicial
/// functor `C[Δ^n] -> C`.
pub fn coherent_nerve_explicit(c: &FinSimplicialCategory, d: usize) -> Result<ExplicitSimplicialSet> {
    if d > MAX_COHERENT_DIM {
        return Err(Error::resource(
            "coherent nerve dimension",
            format!("d = {d} exceeds the exhaustive enumerator's limit {MAX_COHERENT_DIM}"),
        ));
    }
    if d >= 1 && c.dim_cap() + 1 < d {
        return Err(Error::invalid(format!("mapping spaces need cap at least {} for d = {d}", d - 1)));
    }
    let shapes: Vec<Shape> = (0..=d).map(Shape::new).collect();
    let e = Enumerator::new(c);
    let k = c.num_objects();
    let mut simplices: Vec<Vec<(Vec<usize>, Vec<usize>)>> = Vec::with_capacity(d + 1);
    for (n, shape) in shapes.iter().enumerate() {
        let mut level = Vec::new();
        for objs in (0..=n).map(|_| 0..k).multi_cartesian_product() {
            let mut found = Vec::new();
            e.extend(shape, &objs, &mut Vec::with_capacity(shape.tasks.len()), &mut found)?;
            level.extend(found.into_iter().map(|v| (objs.clone(), v)));
            if level.len() > SIMPLEX_BUDGET {
                return Err(Error::resource("coherent nerve simplices", format!("more than {SIMPLEX_BUDGET}")));
            }
        }
        simplices.push(level);
    }
    let index: Vec<HashMap<&(Vec<usize>, Vec<usize>), usize>> =
        simplices.iter().map(|l| l.iter().enumerate().map(|(x, s)| (s, x)).collect()).collect();
    let labels = simplices
        .iter()
        .enumerate()
        .map(|(n, level)| {
            level
                .iter()
                .map(|(objs, values)| {
                    if n == 0 {
                        return c.objects()[objs[0]].clone();
                    }
                    let free = shapes[n].tasks.iter().zip(values).filter(|(t, _)| t.through.is_none()).map(|(t, &v)| {
                        c.map(objs[t.i], objs[t.j]).labels[t.chain.len() - 1][v].clone()
                    });
                    format!("<{}|{}>", objs.iter().map(|&o| &c.objects()[o]).join(","), free.format(";"))
                })
                .collect()
        })
        .collect();
    let pull = |n: usize, target: usize, objs: &[usize], values: &[usize], obj_map: &dyn Fn(usize) -> usize, bit_map: &dyn Fn(u32, usize, usize) -> u32| {
        let new_objs: Vec<usize> = (0..=target).map(|k| objs[obj_map(k)]).collect();
        let new_values: Vec<usize> = shapes[target]
            .tasks
            .iter()
            .map(|t| {
                let (i, j) = (obj_map(t.i), obj_map(t.j));
                let chain: Vec<u32> = t.chain.iter().map(|&s| bit_map(s, i, j)).collect();
                e.evaluate(&shapes[n], objs, values, i, j, &chain)
            })
            .collect();
        index[target][&(new_objs, new_values)]
    };
    let mut faces = vec![Vec::new()];
    for n in 1..=d {
        let per_face = (0..=n)
            .map(|i| {
                let delta = move |k: usize| if k < i { k } else { k + 1 };
                let bits = move |s: u32, _: usize, _: usize| (0..32).filter(|&b| s >> b & 1 == 1).fold(0, |acc, b| acc | 1 << delta(b));
                simplices[n].iter().map(|(objs, values)| pull(n, n - 1, objs, values, &delta, &bits)).collect()
            })
            .collect();
        faces.push(per_face);
    }
    let degeneracies = (0..d)
        .map(|n| {
            (0..=n)
                .map(|j| {
                    let sigma = move |k: usize| if k <= j { k } else { k - 1 };
                    let bits = move |s: u32, i: usize, jj: usize| {
                        (0..32).filter(|&b| s >> b & 1 == 1).fold(0, |acc, b| acc | 1 << sigma(b)) & interior(i, jj)
                    };
                    simplices[n].iter().map(|(objs, values)| pull(n, n + 1, objs, values, &sigma, &bits)).collect()
                })
                .collect()
        })
        .collect();
    Ok(ExplicitSimplicialSet { dim_cap: d, labels, faces, degeneracies })
}

pub fn coherent_nerve(c: &FinSimplicialCategory, d: usize) -> Result<TruncatedSimplicialSet> {
    Ok(coherent_nerve_explicit(c, d)?.to_truncated())
}
