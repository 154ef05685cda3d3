//! Objects and hom-sets of the categories Θ_n.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::util::monotone_maps;

/// `[m](c_1, ..., c_m)` at level `n >= 1`, or the point at level 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaObject {
    level: usize,
    children: Vec<ThetaObject>,
}

impl ThetaObject {
    pub fn point() -> Self {
        ThetaObject { level: 0, children: Vec::new() }
    }

    pub fn new(level: usize, children: Vec<ThetaObject>) -> Result<Self> {
        if level == 0 && !children.is_empty() {
            return Err(Error::invalid("the level-0 object has no children"));
        }
        if let Some(c) = children.iter().find(|c| c.level + 1 != level) {
            return Err(Error::invalid(format!("child of level {} under a level-{level} object", c.level)));
        }
        Ok(ThetaObject { level, children })
    }

    /// `[m]` in Θ_1.
    pub fn simplex(m: usize) -> Self {
        ThetaObject { level: 1, children: vec![Self::point(); m] }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// `m` for `[m](...)`, 0 for the point.
    pub fn shape(&self) -> usize {
        self.children.len()
    }

    pub fn children(&self) -> &[ThetaObject] {
        &self.children
    }

    /// Sum of all shape numbers `m` in the term.
    pub fn size(&self) -> usize {
        self.children.len() + self.children.iter().map(Self::size).sum::<usize>()
    }
}

impl fmt::Display for ThetaObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.level == 0 {
            return f.write_str("·");
        }
        write!(f, "[{}]", self.children.len())?;
        if !self.children.is_empty() {
            write!(f, "({})", self.children.iter().join(","))?;
        }
        Ok(())
    }
}

/// `(δ, {f_ij})` with blocks present exactly for `δ(i-1) < j <= δ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaMorphism {
    source: ThetaObject,
    target: ThetaObject,
    delta: Vec<usize>,
    blocks: BTreeMap<(usize, usize), ThetaMorphism>,
}

/// Index pairs `(i, j)`, 1-based, that a block family over `delta` must have.
fn block_pattern(delta: &[usize]) -> Vec<(usize, usize)> {
    (1..delta.len()).flat_map(|i| (delta[i - 1] + 1..=delta[i]).map(move |j| (i, j))).collect()
}

impl ThetaMorphism {
    pub fn new(
        source: ThetaObject,
        target: ThetaObject,
        delta: Vec<usize>,
        blocks: BTreeMap<(usize, usize), ThetaMorphism>,
    ) -> Result<Self> {
        if source.level != target.level {
            return Err(Error::invalid("source and target have different levels"));
        }
        if source.level == 0 {
            if delta != [0] || !blocks.is_empty() {
                return Err(Error::invalid("the only level-0 morphism is the identity of the point"));
            }
            return Ok(ThetaMorphism { source, target, delta, blocks });
        }
        let (m, p) = (source.shape(), target.shape());
        if delta.len() != m + 1 || delta.iter().any(|&d| d > p) || !delta.windows(2).all(|w| w[0] <= w[1]) {
            return Err(Error::invalid(format!("δ must be an order-preserving map [{m}] -> [{p}]")));
        }
        let pattern = block_pattern(&delta);
        if blocks.keys().copied().collect::<Vec<_>>() != pattern {
            return Err(Error::invalid(format!(
                "blocks must be indexed exactly by {}",
                pattern.iter().map(|(i, j)| format!("({i},{j})")).join(" ")
            )));
        }
        for (&(i, j), b) in &blocks {
            if b.source != source.children[i - 1] || b.target != target.children[j - 1] {
                return Err(Error::invalid(format!("block ({i},{j}) has the wrong endpoints")));
            }
        }
        Ok(ThetaMorphism { source, target, delta, blocks })
    }

    pub fn identity(a: &ThetaObject) -> Self {
        let delta = if a.level == 0 { vec![0] } else { (0..=a.shape()).collect() };
        let blocks = (1..=a.shape()).map(|i| ((i, i), Self::identity(&a.children[i - 1]))).collect();
        ThetaMorphism { source: a.clone(), target: a.clone(), delta, blocks }
    }

    pub fn source(&self) -> &ThetaObject {
        &self.source
    }

    pub fn target(&self) -> &ThetaObject {
        &self.target
    }

    pub fn delta(&self) -> &[usize] {
        &self.delta
    }

    pub fn blocks(&self) -> &BTreeMap<(usize, usize), ThetaMorphism> {
        &self.blocks
    }
}

impl fmt::Display for ThetaMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.source.level == 0 {
            return f.write_str("id");
        }
        write!(f, "({}", self.delta.iter().join(""))?;
        for ((i, j), b) in &self.blocks {
            write!(f, ", f{i}{j}={b}")?;
        }
        f.write_str(")")
    }
}

/// Every morphism `a -> b`.
pub fn theta_hom(a: &ThetaObject, b: &ThetaObject) -> Result<Vec<ThetaMorphism>> {
    if a.level != b.level {
        return Err(Error::invalid(format!("level mismatch: {} vs {}", a.level, b.level)));
    }
    if a.level == 0 {
        return Ok(vec![ThetaMorphism::identity(a)]);
    }
    let mut out = Vec::new();
    for delta in monotone_maps(a.shape(), b.shape()) {
        let pattern = block_pattern(&delta);
        let choices = pattern
            .iter()
            .map(|&(i, j)| theta_hom(&a.children[i - 1], &b.children[j - 1]))
            .collect::<Result<Vec<_>>>()?;
        let mut partial: Vec<Vec<&ThetaMorphism>> = vec![Vec::new()];
        for options in &choices {
            partial = partial
                .iter()
                .flat_map(|p| options.iter().map(move |o| p.iter().copied().chain([o]).collect()))
                .collect();
        }
        for pick in partial {
            let blocks = pattern.iter().copied().zip(pick.into_iter().cloned()).collect();
            out.push(ThetaMorphism { source: a.clone(), target: b.clone(), delta: delta.clone(), blocks });
        }
    }
    Ok(out)
}

/// `g ∘ f`.
pub fn theta_compose(g: &ThetaMorphism, f: &ThetaMorphism) -> Result<ThetaMorphism> {
    if f.target != g.source {
        return Err(Error::invalid("morphisms are not composable"));
    }
    if f.source.level == 0 {
        return Ok(f.clone());
    }
    let delta: Vec<usize> = f.delta.iter().map(|&d| g.delta[d]).collect();
    let mut blocks = BTreeMap::new();
    for (i, k) in block_pattern(&delta) {
        let j = (f.delta[i - 1] + 1..=f.delta[i])
            .find(|&j| g.delta[j - 1] < k && k <= g.delta[j])
            .expect("block intervals cover the composite interval");
        blocks.insert((i, k), theta_compose(&g.blocks[&(j, k)], &f.blocks[&(i, j)])?);
    }
    Ok(ThetaMorphism { source: f.source.clone(), target: g.target.clone(), delta, blocks })
}

/// Parsed bracket term before levels are assigned.
enum Raw {
    Point,
    Bracket(usize, Option<Vec<Raw>>),
}

impl Raw {
    fn min_level(&self) -> usize {
        match self {
            Raw::Point => 0,
            Raw::Bracket(_, None) => 1,
            Raw::Bracket(_, Some(cs)) => 1 + cs.iter().map(Raw::min_level).max().unwrap_or(0),
        }
    }

    fn at_level(&self, level: usize) -> Result<ThetaObject> {
        match self {
            Raw::Point if level == 0 => Ok(ThetaObject::point()),
            Raw::Point => Err(Error::invalid("the point can only appear at level 0")),
            Raw::Bracket(_, _) if level == 0 => Err(Error::invalid("a bracket cannot appear at level 0")),
            Raw::Bracket(0, None) => ThetaObject::new(level, Vec::new()),
            Raw::Bracket(m, None) if level == 1 => Ok(ThetaObject::simplex(*m)),
            Raw::Bracket(m, None) => Err(Error::invalid(format!("[{m}] needs its {m} children above level 1"))),
            Raw::Bracket(_, Some(cs)) => {
                let children = cs.iter().map(|c| c.at_level(level - 1)).collect::<Result<Vec<_>>>()?;
                ThetaObject::new(level, children)
            }
        }
    }
}

/// Parses terms like `[2]([1](·),[0])`. The point is `·` or `*`; `[m]`
/// without a child list means `[m](·,...,·)` when `m > 0`. Levels are
/// inferred from the deepest explicit nesting.
pub fn parse_theta(input: &str) -> Result<ThetaObject> {
    let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let raw = parse_raw(&chars, &mut pos)?;
    if pos != chars.len() {
        return Err(Error::invalid(format!("unexpected `{}` in Θ term", chars[pos..].iter().collect::<String>())));
    }
    raw.at_level(raw.min_level())
}

fn parse_raw(chars: &[char], pos: &mut usize) -> Result<Raw> {
    match chars.get(*pos) {
        Some('·') | Some('*') => {
            *pos += 1;
            Ok(Raw::Point)
        }
        Some('[') => {
            *pos += 1;
            let start = *pos;
            while chars.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
                *pos += 1;
            }
            let m: usize = chars[start..*pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| Error::invalid("expected a number after `[`"))?;
            if chars.get(*pos) != Some(&']') {
                return Err(Error::invalid("expected `]`"));
            }
            *pos += 1;
            if chars.get(*pos) != Some(&'(') {
                return Ok(Raw::Bracket(m, None));
            }
            *pos += 1;
            let mut children = vec![parse_raw(chars, pos)?];
            while chars.get(*pos) == Some(&',') {
                *pos += 1;
                children.push(parse_raw(chars, pos)?);
            }
            if chars.get(*pos) != Some(&')') {
                return Err(Error::invalid("expected `)`"));
            }
            *pos += 1;
            if children.len() != m {
                return Err(Error::invalid(format!("[{m}] has {} children", children.len())));
            }
            Ok(Raw::Bracket(m, Some(children)))
        }
        other => Err(Error::invalid(format!("unexpected {:?} in Θ term", other))),
    }
}
