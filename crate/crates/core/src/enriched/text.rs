//! Text format for finite simplicial categories.
//!
//! ```text
//! simplicial-category dim_cap <cap>
//! objects <name> ...
//! map <a> <b>
//! <simplicial-set block>
//! ...
//! identity <a> <vertex>
//! compose <a> <b> <c> <n> <g> <f> <g∘f>
//! ...
//! end
//! ```
//!
//! Every ordered pair needs a `map` block and every pair of composable
//! `n`-simplices a `compose` line. Simplices are written as in the
//! simplicial-set format (`name` or `name@j1.j2...`).

use std::collections::HashMap;

use itertools::Itertools;

use super::FinSimplicialCategory;
use crate::error::{Error, Result};
use crate::simpset::{parse_simplex_token, read_simplicial_set_block, write_simplicial_set, ExplicitSimplicialSet, SimplexRef};
use crate::text::{check_name, expect_keyword, parse_usize, Lines};

pub fn write_simplicial_category(c: &FinSimplicialCategory) -> Result<String> {
    for o in c.objects() {
        check_name(o)?;
    }
    let k = c.num_objects();
    let mut out = format!("simplicial-category dim_cap {}\nobjects {}\n", c.dim_cap(), c.objects().iter().join(" "));
    let mut names: Vec<Vec<Vec<Vec<String>>>> = Vec::with_capacity(k);
    // simplices of each level listed in the order the parser will see them
    let mut order: Vec<Vec<Vec<Vec<usize>>>> = Vec::with_capacity(k);
    for a in 0..k {
        let (mut row, mut order_row) = (Vec::with_capacity(k), Vec::with_capacity(k));
        for b in 0..k {
            let (set, refs) = c.map(a, b).to_truncated_with_index();
            out.push_str(&format!("map {} {}\n", c.objects()[a], c.objects()[b]));
            out.push_str(&write_simplicial_set(&set));
            let levels = (0..=c.dim_cap())
                .map(|n| {
                    let position: HashMap<&SimplexRef, usize> = refs[n].iter().enumerate().map(|(x, r)| (r, x)).collect();
                    set.n_simplices(n).map(|l| l.iter().map(|r| position[r]).collect())
                })
                .collect::<Result<Vec<Vec<usize>>>>()?;
            order_row.push(levels);
            row.push(refs.iter().map(|l| l.iter().map(|r| set.simplex_label(r)).collect()).collect());
        }
        names.push(row);
        order.push(order_row);
    }
    for a in 0..k {
        out.push_str(&format!("identity {} {}\n", c.objects()[a], names[a][a][0][c.identity(a)]));
    }
    for (a, b, cc) in (0..3).map(|_| 0..k).multi_cartesian_product().map(|v| (v[0], v[1], v[2])) {
        for n in 0..=c.dim_cap() {
            for &g in &order[b][cc][n] {
                for &f in &order[a][b][n] {
                    let gf = c.compose(a, b, cc, n, g, f);
                    out.push_str(&format!(
                        "compose {} {} {} {n} {} {} {}\n",
                        c.objects()[a],
                        c.objects()[b],
                        c.objects()[cc],
                        names[b][cc][n][g],
                        names[a][b][n][f],
                        names[a][cc][n][gf]
                    ));
                }
            }
        }
    }
    out.push_str("end\n");
    Ok(out)
}

struct Space {
    explicit: ExplicitSimplicialSet,
    index: Vec<HashMap<SimplexRef, usize>>,
    set: crate::simpset::TruncatedSimplicialSet,
}

impl Space {
    fn simplex(&self, line: usize, n: usize, token: &str) -> Result<usize> {
        let r = parse_simplex_token(line, token, |name| self.set.cell_by_name(name))?;
        if r.dim() != n {
            return Err(Error::parse(line, format!("`{token}` is not a {n}-simplex")));
        }
        self.index[n].get(&r).copied().ok_or_else(|| Error::parse(line, format!("`{token}` is not a simplex of the mapping space")))
    }
}

pub fn parse_simplicial_category(input: &str) -> Result<FinSimplicialCategory> {
    let mut lines = Lines::new(input);
    let (line, header) = lines.expect_tokens("`simplicial-category dim_cap <n>`")?;
    expect_keyword(line, &header, "simplicial-category")?;
    if header.len() != 3 || header[1] != "dim_cap" {
        return Err(Error::parse(line, "expected `simplicial-category dim_cap <n>`"));
    }
    let cap = parse_usize(line, header[2])?;
    let (line, tokens) = lines.expect_tokens("`objects`")?;
    expect_keyword(line, &tokens, "objects")?;
    let objects: Vec<String> = tokens[1..].iter().map(|s| s.to_string()).collect();
    if !objects.iter().all_unique() {
        return Err(Error::parse(line, "duplicate object name"));
    }
    let k = objects.len();
    let object = |line: usize, name: &str| {
        objects.iter().position(|o| o == name).ok_or_else(|| Error::parse(line, format!("unknown object `{name}`")))
    };
    let mut spaces: HashMap<(usize, usize), Space> = HashMap::new();
    let mut identities: Vec<Option<usize>> = vec![None; k];
    let mut entries: HashMap<(usize, usize, usize, usize, usize, usize), usize> = HashMap::new();
    loop {
        let (line, tokens) = lines.expect_tokens("`map`, `identity`, `compose` or `end`")?;
        match (tokens[0], tokens.len()) {
            ("end", 1) => break,
            ("map", 3) => {
                let (a, b) = (object(line, tokens[1])?, object(line, tokens[2])?);
                let set = read_simplicial_set_block(&mut lines)?;
                if set.dim_cap() != cap {
                    return Err(Error::parse(line, format!("mapping space has cap {} instead of {cap}", set.dim_cap())));
                }
                let index = (0..=cap)
                    .map(|n| set.n_simplices(n).map(|l| l.into_iter().enumerate().map(|(i, r)| (r, i)).collect()))
                    .collect::<Result<Vec<_>>>()?;
                let explicit = ExplicitSimplicialSet::from_truncated(&set);
                if spaces.insert((a, b), Space { explicit, index, set }).is_some() {
                    return Err(Error::parse(line, format!("Map({}, {}) given twice", tokens[1], tokens[2])));
                }
            }
            ("identity", 3) => {
                let a = object(line, tokens[1])?;
                let space = spaces.get(&(a, a)).ok_or_else(|| Error::parse(line, "identity before its mapping space"))?;
                identities[a] = Some(space.simplex(line, 0, tokens[2])?);
            }
            ("compose", 8) => {
                let (a, b, c) = (object(line, tokens[1])?, object(line, tokens[2])?, object(line, tokens[3])?);
                let n = parse_usize(line, tokens[4])?;
                if n > cap {
                    return Err(Error::parse(line, format!("level {n} above the cap")));
                }
                let space = |x: usize, y: usize| spaces.get(&(x, y)).ok_or_else(|| Error::parse(line, "composition before its mapping spaces"));
                let g = space(b, c)?.simplex(line, n, tokens[5])?;
                let f = space(a, b)?.simplex(line, n, tokens[6])?;
                let gf = space(a, c)?.simplex(line, n, tokens[7])?;
                if entries.insert((a, b, c, n, g, f), gf).is_some_and(|old| old != gf) {
                    return Err(Error::parse(line, "conflicting composition entry"));
                }
            }
            _ => return Err(Error::parse(line, format!("unexpected line `{}`", tokens.iter().join(" ")))),
        }
    }
    let end = lines.line();
    let mut maps: Vec<Vec<ExplicitSimplicialSet>> = Vec::with_capacity(k);
    for a in 0..k {
        let mut row = Vec::with_capacity(k);
        for b in 0..k {
            let space = spaces
                .remove(&(a, b))
                .ok_or_else(|| Error::parse(end, format!("missing mapping space ({}, {})", objects[a], objects[b])))?;
            row.push(space.explicit);
        }
        maps.push(row);
    }
    let identities = identities
        .iter()
        .enumerate()
        .map(|(a, i)| i.ok_or_else(|| Error::parse(end, format!("missing identity of `{}`", objects[a]))))
        .collect::<Result<Vec<_>>>()?;
    let mut composition = HashMap::new();
    for (a, b, c) in (0..3).map(|_| 0..k).multi_cartesian_product().map(|v| (v[0], v[1], v[2])) {
        let mut levels = Vec::with_capacity(cap + 1);
        for n in 0..=cap {
            let mut level = Vec::new();
            for g in 0..maps[b][c].size(n) {
                for f in 0..maps[a][b].size(n) {
                    let gf = entries.get(&(a, b, c, n, g, f)).ok_or_else(|| {
                        Error::parse(end, format!("missing composite at level {n} for ({}, {}, {})", objects[a], objects[b], objects[c]))
                    })?;
                    level.push(*gf);
                }
            }
            levels.push(level);
        }
        composition.insert((a, b, c), levels);
    }
    FinSimplicialCategory::from_tables(objects.clone(), maps, identities, composition)
}
