//! Text formats for categories and functors.
//!
//! ```text
//! category
//! object x
//! morphism f x y
//! identity x id_x
//! compose g f gf
//! end
//! ```
//!
//! Objects without an `identity` line get a fresh morphism `id_<object>`.
//! Composites with an identity are filled in automatically.
//!
//! ```text
//! functor
//! object x a
//! morphism f u
//! end
//! ```
//!
//! A functor bundle is a source category, a target category and a functor,
//! concatenated.

use std::collections::BTreeSet;

use super::{FinCategory, FinCategoryBuilder, Functor};
use crate::error::{Error, Result};
use crate::text::{check_name, expect_keyword, Lines};

pub fn write_category(c: &FinCategory) -> String {
    let mut out = String::from("category\n");
    for o in c.objects() {
        out.push_str(&format!("object {o}\n"));
    }
    for m in c.morphisms() {
        out.push_str(&format!("morphism {} {} {}\n", m.name, c.object_name(m.source), c.object_name(m.target)));
    }
    for (o, name) in c.objects().iter().enumerate() {
        out.push_str(&format!("identity {name} {}\n", c.morphism(c.identity(o)).name));
    }
    let rows: BTreeSet<(usize, usize, usize)> = c
        .composition_table()
        .iter()
        .filter(|((g, f), _)| !c.is_identity(*g) && !c.is_identity(*f))
        .map(|(&(g, f), &gf)| (g, f, gf))
        .collect();
    for (g, f, gf) in rows {
        out.push_str(&format!("compose {} {} {}\n", c.morphism(g).name, c.morphism(f).name, c.morphism(gf).name));
    }
    out.push_str("end\n");
    out
}

/// Parses and checks every category law.
pub fn parse_category(input: &str) -> Result<FinCategory> {
    let c = parse_category_unchecked(input)?;
    let report = c.verify();
    if !report.is_empty() {
        return Err(Error::ill_formed(report.describe(&c).join("; ")));
    }
    Ok(c)
}

/// Parses without checking associativity or completeness of the table.
pub fn parse_category_unchecked(input: &str) -> Result<FinCategory> {
    let mut lines = Lines::new(input);
    let c = read_category_block(&mut lines)?;
    if let Some((line, tokens)) = lines.next_tokens() {
        return Err(Error::parse(line, format!("trailing input `{}`", tokens.join(" "))));
    }
    Ok(c)
}

fn read_category_block(lines: &mut Lines<'_>) -> Result<FinCategory> {
    let (line, header) = lines.expect_tokens("`category`")?;
    expect_keyword(line, &header, "category")?;
    if header.len() != 1 {
        return Err(Error::parse(line, "expected `category`"));
    }
    let mut b = FinCategoryBuilder::new();
    let obj = |b: &FinCategoryBuilder, line: usize, name: &str| {
        b.object_named(name).ok_or_else(|| Error::parse(line, format!("unknown object `{name}`")))
    };
    let mor = |b: &FinCategoryBuilder, line: usize, name: &str| {
        b.morphism_named(name).ok_or_else(|| Error::parse(line, format!("unknown morphism `{name}`")))
    };
    loop {
        let (line, t) = lines.expect_tokens("a category line or `end`")?;
        match (t[0], t.len()) {
            ("end", 1) => break,
            ("object", 2) => {
                check_name(t[1]).map_err(|e| Error::parse(line, e.to_string()))?;
                if b.object_named(t[1]).is_some() {
                    return Err(Error::parse(line, format!("duplicate object `{}`", t[1])));
                }
                b.object(t[1]);
            }
            ("morphism", 4) => {
                check_name(t[1]).map_err(|e| Error::parse(line, e.to_string()))?;
                if b.morphism_named(t[1]).is_some() {
                    return Err(Error::parse(line, format!("duplicate morphism `{}`", t[1])));
                }
                let (s, d) = (obj(&b, line, t[2])?, obj(&b, line, t[3])?);
                b.morphism(t[1], s, d);
            }
            ("identity", 3) => {
                let (o, m) = (obj(&b, line, t[1])?, mor(&b, line, t[2])?);
                if b.has_identity(o) {
                    return Err(Error::parse(line, format!("second identity for `{}`", t[1])));
                }
                b.identity(o, m);
            }
            ("compose", 4) => {
                let (g, f, gf) = (mor(&b, line, t[1])?, mor(&b, line, t[2])?, mor(&b, line, t[3])?);
                b.compose(g, f, gf);
            }
            _ => return Err(Error::parse(line, format!("unexpected line `{}`", t.join(" ")))),
        }
    }
    let end_line = lines.line();
    for o in 0..b.num_objects() {
        if !b.has_identity(o) {
            let name = format!("id_{}", b.object_name(o));
            if b.morphism_named(&name).is_some() {
                return Err(Error::parse(end_line, format!("`{name}` exists but is not designated an identity")));
            }
            let m = b.morphism(name, o, o);
            b.identity(o, m);
        }
    }
    b.build().map_err(|e| Error::parse(end_line, e.to_string()))
}

pub fn write_functor(f: &Functor) -> String {
    let (c, d) = (f.source(), f.target());
    let mut out = String::from("functor\n");
    for o in 0..c.num_objects() {
        out.push_str(&format!("object {} {}\n", c.object_name(o), d.object_name(f.on_object(o))));
    }
    for m in 0..c.num_morphisms() {
        if !c.is_identity(m) {
            out.push_str(&format!("morphism {} {}\n", c.morphism(m).name, d.morphism(f.on_morphism(m)).name));
        }
    }
    out.push_str("end\n");
    out
}

/// Parses a functor between given categories. Identities may be omitted.
pub fn parse_functor(input: &str, source: &FinCategory, target: &FinCategory) -> Result<Functor> {
    let mut lines = Lines::new(input);
    let f = read_functor_block(&mut lines, source, target)?;
    if let Some((line, tokens)) = lines.next_tokens() {
        return Err(Error::parse(line, format!("trailing input `{}`", tokens.join(" "))));
    }
    Ok(f)
}

/// A source category block, a target category block and a functor block,
/// in that order.
pub fn parse_functor_bundle(input: &str) -> Result<Functor> {
    let mut lines = Lines::new(input);
    let source = read_category_block(&mut lines)?;
    let target = read_category_block(&mut lines)?;
    for c in [&source, &target] {
        let report = c.verify();
        if !report.is_empty() {
            return Err(Error::ill_formed(report.describe(c).join("; ")));
        }
    }
    let f = read_functor_block(&mut lines, &source, &target)?;
    if let Some((line, tokens)) = lines.next_tokens() {
        return Err(Error::parse(line, format!("trailing input `{}`", tokens.join(" "))));
    }
    Ok(f)
}

pub fn write_functor_bundle(f: &Functor) -> String {
    format!("{}{}{}", write_category(f.source()), write_category(f.target()), write_functor(f))
}

fn read_functor_block(lines: &mut Lines<'_>, source: &FinCategory, target: &FinCategory) -> Result<Functor> {
    let (line, header) = lines.expect_tokens("`functor`")?;
    expect_keyword(line, &header, "functor")?;
    let mut objects = Vec::new();
    let mut morphisms = Vec::new();
    loop {
        let (line, t) = lines.expect_tokens("a functor line or `end`")?;
        match (t[0], t.len()) {
            ("end", 1) => break,
            ("object", 3) => objects.push((t[1], t[2], line)),
            ("morphism", 3) => morphisms.push((t[1], t[2], line)),
            _ => return Err(Error::parse(line, format!("unexpected line `{}`", t.join(" ")))),
        }
    }
    for (a, b, line) in &objects {
        if source.object_named(a).is_none() || target.object_named(b).is_none() {
            return Err(Error::parse(*line, format!("unknown object in `{a} {b}`")));
        }
    }
    for (a, b, line) in &morphisms {
        if source.morphism_named(a).is_none() || target.morphism_named(b).is_none() {
            return Err(Error::parse(*line, format!("unknown morphism in `{a} {b}`")));
        }
    }
    let obj_pairs: Vec<(&str, &str)> = objects.iter().map(|(a, b, _)| (*a, *b)).collect();
    let mor_pairs: Vec<(&str, &str)> = morphisms.iter().map(|(a, b, _)| (*a, *b)).collect();
    Functor::from_names(source, target, &obj_pairs, &mor_pairs)
}
