//! Text interchange format for truncated simplicial sets.
//!
//! ```text
//! simplicial-set dim_cap <cap>
//! cell <dim> <name> [<face_0> ... <face_dim>]
//! ...
//! end
//! ```
//!
//! Vertices list no faces; a cell of dimension `n >= 1` lists exactly
//! `n + 1` faces. A face is written `name` when nondegenerate and
//! `name@j1.j2...` for the degenerate simplex `s_{j1} s_{j2} ... name`
//! (strictly decreasing indices). Faces must refer to cells declared on
//! earlier lines. `#` starts a comment.

use itertools::Itertools;

use super::{SimplexRef, SimplicialSetBuilder, TruncatedSimplicialSet};
use crate::error::{Error, Result};
use crate::text::{expect_keyword, parse_usize, Lines};

pub fn write_simplicial_set(set: &TruncatedSimplicialSet) -> String {
    let mut out = format!("simplicial-set dim_cap {}\n", set.dim_cap());
    for n in 0..=set.dim_cap() {
        for cell in set.cells(n) {
            out.push_str(&format!("cell {n} {}", cell.name));
            for f in &cell.faces {
                out.push(' ');
                out.push_str(&set.simplex_label(f));
            }
            out.push('\n');
        }
    }
    out.push_str("end\n");
    out
}

pub fn parse_simplicial_set(input: &str) -> Result<TruncatedSimplicialSet> {
    let mut lines = Lines::new(input);
    let set = read_simplicial_set_block(&mut lines)?;
    if let Some((line, tokens)) = lines.next_tokens() {
        return Err(Error::parse(line, format!("trailing input `{}`", tokens.join(" "))));
    }
    Ok(set)
}

/// Parses `name` or `name@j1.j2` against cells registered in `lookup`.
pub(crate) fn parse_simplex_token(
    line: usize,
    token: &str,
    lookup: impl Fn(&str) -> Option<super::CellId>,
) -> Result<SimplexRef> {
    let (name, word) = match token.split_once('@') {
        Some((name, word)) => {
            let word = word.split('.').map(|w| parse_usize(line, w)).collect::<Result<Vec<_>>>()?;
            (name, word)
        }
        None => (token, Vec::new()),
    };
    let base = lookup(name).ok_or_else(|| Error::parse(line, format!("unknown cell `{name}`")))?;
    SimplexRef::new(base, word).map_err(|e| Error::parse(line, e.to_string()))
}

pub(crate) fn read_simplicial_set_block(lines: &mut Lines<'_>) -> Result<TruncatedSimplicialSet> {
    let (line, header) = lines.expect_tokens("`simplicial-set dim_cap <n>`")?;
    expect_keyword(line, &header, "simplicial-set")?;
    if header.len() != 3 || header[1] != "dim_cap" {
        return Err(Error::parse(line, "expected `simplicial-set dim_cap <n>`"));
    }
    let cap = parse_usize(line, header[2])?;
    let mut b = SimplicialSetBuilder::new(cap);
    loop {
        let (line, tokens) = lines.expect_tokens("`cell` or `end`")?;
        match tokens[0] {
            "end" if tokens.len() == 1 => break,
            "cell" if tokens.len() >= 3 => {
                let dim = parse_usize(line, tokens[1])?;
                let faces = tokens[3..]
                    .iter()
                    .map(|t| parse_simplex_token(line, t, |n| b.lookup(n)))
                    .collect::<Result<Vec<_>>>()?;
                b.add_cell(dim, tokens[2], faces).map_err(|e| Error::parse(line, e.to_string()))?;
            }
            _ => return Err(Error::parse(line, format!("unexpected line `{}`", tokens.iter().join(" ")))),
        }
    }
    Ok(b.build())
}
