//! Text formats for quivers and representations.
//!
//! ```text
//! quiver
//! vertex <name>
//! arrow <name> <source> <target>
//! end
//!
//! rep q <q>
//! dim <vertex> <d>
//! matrix <arrow> <entries, row-major>
//! end
//! ```
//!
//! Unlisted dimensions are 0 and unlisted matrices are zero.

use itertools::Itertools;

use super::{GradedVect, Matrix, Quiver, Rep};
use crate::error::{Error, Result};
use crate::text::{check_name, expect_keyword, parse_i64, parse_usize, Lines};

pub fn write_quiver(quiver: &Quiver) -> Result<String> {
    let mut out = String::from("quiver\n");
    for v in quiver.vertices() {
        check_name(v)?;
        out.push_str(&format!("vertex {v}\n"));
    }
    for a in quiver.arrows() {
        check_name(&a.name)?;
        out.push_str(&format!("arrow {} {} {}\n", a.name, quiver.vertices()[a.source], quiver.vertices()[a.target]));
    }
    out.push_str("end\n");
    Ok(out)
}

pub fn parse_quiver(input: &str) -> Result<Quiver> {
    let mut lines = Lines::new(input);
    let (line, header) = lines.expect_tokens("`quiver`")?;
    expect_keyword(line, &header, "quiver")?;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, usize, usize)> = Vec::new();
    loop {
        let (line, tokens) = lines.expect_tokens("`vertex`, `arrow` or `end`")?;
        let vertex = |name: &str| {
            vertices.iter().position(|v| v == name).ok_or_else(|| Error::parse(line, format!("unknown vertex `{name}`")))
        };
        match (tokens[0], tokens.len()) {
            ("end", 1) => break,
            ("vertex", 2) => {
                if vertices.iter().any(|v| v == tokens[1]) {
                    return Err(Error::parse(line, format!("duplicate vertex `{}`", tokens[1])));
                }
                vertices.push(tokens[1].to_string());
            }
            ("arrow", 4) => {
                let (s, t) = (vertex(tokens[2])?, vertex(tokens[3])?);
                arrows.push((tokens[1].to_string(), s, t));
            }
            _ => return Err(Error::parse(line, format!("unexpected line `{}`", tokens.iter().join(" ")))),
        }
    }
    Quiver::new(vertices, arrows).map_err(|e| Error::parse(lines.line(), e.to_string()))
}

pub fn write_rep(quiver: &Quiver, rep: &Rep) -> String {
    let mut out = format!("rep q {}\n", rep.q);
    for (v, d) in quiver.vertices().iter().zip(&rep.dims) {
        out.push_str(&format!("dim {v} {d}\n"));
    }
    for (a, m) in quiver.arrows().iter().zip(&rep.matrices) {
        if !m.data.is_empty() {
            out.push_str(&format!("matrix {} {}\n", a.name, m.data.iter().join(" ")));
        }
    }
    out.push_str("end\n");
    out
}

pub fn parse_rep(quiver: &Quiver, input: &str) -> Result<Rep> {
    let mut lines = Lines::new(input);
    let (line, header) = lines.expect_tokens("`rep q <q>`")?;
    expect_keyword(line, &header, "rep")?;
    if header.len() != 3 || header[1] != "q" {
        return Err(Error::parse(line, "expected `rep q <q>`"));
    }
    let q = parse_usize(line, header[2])?;
    let mut dims = vec![0; quiver.num_vertices()];
    let mut entries: Vec<Option<(usize, Vec<u8>)>> = vec![None; quiver.arrows().len()];
    loop {
        let (line, tokens) = lines.expect_tokens("`dim`, `matrix` or `end`")?;
        match tokens[0] {
            "end" if tokens.len() == 1 => break,
            "dim" if tokens.len() == 3 => {
                let v = quiver
                    .vertices()
                    .iter()
                    .position(|v| v == tokens[1])
                    .ok_or_else(|| Error::parse(line, format!("unknown vertex `{}`", tokens[1])))?;
                dims[v] = parse_usize(line, tokens[2])?;
            }
            "matrix" if tokens.len() >= 2 => {
                let a = quiver
                    .arrows()
                    .iter()
                    .position(|a| a.name == tokens[1])
                    .ok_or_else(|| Error::parse(line, format!("unknown arrow `{}`", tokens[1])))?;
                let values = tokens[2..]
                    .iter()
                    .map(|t| {
                        let v = parse_usize(line, t)?;
                        u8::try_from(v).ok().filter(|&v| (v as usize) < q).ok_or_else(|| Error::parse(line, format!("entry {v} is not in F_{q}")))
                    })
                    .collect::<Result<Vec<u8>>>()?;
                entries[a] = Some((line, values));
            }
            _ => return Err(Error::parse(line, format!("unexpected line `{}`", tokens.iter().join(" ")))),
        }
    }
    let matrices = quiver
        .arrows()
        .iter()
        .zip(entries)
        .map(|(a, e)| {
            let (rows, cols) = (dims[a.target], dims[a.source]);
            match e {
                None => Ok(Matrix::zero(rows, cols)),
                Some((line, data)) => Matrix::from_rows(rows, cols, data).map_err(|err| Error::parse(line, err.to_string())),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Rep::new(quiver, q, dims, matrices).map_err(|e| Error::parse(lines.line(), e.to_string()))
}

/// Reads `d@k+d@k...` (or `0`), e.g. `1@0+2@1`.
pub fn parse_graded(q: usize, window: (i64, i64), input: &str) -> Result<GradedVect> {
    if input.trim() == "0" {
        return Ok(GradedVect::zero(q, window));
    }
    let pairs = input
        .split('+')
        .map(|part| {
            let (d, k) = part.trim().split_once('@').ok_or_else(|| Error::parse(1, format!("expected `dim@degree`, found `{part}`")))?;
            Ok((parse_i64(1, k)?, parse_usize(1, d)?))
        })
        .collect::<Result<Vec<_>>>()?;
    GradedVect::new(q, window, &pairs)
}
