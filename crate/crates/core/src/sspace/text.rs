//! Text interchange format for truncated bisimplicial sets.
//!
//! ```text
//! bisimplicial-set caps <N> <M>
//! elements <n> <m> <label> ...
//! hface <n> <m> <i> <index> ...    # d_i: W_{n,m} -> W_{n-1,m}
//! hdeg <n> <m> <j> <index> ...     # s_j: W_{n,m} -> W_{n+1,m}
//! vface <n> <m> <i> <index> ...    # d_i: W_{n,m} -> W_{n,m-1}
//! vdeg <n> <m> <j> <index> ...     # s_j: W_{n,m} -> W_{n,m+1}
//! end
//! ```
//!
//! Indices refer to positions in the `elements` line of the target
//! bidegree. Every table must be present exactly once.

use std::collections::HashMap;

use itertools::Itertools;

use super::TruncatedBisimplicialSet;
use crate::error::{Error, Result};
use crate::simpset::ExplicitSimplicialSet;
use crate::text::{expect_keyword, parse_usize, Lines};

pub fn write_bisimplicial_set(w: &TruncatedBisimplicialSet) -> String {
    let (n_cap, m_cap) = w.caps();
    let mut out = format!("bisimplicial-set caps {n_cap} {m_cap}\n");
    let table = |out: &mut String, kind: &str, n: usize, m: usize, i: usize, values: &[usize]| {
        out.push_str(&format!("{kind} {n} {m} {i}"));
        for v in values {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    };
    for n in 0..=n_cap {
        for m in 0..=m_cap {
            out.push_str(&format!("elements {n} {m}"));
            for l in &w.column(n).labels[m] {
                out.push(' ');
                out.push_str(l);
            }
            out.push('\n');
        }
    }
    for n in 0..=n_cap {
        for m in 0..=m_cap {
            for i in 0..=n {
                if n >= 1 {
                    table(&mut out, "hface", n, m, i, &w.row(m).faces[n][i]);
                }
                if n < n_cap {
                    table(&mut out, "hdeg", n, m, i, &w.row(m).degeneracies[n][i]);
                }
            }
            for i in 0..=m {
                if m >= 1 {
                    table(&mut out, "vface", n, m, i, &w.column(n).faces[m][i]);
                }
                if m < m_cap {
                    table(&mut out, "vdeg", n, m, i, &w.column(n).degeneracies[m][i]);
                }
            }
        }
    }
    out.push_str("end\n");
    out
}

pub fn parse_bisimplicial_set(input: &str) -> Result<TruncatedBisimplicialSet> {
    let mut lines = Lines::new(input);
    let (line, header) = lines.expect_tokens("`bisimplicial-set caps <N> <M>`")?;
    expect_keyword(line, &header, "bisimplicial-set")?;
    if header.len() != 4 || header[1] != "caps" {
        return Err(Error::parse(line, "expected `bisimplicial-set caps <N> <M>`"));
    }
    let (n_cap, m_cap) = (parse_usize(line, header[2])?, parse_usize(line, header[3])?);
    let mut labels: HashMap<(usize, usize), Vec<String>> = HashMap::new();
    let mut tables: HashMap<(&str, usize, usize, usize), (usize, Vec<usize>)> = HashMap::new();
    loop {
        let (line, tokens) = lines.expect_tokens("a table line or `end`")?;
        match tokens[0] {
            "end" if tokens.len() == 1 => break,
            "elements" if tokens.len() >= 3 => {
                let (n, m) = (parse_usize(line, tokens[1])?, parse_usize(line, tokens[2])?);
                if n > n_cap || m > m_cap {
                    return Err(Error::parse(line, format!("bidegree ({n},{m}) exceeds the caps")));
                }
                if labels.insert((n, m), tokens[3..].iter().map(|t| t.to_string()).collect()).is_some() {
                    return Err(Error::parse(line, format!("elements of ({n},{m}) listed twice")));
                }
            }
            kind @ ("hface" | "hdeg" | "vface" | "vdeg") if tokens.len() >= 4 => {
                let (n, m, i) = (parse_usize(line, tokens[1])?, parse_usize(line, tokens[2])?, parse_usize(line, tokens[3])?);
                let values = tokens[4..].iter().map(|t| parse_usize(line, t)).collect::<Result<Vec<_>>>()?;
                if tables.insert((kind, n, m, i), (line, values)).is_some() {
                    return Err(Error::parse(line, format!("table {kind} {n} {m} {i} given twice")));
                }
            }
            _ => return Err(Error::parse(line, format!("unexpected line `{}`", tokens.iter().join(" ")))),
        }
    }
    if let Some((line, tokens)) = lines.next_tokens() {
        return Err(Error::parse(line, format!("trailing input `{}`", tokens.join(" "))));
    }
    let end_line = lines.line();
    let size = |n: usize, m: usize| labels.get(&(n, m)).map(Vec::len);
    let mut fetch = |kind: &'static str, n: usize, m: usize, i: usize, target: (usize, usize)| -> Result<Vec<usize>> {
        let (line, values) =
            tables.remove(&(kind, n, m, i)).ok_or_else(|| Error::parse(end_line, format!("missing table {kind} {n} {m} {i}")))?;
        let (src, tgt) = (
            size(n, m).ok_or_else(|| Error::parse(end_line, format!("missing elements {n} {m}")))?,
            size(target.0, target.1).ok_or_else(|| Error::parse(end_line, format!("missing elements {} {}", target.0, target.1)))?,
        );
        if values.len() != src || values.iter().any(|&v| v >= tgt) {
            return Err(Error::parse(line, format!("table {kind} {n} {m} {i} does not fit its bidegrees")));
        }
        Ok(values)
    };
    let mut columns = Vec::new();
    for n in 0..=n_cap {
        let mut faces = vec![Vec::new()];
        for m in 1..=m_cap {
            faces.push((0..=m).map(|i| fetch("vface", n, m, i, (n, m - 1))).collect::<Result<Vec<_>>>()?);
        }
        let degeneracies =
            (0..m_cap).map(|m| (0..=m).map(|j| fetch("vdeg", n, m, j, (n, m + 1))).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        let col_labels = (0..=m_cap).map(|m| labels.get(&(n, m)).cloned().unwrap_or_default()).collect();
        columns.push(ExplicitSimplicialSet { dim_cap: m_cap, labels: col_labels, faces, degeneracies });
    }
    let mut rows = Vec::new();
    for m in 0..=m_cap {
        let mut faces = vec![Vec::new()];
        for n in 1..=n_cap {
            faces.push((0..=n).map(|i| fetch("hface", n, m, i, (n - 1, m))).collect::<Result<Vec<_>>>()?);
        }
        let degeneracies =
            (0..n_cap).map(|n| (0..=n).map(|j| fetch("hdeg", n, m, j, (n + 1, m))).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        let row_labels = (0..=n_cap).map(|n| labels.get(&(n, m)).cloned().unwrap_or_default()).collect();
        rows.push(ExplicitSimplicialSet { dim_cap: n_cap, labels: row_labels, faces, degeneracies });
    }
    if let Some(((kind, n, m, i), (line, _))) = tables.into_iter().min_by_key(|(_, (line, _))| *line) {
        return Err(Error::parse(line, format!("table {kind} {n} {m} {i} is out of range")));
    }
    TruncatedBisimplicialSet::new(columns, rows)
}
