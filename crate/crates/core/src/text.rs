//! Shared line reader for the interchange formats.
//!
//! All formats are line oriented: `#` starts a comment, blank lines are
//! skipped, tokens are separated by whitespace.

use crate::error::{Error, Result};

pub(crate) struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    last_line: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(input: &'a str) -> Self {
        Lines { inner: input.lines().enumerate().peekable(), last_line: 0 }
    }

    /// Next non-empty line as (1-based line number, tokens).
    pub(crate) fn next_tokens(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (idx, raw) in self.inner.by_ref() {
            let content = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            let tokens: Vec<&str> = content.split_whitespace().collect();
            self.last_line = idx + 1;
            if !tokens.is_empty() {
                return Some((idx + 1, tokens));
            }
        }
        None
    }

    pub(crate) fn expect_tokens(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        self.next_tokens()
            .ok_or_else(|| Error::parse(self.last_line + 1, format!("unexpected end of input, expected {what}")))
    }

    pub(crate) fn line(&self) -> usize {
        self.last_line
    }
}

pub(crate) fn parse_usize(line: usize, token: &str) -> Result<usize> {
    token.parse().map_err(|_| Error::parse(line, format!("expected a nonnegative integer, found `{token}`")))
}

pub(crate) fn parse_i64(line: usize, token: &str) -> Result<i64> {
    token.parse().map_err(|_| Error::parse(line, format!("expected an integer, found `{token}`")))
}

pub(crate) fn expect_keyword(line: usize, tokens: &[&str], keyword: &str) -> Result<()> {
    if tokens.first() == Some(&keyword) {
        Ok(())
    } else {
        Err(Error::parse(line, format!("expected `{keyword}`, found `{}`", tokens.join(" "))))
    }
}

/// Names used in the formats must be single tokens without the reserved
/// characters.
pub(crate) fn check_name(name: &str) -> Result<()> {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '#' || c == '@') {
        return Err(Error::invalid(format!("`{name}` is not a valid name token")));
    }
    Ok(())
}
