//! Report assembly for both output formats.
//!
//! Machine format, one record per line:
//!
//! ```text
//! record := kind (' ' key '=' value)*
//! value  := bare | '"' (char | '\"' | '\\')* '"'
//! ```
//!
//! A value is written bare unless it is empty or contains whitespace, `"`,
//! `=` or `\`. Every report ends with a `status code=<exit code>` record.

use std::fmt::{self, Display};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    kind: String,
    fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: &str) -> Self {
        Record { kind: kind.to_string(), fields: Vec::new() }
    }

    pub fn field(mut self, key: &str, value: impl Display) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }
}

fn needs_quotes(value: &str) -> bool {
    value.is_empty() || value.chars().any(|c| c.is_whitespace() || matches!(c, '"' | '=' | '\\'))
}

impl Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.kind)?;
        for (k, v) in &self.fields {
            if needs_quotes(v) {
                let escaped = v.replace('\\', "\\\\").replace('"', "\\\"");
                write!(f, " {k}=\"{escaped}\"")?;
            } else {
                write!(f, " {k}={v}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

/// Human lines and machine records, collected side by side.
#[derive(Clone, Debug, Default)]
pub struct Report {
    lines: Vec<String>,
    records: Vec<Record>,
    /// Some verdict is Unknown; the exit code becomes 2.
    pub undecided: bool,
}

impl Report {
    pub fn line(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    /// Appends preformatted text, e.g. an interchange-format block.
    pub fn block(&mut self, text: &str) {
        self.lines.extend(text.lines().map(str::to_string));
    }

    pub fn record(&mut self, record: Record) {
        self.records.push(record);
    }

    pub fn exit_code(&self) -> i32 {
        if self.undecided {
            2
        } else {
            0
        }
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                for l in &self.lines {
                    out.push_str(l);
                    out.push('\n');
                }
            }
            Format::Machine => {
                for r in &self.records {
                    out.push_str(&r.to_string());
                    out.push('\n');
                }
                out.push_str(&format!("{}\n", Record::new("status").field("code", self.exit_code())));
            }
        }
        out
    }
}
