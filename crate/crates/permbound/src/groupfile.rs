//! Plain-text group files.
//!
//! ```text
//! # Sym(4)
//! degree 4
//! (1 2 3 4)
//! (1 2)
//! ```
//!
//! The first meaningful line is `degree n`; every later line is one generator
//! in cycle notation. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use permbound_core::{Group, Permutation};

#[derive(Debug, thiserror::Error)]
pub enum GroupFileError {
    #[error("line {line}: expected `degree n`, found {found:?}")]
    MissingDegree { line: usize, found: String },
    #[error("no `degree n` line")]
    Empty,
    #[error("line {line}: {source}")]
    Generator {
        line: usize,
        source: permbound_core::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

pub fn parse(text: &str) -> Result<Group, GroupFileError> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let Some(n) = degree else {
            let n = line
                .strip_prefix("degree")
                .and_then(|rest| rest.trim().parse::<usize>().ok())
                .ok_or_else(|| GroupFileError::MissingDegree {
                    line: i + 1,
                    found: line.to_string(),
                })?;
            degree = Some(n);
            continue;
        };
        let g = Permutation::parse(line, n).map_err(|source| GroupFileError::Generator {
            line: i + 1,
            source,
        })?;
        if !g.is_identity() {
            gens.push(g);
        }
    }
    let n = degree.ok_or(GroupFileError::Empty)?;
    Ok(Group::new(n, gens).expect("generators parsed at the file degree"))
}

/// Renders `group` with optional leading comment lines.
pub fn render(group: &Group, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "degree {}", group.degree());
    for g in group.generators() {
        let _ = writeln!(out, "{g}");
    }
    out
}

pub fn read(path: &Path) -> Result<Group, GroupFileError> {
    let text = fs::read_to_string(path).map_err(|source| GroupFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text)
}

pub fn write(path: &Path, group: &Group, comment: Option<&str>) -> Result<(), GroupFileError> {
    fs::write(path, render(group, comment)).map_err(|source| GroupFileError::Io {
        path: path.display().to_string(),
        source,
    })
}
