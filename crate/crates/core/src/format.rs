//! Text formats: matrix blocks, word files, and DOT export.
//!
//! A word file is either `n` lines of `n` digits from {0,1,2} (spaces
//! optional) or a single line `word: <letters>` for a fully defined word.
//! Blank lines and `#` comments are ignored.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::word::{Relation, RelationalWord, WordError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] WordError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Parse a word file's contents.
pub fn parse_word(text: &str) -> Result<RelationalWord, FormatError> {
    let mut rows: Vec<Vec<u8>> = Vec::new();
    let mut letters: Option<String> = None;
    for (no, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let marker = matches!(line, "ε" | "eps");
        if let Some(rest) = line.strip_prefix("word:").or(marker.then_some("")) {
            if letters.is_some() || !rows.is_empty() {
                return Err(FormatError::Syntax {
                    line: no + 1,
                    msg: "a word file holds one word".into(),
                });
            }
            letters = Some(rest.trim().to_string());
            continue;
        }
        if letters.is_some() {
            return Err(FormatError::Syntax {
                line: no + 1,
                msg: "matrix rows after a `word:` line".into(),
            });
        }
        rows.push(parse_row(line, no + 1)?);
    }
    match letters {
        Some(l) => Ok(parse_letters(&l)),
        None => Ok(RelationalWord::from_matrix(&rows)?),
    }
}

fn parse_letters(s: &str) -> RelationalWord {
    match s {
        "" | "ε" | "eps" => RelationalWord::empty(),
        _ => RelationalWord::from_string(s),
    }
}

fn parse_row(line: &str, no: usize) -> Result<Vec<u8>, FormatError> {
    line.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c.to_digit(10) {
            Some(d) if d <= 9 => Ok(d as u8),
            _ => Err(FormatError::Syntax {
                line: no,
                msg: format!("unexpected character {c:?} in matrix row"),
            }),
        })
        .collect()
}

/// Parse a word literal: `@path` reads a word file, `word:abc` or bare
/// letters give a fully defined word, `eps` or `ε` the empty word.
/// Relative paths resolve against `base`.
pub fn parse_word_literal(lit: &str, base: Option<&Path>) -> Result<RelationalWord, FormatError> {
    if let Some(path) = lit.strip_prefix('@') {
        let full = match base {
            Some(b) => b.join(path),
            None => Path::new(path).to_path_buf(),
        };
        return read_word_file(&full);
    }
    let letters = lit.strip_prefix("word:").unwrap_or(lit).trim();
    Ok(parse_letters(letters))
}

pub fn read_word_file(path: &Path) -> Result<RelationalWord, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_word(&text)
}

/// Matrix block: one line per row, digits separated by single spaces.
/// The empty word renders as `ε`.
pub fn render_matrix(w: &RelationalWord) -> String {
    if w.is_empty() {
        return "ε\n".to_string();
    }
    let mut out = String::new();
    for row in w.to_matrix() {
        let line: Vec<String> = row.iter().map(|d| d.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Matrix block with separators around a window of `len` positions starting
/// at 1-based `start`, as in hand-drawn derivation tables.
pub fn render_matrix_window(w: &RelationalWord, start: usize, len: usize) -> String {
    if w.is_empty() || len == 0 || start == 0 || start > w.len() {
        return render_matrix(w);
    }
    let lo = start - 1;
    let hi = (lo + len).min(w.len());
    let mut out = String::new();
    let rows = w.to_matrix();
    let rule = |out: &mut String| {
        let width = 2 * w.len() - 1 + 2 * usize::from(lo > 0) + 2 * usize::from(hi < w.len());
        out.push_str(&"-".repeat(width));
        out.push('\n');
    };
    for (i, row) in rows.iter().enumerate() {
        if i == lo && lo > 0 {
            rule(&mut out);
        }
        if i == hi && hi > 0 {
            rule(&mut out);
        }
        let mut line = String::new();
        for (j, d) in row.iter().enumerate() {
            if j > 0 {
                line.push(' ');
            }
            if (j == lo && lo > 0) || (j == hi && hi < w.len()) {
                line.push_str("| ");
            }
            let _ = write!(line, "{d}");
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Graphviz rendering. Nodes sit left to right in position order; unequal
/// pairs are drawn above the axis (label 0), equal pairs below (label 1).
/// Self-loops and undefined pairs are not drawn.
pub fn render_dot(w: &RelationalWord) -> String {
    let mut out = String::from("graph relword {\n  rankdir=LR;\n  node [shape=circle];\n");
    if w.len() > 0 {
        out.push_str("  { rank=same;");
        for i in 1..=w.len() {
            let _ = write!(out, " q{i};");
        }
        out.push_str(" }\n");
        for i in 1..w.len() {
            let _ = writeln!(out, "  q{} -- q{} [style=invis, weight=100];", i, i + 1);
        }
    }
    for i in 1..=w.len() {
        for j in i + 1..=w.len() {
            match w.relation(i, j) {
                Relation::Eq => {
                    let _ = writeln!(out, "  q{i} -- q{j} [label=\"1\", tailport=s, headport=s];");
                }
                Relation::Neq => {
                    let _ = writeln!(out, "  q{i} -- q{j} [label=\"0\", tailport=n, headport=n];");
                }
                Relation::Undef => {}
            }
        }
    }
    out.push_str("}\n");
    out
}
