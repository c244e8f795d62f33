//! Plain-text fixture formats.
//!
//! Matrix: `n` lines of `n` characters from `{0, 1}`; character `j` of line
//! `i` is entry `(i, j)`.
//!
//! Graph: a line holding `n`, then one `u v` line per edge with 0-based
//! vertices. Output lists edges in lexicographic order.
//!
//! Both parsers skip blank lines and lines starting with `#`, so fixtures can
//! carry notes such as a relabeling from 1-based figure labels.

use std::fmt::Write as _;

use smallcover::{BitMatrix, Digraph};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing vertex count line")]
    MissingHeader,
    #[error(transparent)]
    Invalid(#[from] smallcover::Error),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_matrix(text: &str) -> Result<BitMatrix, FormatError> {
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for (line, content) in content_lines(text) {
        let row = content
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(FormatError::Syntax {
                    line,
                    message: format!("unexpected character {other:?}"),
                }),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        rows.push(row);
    }
    Ok(BitMatrix::from_rows(&rows)?)
}

pub fn format_matrix(m: &BitMatrix) -> String {
    m.to_string()
}

/// Rows of a matrix as `0`/`1` strings, for JSON output.
pub fn matrix_rows(m: &BitMatrix) -> Vec<String> {
    (0..m.dim())
        .map(|i| {
            (0..m.dim())
                .map(|j| if m.get(i, j) { '1' } else { '0' })
                .collect()
        })
        .collect()
}

pub fn parse_graph(text: &str) -> Result<Digraph, FormatError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let n: usize = header.parse().map_err(|_| FormatError::Syntax {
        line,
        message: format!("expected a vertex count, found {header:?}"),
    })?;
    let mut g = Digraph::empty(n)?;
    for (line, content) in lines {
        let fields: Vec<&str> = content.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| FormatError::Syntax {
                line,
                message: format!("expected a vertex, found {s:?}"),
            })
        };
        match fields.as_slice() {
            [u, v] => g.add_edge(parse(u)?, parse(v)?)?,
            _ => {
                return Err(FormatError::Syntax {
                    line,
                    message: "expected \"u v\"".into(),
                })
            }
        }
    }
    Ok(g)
}

pub fn format_graph(g: &Digraph) -> String {
    let mut out = format!("{}\n", g.vertex_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}
