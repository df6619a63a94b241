//! Text formats for channels and cubic graphs.
//!
//! ```text
//! # comment
//! channel 3 3
//! inputs a b c        # optional display labels
//! outputs u v w       # optional display labels
//! 1 0 0
//! 1/100 99/100 0
//! 0.02 0 0.98
//! ```
//!
//! ```text
//! graph 4 6
//! 0 1
//! 0 2
//! ...
//! ```

use std::fmt::Write as _;

use super::{Channel, CubicGraph};
use crate::error::ChannelError;
use crate::prob::{parse_rational, Prob};

/// Non-blank lines with comments removed, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Reads a channel file. Decimals are converted exactly.
pub fn parse_channel(text: &str) -> Result<Channel, ChannelError> {
    let mut it = content_lines(text);
    let (nx, ny) = parse_header(&mut it, "channel")?;
    if nx == 0 || ny == 0 {
        return Err(ChannelError::EmptyAlphabet);
    }
    let mut rest: Vec<(usize, &str)> = it.collect();
    let mut input_labels = None;
    let mut output_labels = None;
    while let Some(&(line, text)) = rest.first() {
        let mut toks = text.split_whitespace();
        let head = toks.next().unwrap_or("");
        let slot = match head {
            "inputs" => &mut input_labels,
            "outputs" => &mut output_labels,
            _ => break,
        };
        let labels: Vec<String> = toks.map(str::to_string).collect();
        let expected = if head == "inputs" { nx } else { ny };
        if labels.len() != expected {
            return Err(ChannelError::Syntax {
                line,
                message: format!("expected {expected} {head} labels, found {}", labels.len()),
            });
        }
        *slot = Some(labels);
        rest.remove(0);
    }
    if rest.len() != nx {
        return Err(ChannelError::RowCount {
            expected: nx,
            found: rest.len(),
        });
    }
    let mut rows = Vec::with_capacity(nx);
    for (row, &(line, text)) in rest.iter().enumerate() {
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != ny {
            return Err(ChannelError::RowLength {
                row,
                expected: ny,
                found: toks.len(),
            });
        }
        let mut entries = Vec::with_capacity(ny);
        for (column, tok) in toks.iter().enumerate() {
            let value = parse_rational(tok).map_err(|source| ChannelError::Entry {
                line,
                column: column + 1,
                source,
            })?;
            let p = Prob::try_from_ratio(value).map_err(|_| ChannelError::EntryOutOfRange {
                row,
                column,
                value: tok.to_string(),
            })?;
            entries.push(p);
        }
        rows.push(entries);
    }
    Channel::new(rows)?.with_labels(input_labels, output_labels)
}

fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &str,
) -> Result<(usize, usize), ChannelError> {
    let (line, text) = lines.next().ok_or(ChannelError::Syntax {
        line: 1,
        message: format!("missing `{keyword} <a> <b>` header"),
    })?;
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != keyword {
        return Err(ChannelError::Syntax {
            line,
            message: format!("expected `{keyword} <a> <b>`, found `{text}`"),
        });
    }
    let num = |t: &str| {
        t.parse::<usize>().map_err(|_| ChannelError::Syntax {
            line,
            message: format!("`{t}` is not a nonnegative integer"),
        })
    };
    Ok((num(toks[1])?, num(toks[2])?))
}

/// Serializes a channel; entries are written as reduced fractions.
pub fn write_channel(c: &Channel) -> String {
    let mut out = String::new();
    writeln!(out, "channel {} {}", c.num_inputs(), c.num_outputs()).unwrap();
    if let Some(l) = c.input_labels() {
        writeln!(out, "inputs {}", l.join(" ")).unwrap();
    }
    if let Some(l) = c.output_labels() {
        writeln!(out, "outputs {}", l.join(" ")).unwrap();
    }
    for row in c.rows() {
        let cells: Vec<String> = row.iter().map(Prob::to_string).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

pub fn parse_cubic_graph(text: &str) -> Result<CubicGraph, ChannelError> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let mut it = lines.iter().copied();
    let (nv, ne) = parse_header(&mut it, "graph")?;
    let mut edges = Vec::with_capacity(ne);
    for (line, text) in it {
        let toks: Vec<&str> = text.split_whitespace().collect();
        let parsed: Option<Vec<usize>> = toks.iter().map(|t| t.parse().ok()).collect();
        match parsed.as_deref() {
            Some(&[u, v]) => edges.push((u, v)),
            _ => {
                return Err(ChannelError::Syntax {
                    line,
                    message: format!("expected `u v`, found `{text}`"),
                })
            }
        }
    }
    if edges.len() != ne {
        return Err(ChannelError::Syntax {
            line: lines.last().map_or(1, |l| l.0),
            message: format!("header declares {ne} edges, found {}", edges.len()),
        });
    }
    CubicGraph::new(nv, edges)
}

pub fn write_cubic_graph(g: &CubicGraph) -> String {
    let mut out = format!("graph {} {}\n", g.num_vertices(), g.edges().len());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
