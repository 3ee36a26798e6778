//! Plain-text group formats.
//!
//! Cayley table: the order `n` on the first line, then `n` rows of `n`
//! space-separated 0-based indices (row `g` lists `g·x`). Permutation
//! generators: the degree on the first line, then one generator per line as
//! its space-separated image list. Writers emit exactly this layout with a
//! trailing newline, so read-then-write is the identity on canonical files.

use std::fmt::Write as _;

use super::perm::from_permutation_generators;
use super::{GroupTable, Provenance};
use crate::error::{Error, Result};

fn parse_line(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("expected a non-negative integer, found `{t}`"),
            })
        })
        .collect()
}

fn header(lines: &mut std::iter::Enumerate<std::str::Lines<'_>>) -> Result<usize> {
    let (i, line) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let v = parse_line(line, i + 1)?;
    match v.as_slice() {
        [n] => Ok(*n),
        _ => Err(Error::Parse {
            line: i + 1,
            msg: "expected a single integer".into(),
        }),
    }
}

pub fn read_cayley_table(text: &str, source: &str) -> Result<GroupTable> {
    let mut lines = text.lines().enumerate();
    let n = header(&mut lines)?;
    let mut rows = Vec::with_capacity(n);
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let row = parse_line(line, i + 1)?;
        if row.len() != n {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("expected {n} entries, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Parse {
            line: n + 1,
            msg: format!("expected {n} rows, found {}", rows.len()),
        });
    }
    GroupTable::from_rows(&rows, Provenance::File(source.to_string()))
}

pub fn write_cayley_table(g: &GroupTable) -> String {
    let n = g.order();
    let mut out = String::with_capacity(n * n * 4);
    writeln!(out, "{n}").unwrap();
    for a in 0..n {
        let row: Vec<String> = g.row(a).map(|x| x.to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

/// Returns the degree and the generator image lists.
pub fn read_permutation_generators(text: &str) -> Result<(usize, Vec<Vec<usize>>)> {
    let mut lines = text.lines().enumerate();
    let degree = header(&mut lines)?;
    let mut gens = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let g = parse_line(line, i + 1)?;
        if g.len() != degree {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("expected {degree} images, found {}", g.len()),
            });
        }
        gens.push(g);
    }
    Ok((degree, gens))
}

pub fn write_permutation_generators(degree: usize, gens: &[Vec<usize>]) -> String {
    let mut out = format!("{degree}\n");
    for g in gens {
        let imgs: Vec<String> = g.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", imgs.join(" ")).unwrap();
    }
    out
}

pub(crate) fn group_from_permutation_text(text: &str) -> Result<GroupTable> {
    let (degree, gens) = read_permutation_generators(text)?;
    from_permutation_generators(degree, &gens)
}
