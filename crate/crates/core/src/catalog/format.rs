//! Line-oriented text formats.
//!
//! Permutation files start with `degree d` and list one generator per line
//! in 1-based cycle notation, e.g. `(1 2 3)(4 5)`; `()` is the identity.
//! Blank lines and lines starting with `#` are ignored.
//!
//! Cayley-table files hold the order `n` on the first line followed by `n`
//! rows of `n` whitespace-separated 0-based indices.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermFile {
    pub degree: usize,
    pub perms: Vec<Permutation>,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses cycle notation on one line. Points are 1-based; with `degree`
/// given, points above it are rejected. Without it the degree is the largest point.
pub fn parse_cycles(text: &str, line: usize, degree: Option<usize>) -> Result<Permutation> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut current: Option<(Vec<usize>, usize)> = None;
    let mut seen = std::collections::HashSet::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '(' => {
                if current.is_some() {
                    return Err(parse_err(line, col, "nested '('"));
                }
                current = Some((Vec::new(), col));
                i += 1;
            }
            ')' => {
                let Some((cycle, _)) = current.take() else {
                    return Err(parse_err(line, col, "unbalanced ')'"));
                };
                if !cycle.is_empty() {
                    cycles.push(cycle);
                }
                i += 1;
            }
            c if c.is_whitespace() || c == ',' => i += 1,
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let Some((cycle, _)) = current.as_mut() else {
                    return Err(parse_err(line, col, "point outside of a cycle"));
                };
                let digits: String = chars[start..i].iter().collect();
                let point: usize = digits
                    .parse()
                    .map_err(|_| parse_err(line, col, "point too large"))?;
                if point == 0 {
                    return Err(parse_err(line, col, "points are numbered from 1"));
                }
                if let Some(d) = degree {
                    if point > d {
                        return Err(parse_err(
                            line,
                            col,
                            format!("point {point} exceeds degree {d}"),
                        ));
                    }
                }
                if !seen.insert(point) {
                    return Err(parse_err(line, col, format!("point {point} repeated")));
                }
                cycle.push(point - 1);
            }
            other => {
                return Err(parse_err(
                    line,
                    col,
                    format!("unexpected character {other:?}"),
                ))
            }
        }
    }
    if let Some((_, col)) = current {
        return Err(parse_err(line, col, "unbalanced '(': cycle not closed"));
    }
    let max_point = cycles.iter().flatten().map(|p| p + 1).max().unwrap_or(0);
    let degree = degree.unwrap_or(max_point);
    Ok(Permutation::from_cycles(degree, &cycles).expect("points validated"))
}

pub fn parse_permutations(text: &str) -> Result<PermFile> {
    let mut degree = None;
    let mut perms = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match degree {
            None => {
                let mut words = line.split_whitespace();
                let (Some("degree"), Some(d), None) = (words.next(), words.next(), words.next())
                else {
                    return Err(parse_err(line_no, 1, "expected header `degree d`"));
                };
                let d = d
                    .parse()
                    .map_err(|_| parse_err(line_no, 8, format!("bad degree {d:?}")))?;
                degree = Some(d);
            }
            Some(d) => {
                let offset = raw.len() - raw.trim_start().len();
                let p = parse_cycles(line, line_no, Some(d)).map_err(|e| match e {
                    Error::Parse {
                        line,
                        column,
                        message,
                    } => Error::Parse {
                        line,
                        column: column + offset,
                        message,
                    },
                    other => other,
                })?;
                perms.push(p);
            }
        }
    }
    let degree = degree.ok_or_else(|| parse_err(1, 1, "missing `degree d` header"))?;
    Ok(PermFile { degree, perms })
}

pub fn emit_permutations(file: &PermFile) -> String {
    let mut out = format!("degree {}\n", file.degree);
    for p in &file.perms {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

pub fn write_cayley(g: &FiniteGroup) -> String {
    let mut out = format!("{}\n", g.order());
    for a in 0..g.order() {
        let row: Vec<String> = g.table_row(a).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a table file and checks the group axioms.
pub fn read_cayley(text: &str) -> Result<FiniteGroup> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "empty table file"))?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| parse_err(1, 1, format!("bad order {:?}", first.trim())))?;
    let mut table = Vec::with_capacity(n);
    for (idx, line) in lines {
        let line_no = idx + 1;
        if table.len() == n {
            return Err(parse_err(line_no, 1, format!("more than {n} rows")));
        }
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| parse_err(line_no, 1, format!("bad index {t:?}")))
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(parse_err(
                line_no,
                1,
                format!("row has {} entries, expected {n}", row.len()),
            ));
        }
        if let Some((j, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(parse_err(
                line_no,
                j + 1,
                format!("index {v} out of range for order {n}"),
            ));
        }
        table.push(row);
    }
    if table.len() != n {
        return Err(parse_err(
            text.lines().count(),
            1,
            format!("expected {n} rows, found {}", table.len()),
        ));
    }
    FiniteGroup::validate_table(&table)
}
