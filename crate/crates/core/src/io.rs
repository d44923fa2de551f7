//! Dataset and factor file formats.
//!
//! * dense text: one object per line, whitespace-separated `0`/`1` cells;
//!   blank lines and lines starting with `#` are ignored.
//! * FIMI: one object per line, space-separated 1-based attribute indices;
//!   an empty line is an object without attributes.
//! * labeled CSV: a header row of attribute names, then rows of `0`/`1`.
//! * factor file: one factor per line,
//!   `extent: 1 2 | intent: a b c`, with 1-based object indices and
//!   attribute labels, both in increasing index order.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fca::{AttributeSet, FactorSet, FormalConcept, ObjectSet};
use crate::matrix::{BooleanMatrix, MatrixBuilder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Dense,
    Fimi,
    Csv,
}

impl Format {
    /// Guesses the format from a file extension: `.csv` is labeled CSV,
    /// `.dat` and `.fimi` are FIMI, anything else is dense text.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => Format::Csv,
            Some("dat") | Some("fimi") => Format::Fimi,
            _ => Format::Dense,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Format::Dense => "dense",
            Format::Fimi => "fimi",
            Format::Csv => "csv",
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "dense" | "dense-text" => Ok(Format::Dense),
            "fimi" | "fimi-sparse" => Ok(Format::Fimi),
            "csv" | "labeled-csv" => Ok(Format::Csv),
            other => Err(Error::Domain(format!("unknown format {other:?}"))),
        }
    }
}

/// A matrix together with its attribute labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dataset {
    pub matrix: BooleanMatrix,
    pub labels: Vec<String>,
}

/// Labels `a`..`j` for the first ten attributes, then `x10`, `x11`, ...
pub fn default_labels(cols: usize) -> Vec<String> {
    (0..cols)
        .map(|j| {
            if j < 10 {
                char::from(b'a' + j as u8).to_string()
            } else {
                format!("x{j}")
            }
        })
        .collect()
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into `(1-based column, token)` pairs.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.char_indices()
        .filter(move |&(i, c)| {
            !c.is_whitespace()
                && line[..i]
                    .chars()
                    .next_back()
                    .is_none_or(char::is_whitespace)
        })
        .map(move |(i, _)| {
            let rest = &line[i..];
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            (line[..i].chars().count() + 1, &rest[..end])
        })
}

fn check_nonempty(rows: usize, cols: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::Domain(format!("empty {rows}x{cols} matrix")));
    }
    Ok(())
}

pub fn parse_dense(text: &str) -> Result<Dataset> {
    let mut rows: Vec<Vec<bool>> = Vec::new();
    let mut cols = None;
    for (ln, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for (col, tok) in tokens(line) {
            row.push(match tok {
                "0" => false,
                "1" => true,
                other => {
                    return Err(parse_error(
                        ln + 1,
                        col,
                        format!("expected 0 or 1, found {other:?}"),
                    ))
                }
            });
        }
        match cols {
            None => cols = Some(row.len()),
            Some(c) if c != row.len() => {
                return Err(parse_error(
                    ln + 1,
                    1,
                    format!("row has {} cells, expected {c}", row.len()),
                ))
            }
            _ => {}
        }
        rows.push(row);
    }
    let cols = cols.unwrap_or(0);
    check_nonempty(rows.len(), cols)?;
    let matrix = BooleanMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]);
    Ok(Dataset {
        matrix,
        labels: default_labels(cols),
    })
}

/// Parses FIMI transactions. The attribute count is the largest index seen
/// unless `cols` fixes it.
pub fn parse_fimi(text: &str, cols: Option<usize>) -> Result<Dataset> {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut max = 0;
    for (ln, line) in text.lines().enumerate() {
        let mut row = Vec::new();
        for (col, tok) in tokens(line) {
            let idx: usize = tok.parse().map_err(|_| {
                parse_error(
                    ln + 1,
                    col,
                    format!("expected an attribute index, found {tok:?}"),
                )
            })?;
            if idx == 0 {
                return Err(parse_error(ln + 1, col, "attribute indices are 1-based"));
            }
            if let Some(n) = cols {
                if idx > n {
                    return Err(parse_error(
                        ln + 1,
                        col,
                        format!("attribute {idx} exceeds the attribute count {n}"),
                    ));
                }
            }
            max = max.max(idx);
            row.push(idx - 1);
        }
        rows.push(row);
    }
    let cols = cols.unwrap_or(max);
    check_nonempty(rows.len(), cols)?;
    let mut b = MatrixBuilder::new(rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
        for &j in row {
            b.set(i, j, true);
        }
    }
    Ok(Dataset {
        matrix: b.build(),
        labels: default_labels(cols),
    })
}

pub fn parse_csv(text: &str) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let csv_error = |e: csv::Error| {
        let line = e.position().map_or(0, |p| p.line() as usize);
        parse_error(line, 1, e.to_string())
    };
    let labels: Vec<String> = reader
        .headers()
        .map_err(csv_error)?
        .iter()
        .map(str::to_owned)
        .collect();
    let cols = labels.len();
    let mut seen = HashMap::new();
    for (j, l) in labels.iter().enumerate() {
        if l.is_empty() || l.contains(char::is_whitespace) || l.contains('|') {
            return Err(parse_error(
                1,
                j + 1,
                format!("invalid attribute label {l:?}"),
            ));
        }
        if seen.insert(l.as_str(), j).is_some() {
            return Err(parse_error(
                1,
                j + 1,
                format!("duplicate attribute label {l:?}"),
            ));
        }
    }
    let mut rows: Vec<Vec<bool>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let row = record
            .iter()
            .enumerate()
            .map(|(j, cell)| match cell {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(parse_error(
                    line,
                    j + 1,
                    format!("expected 0 or 1, found {other:?}"),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    check_nonempty(rows.len(), cols)?;
    let matrix = BooleanMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]);
    Ok(Dataset { matrix, labels })
}

pub fn load_matrix(path: &Path, format: Format) -> Result<Dataset> {
    let text = fs::read_to_string(path)?;
    match format {
        Format::Dense => parse_dense(&text),
        Format::Fimi => parse_fimi(&text, None),
        Format::Csv => parse_csv(&text),
    }
}

pub fn write_dense(matrix: &BooleanMatrix) -> String {
    let mut out = String::with_capacity(matrix.cells() * 2);
    for i in 0..matrix.rows() {
        for j in 0..matrix.cols() {
            if j > 0 {
                out.push(' ');
            }
            out.push(if matrix.get(i, j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn write_fimi(matrix: &BooleanMatrix) -> String {
    let mut out = String::new();
    for i in 0..matrix.rows() {
        let items: Vec<String> = matrix.row(i).iter().map(|j| (j + 1).to_string()).collect();
        out.push_str(&items.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_csv(dataset: &Dataset) -> String {
    let m = &dataset.matrix;
    let mut out = dataset.labels.join(",");
    out.push('\n');
    for i in 0..m.rows() {
        let cells: Vec<&str> = (0..m.cols())
            .map(|j| if m.get(i, j) { "1" } else { "0" })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// One line per factor, see the module docs.
pub fn format_factors(factors: &FactorSet, labels: &[String]) -> String {
    let mut out = String::new();
    for f in factors {
        out.push_str("extent:");
        for i in f.extent().iter() {
            write!(out, " {}", i + 1).unwrap();
        }
        out.push_str(" | intent:");
        for j in f.intent().iter() {
            out.push(' ');
            out.push_str(&labels[j]);
        }
        out.push('\n');
    }
    out
}

/// Parses a factor file against a dataset with `rows` objects and the given
/// attribute labels.
pub fn parse_factors(text: &str, rows: usize, labels: &[String]) -> Result<FactorSet> {
    let by_label: HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(j, l)| (l.as_str(), j))
        .collect();
    let mut factors = FactorSet::new();
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (left, right) = line
            .split_once('|')
            .ok_or_else(|| parse_error(ln, 1, "expected `extent: ... | intent: ...`"))?;
        let extent_part = left
            .trim_start()
            .strip_prefix("extent:")
            .ok_or_else(|| parse_error(ln, 1, "line must start with `extent:`"))?;
        let offset = left.len() + 1;
        let intent_part = right
            .trim_start()
            .strip_prefix("intent:")
            .ok_or_else(|| parse_error(ln, offset + 1, "expected `intent:` after `|`"))?;

        let mut extent = ObjectSet::empty(rows);
        for (col, tok) in tokens(extent_part) {
            let idx: usize = tok.parse().map_err(|_| {
                parse_error(ln, col, format!("expected an object index, found {tok:?}"))
            })?;
            if idx == 0 || idx > rows {
                return Err(parse_error(
                    ln,
                    col,
                    format!("object {idx} out of range 1..={rows}"),
                ));
            }
            extent.insert(idx - 1);
        }
        let mut intent = AttributeSet::empty(labels.len());
        for (col, tok) in tokens(intent_part) {
            let j = by_label.get(tok).ok_or_else(|| {
                parse_error(ln, offset + col, format!("unknown attribute {tok:?}"))
            })?;
            intent.insert(*j);
        }
        if !factors.push(FormalConcept::from_parts(extent, intent)) {
            return Err(parse_error(ln, 1, "duplicate factor"));
        }
    }
    Ok(factors)
}
