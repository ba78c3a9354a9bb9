// SPDX-License-Identifier: MIT OR Apache-2.0

//! Loading series and weights from delimited text files.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use apts_core::MultiSeries;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// One column per channel, one row per time index, optional header.
    Csv,
    /// Like csv with tab separators.
    Tsv,
    /// One series per row with a leading class label.
    Ucr,
}

impl Format {
    /// Guesses the format from a file extension; `.tsv` and `.tab` are tab
    /// separated, everything else is read as CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("tsv" | "tab") => Format::Tsv,
            _ => Format::Csv,
        }
    }
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Self as clap::ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("format mismatch: {0}")]
    FormatMismatch(String),
    #[error(transparent)]
    Series(#[from] apts_core::Error),
}

fn read(path: &Path) -> Result<String, LoadError> {
    fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_number(field: &str, line: usize) -> Result<f64, LoadError> {
    field.trim().parse::<f64>().map_err(|_| LoadError::Parse {
        line,
        message: format!("not a number: {:?}", field.trim()),
    })
}

/// Parses delimited columns, one channel per column.
pub fn parse_columns(text: &str, delimiter: u8) -> Result<MultiSeries, LoadError> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| LoadError::Parse {
            line: e.position().map_or(i + 1, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(i + 1, |p| p.line() as usize);
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        if columns.is_empty() {
            let numeric = record.iter().all(|f| f.parse::<f64>().is_ok());
            columns = vec![Vec::new(); record.len()];
            if !numeric {
                if record.iter().any(|f| f.parse::<f64>().is_ok()) {
                    return Err(LoadError::Parse {
                        line,
                        message: "mixed header and numeric fields".into(),
                    });
                }
                continue;
            }
        }
        if record.len() != columns.len() {
            return Err(LoadError::Parse {
                line,
                message: format!("expected {} fields, found {}", columns.len(), record.len()),
            });
        }
        for (col, field) in columns.iter_mut().zip(record.iter()) {
            col.push(parse_number(field, line)?);
        }
    }
    if columns.iter().all(|c| c.is_empty()) {
        return Err(LoadError::Parse {
            line: 1,
            message: "no data rows".into(),
        });
    }
    Ok(MultiSeries::new(columns)?)
}

/// Parses UCR-style rows and stacks the selected ones as channels. An empty
/// selection takes every row.
pub fn parse_ucr(text: &str, rows: &[usize]) -> Result<MultiSeries, LoadError> {
    let mut series: Vec<Vec<f64>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        let fields: Vec<&str> = if raw.contains('\t') {
            raw.split('\t').collect()
        } else if raw.contains(',') {
            raw.split(',').collect()
        } else {
            raw.split_whitespace().collect()
        };
        if fields.len() < 3 {
            return Err(LoadError::FormatMismatch(format!(
                "line {line}: a UCR row needs a label and at least two values"
            )));
        }
        parse_number(fields[0], line)?;
        series.push(
            fields[1..]
                .iter()
                .map(|f| parse_number(f, line))
                .collect::<Result<_, _>>()?,
        );
    }
    if series.is_empty() {
        return Err(LoadError::Parse {
            line: 1,
            message: "no data rows".into(),
        });
    }
    let selected = if rows.is_empty() {
        series
    } else {
        rows.iter()
            .map(|&r| {
                series.get(r).cloned().ok_or_else(|| {
                    LoadError::FormatMismatch(format!(
                        "row {r} requested, file has {}",
                        series.len()
                    ))
                })
            })
            .collect::<Result<_, _>>()?
    };
    Ok(MultiSeries::new(selected)?)
}

/// Reads a series from `path` in the given format.
pub fn load_series(
    path: &Path,
    format: Format,
    ucr_rows: &[usize],
) -> Result<MultiSeries, LoadError> {
    let text = read(path)?;
    match format {
        Format::Csv => parse_columns(&text, b','),
        Format::Tsv => parse_columns(&text, b'\t'),
        Format::Ucr => parse_ucr(&text, ucr_rows),
    }
}

/// Reads channel weights separated by commas or whitespace.
pub fn load_weights(path: &Path) -> Result<Vec<f64>, LoadError> {
    let text = read(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for field in line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
        {
            out.push(parse_number(field, i + 1)?);
        }
    }
    if out.is_empty() {
        return Err(LoadError::Parse {
            line: 1,
            message: "no weights".into(),
        });
    }
    Ok(out)
}
