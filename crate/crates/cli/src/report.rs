// SPDX-License-Identifier: MIT OR Apache-2.0

//! Run reports: one `key=value` pair per line.
//!
//! | key | value |
//! |-----|-------|
//! | `algo` | `apts`, `bu` or `ggs` |
//! | `source` | `gen:<name>` or `file:<path>` |
//! | `n_x` | channel count |
//! | `T` | last time index |
//! | `breakpoints` | comma-separated indices, empty when none |
//! | `epsilons` | per-channel cost level, comma-separated (APTS only) |
//! | `seconds` | solve time of the reported run |
//! | `seconds_min`, `seconds_median`, `repeat` | timing harness, with `--bench` |
//! | `args` | tab-separated arguments that reproduce the run |
//!
//! Lines starting with `#` are comments. Unknown keys are kept on parse.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ReportError {
    #[error("line {0}: expected key=value")]
    Malformed(usize),
    #[error("missing key {0}")]
    Missing(&'static str),
    #[error("bad value for {key}: {value}")]
    BadValue { key: String, value: String },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Timing {
    pub repeat: usize,
    pub min: f64,
    pub median: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub algo: String,
    pub source: String,
    pub n_x: usize,
    pub horizon: usize,
    pub breakpoints: Vec<usize>,
    pub epsilons: Vec<f64>,
    pub seconds: f64,
    pub timing: Option<Timing>,
    /// Arguments to `apts run` that reproduce this result.
    pub args: Vec<String>,
    pub extra: BTreeMap<String, String>,
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn split<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>, ReportError> {
    if value.is_empty() {
        return Ok(Vec::new());
    }
    value
        .split(',')
        .map(|v| {
            v.parse().map_err(|_| ReportError::BadValue {
                key: key.into(),
                value: value.into(),
            })
        })
        .collect()
}

fn scalar<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ReportError> {
    value.parse().map_err(|_| ReportError::BadValue {
        key: key.into(),
        value: value.into(),
    })
}

impl RunReport {
    pub fn render(&self) -> String {
        let mut out = String::from("# apts run report\n");
        let _ = writeln!(out, "algo={}", self.algo);
        let _ = writeln!(out, "source={}", self.source);
        let _ = writeln!(out, "n_x={}", self.n_x);
        let _ = writeln!(out, "T={}", self.horizon);
        let _ = writeln!(out, "breakpoints={}", join(&self.breakpoints));
        let _ = writeln!(out, "epsilons={}", join(&self.epsilons));
        let _ = writeln!(out, "seconds={}", self.seconds);
        if let Some(t) = self.timing {
            let _ = writeln!(out, "repeat={}", t.repeat);
            let _ = writeln!(out, "seconds_min={}", t.min);
            let _ = writeln!(out, "seconds_median={}", t.median);
        }
        for (k, v) in &self.extra {
            let _ = writeln!(out, "{k}={v}");
        }
        let _ = writeln!(out, "args={}", self.args.join("\t"));
        out
    }

    pub fn parse(text: &str) -> Result<Self, ReportError> {
        let mut map = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ReportError::Malformed(i + 1))?;
            map.insert(k.to_string(), v.to_string());
        }
        let mut take = |key: &'static str| map.remove(key).ok_or(ReportError::Missing(key));
        let algo = take("algo")?;
        let source = take("source")?;
        let n_x = scalar("n_x", &take("n_x")?)?;
        let horizon = scalar("T", &take("T")?)?;
        let breakpoints = split("breakpoints", &take("breakpoints")?)?;
        let epsilons = split("epsilons", &take("epsilons")?)?;
        let seconds = scalar("seconds", &take("seconds")?)?;
        let args = take("args")?;
        let args = if args.is_empty() {
            Vec::new()
        } else {
            args.split('\t').map(String::from).collect()
        };
        let timing = match (
            map.remove("repeat"),
            map.remove("seconds_min"),
            map.remove("seconds_median"),
        ) {
            (Some(r), Some(lo), Some(med)) => Some(Timing {
                repeat: scalar("repeat", &r)?,
                min: scalar("seconds_min", &lo)?,
                median: scalar("seconds_median", &med)?,
            }),
            _ => None,
        };
        Ok(Self {
            algo,
            source,
            n_x,
            horizon,
            breakpoints,
            epsilons,
            seconds,
            timing,
            args,
            extra: map,
        })
    }
}
