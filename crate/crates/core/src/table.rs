//! CSV and JSON-lines emission for result tables.
//!
//! Floats are written in Rust's shortest round-trip form, so re-running a
//! deterministic computation reproduces byte-identical files.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ball::RatioRow;
use crate::error::{Error, Result};
use crate::functionals::MeanReport;
use crate::laplacian::LaplacianSample;
use crate::theorems::TheoremReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Jsonl,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Jsonl => "jsonl",
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            other => Err(Error::ConfigError(format!(
                "unknown format {other:?} (expected csv or jsonl)"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Jsonl => "jsonl",
        })
    }
}

/// One row of an exported table.
pub trait Record: Serialize {
    fn header() -> Vec<&'static str>;
    fn fields(&self) -> Vec<String>;
}

/// Shortest round-trip float text (`{:?}` switches to exponent form for very
/// large and very small magnitudes).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

pub fn write_records<R: Record, W: Write>(out: &mut W, format: Format, rows: &[R]) -> Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "{}", R::header().join(","))?;
            for row in rows {
                let line: Vec<String> = row.fields().iter().map(|f| csv_escape(f)).collect();
                writeln!(out, "{}", line.join(","))?;
            }
        }
        Format::Jsonl => {
            for row in rows {
                let line = serde_json::to_string(row).map_err(|e| Error::Io(e.to_string()))?;
                writeln!(out, "{line}")?;
            }
        }
    }
    Ok(())
}

pub fn write_table<R: Record>(path: &Path, format: Format, rows: &[R]) -> Result<()> {
    let mut buf = Vec::new();
    write_records(&mut buf, format, rows)?;
    std::fs::write(path, buf)?;
    Ok(())
}

impl Record for MeanReport {
    fn header() -> Vec<&'static str> {
        vec!["r", "p", "value", "nodes", "est_error"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            fmt_f64(self.r),
            fmt_f64(self.p),
            fmt_f64(self.value),
            self.nodes.to_string(),
            fmt_f64(self.est_error),
        ]
    }
}

impl Record for LaplacianSample {
    fn header() -> Vec<&'static str> {
        vec!["x", "y", "lap_abs_f", "lap_ulogu", "ratio"]
    }

    fn fields(&self) -> Vec<String> {
        [self.x, self.y, self.lap_abs_f, self.lap_ulogu, self.ratio]
            .into_iter()
            .map(fmt_f64)
            .collect()
    }
}

impl Record for RatioRow {
    fn header() -> Vec<&'static str> {
        vec!["n", "a", "X", "Y", "ratio", "target", "deviation"]
    }

    fn fields(&self) -> Vec<String> {
        let mut out = vec![self.n.to_string()];
        out.extend(
            [
                self.a,
                self.x,
                self.y,
                self.ratio,
                self.target,
                self.deviation,
            ]
            .into_iter()
            .map(fmt_f64),
        );
        out
    }
}

impl Record for TheoremReport {
    fn header() -> Vec<&'static str> {
        vec!["theorem_id", "params", "lhs", "rhs", "margin", "quad_error"]
    }

    fn fields(&self) -> Vec<String> {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={}", fmt_f64(*v)))
            .collect();
        vec![
            self.theorem_id.as_str().to_owned(),
            params.join(";"),
            fmt_f64(self.lhs),
            fmt_f64(self.rhs),
            fmt_f64(self.margin),
            fmt_f64(self.quad_error),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_header_and_round_trip_floats() {
        let rows = [MeanReport {
            r: 0.5,
            p: 1.0,
            value: 0.1 + 0.2,
            nodes: 512,
            est_error: 1e-17,
        }];
        let mut buf = Vec::new();
        write_records(&mut buf, Format::Csv, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("r,p,value,nodes,est_error"));
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(fields[2].parse::<f64>().unwrap(), 0.1 + 0.2);
        assert_eq!(fields[4], "1e-17");
    }

    #[test]
    fn jsonl_is_one_object_per_line() {
        let rows = vec![
            LaplacianSample {
                x: 0.0,
                y: 0.1,
                lap_abs_f: 1.0,
                lap_ulogu: 2.0,
                ratio: 0.5
            };
            3
        ];
        let mut buf = Vec::new();
        write_records(&mut buf, Format::Jsonl, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        for line in text.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["ratio"], 0.5);
        }
    }

    #[test]
    fn format_parsing() {
        assert_eq!("jsonl".parse::<Format>().unwrap(), Format::Jsonl);
        assert!("xml".parse::<Format>().is_err());
    }
}
