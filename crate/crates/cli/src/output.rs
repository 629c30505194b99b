use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(Option<f64>),
    Text(String),
    Flag(bool),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(Some(x))
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        Cell::Num(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Flag(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Shortest text that parses back to `round12(x)`.
pub fn fmt_num(x: f64) -> String {
    let y = round12(x);
    if !y.is_finite() {
        return y.to_string();
    }
    let a = y.abs();
    if y != 0.0 && !(1e-4..1e15).contains(&a) {
        format!("{y:e}")
    } else {
        format!("{y}")
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Num(Some(x)) => fmt_num(*x),
            Cell::Num(None) => String::new(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(Some(x)) => serde_json::Number::from_f64(round12(*x))
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Num(None) => Value::Null,
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Flag(b) => Value::Bool(*b),
        }
    }
}

/// Command output: a table plus run metadata and human-readable notes.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub meta: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
    /// Render text output as `key: value` lines (single-row reports).
    pub vertical: bool,
}

impl Report {
    pub fn new(meta: Map<String, Value>, columns: Vec<String>) -> Self {
        Self {
            meta,
            columns,
            ..Self::default()
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
            Format::Text => self.text(),
        }
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        let escape = |s: &str| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        let header: Vec<String> = self.columns.iter().map(|c| escape(c)).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| escape(&c.text())).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn json(&self) -> String {
        let mut meta = self.meta.clone();
        if !self.notes.is_empty() {
            meta.insert(
                "notes".into(),
                self.notes.iter().map(|n| Value::from(n.as_str())).collect(),
            );
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let m: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.clone(), v.json()))
                    .collect();
                Value::Object(m)
            })
            .collect();
        let mut top = Map::new();
        top.insert("meta".into(), Value::Object(meta));
        top.insert("rows".into(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("serializable");
        s.push('\n');
        s
    }

    fn text(&self) -> String {
        let mut out = String::new();
        if self.vertical && self.rows.len() == 1 {
            let width = self.columns.iter().map(|c| c.len()).max().unwrap_or(0);
            for (c, v) in self.columns.iter().zip(&self.rows[0]) {
                let _ = writeln!(out, "{}", format!("{c:<width$}  {}", v.text()).trim_end());
            }
        } else {
            let cells: Vec<Vec<String>> = self
                .rows
                .iter()
                .map(|r| r.iter().map(Cell::text).collect())
                .collect();
            let widths: Vec<usize> = self
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    cells
                        .iter()
                        .map(|r| r[i].len())
                        .chain([c.len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let numeric: Vec<bool> = (0..self.columns.len())
                .map(|i| {
                    self.rows
                        .first()
                        .is_some_and(|r| matches!(r[i], Cell::Num(_)))
                })
                .collect();
            let line = |items: &[String]| {
                let padded: Vec<String> = items
                    .iter()
                    .zip(&widths)
                    .zip(&numeric)
                    .map(|((s, w), &num)| {
                        if num {
                            format!("{s:>w$}")
                        } else {
                            format!("{s:<w$}")
                        }
                    })
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            let _ = writeln!(out, "{}", line(&self.columns));
            for r in &cells {
                let _ = writeln!(out, "{}", line(r));
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }

    /// Writes to `path` or stdout. Notes go to stderr for CSV so the table
    /// stays machine-readable.
    pub fn emit(&self, format: Format, path: Option<&Path>) -> Result<()> {
        let body = self.render(format);
        match path {
            Some(p) => {
                std::fs::write(p, body).with_context(|| format!("writing {}", p.display()))?
            }
            None => std::io::stdout().lock().write_all(body.as_bytes())?,
        }
        if format == Format::Csv {
            for n in &self.notes {
                eprintln!("note: {n}");
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_num(0.1), "0.1");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_num(2.0 / 3.0 * 1e-7), "6.66666666667e-8");
        assert_eq!(fmt_num(-123_456_789.123_456_78), "-123456789.123");
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(f64::NAN), "NaN");
        for x in [1.0 / 7.0, 12345.678901234, 3e-9, -2.5e20] {
            assert_eq!(fmt_num(x).parse::<f64>().unwrap(), round12(x));
        }
    }

    #[test]
    fn csv_and_json_carry_the_same_numbers() {
        let mut r = Report::new(Map::new(), vec!["a".into(), "b".into(), "c".into()]);
        r.rows.push(vec![
            Cell::from(1.0 / 3.0),
            Cell::Num(None),
            Cell::from("x,y"),
        ]);
        assert_eq!(r.render(Format::Csv), "a,b,c\n0.333333333333,,\"x,y\"\n");
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["rows"][0]["a"].as_f64().unwrap(), 0.333333333333);
        assert!(v["rows"][0]["b"].is_null());
    }
}
