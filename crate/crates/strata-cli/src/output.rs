use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Value};
use strata::scalar::{approximate, parse_rational};

/// Version tag carried by every JSON table and fixed CSV column set.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A command result in all three renderings.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(&self.json)? + "\n",
            Format::Text => self.text.clone(),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                String::from_utf8(w.into_inner()?)?
            }
        })
    }
}

/// Rational display policy: exact only, or exact followed by a marked approximation.
#[derive(Clone, Copy, Debug)]
pub struct Numbers {
    pub decimal: bool,
}

impl Numbers {
    pub fn show(&self, exact: &str) -> String {
        match self.approx(exact) {
            Some(a) => format!("{exact} ({a})"),
            None => exact.to_string(),
        }
    }

    pub fn approx(&self, exact: &str) -> Option<String> {
        if !self.decimal {
            return None;
        }
        parse_rational(exact).ok().map(|r| approximate(&r, 6))
    }

    /// Adds an `approx` object to a JSON record for the named rational fields.
    pub fn annotate(&self, value: &mut Value, fields: &[&str]) {
        if !self.decimal {
            return;
        }
        let Value::Object(obj) = value else { return };
        let mut approx = Map::new();
        for f in fields {
            if let Some(a) = obj
                .get(*f)
                .and_then(Value::as_str)
                .and_then(|s| self.approx(s))
            {
                approx.insert(f.to_string(), Value::String(a));
            }
        }
        obj.insert("approx".into(), Value::Object(approx));
    }
}

pub fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

/// `(3,1)` style rendering of a signature.
pub fn tuple(items: &[i64]) -> String {
    format!("({})", join(items, ","))
}

/// Left-aligned text table with a header row.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

/// Two-column `key value` listing.
pub fn fields(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in pairs {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}
