//! Report model and its JSON, CSV and text renderings.

use std::io::Write;

use anyhow::Result;
use hankel_core::scalar::{rational_string, Rational};
use serde::Serialize;
use serde_json::{Map, Value};

/// Output format selected by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A float as a JSON number with 17 significant digits; non-finite values become strings.
pub fn float(x: f64) -> Value {
    if x.is_finite() {
        serde_json::from_str(&float_text(x)).expect("exponent literal is valid JSON")
    } else {
        Value::String(x.to_string())
    }
}

pub fn floats(xs: &[f64]) -> Value {
    Value::Array(xs.iter().copied().map(float).collect())
}

pub fn rational(r: &Rational) -> Value {
    Value::String(rational_string(r))
}

/// Text form of a float with 17 significant digits, e.g. `1.0240000000000000e+3`.
pub fn float_text(x: f64) -> String {
    let s = format!("{x:.16e}");
    match s.split_once('e') {
        Some((mantissa, exp)) if !exp.starts_with('-') => format!("{mantissa}e+{exp}"),
        _ => s,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub status: &'static str,
    pub lhs: Value,
    pub rhs: Value,
    pub tolerance: Value,
}

impl Assertion {
    pub fn new(name: &str, pass: bool, lhs: Value, rhs: Value, tolerance: Value) -> Self {
        Self { name: name.to_string(), status: if pass { "pass" } else { "fail" }, lhs, rhs, tolerance }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub results: Value,
    pub assertions: Vec<Assertion>,
    pub version: String,
}

impl Report {
    pub fn new(command: &str, config: Value, results: Map<String, Value>, assertions: Vec<Assertion>) -> Self {
        Self {
            command: command.to_string(),
            config,
            results: Value::Object(results),
            assertions,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.assertions.iter().all(Assertion::passed)
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)?;
            }
            Format::Csv => self.write_csv(out)?,
            Format::Text => self.write_text(out)?,
        }
        Ok(())
    }

    fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["record", "name", "value", "status", "lhs", "rhs", "tolerance"])?;
        let mut rows = Vec::new();
        flatten("", &self.results, &mut rows);
        for (name, value) in rows {
            w.write_record(["result", &name, &value, "", "", "", ""])?;
        }
        for a in &self.assertions {
            w.write_record(["assertion", &a.name, "", a.status, &scalar(&a.lhs), &scalar(&a.rhs), &scalar(&a.tolerance)])?;
        }
        w.flush()?;
        Ok(())
    }

    fn write_text(&self, out: &mut dyn Write) -> Result<()> {
        writeln!(out, "command: {} (version {})", self.command, self.version)?;
        let mut rows = Vec::new();
        flatten("", &self.config, &mut rows);
        for (name, value) in rows {
            writeln!(out, "  config.{name} = {value}")?;
        }
        let mut rows = Vec::new();
        flatten("", &self.results, &mut rows);
        for (name, value) in rows {
            writeln!(out, "{name} = {value}")?;
        }
        write_assertions_text(&self.assertions, out)?;
        Ok(())
    }
}

pub fn write_assertions_text(assertions: &[Assertion], out: &mut dyn Write) -> Result<()> {
    for a in assertions {
        writeln!(
            out,
            "[{}] {}: lhs={} rhs={} tol={}",
            a.status.to_uppercase(),
            a.name,
            scalar(&a.lhs),
            scalar(&a.rhs),
            scalar(&a.tolerance)
        )?;
    }
    Ok(())
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Dotted-path rows for nested objects; arrays of scalars stay on one row.
fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let join = |key: &str| if prefix.is_empty() { key.to_string() } else { format!("{prefix}.{key}") };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                flatten(&join(k), child, rows);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), child, rows);
            }
        }
        Value::Array(items) => {
            rows.push((prefix.to_string(), items.iter().map(scalar).collect::<Vec<_>>().join(";")));
        }
        other => rows.push((prefix.to_string(), scalar(other))),
    }
}
