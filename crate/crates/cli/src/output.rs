//! Report serialization. Every command produces a [`Document`]: metadata plus
//! a list of instance records. Floats are rounded to 12 significant digits
//! before any format is written.

use std::io::Write;
use std::path::Path;
use std::str::FromStr;
use std::time::Duration;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "text" => Ok(Self::Text),
            other => Err(CliError::Usage(format!(
                "unknown format {other:?} (json, csv, text)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub metadata: Map<String, Value>,
    pub instances: Vec<Value>,
    /// Shown in text output only, so json and csv stay reproducible.
    pub runtime: Option<Duration>,
}

impl Document {
    pub fn new(command: &str) -> Self {
        let mut metadata = Map::new();
        metadata.insert("command".into(), Value::String(command.into()));
        Self {
            metadata,
            instances: Vec::new(),
            runtime: None,
        }
    }

    pub fn meta(mut self, key: &str, value: impl Serialize) -> CliResult<Self> {
        self.metadata.insert(key.into(), serde_json::to_value(value)?);
        Ok(self)
    }

    pub fn push(&mut self, instance: impl Serialize) -> CliResult<()> {
        self.instances.push(serde_json::to_value(instance)?);
        Ok(())
    }

    /// Splits a serialized object with an `instances` array into metadata and instances.
    pub fn from_report(command: &str, report: &impl Serialize) -> CliResult<Self> {
        let mut doc = Self::new(command);
        match serde_json::to_value(report)? {
            Value::Object(map) => {
                for (k, v) in map {
                    match (k.as_str(), v) {
                        ("instances", Value::Array(items)) => doc.instances = items,
                        (_, v) => {
                            doc.metadata.insert(k, v);
                        }
                    }
                }
            }
            other => doc.instances.push(other),
        }
        Ok(doc)
    }

    fn rounded(&self) -> Value {
        let mut map = self.metadata.clone();
        map.insert("instances".into(), Value::Array(self.instances.clone()));
        round_value(Value::Object(map))
    }
}

/// Rounds to 12 significant digits (exact in the decimal sense).
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .unwrap_or(x)
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| serde_json::Number::from_f64(round_sig(x)))
            .map_or(Value::Null, Value::Number),
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(scalar).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(o) => {
            for (k, v) in o {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn table(doc: &Value) -> (Vec<String>, Vec<Vec<String>>) {
    let instances = doc["instances"].as_array().cloned().unwrap_or_default();
    let flat: Vec<Vec<(String, String)>> = instances
        .iter()
        .map(|i| {
            let mut row = Vec::new();
            flatten("", i, &mut row);
            row
        })
        .collect();
    let mut columns: Vec<String> = Vec::new();
    for row in &flat {
        for (k, _) in row {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    let rows = flat
        .into_iter()
        .map(|row| {
            columns
                .iter()
                .map(|c| row.iter().find(|(k, _)| k == c).map(|(_, v)| v.clone()).unwrap_or_default())
                .collect()
        })
        .collect();
    (columns, rows)
}

pub fn render(doc: &Document, format: Format) -> CliResult<String> {
    let value = doc.rounded();
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&value)? + "\n"),
        Format::Csv => {
            let (columns, rows) = table(&value);
            let command = scalar(&value["command"]);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(std::iter::once("command").chain(columns.iter().map(String::as_str)))?;
            for row in rows {
                w.write_record(std::iter::once(command.as_str()).chain(row.iter().map(String::as_str)))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(String::from_utf8_lossy(&bytes).into_owned())
        }
        Format::Text => {
            let mut out = String::new();
            if let Value::Object(meta) = &value {
                for (k, v) in meta.iter().filter(|(k, _)| *k != "instances") {
                    let mut flat = Vec::new();
                    flatten(k, v, &mut flat);
                    for (k, v) in flat {
                        out += &format!("{k}: {v}\n");
                    }
                }
            }
            if let Some(rt) = doc.runtime {
                out += &format!("runtime: {:.3}s\n", rt.as_secs_f64());
            }
            let (columns, rows) = table(&value);
            if !columns.is_empty() {
                let widths: Vec<usize> = columns
                    .iter()
                    .enumerate()
                    .map(|(c, h)| rows.iter().map(|r| r[c].len()).chain([h.len()]).max().unwrap_or(0))
                    .collect();
                let line = |cells: &[String]| {
                    cells
                        .iter()
                        .zip(&widths)
                        .map(|(s, w)| format!("{s:<w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                        + "\n"
                };
                out += "\n";
                out += &line(&columns);
                for r in &rows {
                    out += &line(r);
                }
            }
            Ok(out)
        }
    }
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn write_report(doc: &Document, format: Format, path: Option<&Path>) -> CliResult<()> {
    let text = render(doc, format)?;
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(&p.display().to_string(), e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Document {
        let mut d = Document::new("lambda").meta("alpha", 2.0).unwrap();
        d.push(json!({"lambda": 6.999999999999997, "x_opt": [0.1, 0.2], "converged": true}))
            .unwrap();
        d.push(json!({"lambda": 1.0 / 3.0, "x_opt": [1.0], "converged": false}))
            .unwrap();
        d.push(json!({"lambda": 0.0, "x_opt": [], "converged": true, "extra": {"a": 1}}))
            .unwrap();
        d
    }

    #[test]
    fn rounding() {
        assert_eq!(round_sig(6.999999999999997), 7.0);
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_sig(-123456.7890123456), -123456.789012);
        assert_eq!(round_sig(0.0), 0.0);
    }

    #[test]
    fn json_object_with_instances() {
        let s = render(&sample(), Format::Json).unwrap();
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["command"], "lambda");
        assert_eq!(v["instances"][0]["lambda"], 7.0);
        assert_eq!(v["instances"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn csv_one_row_per_instance() {
        let s = render(&sample(), Format::Csv).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "command,lambda,x_opt,converged,extra.a");
        assert_eq!(lines[1], "lambda,7.0,0.1;0.2,true,");
    }

    #[test]
    fn text_keeps_twelve_digits() {
        let s = render(&sample(), Format::Text).unwrap();
        assert!(s.contains("0.333333333333 "));
        assert!(s.starts_with("command: lambda\nalpha: 2.0\n"));
    }
}
