//! Report assembly and deterministic serialization.

use std::io;

use serde_json::ser::Formatter;
use serde_json::{Map, Value};

use crate::CliError;

/// Results, warnings and timings of one subcommand run.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub subcommand: String,
    pub config: Map<String, Value>,
    pub results: Map<String, Value>,
    pub warnings: Vec<String>,
    pub timings: Map<String, Value>,
    /// Every check a subcommand asserts, in insertion order.
    pub checks: Vec<(String, bool)>,
}

impl Report {
    pub fn new(subcommand: &str) -> Self {
        Self {
            subcommand: subcommand.to_string(),
            ..Self::default()
        }
    }

    pub fn put(&mut self, key: &str, v: impl Into<Value>) {
        self.results.insert(key.to_string(), v.into());
    }

    /// Stores a float, rejecting NaN and infinities.
    pub fn num(&mut self, key: &str, x: f64) -> Result<(), CliError> {
        self.results.insert(key.to_string(), finite(key, x)?);
        Ok(())
    }

    pub fn check(&mut self, name: &str, ok: bool) {
        self.checks.push((name.to_string(), ok));
    }

    pub fn warn(&mut self, code: &str) {
        if !self.warnings.iter().any(|w| w == code) {
            self.warnings.push(code.to_string());
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }

    fn to_value(&self) -> Value {
        let mut results = self.results.clone();
        let checks: Map<String, Value> = self
            .checks
            .iter()
            .map(|(k, v)| (k.clone(), Value::Bool(*v)))
            .collect();
        results.insert("checks".into(), Value::Object(checks));
        results.insert("pass".into(), Value::Bool(self.passed()));
        let mut root = Map::new();
        root.insert("subcommand".into(), Value::String(self.subcommand.clone()));
        root.insert("config".into(), Value::Object(self.config.clone()));
        root.insert("results".into(), Value::Object(results));
        root.insert(
            "warnings".into(),
            Value::Array(self.warnings.iter().cloned().map(Value::String).collect()),
        );
        root.insert("timings".into(), Value::Object(self.timings.clone()));
        Value::Object(root)
    }

    pub fn to_json(&self) -> Vec<u8> {
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter::default());
        serde::Serialize::serialize(&self.to_value(), &mut ser).expect("in-memory serialization");
        out.push(b'\n');
        out
    }

    /// One row per scalar result, keyed by its dotted path.
    pub fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["path", "value"]).expect("in-memory csv");
        let mut rows = Vec::new();
        for (k, v) in &self.results {
            flatten(k, v, &mut rows);
        }
        for (k, v) in rows {
            w.write_record([k, v]).expect("in-memory csv");
        }
        w.into_inner().expect("in-memory csv")
    }
}

pub fn finite(key: &str, x: f64) -> Result<Value, CliError> {
    if !x.is_finite() {
        return Err(CliError::NonFinite(key.to_string()));
    }
    Ok(serde_json::Number::from_f64(x)
        .map(Value::Number)
        .expect("finite"))
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => m
            .iter()
            .for_each(|(k, x)| flatten(&format!("{prefix}.{k}"), x, rows)),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, x)| flatten(&format!("{prefix}.{i}"), x, rows)),
        Value::Number(n) => rows.push((prefix.to_string(), format_number(n))),
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        Value::Bool(b) => rows.push((prefix.to_string(), b.to_string())),
        Value::Null => rows.push((prefix.to_string(), String::new())),
    }
}

fn format_number(n: &serde_json::Number) -> String {
    match (n.as_i64(), n.as_u64()) {
        (Some(i), _) => i.to_string(),
        (_, Some(u)) => u.to_string(),
        _ => sci(n.as_f64().unwrap_or_default()),
    }
}

/// 17 significant digits.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Default)]
struct SciFormatter {
    indent: usize,
    has_value: bool,
}

impl SciFormatter {
    fn newline<W: ?Sized + io::Write>(&self, w: &mut W) -> io::Result<()> {
        w.write_all(b"\n")?;
        for _ in 0..self.indent {
            w.write_all(b"  ")?;
        }
        Ok(())
    }
}

impl Formatter for SciFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(sci(value).as_bytes())
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.indent += 1;
        self.has_value = false;
        w.write_all(b"[")
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.indent -= 1;
        if self.has_value {
            self.newline(w)?;
        }
        w.write_all(b"]")
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        if !first {
            w.write_all(b",")?;
        }
        self.newline(w)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.indent += 1;
        self.has_value = false;
        w.write_all(b"{")
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.indent -= 1;
        if self.has_value {
            self.newline(w)?;
        }
        w.write_all(b"}")
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        if !first {
            w.write_all(b",")?;
        }
        self.newline(w)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }
}
