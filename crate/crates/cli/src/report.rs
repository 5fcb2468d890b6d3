//! Run reports. The same data renders as `key = value` text or as JSON;
//! wall time is not part of the report so runs stay byte-identical.

use std::fmt::Write as _;

use fracdef::coloring::{write_coloring, FractionalColoring};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Default)]
pub struct RunReport {
    pub command: String,
    pub graph: Option<String>,
    /// Result values, already certified, in print order.
    pub values: Vec<(String, String)>,
    pub counters: Vec<(String, u64)>,
    pub seed: Option<u64>,
    pub witness_path: Option<String>,
    /// Printed inline when no witness file was requested.
    pub witness: Option<FractionalColoring>,
    /// Extra table (audit rows), header first.
    pub table: Vec<Vec<String>>,
    pub certified: bool,
}

impl RunReport {
    pub fn new(command: String) -> Self {
        RunReport { command, certified: true, ..RunReport::default() }
    }

    pub fn value(&mut self, key: impl Into<String>, value: impl ToString) {
        self.values.push((key.into(), value.to_string()));
    }

    pub fn counter(&mut self, key: impl Into<String>, value: u64) {
        self.counters.push((key.into(), value));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Json => serde_json::to_string_pretty(&self.json()).expect("report serializes") + "\n",
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("command = {}", self.command));
        if let Some(g) = &self.graph {
            line(format!("graph = {g}"));
        }
        for (k, v) in &self.values {
            line(format!("{k} = {v}"));
        }
        for (k, v) in &self.counters {
            line(format!("{k} = {v}"));
        }
        if let Some(s) = self.seed {
            line(format!("seed = {s}"));
        }
        if let Some(p) = &self.witness_path {
            line(format!("witness_file = {p}"));
        }
        line(format!("certified = {}", self.certified));
        if !self.table.is_empty() {
            let widths: Vec<usize> = (0..self.table[0].len())
                .map(|c| self.table.iter().map(|r| r.get(c).map_or(0, String::len)).max().unwrap_or(0))
                .collect();
            for row in &self.table {
                let mut s = String::new();
                for (c, cell) in row.iter().enumerate() {
                    if c + 1 == row.len() {
                        s.push_str(cell);
                    } else {
                        let _ = write!(s, "{cell:<w$}  ", w = widths[c]);
                    }
                }
                line(s.trim_end().to_string());
            }
        }
        if self.witness_path.is_none() {
            if let Some(w) = &self.witness {
                line("witness:".to_string());
                out.push_str(&write_coloring(w));
            }
        }
        out
    }

    fn json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(self.command));
        if let Some(g) = &self.graph {
            obj.insert("graph".into(), json!(g));
        }
        let values: Map<String, Value> = self.values.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        obj.insert("values".into(), Value::Object(values));
        let counters: Map<String, Value> = self.counters.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        obj.insert("counters".into(), Value::Object(counters));
        if let Some(s) = self.seed {
            obj.insert("seed".into(), json!(s));
        }
        if let Some(p) = &self.witness_path {
            obj.insert("witness_file".into(), json!(p));
        }
        if let Some(w) = &self.witness {
            let rows: Vec<Vec<String>> = w.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
            obj.insert("witness".into(), json!(rows));
        }
        if let Some((header, rows)) = self.table.split_first() {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(header.iter().cloned().zip(r.iter().map(|c| json!(c))).collect()))
                .collect();
            obj.insert("rows".into(), Value::Array(rows));
        }
        obj.insert("certified".into(), json!(self.certified));
        Value::Object(obj)
    }
}
